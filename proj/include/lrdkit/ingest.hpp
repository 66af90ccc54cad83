#pragma once

#include <filesystem>
#include <map>
#include <string_view>
#include <vector>

#include "lrdkit/trace.hpp"

namespace lrdkit {

/// One manifest row: a trace file plus the link it was measured on.
struct ManifestEntry {
  std::filesystem::path path;
  LinkDescriptor link;
  double sample_rate_hz = kDefaultSampleRateHz;
};

/// Reads a JSON manifest: an array of objects with keys
/// path, tx_subject, tx_pos, rx_subject, rx_pos, sample_rate_hz (optional,
/// default 20). Relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

/// Parses a trace CSV. Rows are either `time_s,gain_db` or a single
/// `gain_db` column; one optional header line. Two-column timestamps must
/// sit on the 1/rate grid within 10% of a slot; larger integral jumps
/// become missing slots. Malformed rows, non-finite gains, and empty files
/// raise ParseError with the offending line.
ChannelTrace load_trace(const std::filesystem::path& path,
                        const LinkDescriptor& link,
                        double sample_rate_hz = kDefaultSampleRateHz);

ChannelTrace load_trace(const ManifestEntry& entry);

/// `time_s,gain_db` rows with shortest round-trip formatting, so a reload
/// reproduces the samples bit-for-bit. Missing slots are skipped; the
/// reader reconstructs them from the timestamp gaps.
std::string trace_to_csv(const ChannelTrace& trace);

void save_trace_csv(const std::filesystem::path& path,
                    const ChannelTrace& trace);

enum class GapPolicy { Drop, HoldLast, LinearInterpolate };

/// Resolves missing slots: Drop removes them, HoldLast repeats the previous
/// value, LinearInterpolate fills between the bracketing known samples
/// (trailing runs hold the last value). Leading missing slots are always
/// dropped. The result has an empty missing mask. Throws
/// InsufficientDataError when no sample is present at all.
ChannelTrace apply_gap_policy(const ChannelTrace& trace, GapPolicy policy);

GapPolicy parse_gap_policy(std::string_view text);
std::string_view to_string(GapPolicy policy);

/// Partition by link class. Every class is present in the result; classes
/// without traces map to empty lists.
std::map<LinkClass, std::vector<ChannelTrace>> group_traces(
    std::vector<ChannelTrace> traces);

}  // namespace lrdkit

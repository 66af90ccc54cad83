#pragma once

#include <Eigen/Core>

#include "lrdkit/link.hpp"

namespace lrdkit {

inline constexpr double kDefaultSampleRateHz = 20.0;

/// Uniformly sampled channel-gain series in dB. Slots flagged in `missing`
/// hold no measurement (their sample value is unspecified) until a gap
/// policy fills or removes them.
struct ChannelTrace {
  LinkDescriptor link;
  double sample_rate_hz = kDefaultSampleRateHz;
  Eigen::ArrayXd samples;
  Eigen::Array<bool, Eigen::Dynamic, 1> missing;

  Eigen::Index size() const { return samples.size(); }

  bool gap_free() const { return missing.size() == 0 || !missing.any(); }
};

/// Checks the trace invariants: non-empty, positive rate, mask length
/// matching the samples, every non-missing sample finite.
/// Throws ArgumentError on violation.
void validate_trace(const ChannelTrace& trace);

/// Minimum series length any downstream analysis accepts.
inline constexpr Eigen::Index kMinAnalysisLength = 64;

}  // namespace lrdkit

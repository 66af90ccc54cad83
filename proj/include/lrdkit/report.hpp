#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lrdkit/acf.hpp"
#include "lrdkit/decay_fit.hpp"
#include "lrdkit/ingest.hpp"
#include "lrdkit/rescaled_range.hpp"
#include "lrdkit/stationarity.hpp"

namespace lrdkit {

/// Effective settings of one analysis run; echoed verbatim into the report.
struct AnalyzeConfig {
  GapPolicy gap_policy = GapPolicy::HoldLast;
  double acf_threshold = kDefaultAcfThreshold;
  /// Negative selects default_max_lag(n).
  Eigen::Index max_lag = -1;
  Eigen::Index min_span = 8;
  /// Unset selects n/8.
  std::optional<Eigen::Index> window_len;
  double mean_tol = 1.0;
  double var_ratio_tol = 3.0;
  /// Fit window (lags 1..fallback_fit_lags) used when the threshold
  /// truncation leaves fewer than 5 fit points.
  Eigen::Index fallback_fit_lags = 100;
};

struct TraceStationarity {
  std::string label;
  StationarityReport report;
};

/// Everything computed for one link-class group.
struct GroupAnalysis {
  LinkClass link_class;
  Eigen::Index trace_count = 0;
  double sample_rate_hz = kDefaultSampleRateHz;

  AcfCurve averaged_acf;
  bool fallback_fit_range = false;
  std::optional<FitResult> power_fit;
  std::optional<FitResult> exponential_fit;
  std::optional<DecayComparison> decay;

  std::optional<HurstEstimate> hurst;

  std::vector<TraceStationarity> stationarity;
  bool majority_wss_consistent = false;

  std::optional<QualifiedVerdict> qualified;

  /// Populated when a stage could not run (degenerate data, short traces).
  std::vector<std::string> notes;
};

struct AnalysisReport {
  int schema_version = 1;
  std::string tool_version;
  std::string generator;
  std::string manifest_hash;  // fnv1a-64 over the manifest bytes
  AnalyzeConfig config;
  std::vector<GroupAnalysis> groups;  // ordered by link class, only non-empty
};

/// Full pipeline: gap policy, grouping, averaged ACF + truncation + both
/// fits + comparison, group Hurst, per-trace stationarity screens with a
/// majority group verdict. Labels identify traces in the report
/// (tx/rx descriptor strings). Throws ArgumentError when traces is empty.
AnalysisReport analyze(const std::vector<ChannelTrace>& traces,
                       const AnalyzeConfig& config = {});

/// 64-bit FNV-1a over a file's bytes, hex-encoded.
std::string hash_file_fnv1a(const std::filesystem::path& path);

/// Deterministic JSON serialization (sorted keys, shortest float repr,
/// no timestamps): byte-identical for identical inputs and config.
std::string report_to_json(const AnalysisReport& report);

/// Plot-data CSVs for one group:
///   acf_<class>.csv  lag,acf
///   fit_<class>.csv  lag,acf,power_fit,exp_fit   (fit range only)
///   rs_<class>.csv   log_tau,log_rs              (+ regression header)
void write_plot_csvs(const std::filesystem::path& out_dir,
                     const GroupAnalysis& group);

}  // namespace lrdkit

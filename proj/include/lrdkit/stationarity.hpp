#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "lrdkit/rescaled_range.hpp"
#include "lrdkit/trace.hpp"

namespace lrdkit {

struct WindowStats {
  double mean = 0.0;
  double variance = 0.0;  // population (1/n)
};

struct StationarityReport {
  Eigen::Index window_len = 0;
  Eigen::Index windows = 0;
  double mean_spread = 0.0;  // max window mean - min window mean, dB
  double var_ratio = 1.0;    // max window variance / min window variance
  bool wss_consistent = false;
  std::vector<WindowStats> per_window;
  /// Zero-variance windows were left out of the variance ratio.
  bool zero_variance_excluded = false;
};

struct WssOptions {
  /// Defaults to n/8 when unset.
  std::optional<Eigen::Index> window_len;
  double mean_tol = 1.0;       // dB
  double var_ratio_tol = 3.0;
};

/// Sliding-window wide-sense-stationarity screen over non-overlapping
/// windows. WSS-consistent iff mean_spread <= mean_tol and
/// var_ratio <= var_ratio_tol. Requires n >= 4 * window_len.
/// When every window has zero variance the ratio is defined as 1; when only
/// some do, those windows are excluded from the ratio and flagged.
StationarityReport wss_screen(const Eigen::ArrayXd& samples,
                              const WssOptions& options = {});
StationarityReport wss_screen(const ChannelTrace& trace,
                              const WssOptions& options = {});

enum class QualifiedVerdict {
  ReliablyPredictable,     // persistent and WSS-consistent
  LongMemoryButUnreliable, // persistent but non-stationary
  NoLongMemory,            // everything else
};

/// Combines a Hurst classification with the stationarity screen. Long
/// memory is only bankable on a channel that also screens WSS-consistent.
QualifiedVerdict qualify_verdict(const HurstEstimate& hurst,
                                 const StationarityReport& stationarity);
QualifiedVerdict qualify_verdict(Persistence classification,
                                 bool wss_consistent);

std::string_view to_string(QualifiedVerdict verdict);

}  // namespace lrdkit

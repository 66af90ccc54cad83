#include "lrdkit/stationarity.hpp"

#include <algorithm>
#include <format>

#include "lrdkit/errors.hpp"

namespace lrdkit {

StationarityReport wss_screen(const Eigen::ArrayXd& samples,
                              const WssOptions& options) {
  const Eigen::Index n = samples.size();
  const Eigen::Index window_len =
      options.window_len ? *options.window_len : std::max<Eigen::Index>(n / 8, 1);
  if (window_len < 1) throw ArgumentError("wss_screen: window_len must be positive");
  if (n < 4 * window_len)
    throw ArgumentError(std::format(
        "wss_screen: trace too short ({} samples) for 4 windows of {}", n,
        window_len));

  StationarityReport report;
  report.window_len = window_len;
  report.windows = n / window_len;

  for (Eigen::Index w = 0; w < report.windows; ++w) {
    const auto window = samples.segment(w * window_len, window_len);
    const double mean = window.mean();
    report.per_window.push_back({mean, (window - mean).square().mean()});
  }

  double mean_min = report.per_window.front().mean;
  double mean_max = mean_min;
  double var_min = -1.0, var_max = -1.0;
  bool any_zero_var = false;
  for (const WindowStats& w : report.per_window) {
    mean_min = std::min(mean_min, w.mean);
    mean_max = std::max(mean_max, w.mean);
    if (w.variance > 0.0) {
      var_min = var_min < 0.0 ? w.variance : std::min(var_min, w.variance);
      var_max = std::max(var_max, w.variance);
    } else {
      any_zero_var = true;
    }
  }

  report.mean_spread = mean_max - mean_min;
  if (var_min < 0.0) {
    report.var_ratio = 1.0;  // every window constant
  } else {
    report.var_ratio = var_max / var_min;
    report.zero_variance_excluded = any_zero_var;
  }
  report.wss_consistent = report.mean_spread <= options.mean_tol &&
                          report.var_ratio <= options.var_ratio_tol;
  return report;
}

StationarityReport wss_screen(const ChannelTrace& trace,
                              const WssOptions& options) {
  if (!trace.gap_free())
    throw ArgumentError("wss_screen: trace has unresolved missing slots");
  return wss_screen(trace.samples, options);
}

QualifiedVerdict qualify_verdict(Persistence classification,
                                 bool wss_consistent) {
  if (classification != Persistence::Persistent)
    return QualifiedVerdict::NoLongMemory;
  return wss_consistent ? QualifiedVerdict::ReliablyPredictable
                        : QualifiedVerdict::LongMemoryButUnreliable;
}

QualifiedVerdict qualify_verdict(const HurstEstimate& hurst,
                                 const StationarityReport& stationarity) {
  return qualify_verdict(hurst.classification, stationarity.wss_consistent);
}

std::string_view to_string(QualifiedVerdict verdict) {
  switch (verdict) {
    case QualifiedVerdict::ReliablyPredictable: return "reliably_predictable";
    case QualifiedVerdict::LongMemoryButUnreliable:
      return "long_memory_but_unreliable";
    case QualifiedVerdict::NoLongMemory: return "no_long_memory";
  }
  return "??";
}

}  // namespace lrdkit

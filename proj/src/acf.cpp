#include "lrdkit/acf.hpp"

#include <algorithm>
#include <format>

namespace lrdkit {

Eigen::Index default_max_lag(Eigen::Index n) {
  return std::min<Eigen::Index>(n / 4, 4096);
}

AcfCurve acf_estimate(const Eigen::ArrayXd& samples, Eigen::Index max_lag) {
  const Eigen::Index n = samples.size();
  if (max_lag < 0) max_lag = default_max_lag(n);
  AcfCurve curve;
  curve.values = autocorrelation(samples, max_lag);
  curve.source_len = n;
  return curve;
}

AcfCurve acf_estimate(const ChannelTrace& trace, Eigen::Index max_lag) {
  if (!trace.gap_free())
    throw ArgumentError("acf_estimate: trace has unresolved missing slots");
  return acf_estimate(trace.samples, max_lag);
}

AcfCurve truncate_at_threshold(const AcfCurve& curve, double threshold) {
  AcfCurve out = curve;
  out.truncation_lag.reset();
  for (Eigen::Index k = 0; k < out.values.size(); ++k) {
    if (out.values[k] < threshold) {
      out.truncation_lag = k;
      break;
    }
  }
  // Retained fitting range is lags 1 .. truncation_lag-1 (whole curve when
  // no crossing happened); the fit needs at least 5 points.
  const Eigen::Index last =
      out.truncation_lag ? *out.truncation_lag - 1 : out.max_lag();
  if (last < 5)
    throw InsufficientDataError(std::format(
        "truncate_at_threshold: correlation drops below {} after {} lag(s); "
        "the decay fit needs at least 5",
        threshold, std::max<Eigen::Index>(last, 0)));
  return out;
}

AcfCurve average_acf(const std::vector<AcfCurve>& curves) {
  if (curves.empty()) throw ArgumentError("average_acf: empty curve list");
  Eigen::Index common = curves.front().values.size();
  Eigen::Index min_n = curves.front().source_len;
  for (const AcfCurve& c : curves) {
    common = std::min(common, c.values.size());
    min_n = std::min(min_n, c.source_len);
  }
  AcfCurve out;
  out.values = Eigen::ArrayXd::Zero(common);
  for (const AcfCurve& c : curves) out.values += c.values.head(common);
  out.values /= static_cast<double>(curves.size());
  out.source_len = min_n;
  return out;
}

}  // namespace lrdkit

#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "lrdkit/errors.hpp"
#include "lrdkit/trace.hpp"

namespace lrdkit {

/// Sample autocorrelation values rho(0..L), lags in samples.
struct AcfCurve {
  Eigen::ArrayXd values;
  Eigen::Index source_len = 0;
  /// Smallest lag whose correlation fell below the truncation threshold.
  std::optional<Eigen::Index> truncation_lag;

  Eigen::Index max_lag() const { return values.size() - 1; }
};

inline constexpr double kDefaultAcfThreshold = 0.5;

/// Default lag horizon: min(n/4, 4096). Estimates beyond n/4 are noise.
Eigen::Index default_max_lag(Eigen::Index n);

/// Biased (1/N-normalized) autocorrelation estimator,
///   rho(k) = sum_{t<n-k} (x_t - xbar)(x_{t+k} - xbar) / sum_t (x_t - xbar)^2,
/// evaluated for k = 0..max_lag. The 1/N normalization keeps |rho| <= 1.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> autocorrelation(
    const Eigen::ArrayBase<Derived>& x, Eigen::Index max_lag) {
  using Scalar = typename Derived::Scalar;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  const Array xs = x.derived();
  const Eigen::Index n = xs.size();
  if (n < 2) throw ArgumentError("autocorrelation: need at least 2 samples");
  if (max_lag < 0 || max_lag >= n)
    throw ArgumentError("autocorrelation: max_lag must be in [0, n)");

  const Array centered = xs - xs.mean();
  const Scalar denom = centered.square().sum();
  if (!(denom > Scalar(0)))
    throw DegenerateSeriesError("autocorrelation: series has zero variance");

  Array rho(max_lag + 1);
  rho[0] = Scalar(1);
  for (Eigen::Index k = 1; k <= max_lag; ++k)
    rho[k] = (centered.head(n - k) * centered.tail(n - k)).sum() / denom;
  return rho;
}

/// ACF of a gap-free trace. max_lag < 0 selects default_max_lag(n).
AcfCurve acf_estimate(const ChannelTrace& trace, Eigen::Index max_lag = -1);
AcfCurve acf_estimate(const Eigen::ArrayXd& samples, Eigen::Index max_lag = -1);

/// Sets truncation_lag to the first lag k with rho(k) < threshold; all lags
/// with rho >= threshold are kept for fitting. Throws InsufficientDataError
/// when the retained fitting range (lags 1 .. truncation_lag-1) would hold
/// fewer than 5 points. A curve that never crosses keeps truncation unset.
AcfCurve truncate_at_threshold(const AcfCurve& curve,
                               double threshold = kDefaultAcfThreshold);

/// Pointwise mean over the common lag range; source_len is the minimum
/// of the inputs' source lengths. Truncation metadata is not carried over.
AcfCurve average_acf(const std::vector<AcfCurve>& curves);

}  // namespace lrdkit

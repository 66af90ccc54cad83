#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "lrdkit/errors.hpp"
#include "lrdkit/trace.hpp"

namespace lrdkit {

/// Rescaled range R/S of one window: mean-adjust, accumulate the running
/// sums Z, take R = max(Z) - min(Z) and S = population (1/n) standard
/// deviation. Throws DegenerateSeriesError on a constant window.
///
/// All reductions run in index order so the result is reproducible and can
/// be checked bit-for-bit against a plain re-implementation.
template <typename Derived>
typename Derived::Scalar rs_statistic(const Eigen::ArrayBase<Derived>& window) {
  using Scalar = typename Derived::Scalar;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  const Array w = window.derived();
  const Eigen::Index n = w.size();
  if (n < 2) throw ArgumentError("rs_statistic: window needs at least 2 samples");

  Scalar sum = Scalar(0);
  for (Eigen::Index t = 0; t < n; ++t) sum += w[t];
  const Scalar mean = sum / static_cast<Scalar>(n);

  Scalar sq_sum = Scalar(0);
  for (Eigen::Index t = 0; t < n; ++t)
    sq_sum += (w[t] - mean) * (w[t] - mean);
  const Scalar s = std::sqrt(sq_sum / static_cast<Scalar>(n));
  if (!(s > Scalar(0)))
    throw DegenerateSeriesError("rs_statistic: constant window (S = 0)");

  Scalar z = w[0] - mean;
  Scalar zmin = z, zmax = z;
  for (Eigen::Index t = 1; t < n; ++t) {
    z += w[t] - mean;
    zmin = std::min(zmin, z);
    zmax = std::max(zmax, z);
  }
  return (zmax - zmin) / s;
}

/// Mean R/S over all full non-overlapping windows of one span.
struct RsPoint {
  Eigen::Index span = 0;
  double mean_rs = 0.0;
  Eigen::Index window_count = 0;
};

struct RsOptions {
  Eigen::Index min_span = 8;
  /// Optional cap k on the halvings, spans n, n/2, ..., n/2^k.
  std::optional<int> max_halvings;
};

/// R/S points over dyadic spans n, n/2, n/4, ... (floor division) down to
/// min_span. Each span is cut into floor(n/span) consecutive windows;
/// degenerate windows are skipped and spans with no surviving window are
/// omitted. Throws InsufficientDataError when fewer than 4 spans survive.
std::vector<RsPoint> rs_curve(const Eigen::ArrayXd& samples,
                              const RsOptions& options = {});
std::vector<RsPoint> rs_curve(const ChannelTrace& trace,
                              const RsOptions& options = {});

enum class Persistence { AntiPersistent, Uncorrelated, Persistent };

/// Half-width of the "uncorrelated" band around h = 0.5.
inline constexpr double kPersistenceBand = 0.05;

struct HurstEstimate {
  std::vector<RsPoint> points;
  double h = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Persistence classification = Persistence::Uncorrelated;
  /// False flags an estimate outside [0, 1]; the value is kept as-is.
  bool in_unit_range = true;
};

/// Ordinary least squares of log(mean_rs) on log(span), natural logs.
/// h is the slope. Requires >= 4 points with distinct spans.
HurstEstimate hurst_regress(const std::vector<RsPoint>& points);

HurstEstimate estimate_hurst(const Eigen::ArrayXd& samples,
                             const RsOptions& options = {});

/// Group estimate: every trace is trimmed to the group's minimum length so
/// the dyadic spans coincide, R/S curves are computed per trace, mean_rs is
/// averaged across traces at each span shared by all of them, and the
/// averaged points are regressed. All traces must be gap-free and of one
/// link class.
HurstEstimate group_hurst(const std::vector<ChannelTrace>& traces,
                          const RsOptions& options = {});

Persistence classify_hurst(double h);
std::string_view to_string(Persistence p);

}  // namespace lrdkit

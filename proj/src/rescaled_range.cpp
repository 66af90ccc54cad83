#include "lrdkit/rescaled_range.hpp"

#include <algorithm>
#include <cmath>
#include <format>

namespace lrdkit {

namespace {

std::vector<Eigen::Index> dyadic_spans(Eigen::Index n, const RsOptions& options) {
  std::vector<Eigen::Index> spans;
  Eigen::Index tau = n;
  int halvings = 0;
  while (tau >= options.min_span) {
    spans.push_back(tau);
    if (options.max_halvings && halvings >= *options.max_halvings) break;
    tau /= 2;
    ++halvings;
  }
  return spans;
}

}  // namespace

std::vector<RsPoint> rs_curve(const Eigen::ArrayXd& samples,
                              const RsOptions& options) {
  const Eigen::Index n = samples.size();
  if (n < kMinAnalysisLength)
    throw ArgumentError(std::format(
        "rs_curve: need at least {} samples, got {}", kMinAnalysisLength, n));
  if (options.min_span < 8)
    throw ArgumentError("rs_curve: min_span must be at least 8");

  std::vector<RsPoint> points;
  for (Eigen::Index tau : dyadic_spans(n, options)) {
    const Eigen::Index window_count = n / tau;  // trailing remainder unused
    double sum = 0.0;
    Eigen::Index surviving = 0;
    for (Eigen::Index w = 0; w < window_count; ++w) {
      try {
        sum += rs_statistic(samples.segment(w * tau, tau));
        ++surviving;
      } catch (const DegenerateSeriesError&) {
        // constant window; skip it
      }
    }
    if (surviving > 0)
      points.push_back({tau, sum / static_cast<double>(surviving), surviving});
  }

  if (points.size() < 4)
    throw InsufficientDataError(std::format(
        "rs_curve: only {} usable span(s); the Hurst regression needs 4",
        points.size()));
  return points;
}

std::vector<RsPoint> rs_curve(const ChannelTrace& trace,
                              const RsOptions& options) {
  if (!trace.gap_free())
    throw ArgumentError("rs_curve: trace has unresolved missing slots");
  return rs_curve(trace.samples, options);
}

HurstEstimate hurst_regress(const std::vector<RsPoint>& points) {
  if (points.size() < 4)
    throw ArgumentError("hurst_regress: need at least 4 R/S points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].span == points[i - 1].span)
      throw ArgumentError("hurst_regress: spans must be distinct");

  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Eigen::ArrayXd log_tau(m), log_rs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(points[i].mean_rs > 0.0))
      throw ArgumentError("hurst_regress: mean R/S must be positive");
    log_tau[i] = std::log(static_cast<double>(points[i].span));
    log_rs[i] = std::log(points[i].mean_rs);
  }

  const double tau_mean = log_tau.mean();
  const double rs_mean = log_rs.mean();
  const Eigen::ArrayXd dt = log_tau - tau_mean;
  const Eigen::ArrayXd dr = log_rs - rs_mean;
  const double sxx = dt.square().sum();
  const double sxy = (dt * dr).sum();

  HurstEstimate est;
  est.points = points;
  est.h = sxy / sxx;
  est.intercept = rs_mean - est.h * tau_mean;
  const double ss_tot = dr.square().sum();
  const double ss_res =
      (dr - est.h * dt).square().sum();
  est.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  est.classification = classify_hurst(est.h);
  est.in_unit_range = est.h >= 0.0 && est.h <= 1.0;
  return est;
}

HurstEstimate estimate_hurst(const Eigen::ArrayXd& samples,
                             const RsOptions& options) {
  return hurst_regress(rs_curve(samples, options));
}

HurstEstimate group_hurst(const std::vector<ChannelTrace>& traces,
                          const RsOptions& options) {
  if (traces.empty()) throw ArgumentError("group_hurst: empty trace group");

  const LinkClass cls = classify_link(traces.front().link);
  Eigen::Index min_len = traces.front().samples.size();
  for (const ChannelTrace& t : traces) {
    if (classify_link(t.link) != cls)
      throw ArgumentError("group_hurst: traces span multiple link classes");
    if (!t.gap_free())
      throw ArgumentError("group_hurst: trace has unresolved missing slots");
    min_len = std::min(min_len, t.samples.size());
  }

  // Trimming every trace to the common length keeps the dyadic spans
  // identical across the group, so points line up span-for-span.
  std::vector<std::vector<RsPoint>> curves;
  curves.reserve(traces.size());
  for (const ChannelTrace& t : traces)
    curves.push_back(rs_curve(t.samples.head(min_len), options));

  std::vector<RsPoint> averaged;
  for (const RsPoint& lead : curves.front()) {
    double sum = lead.mean_rs;
    Eigen::Index windows = lead.window_count;
    std::size_t present = 1;
    for (std::size_t c = 1; c < curves.size(); ++c) {
      for (const RsPoint& p : curves[c]) {
        if (p.span == lead.span) {
          sum += p.mean_rs;
          windows += p.window_count;
          ++present;
          break;
        }
      }
    }
    // Only spans every trace produced survive into the group average.
    if (present == curves.size())
      averaged.push_back(
          {lead.span, sum / static_cast<double>(present), windows});
  }

  if (averaged.size() < 4)
    throw InsufficientDataError(
        "group_hurst: fewer than 4 spans shared by all traces");
  return hurst_regress(averaged);
}

Persistence classify_hurst(double h) {
  if (h < 0.5 - kPersistenceBand) return Persistence::AntiPersistent;
  if (h > 0.5 + kPersistenceBand) return Persistence::Persistent;
  return Persistence::Uncorrelated;
}

std::string_view to_string(Persistence p) {
  switch (p) {
    case Persistence::AntiPersistent: return "antipersistent";
    case Persistence::Uncorrelated: return "uncorrelated";
    case Persistence::Persistent: return "persistent";
  }
  return "??";
}

}  // namespace lrdkit

#include "lrdkit/decay_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <format>
#include <limits>

namespace lrdkit {

Eigen::ArrayXd evaluate(const DecayModel& model, const Eigen::ArrayXd& x) {
  if (model.kind == DecayModelKind::Power)
    return model.a * Eigen::pow(x, model.b);
  return model.a * Eigen::exp(model.b * x);
}

Eigen::Vector2d model_gradient(const DecayModel& model, double x) {
  if (model.kind == DecayModelKind::Power) {
    const double xb = std::pow(x, model.b);
    return {xb, model.a * std::log(x) * xb};
  }
  const double ebx = std::exp(model.b * x);
  return {ebx, model.a * x * ebx};
}

double sse(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
           const DecayModel& model) {
  if (x.size() == 0 || x.size() != y.size())
    throw ArgumentError("sse: need matching non-empty x and y");
  return (y - evaluate(model, x)).square().sum();
}

namespace {

// Least-squares start from the log-linearized model: ln y = ln a + b ln x
// (power) or ln y = ln a + b x (exponential). Nonpositive ordinates are
// clamped to 1e-6 so the logarithm stays defined.
DecayModel loglinear_init(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                          DecayModelKind kind, bool& clamped) {
  constexpr double kClamp = 1e-6;
  clamped = (y <= 0.0).any();
  const Eigen::ArrayXd ly = y.max(kClamp).log();
  const Eigen::ArrayXd t = kind == DecayModelKind::Power ? x.log() : x;

  Eigen::Matrix<double, Eigen::Dynamic, 2> design(x.size(), 2);
  design.col(0).setOnes();
  design.col(1) = t.matrix();
  const Eigen::Vector2d sol =
      (design.transpose() * design)
          .ldlt()
          .solve(design.transpose() * ly.matrix());
  return {kind, std::exp(sol[0]), sol[1]};
}

}  // namespace

FitResult fit_points(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                     DecayModelKind kind, const FitOptions& options) {
  const Eigen::Index m = x.size();
  if (m < 5 || y.size() != m)
    throw ArgumentError("fit_points: need at least 5 (x, y) points");
  if (kind == DecayModelKind::Power && (x < 1.0).any())
    throw ArgumentError("fit_points: power model needs abscissae >= 1");

  FitResult result;
  result.model = loglinear_init(x, y, kind, result.init_clamped);

  double current_sse = sse(x, y, result.model);
  double damping = options.damping_init;
  int iteration = 0;
  bool converged = false;

  // Damped Gauss-Newton: solve (J'J + damping diag(J'J)) step = J' r,
  // accept only strict SSE decreases. Damping grows x10 on a rejected
  // step and shrinks /10 on an accepted one.
  while (iteration < options.max_iterations) {
    ++iteration;
    const Eigen::ArrayXd residual = y - evaluate(result.model, x);
    Eigen::Matrix<double, Eigen::Dynamic, 2> jac(m, 2);
    for (Eigen::Index i = 0; i < m; ++i)
      jac.row(i) = model_gradient(result.model, x[i]).transpose();

    const Eigen::Vector2d jtr = jac.transpose() * residual.matrix();
    // Gradient of SSE w.r.t. (a, b) is -2 J'r.
    if ((2.0 * jtr).lpNorm<Eigen::Infinity>() < options.gradient_tol) {
      converged = true;
      break;
    }

    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    Eigen::Matrix2d damped = jtj;
    damped(0, 0) += damping * std::max(jtj(0, 0), 1e-300);
    damped(1, 1) += damping * std::max(jtj(1, 1), 1e-300);

    const Eigen::Vector2d step = damped.ldlt().solve(jtr);
    const DecayModel candidate{kind, result.model.a + step[0],
                               result.model.b + step[1]};
    const double candidate_sse =
        std::isfinite(candidate.a) && std::isfinite(candidate.b)
            ? sse(x, y, candidate)
            : std::numeric_limits<double>::infinity();

    if (std::isfinite(candidate_sse) && candidate_sse < current_sse) {
      result.model = candidate;
      current_sse = candidate_sse;
      damping = std::max(damping / 10.0, 1e-15);
      const double scale =
          std::hypot(result.model.a, result.model.b) +
          std::numeric_limits<double>::epsilon();
      if (step.norm() < options.step_tol * scale) {
        converged = true;
        break;
      }
    } else {
      damping *= 10.0;
      if (damping > 1e15) break;  // stuck; report non-convergence
    }
  }

  result.sse = current_sse;
  result.iterations = iteration;
  result.converged = converged;
  result.decay_shape_ok = result.model.a > 0.0 && result.model.b < 0.0;
  return result;
}

FitResult fit_model(const AcfCurve& curve, DecayModelKind kind,
                    const FitOptions& options) {
  const Eigen::Index last =
      curve.truncation_lag ? *curve.truncation_lag - 1 : curve.max_lag();
  if (last < 5)
    throw ArgumentError(
        "fit_model: fewer than 5 lags in the retained fitting range");
  const Eigen::Index count = last;  // lags 1..last
  const Eigen::ArrayXd x =
      Eigen::ArrayXd::LinSpaced(count, 1.0, static_cast<double>(last));
  const Eigen::ArrayXd y = curve.values.segment(1, count);

  FitResult result = fit_points(x, y, kind, options);
  result.fit_range = {1, last};
  return result;
}

DecayComparison compare_fits(const FitResult& power,
                             const FitResult& exponential) {
  if (power.model.kind != DecayModelKind::Power ||
      exponential.model.kind != DecayModelKind::Exponential)
    throw ArgumentError("compare_fits: expected a power fit and an exponential fit");
  if (!(power.fit_range == exponential.fit_range))
    throw ArgumentError(std::format(
        "compare_fits: fit ranges differ ([{}, {}] vs [{}, {}])",
        power.fit_range.first, power.fit_range.last,
        exponential.fit_range.first, exponential.fit_range.last));

  DecayComparison cmp;
  cmp.sse_ratio = power.sse / exponential.sse;
  const double delta = power.sse - exponential.sse;
  if (std::abs(delta) < 1e-12)
    cmp.verdict = DecayVerdict::Indeterminate;
  else
    cmp.verdict = delta < 0.0 ? DecayVerdict::PowerLike
                              : DecayVerdict::ExponentialLike;
  return cmp;
}

std::string_view to_string(DecayVerdict verdict) {
  switch (verdict) {
    case DecayVerdict::PowerLike: return "power_like";
    case DecayVerdict::ExponentialLike: return "exponential_like";
    case DecayVerdict::Indeterminate: return "indeterminate";
  }
  return "??";
}

std::string_view to_string(DecayModelKind kind) {
  switch (kind) {
    case DecayModelKind::Power: return "power";
    case DecayModelKind::Exponential: return "exponential";
  }
  return "??";
}

}  // namespace lrdkit

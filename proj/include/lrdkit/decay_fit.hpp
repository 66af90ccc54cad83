#pragma once

#include <Eigen/Core>
#include <cmath>

#include "lrdkit/acf.hpp"

namespace lrdkit {

enum class DecayModelKind { Power, Exponential };

/// Single-term decay model: a*x^b (Power) or a*exp(b*x) (Exponential).
/// A decreasing decay has a > 0 and b < 0.
struct DecayModel {
  DecayModelKind kind = DecayModelKind::Power;
  double a = 1.0;
  double b = 0.0;
};

template <typename Scalar>
Scalar evaluate(const DecayModel& model, Scalar x) {
  return model.kind == DecayModelKind::Power
             ? Scalar(model.a) * std::pow(x, Scalar(model.b))
             : Scalar(model.a) * std::exp(Scalar(model.b) * x);
}

Eigen::ArrayXd evaluate(const DecayModel& model, const Eigen::ArrayXd& x);

/// Partial derivatives (df/da, df/db) at abscissa x.
Eigen::Vector2d model_gradient(const DecayModel& model, double x);

/// Exact sum of squared residuals of the model over (x, y) points.
double sse(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
           const DecayModel& model);

/// Inclusive lag interval a fit was computed on.
struct LagRange {
  Eigen::Index first = 0;
  Eigen::Index last = 0;

  Eigen::Index count() const { return last - first + 1; }
  friend bool operator==(const LagRange&, const LagRange&) = default;
};

struct FitOptions {
  double gradient_tol = 1e-10;     // infinity norm of the SSE gradient
  double step_tol = 1e-12;         // relative parameter step
  int max_iterations = 200;
  double damping_init = 1e-3;      // multiplied by 10 on reject, /10 on accept
};

struct FitResult {
  DecayModel model;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
  LagRange fit_range;
  /// a > 0 and b < 0, i.e. the fit describes a decreasing decay.
  bool decay_shape_ok = true;
  /// Nonpositive ordinates were clamped to 1e-6 for the log-linearized start.
  bool init_clamped = false;
};

/// Fits the model to the curve's retained range (lags 1..truncation_lag-1,
/// or 1..max_lag when no truncation is set) by damped Gauss-Newton with
/// analytic Jacobians, started from a log-linearized least-squares estimate.
FitResult fit_model(const AcfCurve& curve, DecayModelKind kind,
                    const FitOptions& options = {});

/// Fit on explicit points; x must be positive for the power model.
FitResult fit_points(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                     DecayModelKind kind, const FitOptions& options = {});

enum class DecayVerdict { PowerLike, ExponentialLike, Indeterminate };

struct DecayComparison {
  DecayVerdict verdict = DecayVerdict::Indeterminate;
  /// power SSE / exponential SSE.
  double sse_ratio = 1.0;
};

/// SSE comparison of a power fit against an exponential fit computed on the
/// identical lag range. |sse difference| < 1e-12 is a tie.
DecayComparison compare_fits(const FitResult& power,
                             const FitResult& exponential);

std::string_view to_string(DecayVerdict verdict);
std::string_view to_string(DecayModelKind kind);

}  // namespace lrdkit

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "lrdkit/acf.hpp"
#include "lrdkit/decay_fit.hpp"
#include "lrdkit/errors.hpp"
#include "lrdkit/synth.hpp"

using namespace lrdkit;

namespace {

Eigen::ArrayXd lags(Eigen::Index first, Eigen::Index last) {
  Eigen::ArrayXd x(last - first + 1);
  for (Eigen::Index k = first; k <= last; ++k) x[k - first] = static_cast<double>(k);
  return x;
}

// Log-linearized least squares, coded independently of the implementation,
// to pin down the initialization point the fit must never fall behind.
DecayModel loglin_oracle(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                         DecayModelKind kind) {
  const Eigen::Index n = x.size();
  double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = kind == DecayModelKind::Power ? std::log(x[i]) : x[i];
    const double l = std::log(std::max(y[i], 1e-6));
    st += t;
    sl += l;
    stt += t * t;
    stl += t * l;
  }
  const double b = (n * stl - st * sl) / (n * stt - st * st);
  const double ln_a = (sl - b * st) / n;
  return {kind, std::exp(ln_a), b};
}

}  // namespace

TEST_CASE("sse is the exact sum of squared residuals") {
  const Eigen::ArrayXd x = lags(1, 4);
  const DecayModel model{DecayModelKind::Power, 1.0, -1.0};

  CHECK(sse(x, evaluate(model, x), model) == 0.0);

  Eigen::ArrayXd x1(1), y1(1);
  x1[0] = 2.0;
  y1[0] = 1.0;
  const DecayModel half{DecayModelKind::Power, 0.5, 0.0};
  CHECK(sse(x1, y1, half) == doctest::Approx(0.25).epsilon(1e-15));

  Eigen::ArrayXd x2(2), y2(2);
  x2 << 1.0, 2.0;
  y2 << 1.0, 0.5;
  CHECK(sse(x2, y2, model) == 0.0);

  CHECK_THROWS_AS(sse(Eigen::ArrayXd(), Eigen::ArrayXd(), model), ArgumentError);
}

TEST_CASE("noiseless power data is recovered to 1e-6") {
  const Eigen::ArrayXd x = lags(1, 50);
  const DecayModel truth{DecayModelKind::Power, 0.9, -0.2};
  const FitResult fit = fit_points(x, evaluate(truth, x), DecayModelKind::Power);
  CHECK(std::abs(fit.model.a - 0.9) < 1e-6);
  CHECK(std::abs(fit.model.b - -0.2) < 1e-6);
  CHECK(fit.sse < 1e-12);
  CHECK(fit.converged);
  CHECK(fit.decay_shape_ok);
}

TEST_CASE("noiseless exponential data is recovered to 1e-6") {
  const Eigen::ArrayXd x = lags(1, 50);
  const DecayModel truth{DecayModelKind::Exponential, 0.8, -0.005};
  const FitResult fit =
      fit_points(x, evaluate(truth, x), DecayModelKind::Exponential);
  CHECK(std::abs(fit.model.a - 0.8) < 1e-6);
  CHECK(std::abs(fit.model.b - -0.005) < 1e-6);
  CHECK(fit.sse < 1e-12);
  CHECK(fit.converged);
}

TEST_CASE("reference power curve coefficients are recovered through fit_model") {
  AcfCurve curve;
  curve.values.resize(300);
  curve.values[0] = 1.0;
  for (Eigen::Index k = 1; k < 300; ++k)
    curve.values[k] = 1.067 * std::pow(static_cast<double>(k), -0.152);
  curve.source_len = 3000;

  const AcfCurve cut = truncate_at_threshold(curve);
  const FitResult fit = fit_model(cut, DecayModelKind::Power);
  CHECK(fit.fit_range.first == 1);
  CHECK(fit.fit_range.last == 146);
  CHECK(std::abs(fit.model.a - 1.067) < 1e-6);
  CHECK(std::abs(fit.model.b - -0.152) < 1e-6);
}

TEST_CASE("analytic model gradients match central differences") {
  CounterRng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const double a = 0.1 + 1.9 * rng.next_unit();
    const double b = -0.5 + 0.499 * rng.next_unit();
    const double x = 1.0 + 199.0 * rng.next_unit();
    for (DecayModelKind kind :
         {DecayModelKind::Power, DecayModelKind::Exponential}) {
      const DecayModel m{kind, a, b};
      const Eigen::Vector2d grad = model_gradient(m, x);

      const double ha = 1e-6 * std::max(std::abs(a), 1.0);
      const double hb = 1e-7;
      const DecayModel ap{kind, a + ha, b}, am{kind, a - ha, b};
      const DecayModel bp{kind, a, b + hb}, bm{kind, a, b - hb};
      const double fd_a = (evaluate(ap, x) - evaluate(am, x)) / (2 * ha);
      const double fd_b = (evaluate(bp, x) - evaluate(bm, x)) / (2 * hb);

      CHECK(std::abs(grad[0] - fd_a) <=
            std::max(1e-6, 1e-4 * std::abs(grad[0])));
      CHECK(std::abs(grad[1] - fd_b) <=
            std::max(1e-6, 1e-4 * std::abs(grad[1])));
    }
  }
}

TEST_CASE("SSE gradient vanishes against central differences at convergence") {
  // noisy power-ish data
  GaussianSampler gauss(9);
  const Eigen::ArrayXd x = lags(1, 60);
  const DecayModel truth{DecayModelKind::Power, 1.05, -0.18};
  Eigen::ArrayXd y = evaluate(truth, x);
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += 0.01 * gauss.next();

  for (DecayModelKind kind :
       {DecayModelKind::Power, DecayModelKind::Exponential}) {
    const FitResult fit = fit_points(x, y, kind);
    CHECK(fit.converged);

    auto sse_at = [&](double a, double b) {
      return sse(x, y, DecayModel{kind, a, b});
    };
    const double h = 1e-7;
    const double g_a =
        (sse_at(fit.model.a + h, fit.model.b) - sse_at(fit.model.a - h, fit.model.b)) /
        (2 * h);
    const double g_b =
        (sse_at(fit.model.a, fit.model.b + h) - sse_at(fit.model.a, fit.model.b - h)) /
        (2 * h);
    CHECK(std::abs(g_a) < 1e-4);
    CHECK(std::abs(g_b) < 1e-4);
  }
}

TEST_CASE("fit never ends above its log-linearized start") {
  GaussianSampler gauss(31);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::ArrayXd x = lags(1, 40);
    Eigen::ArrayXd y(40);
    for (Eigen::Index i = 0; i < 40; ++i)
      y[i] = 0.9 * std::pow(x[i], -0.3) + 0.05 * gauss.next();
    for (DecayModelKind kind :
         {DecayModelKind::Power, DecayModelKind::Exponential}) {
      const FitResult fit = fit_points(x, y, kind);
      const double init_sse = sse(x, y, loglin_oracle(x, y, kind));
      CHECK(fit.sse <= init_sse * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("fitting is deterministic bit-for-bit") {
  GaussianSampler gauss(55);
  const Eigen::ArrayXd x = lags(1, 30);
  Eigen::ArrayXd y(30);
  for (Eigen::Index i = 0; i < 30; ++i)
    y[i] = 0.8 * std::exp(-0.02 * x[i]) + 0.02 * gauss.next();

  const FitResult f1 = fit_points(x, y, DecayModelKind::Exponential);
  const FitResult f2 = fit_points(x, y, DecayModelKind::Exponential);
  CHECK(std::memcmp(&f1.model.a, &f2.model.a, sizeof(double)) == 0);
  CHECK(std::memcmp(&f1.model.b, &f2.model.b, sizeof(double)) == 0);
  CHECK(std::memcmp(&f1.sse, &f2.sse, sizeof(double)) == 0);
  CHECK(f1.iterations == f2.iterations);
}

TEST_CASE("compare_fits reproduces the reference SSE ordering") {
  FitResult power, expo;
  power.model = {DecayModelKind::Power, 1.067, -0.152};
  power.sse = 0.035;
  power.fit_range = {1, 146};
  expo.model = {DecayModelKind::Exponential, 0.805, -0.00541};
  expo.sse = 0.11;
  expo.fit_range = {1, 146};

  const DecayComparison cmp = compare_fits(power, expo);
  CHECK(cmp.verdict == DecayVerdict::PowerLike);
  CHECK(cmp.sse_ratio == doctest::Approx(0.318).epsilon(1e-2));

  expo.sse = power.sse;
  CHECK(compare_fits(power, expo).verdict == DecayVerdict::Indeterminate);

  expo.fit_range = {1, 100};
  CHECK_THROWS_AS(compare_fits(power, expo), ArgumentError);

  CHECK_THROWS_AS(compare_fits(expo, power), ArgumentError);
}

TEST_CASE("AR(1) with phi=0.95 reads as exponential-like through the pipeline") {
  int wins = 0;
  for (int s = 0; s < 20; ++s) {
    SynthSpec spec;
    spec.kind = SynthKind::Ar1;
    spec.phi = 0.95;
    spec.n = 1 << 15;
    spec.seed = 500 + static_cast<std::uint64_t>(s);
    const AcfCurve curve = acf_estimate(generate(spec), 64);
    const AcfCurve cut = truncate_at_threshold(curve);
    const FitResult power = fit_model(cut, DecayModelKind::Power);
    const FitResult expo = fit_model(cut, DecayModelKind::Exponential);
    if (compare_fits(power, expo).verdict == DecayVerdict::ExponentialLike)
      ++wins;
  }
  CHECK(wins >= 16);  // >= 80% of 20 seeds
}

TEST_CASE("degenerate fit ranges are rejected") {
  const Eigen::ArrayXd x = lags(1, 4);
  CHECK_THROWS_AS(fit_points(x, x, DecayModelKind::Power), ArgumentError);

  Eigen::ArrayXd bad = lags(1, 8);
  bad[0] = 0.5;  // below 1; power model undefined on the lag grid
  CHECK_THROWS_AS(fit_points(bad, bad, DecayModelKind::Power), ArgumentError);

  AcfCurve curve;
  curve.values = Eigen::ArrayXd::LinSpaced(4, 1.0, 0.9);
  curve.source_len = 10;
  CHECK_THROWS_AS(fit_model(curve, DecayModelKind::Power), ArgumentError);
}

TEST_CASE("nonpositive ordinates are clamped for the start and flagged") {
  const Eigen::ArrayXd x = lags(1, 10);
  Eigen::ArrayXd y = Eigen::ArrayXd::Constant(10, 0.5);
  y[9] = -0.01;
  const FitResult fit = fit_points(x, y, DecayModelKind::Exponential);
  CHECK(fit.init_clamped);
}

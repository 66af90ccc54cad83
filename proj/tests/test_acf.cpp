#include <doctest.h>

#include <cmath>
#include <vector>

#include "lrdkit/acf.hpp"
#include "lrdkit/errors.hpp"
#include "lrdkit/synth.hpp"

using namespace lrdkit;

namespace {

// Independent oracle: plain-loop biased autocorrelation, no Eigen.
std::vector<double> acf_oracle(const std::vector<double>& x, int max_lag) {
  const int n = static_cast<int>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);
  std::vector<double> rho(max_lag + 1);
  rho[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (int t = 0; t + k < n; ++t) num += (x[t] - mean) * (x[t + k] - mean);
    rho[k] = num / denom;
  }
  return rho;
}

Eigen::ArrayXd to_array(const std::vector<double>& x) {
  return Eigen::Map<const Eigen::ArrayXd>(x.data(),
                                          static_cast<Eigen::Index>(x.size()));
}

}  // namespace

TEST_CASE("alternating series has rho(1) = -0.75") {
  const Eigen::ArrayXd x = to_array({1.0, -1.0, 1.0, -1.0});
  const Eigen::ArrayXd rho = autocorrelation(x, 1);
  CHECK(rho[0] == 1.0);
  CHECK(rho[1] == doctest::Approx(-0.75).epsilon(1e-12));
}

TEST_CASE("autocorrelation matches the plain-loop oracle") {
  GaussianSampler gauss(301);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> x(200 + 37 * rep);
    for (double& v : x) v = gauss.next();
    const auto expected = acf_oracle(x, 50);
    const Eigen::ArrayXd got = autocorrelation(to_array(x), 50);
    for (int k = 0; k <= 50; ++k)
      CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("autocorrelation is invariant under affine transforms") {
  GaussianSampler gauss(77);
  std::vector<double> raw(512);
  for (double& v : raw) v = gauss.next();
  const Eigen::ArrayXd x = to_array(raw);
  const Eigen::ArrayXd rho = autocorrelation(x, 40);
  const Eigen::ArrayXd rho_scaled = autocorrelation((-3.25 * x + 17.0).eval(), 40);
  for (int k = 0; k <= 40; ++k)
    CHECK(std::abs(rho[k] - rho_scaled[k]) < 1e-9);
}

TEST_CASE("biased estimator keeps |rho| within 1 + 1e-9") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    SynthSpec spec;
    spec.kind = SynthKind::Fgn;
    spec.hurst = 0.85;
    spec.n = 300;
    spec.seed = seed;
    const Eigen::ArrayXd rho = autocorrelation(generate(spec), 299 / 4);
    for (Eigen::Index k = 0; k < rho.size(); ++k)
      CHECK(std::abs(rho[k]) <= 1.0 + 1e-9);
  }
}

TEST_CASE("degenerate and invalid inputs are rejected") {
  CHECK_THROWS_AS(autocorrelation(Eigen::ArrayXd::Constant(32, 5.0), 4),
                  DegenerateSeriesError);
  CHECK_THROWS_AS(autocorrelation(Eigen::ArrayXd::Random(16), 16), ArgumentError);
  CHECK_THROWS_AS(autocorrelation(Eigen::ArrayXd::Random(1), 0), ArgumentError);
}

TEST_CASE("default lag horizon is min(n/4, 4096)") {
  CHECK(default_max_lag(100) == 25);
  CHECK(default_max_lag(1 << 15) == 4096);
  CHECK(default_max_lag(1 << 20) == 4096);
}

TEST_CASE("AR(1) sample ACF converges to phi^k") {
  // max relative error over k <= 10 below 10% in at least 19 of 20 seeds
  int ok = 0;
  for (int s = 0; s < 20; ++s) {
    SynthSpec spec;
    spec.kind = SynthKind::Ar1;
    spec.phi = 0.9;
    spec.n = 1 << 15;
    spec.seed = 100 + static_cast<std::uint64_t>(s);
    const Eigen::ArrayXd rho = autocorrelation(generate(spec), 10);
    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double truth = std::pow(0.9, k);
      worst = std::max(worst, std::abs(rho[k] - truth) / truth);
    }
    if (worst < 0.10) ++ok;
  }
  CHECK(ok >= 19);
}

TEST_CASE("white noise ACF stays below 0.05 out to lag 20") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull, 15ull}) {
    SynthSpec spec;
    spec.kind = SynthKind::White;
    spec.n = 1 << 14;
    spec.seed = seed;
    const Eigen::ArrayXd rho = autocorrelation(generate(spec), 20);
    for (int k = 1; k <= 20; ++k) CHECK(std::abs(rho[k]) < 0.05);
  }
}

TEST_CASE("truncation finds the first crossing and keeps lags above it") {
  AcfCurve curve;
  curve.values = to_array({1.0, 0.9, 0.8, 0.7, 0.6, 0.55, 0.45, 0.3});
  curve.source_len = 100;
  const AcfCurve cut = truncate_at_threshold(curve);
  REQUIRE(cut.truncation_lag.has_value());
  CHECK(*cut.truncation_lag == 6);  // fitting range 1..5
}

TEST_CASE("immediate crossing leaves too little decay range") {
  AcfCurve curve;
  curve.values = to_array({1.0, 0.3, 0.2, 0.1, 0.05, 0.01});
  curve.source_len = 100;
  CHECK_THROWS_AS(truncate_at_threshold(curve), InsufficientDataError);
}

TEST_CASE("truncation of the reference power decay") {
  // rho(k) = 1.067 k^-0.152; the oracle scans for the first lag below 0.5.
  const double a = 1.067, b = -0.152;
  AcfCurve curve;
  curve.values.resize(400);
  curve.values[0] = 1.0;
  for (Eigen::Index k = 1; k < 400; ++k)
    curve.values[k] = a * std::pow(static_cast<double>(k), b);
  curve.source_len = 4000;

  Eigen::Index expected = -1;
  for (Eigen::Index k = 1; k < 400; ++k) {
    if (a * std::pow(static_cast<double>(k), b) < 0.5) {
      expected = k;
      break;
    }
  }
  REQUIRE(expected == 147);  // 1.067 k^-0.152 = 0.5 at k ~ 146.4

  const AcfCurve cut = truncate_at_threshold(curve);
  REQUIRE(cut.truncation_lag.has_value());
  CHECK(*cut.truncation_lag == expected);
}

TEST_CASE("a curve that never crosses keeps truncation unset") {
  AcfCurve curve;
  curve.values = Eigen::ArrayXd::LinSpaced(20, 1.0, 0.81);
  curve.source_len = 100;
  const AcfCurve cut = truncate_at_threshold(curve);
  CHECK_FALSE(cut.truncation_lag.has_value());
}

TEST_CASE("average_acf is the pointwise mean over the common range") {
  AcfCurve a, b;
  a.values = to_array({1.0, 0.8});
  a.source_len = 64;
  b.values = to_array({1.0, 0.6, 0.4});
  b.source_len = 128;

  const AcfCurve mean = average_acf({a, b});
  REQUIRE(mean.values.size() == 2);  // common lag range
  CHECK(mean.values[0] == 1.0);
  CHECK(mean.values[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(mean.source_len == 64);

  const AcfCurve same = average_acf({b, b});
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(same.values[k] == b.values[k]);

  CHECK_THROWS_AS(average_acf({}), ArgumentError);
}

TEST_CASE("acf_estimate requires a gap-free trace") {
  ChannelTrace t;
  t.samples = Eigen::ArrayXd::Random(128);
  t.missing.setConstant(128, false);
  t.missing[5] = true;
  CHECK_THROWS_AS(acf_estimate(t), ArgumentError);
}

#include "lrdkit/synth.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>
#include <format>
#include <vector>

namespace lrdkit {

void validate_spec(const SynthSpec& spec) {
  if (spec.n < 2) throw ArgumentError("synth: n must be at least 2");
  if (!(spec.sigma > 0.0)) throw ArgumentError("synth: sigma must be positive");
  if (spec.kind == SynthKind::Fgn || (spec.kind == SynthKind::Composite &&
                                      spec.base == SynthKind::Fgn)) {
    if (!(spec.hurst > 0.0 && spec.hurst < 1.0))
      throw ArgumentError(std::format(
          "synth: Hurst exponent must lie strictly in (0, 1), got {}", spec.hurst));
  }
  if (spec.kind == SynthKind::Ar1 || (spec.kind == SynthKind::Composite &&
                                      spec.base == SynthKind::Ar1)) {
    if (!(std::abs(spec.phi) < 1.0))
      throw ArgumentError(std::format(
          "synth: AR(1) coefficient must satisfy |phi| < 1, got {}", spec.phi));
  }
  if (spec.kind == SynthKind::Composite &&
      (spec.base == SynthKind::Ramp || spec.base == SynthKind::Composite))
    throw ArgumentError("synth: composite base must be fgn, white or ar1");
}

double fgn_autocovariance(double hurst, Eigen::Index lag, double sigma) {
  const double k = static_cast<double>(lag < 0 ? -lag : lag);
  const double two_h = 2.0 * hurst;
  return 0.5 * sigma * sigma *
         (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
          std::pow(std::abs(k - 1.0), two_h));
}

Eigen::ArrayXd gen_fgn_circulant(const SynthSpec& spec) {
  validate_spec(spec);
  const Eigen::Index n = spec.n;

  // Embed the n-point covariance in a circulant of size 2m, m the next
  // power of two >= n. Its FFT gives the eigenvalues; for fGn they come
  // out nonnegative, which is what makes the construction exact.
  Eigen::Index m = 1;
  while (m < n) m *= 2;
  const Eigen::Index big = 2 * m;

  std::vector<double> first_row(big);
  for (Eigen::Index j = 0; j <= m; ++j)
    first_row[j] = fgn_autocovariance(spec.hurst, j, spec.sigma);
  for (Eigen::Index j = m + 1; j < big; ++j) first_row[j] = first_row[big - j];

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, first_row);

  double max_eig = 0.0;
  for (const auto& v : spectrum) max_eig = std::max(max_eig, v.real());
  for (const auto& v : spectrum)
    if (v.real() < -1e-9 * max_eig)
      throw DegenerateSeriesError("circulant embedding is not nonnegative definite");

  // Hermitian-symmetric Gaussian spectrum with component variances
  // lambda_k / (2 * big) (lambda_k / big at the two real bins); its DFT is
  // a real sequence with exactly the embedded covariance.
  GaussianSampler gauss(spec.seed);
  std::vector<std::complex<double>> weights(big);
  const double norm = static_cast<double>(big);
  for (Eigen::Index j = 0; j <= m; ++j) {
    const double lambda = std::max(spectrum[j].real(), 0.0);
    if (j == 0 || j == m) {
      weights[j] = {std::sqrt(lambda / norm) * gauss.next(), 0.0};
    } else {
      const double scale = std::sqrt(lambda / (2.0 * norm));
      weights[j] = {scale * gauss.next(), scale * gauss.next()};
      weights[big - j] = std::conj(weights[j]);
    }
  }

  std::vector<std::complex<double>> field;
  fft.fwd(field, weights);

  Eigen::ArrayXd out(n);
  for (Eigen::Index t = 0; t < n; ++t) out[t] = field[t].real();
  return out;
}

Eigen::ArrayXd gen_fgn_conditional(const SynthSpec& spec) {
  validate_spec(spec);
  const Eigen::Index n = spec.n;

  Eigen::ArrayXd gamma(n);
  for (Eigen::Index k = 0; k < n; ++k)
    gamma[k] = fgn_autocovariance(spec.hurst, k, spec.sigma);

  // Durbin-Levinson: draw each sample from its exact conditional
  // distribution given the past.
  GaussianSampler gauss(spec.seed);
  Eigen::ArrayXd x(n);
  Eigen::ArrayXd phi = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd phi_prev = Eigen::ArrayXd::Zero(n);

  double v = gamma[0];
  x[0] = std::sqrt(v) * gauss.next();
  for (Eigen::Index t = 1; t < n; ++t) {
    double acc = gamma[t];
    for (Eigen::Index j = 1; j < t; ++j) acc -= phi_prev[j] * gamma[t - j];
    const double reflection = acc / v;

    phi[t] = reflection;
    for (Eigen::Index j = 1; j < t; ++j)
      phi[j] = phi_prev[j] - reflection * phi_prev[t - j];

    v *= (1.0 - reflection * reflection);

    double mean = 0.0;
    for (Eigen::Index j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
    x[t] = mean + std::sqrt(std::max(v, 0.0)) * gauss.next();

    phi_prev.head(t + 1) = phi.head(t + 1);
  }
  return x;
}

Eigen::ArrayXd gen_fgn(const SynthSpec& spec) {
  try {
    return gen_fgn_circulant(spec);
  } catch (const DegenerateSeriesError&) {
    return gen_fgn_conditional(spec);
  }
}

namespace {

Eigen::ArrayXd gen_white(const SynthSpec& spec) {
  GaussianSampler gauss(spec.seed);
  Eigen::ArrayXd x(spec.n);
  for (Eigen::Index t = 0; t < spec.n; ++t) x[t] = spec.sigma * gauss.next();
  return x;
}

}  // namespace

Eigen::ArrayXd gen_ar1(const SynthSpec& spec) {
  validate_spec(spec);
  GaussianSampler gauss(spec.seed);
  Eigen::ArrayXd x(spec.n);
  // Stationary start: marginal variance sigma^2 at every t.
  x[0] = spec.sigma * gauss.next();
  const double innovation =
      spec.sigma * std::sqrt(1.0 - spec.phi * spec.phi);
  for (Eigen::Index t = 1; t < spec.n; ++t)
    x[t] = spec.phi * x[t - 1] + innovation * gauss.next();
  return x;
}

Eigen::ArrayXd gen_ramp(const SynthSpec& spec) {
  validate_spec(spec);
  Eigen::ArrayXd x(spec.n);
  for (Eigen::Index t = 0; t < spec.n; ++t)
    x[t] = spec.slope * static_cast<double>(t);
  return x;
}

Eigen::ArrayXd gen_composite(const SynthSpec& spec) {
  validate_spec(spec);
  SynthSpec base = spec;
  base.kind = spec.base;
  base.slope = 0.0;
  return generate(base) + gen_ramp(spec);
}

Eigen::ArrayXd generate(const SynthSpec& spec) {
  validate_spec(spec);
  switch (spec.kind) {
    case SynthKind::Fgn: return gen_fgn(spec);
    case SynthKind::White: return gen_white(spec);
    case SynthKind::Ar1: return gen_ar1(spec);
    case SynthKind::Ramp: return gen_ramp(spec);
    case SynthKind::Composite: return gen_composite(spec);
  }
  throw ArgumentError("unreachable: invalid synth kind");
}

SynthKind parse_synth_kind(std::string_view text) {
  if (text == "fgn") return SynthKind::Fgn;
  if (text == "white") return SynthKind::White;
  if (text == "ar1") return SynthKind::Ar1;
  if (text == "ramp") return SynthKind::Ramp;
  if (text == "composite") return SynthKind::Composite;
  throw ArgumentError(std::format(
      "unknown synth kind '{}'; expected fgn, white, ar1, ramp or composite",
      text));
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::Fgn: return "fgn";
    case SynthKind::White: return "white";
    case SynthKind::Ar1: return "ar1";
    case SynthKind::Ramp: return "ramp";
    case SynthKind::Composite: return "composite";
  }
  return "??";
}

}  // namespace lrdkit

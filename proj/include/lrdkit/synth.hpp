#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "lrdkit/errors.hpp"

namespace lrdkit {

/// Counter-based RNG: the i-th output is splitmix64 applied to
/// seed + (i+1)*0x9E3779B97F4A7C15. Stateless apart from the counter, so
/// identical (seed, index) pairs give identical draws on any platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1]: 53 random bits, never zero.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Standard normal draws via the trigonometric Box-Muller transform,
/// consuming exactly two uniforms per pair.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(rng_.next_unit_open()));
    const double theta = 2.0 * M_PI * rng_.next_unit();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  CounterRng rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Generator identity recorded in reports.
inline constexpr std::string_view kGeneratorId =
    "splitmix64-counter/box-muller";

enum class SynthKind { Fgn, White, Ar1, Ramp, Composite };

/// Recipe for a synthetic reference process of known memory.
struct SynthSpec {
  SynthKind kind = SynthKind::White;
  Eigen::Index n = 0;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  double hurst = 0.7;                  // fgn
  double phi = 0.0;                    // ar1
  double slope = 0.0;                  // ramp, composite
  SynthKind base = SynthKind::White;   // composite base process
};

/// Throws ArgumentError unless 0 < H < 1, |phi| < 1, n >= 2, sigma > 0,
/// and a composite base is itself a stochastic (non-ramp, non-composite) kind.
void validate_spec(const SynthSpec& spec);

/// Exact fGn autocovariance
///   gamma(k) = sigma^2/2 (|k+1|^2H - 2|k|^2H + |k-1|^2H).
double fgn_autocovariance(double hurst, Eigen::Index lag, double sigma = 1.0);

/// Stationary Gaussian sequence with autocovariance fgn_autocovariance.
/// Uses circulant embedding (exact); falls back to Durbin-Levinson
/// conditional simulation (exact, O(n^2)) if the embedding ever fails
/// to be nonnegative definite.
Eigen::ArrayXd gen_fgn(const SynthSpec& spec);

/// The two exact fGn sampling routes, exposed so each can cross-check
/// the other.
Eigen::ArrayXd gen_fgn_circulant(const SynthSpec& spec);
Eigen::ArrayXd gen_fgn_conditional(const SynthSpec& spec);

/// AR(1): x_t = phi x_{t-1} + eps_t, stationary start, Var(x_t) = sigma^2.
Eigen::ArrayXd gen_ar1(const SynthSpec& spec);

/// Deterministic ramp slope * t, t = 0..n-1.
Eigen::ArrayXd gen_ramp(const SynthSpec& spec);

/// Base process plus ramp.
Eigen::ArrayXd gen_composite(const SynthSpec& spec);

/// Dispatch on spec.kind; validates first.
Eigen::ArrayXd generate(const SynthSpec& spec);

SynthKind parse_synth_kind(std::string_view text);
std::string_view to_string(SynthKind kind);

}  // namespace lrdkit

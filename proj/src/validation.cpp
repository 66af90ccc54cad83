#include "lrdkit/validation.hpp"

#include <algorithm>
#include <cmath>
#include <format>

#include "lrdkit/acf.hpp"
#include "lrdkit/decay_fit.hpp"
#include "lrdkit/rescaled_range.hpp"
#include "lrdkit/stationarity.hpp"
#include "lrdkit/synth.hpp"

namespace lrdkit {

namespace {

struct HurstStats {
  double mean = 0.0;
  double worst_abs_err = 0.0;  // against a reference value
  int persistent_runs = 0;
};

HurstStats hurst_over_seeds(const ValidationConfig& config, SynthKind kind,
                            double hurst_or_ref) {
  HurstStats stats;
  double sum = 0.0;
  for (int s = 0; s < config.seeds; ++s) {
    SynthSpec spec;
    spec.kind = kind;
    spec.n = config.n;
    spec.seed = config.base_seed + static_cast<std::uint64_t>(s);
    spec.hurst = hurst_or_ref;
    const HurstEstimate est = estimate_hurst(generate(spec));
    sum += est.h;
    stats.worst_abs_err =
        std::max(stats.worst_abs_err, std::abs(est.h - hurst_or_ref));
    if (est.classification == Persistence::Persistent) ++stats.persistent_runs;
  }
  stats.mean = sum / config.seeds;
  return stats;
}

int decay_wins(const ValidationConfig& config, SynthKind kind, double param,
               DecayVerdict want) {
  int wins = 0;
  for (int s = 0; s < config.seeds; ++s) {
    SynthSpec spec;
    spec.kind = kind;
    spec.n = config.n;
    spec.seed = config.base_seed + 1000 + static_cast<std::uint64_t>(s);
    if (kind == SynthKind::Ar1)
      spec.phi = param;
    else
      spec.hurst = param;

    AcfCurve curve = acf_estimate(generate(spec), config.max_lag);
    AcfCurve fit_input = curve;
    try {
      fit_input = truncate_at_threshold(curve);
    } catch (const InsufficientDataError&) {
      // fGn-like decay sits below 0.5 almost immediately; use a fixed window
      fit_input.values =
          curve.values.head(std::min<Eigen::Index>(101, curve.values.size()));
      fit_input.truncation_lag.reset();
    }
    const FitResult power = fit_model(fit_input, DecayModelKind::Power);
    const FitResult expo = fit_model(fit_input, DecayModelKind::Exponential);
    if (compare_fits(power, expo).verdict == want) ++wins;
  }
  return wins;
}

}  // namespace

std::vector<ValidationRow> run_validation(const ValidationConfig& config) {
  std::vector<ValidationRow> rows;
  const int need_decay = (config.seeds * 4 + 4) / 5;  // ceil(80%)
  const int need_half = (config.seeds + 1) / 2;       // ceil(50%)

  for (double h : {0.6, 0.7, 0.8}) {
    const HurstStats stats = hurst_over_seeds(config, SynthKind::Fgn, h);
    const bool pass =
        std::abs(stats.mean - h) <= 0.08 && stats.worst_abs_err <= 0.15;
    rows.push_back({std::format("fgn H={:.1f}", h),
                    "mean |h-H| <= 0.08, per-run <= 0.15",
                    std::format("mean h={:.4g}, worst |dh|={:.4g}", stats.mean,
                                stats.worst_abs_err),
                    pass});
  }

  {
    const HurstStats stats = hurst_over_seeds(config, SynthKind::White, 0.5);
    const int non_persistent = config.seeds - stats.persistent_runs;
    const bool pass = stats.mean >= 0.45 && stats.mean <= 0.62 &&
                      non_persistent >= need_half;
    rows.push_back({"white noise",
                    "mean h in [0.45, 0.62], non-persistent in >= 50% of runs",
                    std::format("mean h={:.4g}, non-persistent {}/{}",
                                stats.mean, non_persistent, config.seeds),
                    pass});
  }

  {
    const int wins =
        decay_wins(config, SynthKind::Ar1, 0.9, DecayVerdict::ExponentialLike);
    rows.push_back({"ar1 phi=0.9",
                    "exponential SSE < power SSE in >= 80% of runs",
                    std::format("exponential wins {}/{}", wins, config.seeds),
                    wins >= need_decay});
  }

  {
    const int wins =
        decay_wins(config, SynthKind::Fgn, 0.8, DecayVerdict::PowerLike);
    rows.push_back({"fgn H=0.8 decay",
                    "power SSE < exponential SSE in >= 80% of runs",
                    std::format("power wins {}/{}", wins, config.seeds),
                    wins >= need_decay});
  }

  {
    SynthSpec spec;
    spec.kind = SynthKind::Ramp;
    spec.n = config.n;
    spec.slope = 1.0;
    const HurstEstimate est = estimate_hurst(generate(spec));
    rows.push_back({"ramp", "trend inflates h >= 0.9",
                    std::format("h={:.4g}", est.h), est.h >= 0.9});
  }

  {
    int ok = 0;
    for (int s = 0; s < config.seeds; ++s) {
      SynthSpec spec;
      spec.kind = SynthKind::Composite;
      spec.base = SynthKind::White;
      spec.n = config.n;
      spec.seed = config.base_seed + 2000 + static_cast<std::uint64_t>(s);
      spec.slope = 0.01;
      const Eigen::ArrayXd x = generate(spec);
      const HurstEstimate est = estimate_hurst(x);
      const StationarityReport screen = wss_screen(x);
      if (est.h >= 0.9 && !screen.wss_consistent &&
          qualify_verdict(est, screen) ==
              QualifiedVerdict::LongMemoryButUnreliable)
        ++ok;
    }
    rows.push_back({"white + trend",
                    "h >= 0.9, screen non-stationary, verdict "
                    "long_memory_but_unreliable",
                    std::format("{}/{} runs", ok, config.seeds),
                    ok == config.seeds});
  }

  return rows;
}

bool all_passed(const std::vector<ValidationRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ValidationRow& r) { return r.pass; });
}

std::string format_validation_table(const std::vector<ValidationRow>& rows) {
  std::size_t w_process = 8, w_target = 6, w_measured = 8;
  for (const ValidationRow& r : rows) {
    w_process = std::max(w_process, r.process.size());
    w_target = std::max(w_target, r.target.size());
    w_measured = std::max(w_measured, r.measured.size());
  }
  std::string out = std::format("{:<{}}  {:<{}}  {:<{}}  status\n", "process",
                                w_process, "target", w_target, "measured",
                                w_measured);
  for (const ValidationRow& r : rows)
    out += std::format("{:<{}}  {:<{}}  {:<{}}  {}\n", r.process, w_process,
                       r.target, w_target, r.measured, w_measured,
                       r.pass ? "PASS" : "FAIL");
  return out;
}

}  // namespace lrdkit

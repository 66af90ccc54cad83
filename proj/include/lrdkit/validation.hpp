#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace lrdkit {

/// One estimator-vs-truth check of the synthetic oracle suite.
struct ValidationRow {
  std::string process;
  std::string target;
  std::string measured;
  bool pass = false;
};

struct ValidationConfig {
  int seeds = 20;
  Eigen::Index n = 1 << 15;
  std::uint64_t base_seed = 1;
  /// Lag horizon for the decay-discrimination rows.
  Eigen::Index max_lag = 512;
};

/// Runs the oracle suite: Hurst recovery on fGn H in {0.6, 0.7, 0.8},
/// the white-noise null, SSE decay discrimination on AR(1) and fGn, and
/// the trend confound (ramp and white+trend composite).
std::vector<ValidationRow> run_validation(const ValidationConfig& config);

bool all_passed(const std::vector<ValidationRow>& rows);

/// Fixed-width table as printed by the CLI.
std::string format_validation_table(const std::vector<ValidationRow>& rows);

}  // namespace lrdkit

// lrdkit command-line front end: synthetic trace generation, single-trace
// ACF / Hurst analysis, the full manifest pipeline, and the estimator
// validation suite.
//
// Exit codes: 0 success, 1 analysis or tolerance failure, 2 usage/input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <format>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lrdkit/acf.hpp"
#include "lrdkit/decay_fit.hpp"
#include "lrdkit/errors.hpp"
#include "lrdkit/ingest.hpp"
#include "lrdkit/report.hpp"
#include "lrdkit/rescaled_range.hpp"
#include "lrdkit/stationarity.hpp"
#include "lrdkit/synth.hpp"
#include "lrdkit/validation.hpp"
#include "lrdkit/version.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LRD_KIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw lrdkit::ArgumentError(
          std::format("LRD_KIT_SEED is not a valid seed: '{}'", env));
    }
  }
  return 1;
}

void write_output(const std::optional<std::string>& out_path,
                  const std::string& content) {
  if (!out_path) {
    std::cout << content;
    return;
  }
  std::ofstream file(*out_path, std::ios::binary);
  if (!file)
    throw lrdkit::ArgumentError(std::format("cannot write {}", *out_path));
  file << content;
}

lrdkit::ChannelTrace load_single_trace(const std::string& path, double rate,
                                       const std::string& gap_policy) {
  lrdkit::ChannelTrace trace =
      lrdkit::load_trace(fs::path(path), lrdkit::LinkDescriptor{}, rate);
  return lrdkit::apply_gap_policy(trace, lrdkit::parse_gap_policy(gap_policy));
}

struct SynthArgs {
  std::string kind = "white";
  std::string base = "white";
  Eigen::Index n = 0;
  double sigma = 1.0;
  double hurst = 0.7;
  double phi = 0.0;
  double slope = 0.0;
  double rate = lrdkit::kDefaultSampleRateHz;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::optional<std::string> out;
};

int run_synth(const SynthArgs& args) {
  lrdkit::SynthSpec spec;
  spec.kind = lrdkit::parse_synth_kind(args.kind);
  spec.base = lrdkit::parse_synth_kind(args.base);
  spec.n = args.n;
  spec.sigma = args.sigma;
  spec.seed = args.seed_given ? args.seed : default_seed();
  spec.hurst = args.hurst;
  spec.phi = args.phi;
  spec.slope = args.slope;

  lrdkit::ChannelTrace trace;
  trace.sample_rate_hz = args.rate;
  trace.samples = lrdkit::generate(spec);
  write_output(args.out, lrdkit::trace_to_csv(trace));
  return kExitOk;
}

struct AnalyzeArgs {
  std::string manifest;
  std::string gap_policy = "hold-last";
  double acf_threshold = lrdkit::kDefaultAcfThreshold;
  Eigen::Index max_lag = -1;
  Eigen::Index min_span = 8;
  Eigen::Index window_len = 0;  // 0: per-trace n/8
  double mean_tol = 1.0;
  double var_ratio_tol = 3.0;
  std::string out_dir = ".";
  std::string format = "json";
};

std::string summarize_group(const lrdkit::GroupAnalysis& g) {
  std::string line = std::format("{}: {} trace(s)", to_string(g.link_class),
                                 g.trace_count);
  if (g.power_fit && g.exponential_fit && g.decay) {
    line += std::format(
        " | power a={:.4g} b={:.4g} sse={:.4g} | exp a={:.4g} b={:.4g} "
        "sse={:.4g} | {}",
        g.power_fit->model.a, g.power_fit->model.b, g.power_fit->sse,
        g.exponential_fit->model.a, g.exponential_fit->model.b,
        g.exponential_fit->sse, to_string(g.decay->verdict));
  }
  if (g.hurst)
    line += std::format(" | h={:.4g} ({}, r2={:.4g})", g.hurst->h,
                        to_string(g.hurst->classification),
                        g.hurst->r_squared);
  line += std::format(" | {}", g.majority_wss_consistent ? "wss_consistent"
                                                         : "non_stationary");
  if (g.qualified) line += std::format(" | {}", to_string(*g.qualified));
  return line;
}

int run_analyze(const AnalyzeArgs& args) {
  const auto entries = lrdkit::load_manifest(args.manifest);
  if (entries.empty()) {
    std::cerr << "error: no traces in manifest\n";
    return kExitUsage;
  }

  std::vector<lrdkit::ChannelTrace> traces;
  traces.reserve(entries.size());
  for (const auto& entry : entries) traces.push_back(lrdkit::load_trace(entry));

  lrdkit::AnalyzeConfig config;
  config.gap_policy = lrdkit::parse_gap_policy(args.gap_policy);
  config.acf_threshold = args.acf_threshold;
  config.max_lag = args.max_lag;
  config.min_span = args.min_span;
  if (args.window_len > 0) config.window_len = args.window_len;
  config.mean_tol = args.mean_tol;
  config.var_ratio_tol = args.var_ratio_tol;

  lrdkit::AnalysisReport report = lrdkit::analyze(traces, config);
  report.manifest_hash = lrdkit::hash_file_fnv1a(args.manifest);

  fs::create_directories(args.out_dir);
  {
    std::ofstream out(fs::path(args.out_dir) / "report.json", std::ios::binary);
    if (!out)
      throw lrdkit::ArgumentError(
          std::format("cannot write report under {}", args.out_dir));
    out << lrdkit::report_to_json(report);
  }
  if (args.format == "csv")
    for (const auto& group : report.groups)
      lrdkit::write_plot_csvs(args.out_dir, group);

  for (const auto& group : report.groups)
    std::cout << summarize_group(group) << "\n";
  std::cout << std::format("report written to {}/report.json\n", args.out_dir);
  return kExitOk;
}

struct TraceCmdArgs {
  std::string path;
  double rate = lrdkit::kDefaultSampleRateHz;
  std::string gap_policy = "hold-last";
  std::string format = "csv";
  std::optional<std::string> out;
  // acf
  Eigen::Index max_lag = -1;
  double threshold = lrdkit::kDefaultAcfThreshold;
  // hurst
  Eigen::Index min_span = 8;
};

int run_acf(const TraceCmdArgs& args) {
  const lrdkit::ChannelTrace trace =
      load_single_trace(args.path, args.rate, args.gap_policy);
  lrdkit::AcfCurve curve = lrdkit::acf_estimate(trace, args.max_lag);
  try {
    curve = lrdkit::truncate_at_threshold(curve, args.threshold);
  } catch (const lrdkit::InsufficientDataError& e) {
    std::cerr << "note: " << e.what() << "\n";
  }

  if (args.format == "json") {
    std::string json = "{\n";
    json += std::format("  \"source_len\": {},\n", curve.source_len);
    json += std::format("  \"max_lag\": {},\n", curve.max_lag());
    if (curve.truncation_lag) {
      json += std::format("  \"truncation_lag\": {},\n", *curve.truncation_lag);
      json += std::format(
          "  \"truncation_lag_s\": {},\n",
          static_cast<double>(*curve.truncation_lag) / trace.sample_rate_hz);
    } else {
      json += "  \"truncation_lag\": null,\n";
    }
    json += "  \"acf\": [";
    for (Eigen::Index k = 0; k < curve.values.size(); ++k)
      json += std::format("{}{}", k ? ", " : "", curve.values[k]);
    json += "]\n}\n";
    write_output(args.out, json);
  } else {
    std::string csv = "lag,acf\n";
    for (Eigen::Index k = 0; k < curve.values.size(); ++k)
      csv += std::format("{},{}\n", k, curve.values[k]);
    write_output(args.out, csv);
  }
  return kExitOk;
}

int run_hurst(const TraceCmdArgs& args) {
  const lrdkit::ChannelTrace trace =
      load_single_trace(args.path, args.rate, args.gap_policy);
  const lrdkit::HurstEstimate est =
      lrdkit::estimate_hurst(trace.samples, {args.min_span, {}});

  if (args.format == "json") {
    std::string json = "{\n";
    json += std::format("  \"h\": {},\n", est.h);
    json += std::format("  \"intercept\": {},\n", est.intercept);
    json += std::format("  \"r_squared\": {},\n", est.r_squared);
    json += std::format("  \"classification\": \"{}\",\n",
                        to_string(est.classification));
    json += "  \"points\": [";
    for (std::size_t i = 0; i < est.points.size(); ++i)
      json += std::format("{}{{\"span\": {}, \"mean_rs\": {}, "
                          "\"window_count\": {}}}",
                          i ? ", " : "", est.points[i].span,
                          est.points[i].mean_rs, est.points[i].window_count);
    json += "]\n}\n";
    write_output(args.out, json);
  } else {
    std::string csv = std::format("# h={} intercept={} r_squared={}\n", est.h,
                                  est.intercept, est.r_squared);
    csv += "log_tau,log_rs\n";
    for (const lrdkit::RsPoint& p : est.points)
      csv += std::format("{},{}\n", std::log(static_cast<double>(p.span)),
                         std::log(p.mean_rs));
    write_output(args.out, csv);
  }
  return kExitOk;
}

struct ValidateArgs {
  int seeds = 20;
  Eigen::Index n = 1 << 15;
  Eigen::Index max_lag = 512;
  std::uint64_t base_seed = 0;
  bool seed_given = false;
};

int run_validate(const ValidateArgs& args) {
  if (args.seeds < 1)
    throw lrdkit::ArgumentError("validate: --seeds must be at least 1");
  if (args.seeds < 20)
    std::cerr << "warning: tolerances assume >= 20 seeds; results with "
              << args.seeds << " seed(s) are indicative only\n";

  lrdkit::ValidationConfig config;
  config.seeds = args.seeds;
  config.n = args.n;
  config.max_lag = args.max_lag;
  config.base_seed = args.seed_given ? args.base_seed : default_seed();

  const auto rows = lrdkit::run_validation(config);
  std::cout << std::format("generator: {}  n={}  seeds={}  base_seed={}\n\n",
                           lrdkit::kGeneratorId, config.n, config.seeds,
                           config.base_seed);
  std::cout << lrdkit::format_validation_table(rows);
  return lrdkit::all_passed(rows) ? kExitOk : kExitAnalysis;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::format("lrdkit {} - long-range dependence analysis of "
                           "body-centric channel-gain traces",
                           lrdkit::kVersion)};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read option defaults from a TOML/INI file "
                 "(CLI flags take precedence)");

  SynthArgs synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic trace CSV");
  synth_cmd->add_option("--kind", synth.kind,
                        "Process: fgn, white, ar1, ramp, composite");
  synth_cmd->add_option("--base", synth.base,
                        "Composite base process: fgn, white or ar1");
  synth_cmd->add_option("--n", synth.n, "Sample count")->required();
  synth_cmd->add_option("--sigma", synth.sigma, "Standard deviation");
  synth_cmd->add_option("--h", synth.hurst, "Hurst exponent (fgn)");
  synth_cmd->add_option("--phi", synth.phi, "AR(1) coefficient");
  synth_cmd->add_option("--slope", synth.slope, "Trend slope per sample");
  synth_cmd->add_option("--rate", synth.rate, "Sample rate in Hz");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed (default 1 or LRD_KIT_SEED)")
      ->each([&](const std::string&) { synth.seed_given = true; });
  synth_cmd->add_option("--out", synth.out, "Output file (default stdout)");

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Run the full pipeline over a manifest of traces");
  analyze_cmd->add_option("--manifest", analyze.manifest, "Manifest JSON path")
      ->required();
  analyze_cmd->add_option("--gap-policy", analyze.gap_policy,
                          "drop, hold-last or linear-interpolate");
  analyze_cmd->add_option("--acf-threshold", analyze.acf_threshold,
                          "ACF truncation threshold");
  analyze_cmd->add_option("--max-lag", analyze.max_lag,
                          "ACF lag horizon (default min(n/4, 4096))");
  analyze_cmd->add_option("--min-span", analyze.min_span,
                          "Smallest rescaled-range span");
  analyze_cmd->add_option("--window-len", analyze.window_len,
                          "Stationarity window (default n/8)");
  analyze_cmd->add_option("--mean-tol", analyze.mean_tol,
                          "WSS mean-spread tolerance, dB");
  analyze_cmd->add_option("--var-ratio-tol", analyze.var_ratio_tol,
                          "WSS variance-ratio tolerance");
  analyze_cmd->add_option("--out-dir", analyze.out_dir, "Output directory");
  analyze_cmd->add_option("--format", analyze.format,
                          "json (report only) or csv (also plot CSVs)")
      ->check(CLI::IsMember({"json", "csv"}));

  TraceCmdArgs acf;
  CLI::App* acf_cmd =
      app.add_subcommand("acf", "Autocorrelation of a single trace");
  acf_cmd->add_option("trace", acf.path, "Trace CSV path")->required();
  acf_cmd->add_option("--rate", acf.rate, "Sample rate in Hz");
  acf_cmd->add_option("--gap-policy", acf.gap_policy,
                      "drop, hold-last or linear-interpolate");
  acf_cmd->add_option("--max-lag", acf.max_lag,
                      "Lag horizon (default min(n/4, 4096))");
  acf_cmd->add_option("--acf-threshold", acf.threshold,
                      "Truncation threshold");
  acf_cmd->add_option("--format", acf.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  acf_cmd->add_option("--out", acf.out, "Output file (default stdout)");

  TraceCmdArgs hurst;
  CLI::App* hurst_cmd = app.add_subcommand(
      "hurst", "Rescaled-range Hurst estimate of a single trace");
  hurst_cmd->add_option("trace", hurst.path, "Trace CSV path")->required();
  hurst_cmd->add_option("--rate", hurst.rate, "Sample rate in Hz");
  hurst_cmd->add_option("--gap-policy", hurst.gap_policy,
                        "drop, hold-last or linear-interpolate");
  hurst_cmd->add_option("--min-span", hurst.min_span,
                        "Smallest rescaled-range span");
  hurst_cmd->add_option("--format", hurst.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  hurst_cmd->add_option("--out", hurst.out, "Output file (default stdout)");

  ValidateArgs validate;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Estimator-vs-truth checks on synthetic processes");
  validate_cmd->add_option("--seeds", validate.seeds, "Runs per process");
  validate_cmd->add_option("--n", validate.n, "Samples per run");
  validate_cmd->add_option("--max-lag", validate.max_lag,
                           "ACF horizon for the decay rows");
  validate_cmd
      ->add_option("--base-seed", validate.base_seed,
                   "First seed (default 1 or LRD_KIT_SEED)")
      ->each([&](const std::string&) { validate.seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth);
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (acf_cmd->parsed()) return run_acf(acf);
    if (hurst_cmd->parsed()) return run_hurst(hurst);
    if (validate_cmd->parsed()) return run_validate(validate);
  } catch (const lrdkit::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lrdkit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lrdkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysis;
  }
  return kExitUsage;
}

#include "lrdkit/report.hpp"

#include <json.hpp>

#include <format>
#include <fstream>

#include "detail.hpp"
#include "lrdkit/synth.hpp"
#include "lrdkit/version.hpp"

namespace lrdkit {

namespace {

using nlohmann::json;

GroupAnalysis analyze_group(LinkClass cls, std::vector<ChannelTrace> traces,
                            const AnalyzeConfig& config) {
  GroupAnalysis group;
  group.link_class = cls;
  group.trace_count = static_cast<Eigen::Index>(traces.size());
  group.sample_rate_hz = traces.front().sample_rate_hz;

  for (ChannelTrace& trace : traces) {
    if (trace.sample_rate_hz != group.sample_rate_hz)
      throw ArgumentError(std::format(
          "link class {} mixes sample rates {} and {}", to_string(cls),
          group.sample_rate_hz, trace.sample_rate_hz));
    trace = apply_gap_policy(trace, config.gap_policy);
    if (trace.size() < kMinAnalysisLength)
      throw ArgumentError(std::format(
          "trace {} has {} samples after the gap policy; analysis needs {}",
          describe(trace.link), trace.size(), kMinAnalysisLength));
  }

  // Averaged ACF, threshold truncation, both decay fits.
  std::vector<AcfCurve> curves;
  curves.reserve(traces.size());
  for (const ChannelTrace& trace : traces) {
    Eigen::Index max_lag = config.max_lag >= 0 ? config.max_lag
                                               : default_max_lag(trace.size());
    max_lag = std::min(max_lag, trace.size() - 1);
    curves.push_back(acf_estimate(trace, max_lag));
  }
  group.averaged_acf = average_acf(curves);

  AcfCurve fit_input = group.averaged_acf;
  try {
    fit_input = truncate_at_threshold(group.averaged_acf, config.acf_threshold);
    group.averaged_acf.truncation_lag = fit_input.truncation_lag;
  } catch (const InsufficientDataError& e) {
    // Correlation already below threshold at small lags (typical for
    // fGn-like series); fit over a fixed window instead.
    group.fallback_fit_range = true;
    group.notes.push_back(std::format("threshold truncation not usable ({}); "
                                      "fitting lags 1..{}",
                                      e.what(), config.fallback_fit_lags));
    const Eigen::Index keep =
        std::min(config.fallback_fit_lags, group.averaged_acf.max_lag());
    fit_input.values = group.averaged_acf.values.head(keep + 1);
    fit_input.truncation_lag.reset();
  }

  try {
    group.power_fit = fit_model(fit_input, DecayModelKind::Power);
    group.exponential_fit = fit_model(fit_input, DecayModelKind::Exponential);
    group.decay = compare_fits(*group.power_fit, *group.exponential_fit);
  } catch (const Error& e) {
    group.notes.push_back(std::format("decay fit skipped: {}", e.what()));
  }

  // Group Hurst estimate from averaged R/S points.
  try {
    group.hurst = group_hurst(traces, RsOptions{config.min_span, {}});
  } catch (const Error& e) {
    group.notes.push_back(std::format("hurst estimate skipped: {}", e.what()));
  }

  // Per-trace stationarity screens; the group verdict is the majority
  // (ties count as non-stationary).
  WssOptions wss;
  wss.window_len = config.window_len;
  wss.mean_tol = config.mean_tol;
  wss.var_ratio_tol = config.var_ratio_tol;
  Eigen::Index consistent = 0;
  for (const ChannelTrace& trace : traces) {
    try {
      StationarityReport rep = wss_screen(trace, wss);
      if (rep.wss_consistent) ++consistent;
      group.stationarity.push_back({describe(trace.link), std::move(rep)});
    } catch (const Error& e) {
      group.notes.push_back(std::format("stationarity screen skipped for {}: {}",
                                        describe(trace.link), e.what()));
    }
  }
  group.majority_wss_consistent =
      !group.stationarity.empty() &&
      2 * consistent > static_cast<Eigen::Index>(group.stationarity.size());

  if (group.hurst)
    group.qualified = qualify_verdict(group.hurst->classification,
                                      group.majority_wss_consistent);
  return group;
}

json fit_to_json(const FitResult& fit) {
  return {
      {"kind", to_string(fit.model.kind)},
      {"a", fit.model.a},
      {"b", fit.model.b},
      {"sse", fit.sse},
      {"iterations", fit.iterations},
      {"converged", fit.converged},
      {"fit_range", {fit.fit_range.first, fit.fit_range.last}},
      {"decay_shape_ok", fit.decay_shape_ok},
      {"init_clamped", fit.init_clamped},
  };
}

json hurst_to_json(const HurstEstimate& est) {
  json points = json::array();
  for (const RsPoint& p : est.points)
    points.push_back({{"span", p.span},
                      {"mean_rs", p.mean_rs},
                      {"window_count", p.window_count}});
  return {
      {"h", est.h},
      {"intercept", est.intercept},
      {"r_squared", est.r_squared},
      {"classification", to_string(est.classification)},
      {"in_unit_range", est.in_unit_range},
      {"points", std::move(points)},
  };
}

json stationarity_to_json(const StationarityReport& rep) {
  return {
      {"window_len", rep.window_len},
      {"windows", rep.windows},
      {"mean_spread_db", rep.mean_spread},
      {"var_ratio", rep.var_ratio},
      {"verdict", rep.wss_consistent ? "wss_consistent" : "non_stationary"},
      {"zero_variance_excluded", rep.zero_variance_excluded},
  };
}

json config_to_json(const AnalyzeConfig& config) {
  json j{
      {"gap_policy", to_string(config.gap_policy)},
      {"acf_threshold", config.acf_threshold},
      {"max_lag", config.max_lag},
      {"min_span", config.min_span},
      {"mean_tol_db", config.mean_tol},
      {"var_ratio_tol", config.var_ratio_tol},
      {"fallback_fit_lags", config.fallback_fit_lags},
  };
  if (config.window_len)
    j["window_len"] = *config.window_len;
  else
    j["window_len"] = nullptr;
  return j;
}

}  // namespace

AnalysisReport analyze(const std::vector<ChannelTrace>& traces,
                       const AnalyzeConfig& config) {
  if (traces.empty()) throw ArgumentError("analyze: no traces");

  AnalysisReport report;
  report.tool_version = kVersion;
  report.generator = std::string(kGeneratorId);
  report.config = config;

  for (auto& [cls, group] : group_traces(traces)) {
    if (group.empty()) continue;
    report.groups.push_back(analyze_group(cls, std::move(group), config));
  }
  return report;
}

std::string hash_file_fnv1a(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError(std::format("cannot read {}", path.string()));
  std::uint64_t hash = 1469598103934665603ull;
  char chunk[4096];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  return std::format("fnv1a64:{:016x}", hash);
}

std::string report_to_json(const AnalysisReport& report) {
  json groups = json::array();
  for (const GroupAnalysis& g : report.groups) {
    json jg{
        {"link_class", to_string(g.link_class)},
        {"trace_count", g.trace_count},
        {"sample_rate_hz", g.sample_rate_hz},
    };

    json acf{
        {"source_len", g.averaged_acf.source_len},
        {"max_lag", g.averaged_acf.max_lag()},
        {"fallback_fit_range", g.fallback_fit_range},
    };
    if (g.averaged_acf.truncation_lag) {
      acf["truncation_lag"] = *g.averaged_acf.truncation_lag;
      acf["truncation_lag_s"] =
          static_cast<double>(*g.averaged_acf.truncation_lag) / g.sample_rate_hz;
    } else {
      acf["truncation_lag"] = nullptr;
    }
    jg["acf"] = std::move(acf);

    json fits;
    if (g.power_fit) fits["power"] = fit_to_json(*g.power_fit);
    if (g.exponential_fit) fits["exponential"] = fit_to_json(*g.exponential_fit);
    if (g.decay) {
      fits["verdict"] = to_string(g.decay->verdict);
      fits["sse_ratio"] = g.decay->sse_ratio;
    }
    jg["fits"] = std::move(fits);

    if (g.hurst) jg["hurst"] = hurst_to_json(*g.hurst);

    json per_trace = json::array();
    for (const TraceStationarity& ts : g.stationarity) {
      json jt = stationarity_to_json(ts.report);
      jt["link"] = ts.label;
      per_trace.push_back(std::move(jt));
    }
    jg["stationarity"] = {
        {"majority_verdict",
         g.majority_wss_consistent ? "wss_consistent" : "non_stationary"},
        {"per_trace", std::move(per_trace)},
    };

    if (g.qualified) jg["qualified_verdict"] = to_string(*g.qualified);
    if (!g.notes.empty()) jg["notes"] = g.notes;
    groups.push_back(std::move(jg));
  }

  const json doc{
      {"schema_version", report.schema_version},
      {"tool", {{"name", "lrdkit"},
                {"version", report.tool_version},
                {"generator", report.generator}}},
      {"manifest_hash", report.manifest_hash},
      {"config", config_to_json(report.config)},
      {"groups", std::move(groups)},
  };
  return doc.dump(2) + "\n";
}

void write_plot_csvs(const std::filesystem::path& out_dir,
                     const GroupAnalysis& group) {
  const std::string cls{to_string(group.link_class)};
  namespace fs = std::filesystem;

  {
    std::string csv = "lag,acf\n";
    for (Eigen::Index k = 0; k < group.averaged_acf.values.size(); ++k) {
      csv += std::to_string(k);
      csv.push_back(',');
      detail::format_shortest(csv, group.averaged_acf.values[k]);
      csv.push_back('\n');
    }
    std::ofstream out(out_dir / fs::path(std::format("acf_{}.csv", cls)),
                      std::ios::binary);
    out << csv;
  }

  if (group.power_fit && group.exponential_fit) {
    const LagRange range = group.power_fit->fit_range;
    std::string csv = "lag,acf,power_fit,exp_fit\n";
    for (Eigen::Index k = range.first; k <= range.last; ++k) {
      const auto x = static_cast<double>(k);
      csv += std::to_string(k);
      csv.push_back(',');
      detail::format_shortest(csv, group.averaged_acf.values[k]);
      csv.push_back(',');
      detail::format_shortest(csv, evaluate(group.power_fit->model, x));
      csv.push_back(',');
      detail::format_shortest(csv, evaluate(group.exponential_fit->model, x));
      csv.push_back('\n');
    }
    std::ofstream out(out_dir / fs::path(std::format("fit_{}.csv", cls)),
                      std::ios::binary);
    out << csv;
  }

  if (group.hurst) {
    std::string csv;
    csv += std::format("# h={} intercept={} r_squared={}\n",
                       detail::format_shortest(group.hurst->h),
                       detail::format_shortest(group.hurst->intercept),
                       detail::format_shortest(group.hurst->r_squared));
    csv += "log_tau,log_rs\n";
    for (const RsPoint& p : group.hurst->points) {
      detail::format_shortest(csv, std::log(static_cast<double>(p.span)));
      csv.push_back(',');
      detail::format_shortest(csv, std::log(p.mean_rs));
      csv.push_back('\n');
    }
    std::ofstream out(out_dir / fs::path(std::format("rs_{}.csv", cls)),
                      std::ios::binary);
    out << csv;
  }
}

}  // namespace lrdkit

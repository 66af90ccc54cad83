#include "lrdkit/ingest.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <format>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "detail.hpp"
#include "lrdkit/errors.hpp"

namespace lrdkit {

namespace {

using detail::format_shortest;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no,
                       std::string_view what) {
  throw ParseError(std::format("{}:{}: {}", path.string(), line_no, what));
}

}  // namespace

ChannelTrace load_trace(const std::filesystem::path& path,
                        const LinkDescriptor& link, double sample_rate_hz) {
  validate_link(link);
  if (!(sample_rate_hz > 0.0))
    throw ArgumentError("load_trace: sample rate must be positive");

  std::ifstream in(path);
  if (!in) throw ParseError(std::format("{}: cannot open file", path.string()));

  std::vector<double> samples;
  std::vector<bool> missing;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::string line;
  std::size_t line_no = 0;
  int columns = 0;  // decided by the first data row
  bool saw_header = false;
  double prev_time = 0.0;
  bool have_prev_time = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;

    const auto fields = split_fields(text);
    if (fields.size() > 2)
      fail(path, line_no, std::format("expected 1 or 2 columns, found {}", fields.size()));

    double first = 0.0;
    if (!parse_double(fields[0], first)) {
      // one optional header line before any data
      if (samples.empty() && !saw_header) {
        saw_header = true;
        continue;
      }
      fail(path, line_no, std::format("malformed number '{}'", std::string(trim(fields[0]))));
    }

    if (columns == 0) columns = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != columns)
      fail(path, line_no, std::format("expected {} column(s), found {}", columns, fields.size()));

    double gain = first;
    if (columns == 2) {
      if (!parse_double(fields[1], gain))
        fail(path, line_no, std::format("malformed number '{}'", std::string(trim(fields[1]))));

      const double time_s = first;
      if (have_prev_time) {
        const double slots = (time_s - prev_time) * sample_rate_hz;
        const auto advance = static_cast<long long>(std::llround(slots));
        if (advance < 1)
          fail(path, line_no, "timestamps must be strictly increasing");
        if (std::abs(slots - static_cast<double>(advance)) > 0.1)
          fail(path, line_no,
               std::format("timestamp is off the 1/{} s grid by more than 10%",
                           sample_rate_hz));
        for (long long k = 1; k < advance; ++k) {
          samples.push_back(nan);
          missing.push_back(true);
        }
      }
      prev_time = time_s;
      have_prev_time = true;
    }

    if (!std::isfinite(gain))
      fail(path, line_no,
           std::format("non-finite gain at sample index {}", samples.size()));
    samples.push_back(gain);
    missing.push_back(false);
  }

  if (samples.empty())
    throw ParseError(std::format("{}: no data rows", path.string()));

  ChannelTrace trace;
  trace.link = link;
  trace.sample_rate_hz = sample_rate_hz;
  trace.samples = Eigen::Map<const Eigen::ArrayXd>(samples.data(),
                                                   static_cast<Eigen::Index>(samples.size()));
  trace.missing.resize(static_cast<Eigen::Index>(missing.size()));
  for (std::size_t i = 0; i < missing.size(); ++i)
    trace.missing[static_cast<Eigen::Index>(i)] = missing[i];
  validate_trace(trace);
  return trace;
}

ChannelTrace load_trace(const ManifestEntry& entry) {
  return load_trace(entry.path, entry.link, entry.sample_rate_hz);
}

std::string trace_to_csv(const ChannelTrace& trace) {
  validate_trace(trace);
  std::string out = "time_s,gain_db\n";
  for (Eigen::Index i = 0; i < trace.size(); ++i) {
    if (trace.missing.size() != 0 && trace.missing[i]) continue;
    format_shortest(out, static_cast<double>(i) / trace.sample_rate_hz);
    out.push_back(',');
    format_shortest(out, trace.samples[i]);
    out.push_back('\n');
  }
  return out;
}

void save_trace_csv(const std::filesystem::path& path,
                    const ChannelTrace& trace) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ArgumentError(std::format("cannot write {}", path.string()));
  file << trace_to_csv(trace);
}

ChannelTrace apply_gap_policy(const ChannelTrace& trace, GapPolicy policy) {
  validate_trace(trace);
  if (trace.gap_free()) {
    ChannelTrace out = trace;
    out.missing.resize(0);
    return out;
  }

  const Eigen::Index n = trace.size();
  Eigen::Index first_present = 0;
  while (first_present < n && trace.missing[first_present]) ++first_present;
  if (first_present == n)
    throw InsufficientDataError("apply_gap_policy: all samples are missing");

  std::vector<double> filled;
  filled.reserve(static_cast<std::size_t>(n - first_present));

  switch (policy) {
    case GapPolicy::Drop:
      for (Eigen::Index i = first_present; i < n; ++i)
        if (!trace.missing[i]) filled.push_back(trace.samples[i]);
      break;

    case GapPolicy::HoldLast:
      for (Eigen::Index i = first_present; i < n; ++i)
        filled.push_back(trace.missing[i] ? filled.back() : trace.samples[i]);
      break;

    case GapPolicy::LinearInterpolate:
      for (Eigen::Index i = first_present; i < n; ++i) {
        if (!trace.missing[i]) {
          filled.push_back(trace.samples[i]);
          continue;
        }
        Eigen::Index next = i + 1;
        while (next < n && trace.missing[next]) ++next;
        if (next == n) {
          filled.push_back(filled.back());  // trailing run: hold last
          continue;
        }
        const double left = filled.back();
        const double right = trace.samples[next];
        const Eigen::Index left_idx = i - 1;
        filled.push_back(left + (right - left) *
                                    static_cast<double>(i - left_idx) /
                                    static_cast<double>(next - left_idx));
      }
      break;
  }

  ChannelTrace out;
  out.link = trace.link;
  out.sample_rate_hz = trace.sample_rate_hz;
  out.samples = Eigen::Map<const Eigen::ArrayXd>(filled.data(),
                                                 static_cast<Eigen::Index>(filled.size()));
  validate_trace(out);
  return out;
}

GapPolicy parse_gap_policy(std::string_view text) {
  if (text == "drop") return GapPolicy::Drop;
  if (text == "hold-last") return GapPolicy::HoldLast;
  if (text == "linear-interpolate") return GapPolicy::LinearInterpolate;
  throw ArgumentError(std::format(
      "unknown gap policy '{}'; expected drop, hold-last or linear-interpolate",
      text));
}

std::string_view to_string(GapPolicy policy) {
  switch (policy) {
    case GapPolicy::Drop: return "drop";
    case GapPolicy::HoldLast: return "hold-last";
    case GapPolicy::LinearInterpolate: return "linear-interpolate";
  }
  return "??";
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::format("{}: cannot open manifest", path.string()));

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::format("{}: {}", path.string(), e.what()));
  }
  if (!doc.is_array())
    throw ParseError(std::format("{}: manifest must be a JSON array", path.string()));

  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    try {
      ManifestEntry entry;
      std::filesystem::path file = item.at("path").get<std::string>();
      entry.path = file.is_absolute() ? file : base / file;
      entry.link.tx_subject = item.at("tx_subject").get<int>();
      entry.link.tx_pos = parse_node_position(item.at("tx_pos").get<std::string>());
      entry.link.rx_subject = item.at("rx_subject").get<int>();
      entry.link.rx_pos = parse_node_position(item.at("rx_pos").get<std::string>());
      if (item.contains("sample_rate_hz"))
        entry.sample_rate_hz = item.at("sample_rate_hz").get<double>();
      validate_link(entry.link);
      if (!(entry.sample_rate_hz > 0.0))
        throw ArgumentError("sample_rate_hz must be positive");
      entries.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::format("{}: entry {}: {}", path.string(), i, e.what()));
    } catch (const ArgumentError& e) {
      throw ParseError(std::format("{}: entry {}: {}", path.string(), i, e.what()));
    }
  }
  return entries;
}

std::map<LinkClass, std::vector<ChannelTrace>> group_traces(
    std::vector<ChannelTrace> traces) {
  std::map<LinkClass, std::vector<ChannelTrace>> groups;
  for (LinkClass cls :
       {LinkClass::OnBodyLhRa, LinkClass::OnBodyLhLw, LinkClass::B2bLhLh,
        LinkClass::B2bLhRa, LinkClass::B2bLhLw})
    groups[cls];
  for (ChannelTrace& trace : traces)
    groups[classify_link(trace.link)].push_back(std::move(trace));
  return groups;
}

}  // namespace lrdkit

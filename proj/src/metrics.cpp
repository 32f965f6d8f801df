#include "wsnsim/metrics.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace wsnsim {
namespace {

using json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad field '" +
                             std::string(field) + "'");
  }
  return value;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json optional_round(const std::optional<int>& value) {
  return value ? json(*value) : json(nullptr);
}

std::optional<int> round_or_empty(const json& value) {
  if (value.is_null()) return std::nullopt;
  return value.get<int>();
}

}  // namespace

void History::record(const RoundMetrics& metrics) {
  if (metrics.round != static_cast<int>(rounds_.size())) {
    throw SequencingError("round " + std::to_string(metrics.round) + " recorded onto history of length " +
                          std::to_string(rounds_.size()));
  }
  rounds_.push_back(metrics);
}

std::optional<int> stability_period(const History& history) {
  if (history.empty()) throw std::invalid_argument("stability_period: empty history");
  for (const RoundMetrics& m : history.rounds()) {
    if (m.dead > 0) return m.round;
  }
  return std::nullopt;
}

RunSummary summarize(const History& history, std::string protocol, std::string sink_mode,
                     std::uint64_t seed) {
  if (history.empty()) throw std::invalid_argument("summarize: empty history");
  const auto& rounds = history.rounds();

  RunSummary s;
  s.protocol = std::move(protocol);
  s.sink_mode = std::move(sink_mode);
  s.seed = seed;
  s.horizon = static_cast<int>(rounds.size());
  s.stability_period = stability_period(history);
  for (const RoundMetrics& m : rounds) {
    if (m.alive == 0) {
      s.lifetime = m.round;
      break;
    }
  }

  double alive_sum = 0.0;
  double cumulative_sum = 0.0;
  for (const RoundMetrics& m : rounds) {
    alive_sum += m.alive;
    cumulative_sum += static_cast<double>(m.cumulative_packets_to_bs);
    s.energy_consumed += m.energy_consumed;
  }
  const double n = static_cast<double>(rounds.size());
  s.avg_alive = alive_sum / n;
  s.avg_throughput = cumulative_sum / n;
  s.total_throughput = rounds.back().cumulative_packets_to_bs;
  return s;
}

std::string format_csv(const History& history) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RoundMetrics& m : history.rounds()) {
    out += std::to_string(m.round) + ',' + std::to_string(m.alive) + ',' + std::to_string(m.dead) +
           ',' + std::to_string(m.ch_count) + ',' + std::to_string(m.packets_to_ch) + ',' +
           std::to_string(m.packets_to_bs) + ',' + std::to_string(m.cumulative_packets_to_bs) +
           ',' + format_double(m.energy_consumed) + '\n';
  }
  return out;
}

History parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("csv: missing or unexpected header");
  }
  History history;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 8) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 8 fields");
    }
    RoundMetrics m;
    m.round = parse_field<int>(fields[0], line_no);
    m.alive = parse_field<int>(fields[1], line_no);
    m.dead = parse_field<int>(fields[2], line_no);
    m.ch_count = parse_field<int>(fields[3], line_no);
    m.packets_to_ch = parse_field<std::int64_t>(fields[4], line_no);
    m.packets_to_bs = parse_field<std::int64_t>(fields[5], line_no);
    m.cumulative_packets_to_bs = parse_field<std::int64_t>(fields[6], line_no);
    m.energy_consumed = parse_field<double>(fields[7], line_no);
    history.record(m);
  }
  return history;
}

void write_csv(const History& history, const std::filesystem::path& path) {
  write_text(path, format_csv(history));
}

History read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

std::string format_summary(const std::vector<RunSummary>& summaries, const ConfigEcho& config) {
  json doc;
  json cfg = json::object();
  for (const auto& [key, value] : config.entries) cfg[key] = value;
  doc["config"] = std::move(cfg);
  json records = json::array();
  for (const RunSummary& s : summaries) {
    json r;
    r["protocol"] = s.protocol;
    r["sink_mode"] = s.sink_mode;
    r["seed"] = s.seed;
    r["horizon"] = s.horizon;
    r["stability_period"] = optional_round(s.stability_period);
    r["lifetime"] = optional_round(s.lifetime);
    r["survived_horizon"] = !s.lifetime.has_value();
    r["avg_alive"] = s.avg_alive;
    r["total_throughput"] = s.total_throughput;
    r["avg_throughput"] = s.avg_throughput;
    r["energy_consumed_j"] = s.energy_consumed;
    r["config_fingerprint"] = s.config_fingerprint;
    records.push_back(std::move(r));
  }
  doc["runs"] = std::move(records);
  return doc.dump(2) + '\n';
}

std::vector<RunSummary> parse_summary(const std::string& text) {
  const json doc = json::parse(text);
  std::vector<RunSummary> out;
  for (const json& r : doc.at("runs")) {
    RunSummary s;
    s.protocol = r.at("protocol").get<std::string>();
    s.sink_mode = r.at("sink_mode").get<std::string>();
    s.seed = r.at("seed").get<std::uint64_t>();
    s.horizon = r.at("horizon").get<int>();
    s.stability_period = round_or_empty(r.at("stability_period"));
    s.lifetime = round_or_empty(r.at("lifetime"));
    s.avg_alive = r.at("avg_alive").get<double>();
    s.total_throughput = r.at("total_throughput").get<std::int64_t>();
    s.avg_throughput = r.at("avg_throughput").get<double>();
    s.energy_consumed = r.at("energy_consumed_j").get<double>();
    s.config_fingerprint = r.at("config_fingerprint").get<std::string>();
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary(const std::vector<RunSummary>& summaries, const ConfigEcho& config,
                   const std::filesystem::path& path) {
  if (summaries.empty()) throw std::invalid_argument("write_summary: no summaries");
  write_text(path, format_summary(summaries, config));
}

}  // namespace wsnsim

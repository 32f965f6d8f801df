#include "wsnsim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace wsnsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)>;

template <typename T, typename Field>
Setter number_setter(Field field) {
  return [field](ScenarioConfig& c, std::string_view key, std::string_view value) {
    field(c) = parse_number<T>(key, value);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"node_count", number_setter<int>([](ScenarioConfig& c) -> int& { return c.node_count; })},
      {"field_m", number_setter<double>([](ScenarioConfig& c) -> double& { return c.field_m; })},
      {"initial_energy_j",
       number_setter<double>([](ScenarioConfig& c) -> double& { return c.initial_energy_j; })},
      {"rounds", number_setter<int>([](ScenarioConfig& c) -> int& { return c.rounds; })},
      {"packet_bits", number_setter<std::uint32_t>(
                          [](ScenarioConfig& c) -> std::uint32_t& { return c.energy.packet_bits; })},
      {"e_elec", number_setter<double>([](ScenarioConfig& c) -> double& { return c.energy.e_elec; })},
      {"e_fs", number_setter<double>([](ScenarioConfig& c) -> double& { return c.energy.e_fs; })},
      {"e_mp", number_setter<double>([](ScenarioConfig& c) -> double& { return c.energy.e_mp; })},
      {"e_da", number_setter<double>([](ScenarioConfig& c) -> double& { return c.energy.e_da; })},
      {"p_opt",
       number_setter<double>([](ScenarioConfig& c) -> double& { return c.protocol_config.p_opt; })},
      {"hard_threshold", number_setter<double>([](ScenarioConfig& c) -> double& {
         return c.protocol_config.hard_threshold;
       })},
      {"soft_threshold", number_setter<double>([](ScenarioConfig& c) -> double& {
         return c.protocol_config.soft_threshold;
       })},
      {"hierarchy_layers", number_setter<int>([](ScenarioConfig& c) -> int& {
         return c.protocol_config.hierarchy_layers;
       })},
      {"layer_p",
       number_setter<double>([](ScenarioConfig& c) -> double& { return c.protocol_config.layer_p; })},
      {"timer_k",
       number_setter<double>([](ScenarioConfig& c) -> double& { return c.protocol_config.timer_k; })},
      {"comm_range", number_setter<double>(
                         [](ScenarioConfig& c) -> double& { return c.protocol_config.comm_range; })},
      {"het_m", number_setter<double>(
                    [](ScenarioConfig& c) -> double& { return c.protocol_config.heterogeneity.m; })},
      {"het_a", number_setter<double>(
                    [](ScenarioConfig& c) -> double& { return c.protocol_config.heterogeneity.a; })},
      {"het_m0", number_setter<double>(
                     [](ScenarioConfig& c) -> double& { return c.protocol_config.heterogeneity.m0; })},
      {"het_b", number_setter<double>(
                    [](ScenarioConfig& c) -> double& { return c.protocol_config.heterogeneity.b; })},
      {"sink_step_m",
       number_setter<double>([](ScenarioConfig& c) -> double& { return c.sink_step_m; })},
      {"sink_pause_rounds",
       number_setter<int>([](ScenarioConfig& c) -> int& { return c.sink_pause_rounds; })},
      {"protocol",
       [](ScenarioConfig& c, std::string_view key, std::string_view value) {
         try {
           c.protocol = parse_protocol(trim(value));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(std::string(key), e.what());
         }
       }},
      {"sink",
       [](ScenarioConfig& c, std::string_view key, std::string_view value) {
         try {
           c.sink_mode = parse_sink_mode(trim(value));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(std::string(key), e.what());
         }
       }},
      {"seeds",
       [](ScenarioConfig& c, std::string_view key, std::string_view value) {
         try {
           c.seeds = parse_seed_list(value);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(std::string(key), e.what());
         }
       }},
  };
  return table;
}

void require(bool ok, const char* key, const char* message) {
  if (!ok) throw ConfigError(key, message);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string seeds_text(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seeds[i]);
  }
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  require(node_count >= 1, "node_count", "must be >= 1");
  require(field_m > 0.0, "field_m", "must be > 0");
  require(initial_energy_j > 0.0, "initial_energy_j", "must be > 0");
  require(rounds >= 1, "rounds", "must be >= 1");
  require(energy.packet_bits > 0, "packet_bits", "must be > 0");
  require(energy.e_elec > 0.0, "e_elec", "must be > 0");
  require(energy.e_fs > 0.0, "e_fs", "must be > 0");
  require(energy.e_mp > 0.0, "e_mp", "must be > 0");
  require(energy.e_da > 0.0, "e_da", "must be > 0");
  const ProtocolConfig& p = protocol_config;
  require(p.p_opt > 0.0 && p.p_opt <= 1.0, "p_opt", "must be in (0, 1]");
  require(p.hard_threshold >= 0.0, "hard_threshold", "must be >= 0");
  require(p.soft_threshold >= 0.0, "soft_threshold", "must be >= 0");
  require(p.hierarchy_layers >= 1, "hierarchy_layers", "must be >= 1");
  require(p.layer_p > 0.0 && p.layer_p <= 1.0, "layer_p", "must be in (0, 1]");
  require(p.timer_k > 0.0, "timer_k", "must be > 0");
  require(p.comm_range > 0.0, "comm_range", "must be > 0");
  const Heterogeneity& h = p.heterogeneity;
  require(h.m >= 0.0, "het_m", "must be >= 0");
  require(h.m0 >= 0.0, "het_m0", "must be >= 0");
  require(h.m + h.m0 <= 1.0, "het_m0", "het_m + het_m0 must be <= 1");
  require(h.a >= 0.0, "het_a", "must be >= 0");
  require(h.m0 == 0.0 || h.b >= h.a, "het_b", "must be >= het_a when het_m0 > 0");
  require(sink_step_m > 0.0, "sink_step_m", "must be > 0");
  require(sink_pause_rounds >= 1, "sink_pause_rounds", "must be >= 1");
  require(!seeds.empty(), "seeds", "must list at least one seed");
}

SinkState ScenarioConfig::sink() const {
  return SinkState{sink_mode, field_m, sink_step_m, sink_pause_rounds};
}

ConfigEcho ScenarioConfig::echo() const {
  const ProtocolConfig& p = protocol_config;
  const Heterogeneity& h = p.heterogeneity;
  ConfigEcho e;
  e.entries = {
      {"node_count", std::to_string(node_count)},
      {"field_m", format_number(field_m)},
      {"initial_energy_j", format_number(initial_energy_j)},
      {"rounds", std::to_string(rounds)},
      {"packet_bits", std::to_string(energy.packet_bits)},
      {"e_elec", format_number(energy.e_elec)},
      {"e_fs", format_number(energy.e_fs)},
      {"e_mp", format_number(energy.e_mp)},
      {"e_da", format_number(energy.e_da)},
      {"p_opt", format_number(p.p_opt)},
      {"hard_threshold", format_number(p.hard_threshold)},
      {"soft_threshold", format_number(p.soft_threshold)},
      {"hierarchy_layers", std::to_string(p.hierarchy_layers)},
      {"layer_p", format_number(p.layer_p)},
      {"timer_k", format_number(p.timer_k)},
      {"comm_range", format_number(p.comm_range)},
      {"het_m", format_number(h.m)},
      {"het_a", format_number(h.a)},
      {"het_m0", format_number(h.m0)},
      {"het_b", format_number(h.b)},
      {"sink_step_m", format_number(sink_step_m)},
      {"sink_pause_rounds", std::to_string(sink_pause_rounds)},
      {"protocol", std::string(to_string(protocol))},
      {"sink", std::string(to_string(sink_mode))},
      {"seeds", seeds_text(seeds)},
  };
  return e;
}

std::string ScenarioConfig::fingerprint() const {
  std::string canon;
  for (const auto& [key, value] : echo().entries) {
    if (key == "protocol" || key == "sink" || key == "seeds") continue;
    canon += key + '=' + value + '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
  return buf;
}

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(trim(key));
  if (it == table.end()) throw ConfigError(std::string(trim(key)), "unknown key");
  it->second(config, it->first, value);
}

ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + " is not key = value");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ScenarioConfig load_config_file(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  const auto to_u64 = [](std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw std::invalid_argument("bad seed '" + std::string(s) + "'");
    }
    return v;
  };
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (const auto dash = item.find('-'); dash != std::string_view::npos && dash > 0) {
      const std::uint64_t lo = to_u64(item.substr(0, dash));
      const std::uint64_t hi = to_u64(item.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("descending seed range '" + std::string(item) + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(to_u64(item));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return seeds;
}

RunResult run_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  RunResult result;
  result.protocol = config.protocol;
  result.sink_mode = config.sink_mode;
  result.seed = seed;

  const Heterogeneity het = config.protocol == ProtocolKind::deec
                                ? config.protocol_config.heterogeneity
                                : Heterogeneity{};
  NetworkState network =
      deploy(config.node_count, config.field_m, config.initial_energy_j, het, seed);
  const SinkState sink = config.sink();
  auto engine = make_engine(config.protocol, config.protocol_config, config.energy,
                            network.nodes.size());
  // One stream per (seed, protocol, sink mode); independent of scheduling.
  Rng rng{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
          static_cast<std::uint32_t>(config.protocol), static_cast<std::uint32_t>(config.sink_mode)};

  for (int r = 0; r < config.rounds; ++r) {
    sense_environment(network, rng);
    result.history.record(run_round(*engine, network, sink, rng));
  }

  result.summary = summarize(result.history, std::string(to_string(config.protocol)),
                             std::string(to_string(config.sink_mode)), seed);
  result.summary.config_fingerprint = config.fingerprint();
  result.final_state = std::move(network);
  return result;
}

std::vector<RunSummary> MatrixResult::summaries() const {
  std::vector<RunSummary> out;
  out.reserve(runs.size());
  for (const RunResult& r : runs) out.push_back(r.summary);
  return out;
}

MatrixResult run_matrix(const ScenarioConfig& config, std::vector<ProtocolKind> protocols,
                        std::vector<SinkMode> sink_modes, std::vector<std::uint64_t> seeds) {
  if (protocols.empty() || sink_modes.empty() || seeds.empty()) {
    throw std::invalid_argument("run_matrix: protocol, sink and seed lists must be non-empty");
  }
  config.validate();
  const auto dedupe = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(protocols);
  dedupe(sink_modes);
  dedupe(seeds);

  struct Combo {
    ProtocolKind protocol;
    SinkMode mode;
    std::uint64_t seed;
  };
  std::vector<Combo> combos;
  for (ProtocolKind p : protocols)
    for (SinkMode m : sink_modes)
      for (std::uint64_t s : seeds) combos.push_back({p, m, s});

  MatrixResult result;
  result.runs.resize(combos.size());
  std::vector<std::exception_ptr> failures(combos.size());
  const auto count = static_cast<std::ptrdiff_t>(combos.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      ScenarioConfig run_config = config;
      run_config.protocol = combos[i].protocol;
      run_config.sink_mode = combos[i].mode;
      result.runs[i] = run_scenario(run_config, combos[i].seed);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }

  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (!failures[i]) continue;
    const std::string name = std::string(to_string(combos[i].protocol)) + "/" +
                             std::string(to_string(combos[i].mode)) + "/seed " +
                             std::to_string(combos[i].seed);
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("run " + name + " failed: " + e.what());
    }
  }
  return result;
}

std::string run_csv_name(ProtocolKind protocol, SinkMode mode, std::uint64_t seed) {
  return std::string(to_string(protocol)) + "_" + std::string(to_string(mode)) + "_seed" +
         std::to_string(seed) + ".csv";
}

void write_matrix_outputs(const MatrixResult& result, const ScenarioConfig& config,
                          const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
  for (const RunResult& run : result.runs) {
    write_csv(run.history, out_dir / run_csv_name(run.protocol, run.sink_mode, run.seed));
  }
  write_summary(result.summaries(), config.echo(), out_dir / "summary.json");
}

}  // namespace wsnsim

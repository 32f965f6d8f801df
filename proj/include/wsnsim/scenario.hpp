// Scenario configuration, single runs and the protocol x sink x seed matrix.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/energy_model.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/network.hpp"
#include "wsnsim/protocols.hpp"
#include "wsnsim/sink.hpp"

namespace wsnsim {

/// Invalid or unknown configuration entry; key() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ScenarioConfig {
  int node_count = 100;
  double field_m = 100.0;
  double initial_energy_j = 0.5;
  int rounds = 5000;
  EnergyParams energy;
  ProtocolConfig protocol_config;
  ProtocolKind protocol = ProtocolKind::leach;
  SinkMode sink_mode = SinkMode::static_center;
  double sink_step_m = 10.0;
  int sink_pause_rounds = 1;
  std::vector<std::uint64_t> seeds{1};

  /// Throws ConfigError naming the first out-of-range key.
  void validate() const;

  SinkState sink() const;

  /// Every key with its canonical text value, in fixed order.
  ConfigEcho echo() const;

  /// Hex FNV-1a digest over the echo minus the per-run keys (protocol, sink, seeds).
  std::string fingerprint() const;
};

/// Sets one key from its text form. Throws ConfigError for unknown keys and
/// unparsable or out-of-range values.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` document; blank lines and `#` comments are ignored.
/// Entries override `base`.
ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::filesystem::path& path, ScenarioConfig base = {});

/// "1,2,5" or ranges "1-10", mixed freely.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct RunResult {
  ProtocolKind protocol = ProtocolKind::leach;
  SinkMode sink_mode = SinkMode::static_center;
  std::uint64_t seed = 0;
  History history;
  RunSummary summary;
  NetworkState final_state;
};

/// Deploy, then for every round: sense, setup, steady state, record.
/// Fully determined by (config, seed); the topology depends on the seed only.
RunResult run_scenario(const ScenarioConfig& config, std::uint64_t seed);

struct MatrixResult {
  std::vector<RunResult> runs;  ///< ordered by (protocol, sink mode, seed)
  std::vector<RunSummary> summaries() const;
};

/// Runs every (protocol, sink mode, seed) combination; combinations may run
/// concurrently but results come back in lexicographic order. A failing run
/// aborts with a std::runtime_error naming the combination.
MatrixResult run_matrix(const ScenarioConfig& config, std::vector<ProtocolKind> protocols,
                        std::vector<SinkMode> sink_modes, std::vector<std::uint64_t> seeds);

/// File name used for a run's per-round CSV.
std::string run_csv_name(ProtocolKind protocol, SinkMode mode, std::uint64_t seed);

/// Writes one CSV per run plus summary.json into `out_dir` (created if missing).
void write_matrix_outputs(const MatrixResult& result, const ScenarioConfig& config,
                          const std::filesystem::path& out_dir);

}  // namespace wsnsim

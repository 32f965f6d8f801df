// Per-round metrics, run summaries and their on-disk formats.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsnsim {

struct RoundMetrics {
  int round = 0;
  int alive = 0;
  int dead = 0;
  int ch_count = 0;
  std::int64_t packets_to_ch = 0;
  std::int64_t packets_to_bs = 0;
  std::int64_t cumulative_packets_to_bs = 0;
  double energy_consumed = 0.0;  ///< joules drawn during this round

  bool operator==(const RoundMetrics&) const = default;
};

class SequencingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Append-only per-run record; round indices must be contiguous from 0.
class History {
 public:
  void record(const RoundMetrics& metrics);

  const std::vector<RoundMetrics>& rounds() const { return rounds_; }
  std::size_t size() const { return rounds_.size(); }
  bool empty() const { return rounds_.empty(); }

  bool operator==(const History&) const = default;

 private:
  std::vector<RoundMetrics> rounds_;
};

struct RunSummary {
  std::string protocol;
  std::string sink_mode;
  std::uint64_t seed = 0;
  std::optional<int> stability_period;  ///< first round with a dead node
  std::optional<int> lifetime;          ///< round of the last death; empty = survived the horizon
  int horizon = 0;                      ///< rounds simulated
  double avg_alive = 0.0;
  std::int64_t total_throughput = 0;    ///< packets received at the sink
  double avg_throughput = 0.0;          ///< mean of the cumulative throughput curve
  double energy_consumed = 0.0;
  std::string config_fingerprint;

  bool operator==(const RunSummary&) const = default;
};

/// Smallest round index with at least one dead node. Throws std::invalid_argument
/// on an empty history.
std::optional<int> stability_period(const History& history);

RunSummary summarize(const History& history, std::string protocol, std::string sink_mode,
                     std::uint64_t seed);

/// Column header of the per-round CSV.
inline constexpr const char* kCsvHeader =
    "round,alive,dead,ch_count,packets_to_ch,packets_to_bs,cum_packets_to_bs,energy_consumed_j";

std::string format_csv(const History& history);
History parse_csv(const std::string& text);
void write_csv(const History& history, const std::filesystem::path& path);
History read_csv(const std::filesystem::path& path);

/// Configuration echo stored alongside every summary record.
struct ConfigEcho {
  std::vector<std::pair<std::string, std::string>> entries;
};

std::string format_summary(const std::vector<RunSummary>& summaries, const ConfigEcho& config);
std::vector<RunSummary> parse_summary(const std::string& text);
void write_summary(const std::vector<RunSummary>& summaries, const ConfigEcho& config,
                   const std::filesystem::path& path);

}  // namespace wsnsim

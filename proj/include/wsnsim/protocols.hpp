// Clustering protocol engines: LEACH, TEEN, DEEC, H-TEEN and CAMP-TEEN.
//
// Every engine splits a round into a setup phase, which elects CHs and forms
// clusters into a RoundPlan, and a shared steady-state phase that moves
// packets along the plan and charges the radio model through
// NetworkState::charge().
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsnsim/energy_model.hpp"
#include "wsnsim/kernels.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/network.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/sink.hpp"

namespace wsnsim {

enum class ProtocolKind { leach, teen, deec, hteen, campteen };

inline constexpr std::array kAllProtocols = {ProtocolKind::leach, ProtocolKind::teen,
                                             ProtocolKind::deec, ProtocolKind::hteen,
                                             ProtocolKind::campteen};

std::string_view to_string(ProtocolKind kind);
/// Accepts the canonical upper-case names (LEACH, TEEN, DEEC, HTEEN, CAMPTEEN),
/// case-insensitively and with an optional hyphen. Throws std::invalid_argument.
ProtocolKind parse_protocol(std::string_view name);

struct ProtocolConfig {
  double p_opt = 0.1;
  double hard_threshold = 100.0;
  double soft_threshold = 2.0;
  int hierarchy_layers = 4;   ///< H-TEEN layers, counting the sensor layer
  double layer_p = 0.1;       ///< H-TEEN per-layer CH fraction p_c
  double timer_k = 1.0;       ///< CAMP-TEEN timer constant K
  double comm_range = 25.0;   ///< CAMP-TEEN neighbourhood radius, metres
  /// Extra-energy mix; deployed for DEEC only, the other protocols are homogeneous.
  Heterogeneity heterogeneity{0.1, 1.0, 0.0, 1.0};
  /// When false, packets flow but nothing is charged. Used to check election
  /// mechanics without deaths.
  bool charge_energy = true;

  void validate() const;
};

// --- epoch bookkeeping -------------------------------------------------------

/// Eligible set G for rotating CH election with a fixed fraction p. Everyone
/// re-enters G when the round index is a multiple of the epoch length ceil(1/p).
class EpochTracker {
 public:
  EpochTracker(std::size_t nodes, double p);

  int epoch_length() const { return epoch_length_; }
  double p() const { return p_; }

  void begin_round(int round);
  bool eligible(NodeId id) const { return eligible_[static_cast<std::size_t>(id)] != 0; }
  void mark_elected(NodeId id) { eligible_[static_cast<std::size_t>(id)] = 0; }
  std::size_t eligible_count() const;

 private:
  double p_;
  int epoch_length_;
  std::vector<char> eligible_;
};

// --- LEACH / TEEN ------------------------------------------------------------

/// p / (1 - p (r mod 1/p)) for members of G, 0 otherwise; clamped to [0, 1].
double leach_threshold(double p, int round, bool in_g);

/// One uniform draw per alive eligible node, in id order. Elected nodes leave G.
/// Returns CH ids in ascending order.
std::vector<NodeId> leach_elect_chs(const NetworkState& network, EpochTracker& tracker, Rng& rng);

bool teen_should_transmit(double sensed, std::optional<double> last_transmitted, double hard,
                          double soft);

// --- DEEC --------------------------------------------------------------------

/// Estimated network average energy (E_total / N)(1 - r / R), floored at 0.
double deec_average_energy(double e_total, int nodes, int round, double total_rounds);

/// Estimated lifetime R = E_total / E_round.
double deec_lifetime_estimate(double e_total, double e_round);

/// Lifetime estimate using the analytical round energy for k = round(N p_opt)
/// clusters and the reference distances for the field.
double deec_lifetime_for(const NetworkState& network, const EnergyParams& params, double p_opt);

/// Population terms needed by the multi-level probability.
struct DeecPopulation {
  int nodes = 0;
  double extra_energy_sum = 0.0;  ///< sum of a_i over all nodes
};

DeecPopulation deec_population(const NetworkState& network);

/// Per-node election probability. Two-level form when no super nodes are
/// configured (m0 == 0), multi-level form otherwise. Clamped to [0, 1];
/// dead nodes get 0. Throws std::invalid_argument when avg_energy <= 0.
double deec_p_i(const NodeState& node, double avg_energy, const ProtocolConfig& config,
                const DeecPopulation& population);

/// Per-node epochs of floor(1/p_i) rounds tracked in NodeState::eligible.
/// When the average-energy estimate is exhausted (r >= R) every alive node
/// takes the p_i -> 1 limit.
std::vector<NodeId> deec_elect_chs(NetworkState& network, const ProtocolConfig& config, Rng& rng);

// --- H-TEEN ------------------------------------------------------------------

inline constexpr NodeId kSinkHop = -2;

/// CH tree for one round. tiers[0] holds every first-tier CH, tiers[l + 1]
/// the subset promoted from tiers[l].
struct HierarchyTree {
  std::vector<std::vector<NodeId>> tiers;
  std::vector<int> tier_of;      ///< per node: 0 for sensors, else highest CH tier (1-based)
  std::vector<NodeId> next_hop;  ///< per CH: parent CH or kSinkHop; kNoNode for sensors
};

/// CH tiers used for a hierarchy_layers setting; the sensor layer is counted,
/// so 4 layers give 3 CH tiers. One or two layers both give a flat TEEN tree.
int hteen_ch_tiers(int hierarchy_layers);

/// Promotes tier-l CHs into tier l+1 with the rotating threshold, one
/// EpochTracker per upper tier. `upper_trackers` must hold ch_tiers - 1
/// trackers, already advanced to the current round. An empty tier stops the
/// climb and the tier below reports straight to the sink.
HierarchyTree hteen_build_hierarchy(std::vector<NodeId> first_tier, int ch_tiers,
                                    const NetworkState& network,
                                    std::span<EpochTracker> upper_trackers, Rng& rng);

// --- CAMP-TEEN ---------------------------------------------------------------

/// K / E - alpha; no timer for a depleted node (E == 0).
std::optional<double> campteen_timer(double e_norm, double k_const, double alpha);

struct CampElection {
  std::vector<NodeId> heads;     ///< ascending
  std::vector<double> timers;    ///< per node; +inf for dead nodes
};

/// Greedy claim: nodes with a finite timer claim the CH role in ascending
/// timer order (ties to the lower id) unless an earlier claimant is their
/// neighbour. Returns heads in ascending id order.
std::vector<NodeId> campteen_claim_heads(std::span<const double> timers,
                                         const kernels::NeighborTable& neighbors);

/// Draws alpha for every alive node in id order, then claims CH roles in
/// ascending timer order (ties to the lower id); a claim cancels every
/// neighbour within comm_range.
CampElection campteen_elect_chs(const NetworkState& network, const ProtocolConfig& config,
                                Rng& rng);

// --- engines -------------------------------------------------------------------

/// Output of the setup phase.
struct RoundPlan {
  std::vector<NodeId> heads;     ///< first-tier CHs, ascending
  std::vector<NodeId> next_hop;  ///< per node: CH id, kSinkHop, or kNoNode (idle)
  std::vector<int> tier;         ///< per node: 0 member, >= 1 CH tier
  bool threshold_gated = false;  ///< TEEN-family hard/soft gating
};

class ProtocolEngine {
 public:
  ProtocolEngine(const ProtocolConfig& config, const EnergyParams& params)
      : config_(config), params_(params) {}
  virtual ~ProtocolEngine() = default;

  virtual ProtocolKind kind() const = 0;

  /// CH election and cluster formation; writes roles into the network.
  virtual RoundPlan setup(NetworkState& network, const SinkState& sink, Rng& rng) = 0;

  const ProtocolConfig& config() const { return config_; }
  const EnergyParams& params() const { return params_; }
  std::int64_t cumulative_packets_to_bs() const { return cumulative_to_bs_; }

 protected:
  ProtocolConfig config_;
  EnergyParams params_;

 private:
  friend RoundMetrics run_round(ProtocolEngine&, NetworkState&, const SinkState&, Rng&);
  std::int64_t cumulative_to_bs_ = 0;
};

std::unique_ptr<ProtocolEngine> make_engine(ProtocolKind kind, const ProtocolConfig& config,
                                            const EnergyParams& params, std::size_t node_count);

/// Moves one round of packets along `plan`: sensors first, then CHs tier by
/// tier, each group in id order. Counts packets_to_ch / packets_to_bs and
/// fills ch_count; the caller fills round, alive/dead and energy.
RoundMetrics steady_state(NetworkState& network, const SinkState& sink, const RoundPlan& plan,
                          const ProtocolConfig& config, const EnergyParams& params);

/// Setup, steady state, metrics; advances network.round.
RoundMetrics run_round(ProtocolEngine& engine, NetworkState& network, const SinkState& sink,
                       Rng& rng);

}  // namespace wsnsim

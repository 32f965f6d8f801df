#include "wsnsim/protocols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wsnsim {
namespace {

int epoch_length_for(double p) {
  return std::max(1, static_cast<int>(std::ceil(1.0 / p - 1e-9)));
}

std::vector<char> head_mask(std::size_t n, std::span<const NodeId> heads) {
  std::vector<char> mask(n, 0);
  for (NodeId h : heads) mask[static_cast<std::size_t>(h)] = 1;
  return mask;
}

NodeId nearest_in(const NetworkState& network, NodeId from, std::span<const NodeId> candidates) {
  NodeId best = kNoNode;
  double best_d = std::numeric_limits<double>::infinity();
  const Point p = network.nodes[static_cast<std::size_t>(from)].position;
  for (NodeId c : candidates) {
    const double d = distance(p, network.nodes[static_cast<std::size_t>(c)].position);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void reset_roles(NetworkState& network) {
  for (NodeState& node : network.nodes) {
    node.role = Role::member;
    node.cluster_of.reset();
  }
}

/// Writes roles for `heads` (ascending) and joins every other alive node to
/// its nearest head. Heads report to the sink.
RoundPlan flat_plan(NetworkState& network, std::vector<NodeId> heads, bool gated) {
  const std::size_t n = network.nodes.size();
  RoundPlan plan;
  plan.threshold_gated = gated;
  plan.next_hop.assign(n, kNoNode);
  plan.tier.assign(n, 0);

  const ClusterAssignment assignment = assign_clusters(network, heads);
  for (NodeId h : heads) {
    NodeState& node = network.nodes[static_cast<std::size_t>(h)];
    node.role = Role::cluster_head;
    ++node.rounds_as_ch;
    plan.tier[static_cast<std::size_t>(h)] = 1;
    plan.next_hop[static_cast<std::size_t>(h)] = kSinkHop;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId head = assignment.head_of[i];
    if (head == kNoNode) continue;
    network.nodes[i].cluster_of = head;
    plan.next_hop[i] = head;
  }
  plan.heads = std::move(heads);
  return plan;
}

void mirror_eligibility(NetworkState& network, const EpochTracker& tracker) {
  for (NodeState& node : network.nodes) node.eligible = tracker.eligible(node.id);
}

// --- engines -----------------------------------------------------------------

/// LEACH, and TEEN which shares its election and adds threshold gating.
class RotatingEngine final : public ProtocolEngine {
 public:
  RotatingEngine(ProtocolKind kind, const ProtocolConfig& config, const EnergyParams& params,
                 std::size_t nodes)
      : ProtocolEngine(config, params), kind_(kind), tracker_(nodes, config.p_opt) {}

  ProtocolKind kind() const override { return kind_; }

  RoundPlan setup(NetworkState& network, const SinkState&, Rng& rng) override {
    reset_roles(network);
    tracker_.begin_round(network.round);
    std::vector<NodeId> heads = leach_elect_chs(network, tracker_, rng);
    mirror_eligibility(network, tracker_);
    return flat_plan(network, std::move(heads), kind_ == ProtocolKind::teen);
  }

 private:
  ProtocolKind kind_;
  EpochTracker tracker_;
};

class DeecEngine final : public ProtocolEngine {
 public:
  using ProtocolEngine::ProtocolEngine;

  ProtocolKind kind() const override { return ProtocolKind::deec; }

  RoundPlan setup(NetworkState& network, const SinkState&, Rng& rng) override {
    if (!(network.lifetime_estimate > 0.0)) {
      network.lifetime_estimate = deec_lifetime_for(network, params_, config_.p_opt);
    }
    reset_roles(network);
    return flat_plan(network, deec_elect_chs(network, config_, rng), false);
  }
};

class HteenEngine final : public ProtocolEngine {
 public:
  HteenEngine(const ProtocolConfig& config, const EnergyParams& params, std::size_t nodes)
      : ProtocolEngine(config, params),
        ch_tiers_(hteen_ch_tiers(config.hierarchy_layers)),
        first_tier_(nodes, config.layer_p) {
    for (int t = 1; t < ch_tiers_; ++t) upper_.emplace_back(nodes, config.layer_p);
  }

  ProtocolKind kind() const override { return ProtocolKind::hteen; }

  RoundPlan setup(NetworkState& network, const SinkState&, Rng& rng) override {
    reset_roles(network);
    first_tier_.begin_round(network.round);
    for (EpochTracker& t : upper_) t.begin_round(network.round);

    std::vector<NodeId> heads = leach_elect_chs(network, first_tier_, rng);
    mirror_eligibility(network, first_tier_);
    HierarchyTree tree = hteen_build_hierarchy(heads, ch_tiers_, network, upper_, rng);

    RoundPlan plan = flat_plan(network, std::move(heads), true);
    for (std::size_t i = 0; i < plan.tier.size(); ++i) {
      if (tree.tier_of[i] == 0) continue;
      plan.tier[i] = tree.tier_of[i];
      plan.next_hop[i] = tree.next_hop[i];
      if (tree.next_hop[i] != kSinkHop) network.nodes[i].cluster_of = tree.next_hop[i];
    }
    return plan;
  }

 private:
  int ch_tiers_;
  EpochTracker first_tier_;
  std::vector<EpochTracker> upper_;
};

class CampteenEngine final : public ProtocolEngine {
 public:
  using ProtocolEngine::ProtocolEngine;

  ProtocolKind kind() const override { return ProtocolKind::campteen; }

  RoundPlan setup(NetworkState& network, const SinkState&, Rng& rng) override {
    reset_roles(network);
    CampElection election = campteen_elect_chs(network, config_, rng);
    return flat_plan(network, std::move(election.heads), true);
  }
};

}  // namespace

// --- names and config ----------------------------------------------------------

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::leach: return "LEACH";
    case ProtocolKind::teen: return "TEEN";
    case ProtocolKind::deec: return "DEEC";
    case ProtocolKind::hteen: return "HTEEN";
    case ProtocolKind::campteen: return "CAMPTEEN";
  }
  return "UNKNOWN";
}

ProtocolKind parse_protocol(std::string_view name) {
  std::string canon;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    canon += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  for (ProtocolKind kind : kAllProtocols) {
    if (canon == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

void ProtocolConfig::validate() const {
  if (!(p_opt > 0.0 && p_opt <= 1.0)) throw std::invalid_argument("p_opt must be in (0, 1]");
  if (!(hard_threshold >= 0.0)) throw std::invalid_argument("hard_threshold must be >= 0");
  if (!(soft_threshold >= 0.0)) throw std::invalid_argument("soft_threshold must be >= 0");
  if (hierarchy_layers < 1) throw std::invalid_argument("hierarchy_layers must be >= 1");
  if (!(layer_p > 0.0 && layer_p <= 1.0)) throw std::invalid_argument("layer_p must be in (0, 1]");
  if (!(timer_k > 0.0)) throw std::invalid_argument("timer_k must be > 0");
  if (!(comm_range > 0.0)) throw std::invalid_argument("comm_range must be > 0");
  heterogeneity.validate();
}

// --- epoch tracker -------------------------------------------------------------

EpochTracker::EpochTracker(std::size_t nodes, double p)
    : p_(p), epoch_length_(1), eligible_(nodes, 1) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("EpochTracker: p must be in (0, 1]");
  epoch_length_ = epoch_length_for(p);
}

void EpochTracker::begin_round(int round) {
  if (round % epoch_length_ == 0) std::fill(eligible_.begin(), eligible_.end(), 1);
}

std::size_t EpochTracker::eligible_count() const {
  return static_cast<std::size_t>(std::count(eligible_.begin(), eligible_.end(), 1));
}

// --- LEACH / TEEN --------------------------------------------------------------

double leach_threshold(double p, int round, bool in_g) {
  if (!in_g) return 0.0;
  const double denom = 1.0 - p * static_cast<double>(round % epoch_length_for(p));
  if (denom <= 0.0) return 1.0;
  return std::clamp(p / denom, 0.0, 1.0);
}

std::vector<NodeId> leach_elect_chs(const NetworkState& network, EpochTracker& tracker, Rng& rng) {
  std::vector<NodeId> heads;
  for (const NodeState& node : network.nodes) {
    if (!node.alive || !tracker.eligible(node.id)) continue;
    const double u = rng.uniform01();
    if (u < leach_threshold(tracker.p(), network.round, true)) {
      heads.push_back(node.id);
      tracker.mark_elected(node.id);
    }
  }
  return heads;
}

bool teen_should_transmit(double sensed, std::optional<double> last_transmitted, double hard,
                          double soft) {
  if (sensed < hard) return false;
  return !last_transmitted || std::abs(sensed - *last_transmitted) >= soft;
}

// --- DEEC ----------------------------------------------------------------------

double deec_average_energy(double e_total, int nodes, int round, double total_rounds) {
  if (!(total_rounds > 0.0)) throw std::invalid_argument("deec_average_energy: R must be > 0");
  if (nodes < 1) throw std::invalid_argument("deec_average_energy: nodes must be >= 1");
  if (round < 0) throw std::invalid_argument("deec_average_energy: round must be >= 0");
  const double avg = e_total / nodes * (1.0 - round / total_rounds);
  return std::max(avg, 0.0);
}

double deec_lifetime_estimate(double e_total, double e_round) {
  if (!(e_round > 0.0)) throw std::invalid_argument("deec_lifetime_estimate: E_round must be > 0");
  return e_total / e_round;
}

double deec_lifetime_for(const NetworkState& network, const EnergyParams& params, double p_opt) {
  const auto n = static_cast<std::uint64_t>(network.nodes.size());
  const auto k = std::clamp<std::uint64_t>(
      static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * p_opt)), 1, n);
  const double e_round = expected_round_energy(params, k, n, network.field_m,
                                               reference_bs_distance(network.field_m));
  return deec_lifetime_estimate(network.e_total, e_round);
}

DeecPopulation deec_population(const NetworkState& network) {
  DeecPopulation pop;
  pop.nodes = static_cast<int>(network.nodes.size());
  for (const NodeState& node : network.nodes) pop.extra_energy_sum += node.tier.energy_fraction;
  return pop;
}

double deec_p_i(const NodeState& node, double avg_energy, const ProtocolConfig& config,
                const DeecPopulation& population) {
  if (!(avg_energy > 0.0)) throw std::invalid_argument("deec_p_i: average energy must be > 0");
  if (!node.alive) return 0.0;
  const Heterogeneity& het = config.heterogeneity;
  const double ratio = node.residual_energy / avg_energy;
  double p = 0.0;
  if (het.m0 == 0.0) {
    const double weight = node.tier.kind == TierKind::advanced ? 1.0 + het.a : 1.0;
    p = config.p_opt * weight * ratio / (1.0 + het.a * het.m);
  } else {
    const double n = population.nodes;
    p = config.p_opt * n * (1.0 + node.tier.energy_fraction) * ratio /
        (n + population.extra_energy_sum);
  }
  return std::clamp(p, 0.0, 1.0);
}

std::vector<NodeId> deec_elect_chs(NetworkState& network, const ProtocolConfig& config, Rng& rng) {
  if (!(network.lifetime_estimate > 0.0)) {
    throw std::logic_error("deec_elect_chs: lifetime estimate not set");
  }
  const int round = network.round;
  const DeecPopulation population = deec_population(network);
  const double avg = deec_average_energy(network.e_total, population.nodes, round,
                                         network.lifetime_estimate);
  std::vector<NodeId> heads;
  for (NodeState& node : network.nodes) {
    if (!node.alive) continue;
    const double p = avg > 0.0 ? deec_p_i(node, avg, config, population) : 1.0;
    if (p <= 0.0) continue;
    const auto epoch = static_cast<std::int64_t>(
        std::min(std::floor(1.0 / p), static_cast<double>(std::numeric_limits<int>::max())));
    const std::int64_t phase = round % epoch;
    if (phase == 0) node.eligible = true;
    if (!node.eligible) continue;
    const double denom = 1.0 - p * static_cast<double>(phase);
    const double threshold = denom <= 0.0 ? 1.0 : std::clamp(p / denom, 0.0, 1.0);
    if (rng.uniform01() < threshold) {
      heads.push_back(node.id);
      node.eligible = false;
    }
  }
  return heads;
}

// --- H-TEEN --------------------------------------------------------------------

int hteen_ch_tiers(int hierarchy_layers) {
  if (hierarchy_layers < 1) throw std::invalid_argument("hierarchy_layers must be >= 1");
  return std::max(1, hierarchy_layers - 1);
}

HierarchyTree hteen_build_hierarchy(std::vector<NodeId> first_tier, int ch_tiers,
                                    const NetworkState& network,
                                    std::span<EpochTracker> upper_trackers, Rng& rng) {
  if (ch_tiers < 1) throw std::invalid_argument("hteen_build_hierarchy: need >= 1 CH tier");
  if (upper_trackers.size() < static_cast<std::size_t>(ch_tiers - 1)) {
    throw std::invalid_argument("hteen_build_hierarchy: missing upper-tier trackers");
  }
  const std::size_t n = network.nodes.size();
  std::sort(first_tier.begin(), first_tier.end());

  HierarchyTree tree;
  tree.tier_of.assign(n, 0);
  tree.next_hop.assign(n, kNoNode);
  if (first_tier.empty()) return tree;
  for (NodeId id : first_tier) tree.tier_of[static_cast<std::size_t>(id)] = 1;
  tree.tiers.push_back(std::move(first_tier));

  for (int t = 0; t + 1 < ch_tiers; ++t) {
    EpochTracker& tracker = upper_trackers[static_cast<std::size_t>(t)];
    const std::vector<NodeId>& lower = tree.tiers.back();
    std::vector<NodeId> promoted;
    for (NodeId id : lower) {
      if (!tracker.eligible(id)) continue;
      if (rng.uniform01() < leach_threshold(tracker.p(), network.round, true)) {
        promoted.push_back(id);
        tracker.mark_elected(id);
      }
    }
    if (promoted.empty()) break;
    const auto is_promoted = head_mask(n, promoted);
    for (NodeId id : lower) {
      if (is_promoted[static_cast<std::size_t>(id)]) continue;
      tree.next_hop[static_cast<std::size_t>(id)] = nearest_in(network, id, promoted);
    }
    for (NodeId id : promoted) tree.tier_of[static_cast<std::size_t>(id)] = t + 2;
    tree.tiers.push_back(std::move(promoted));
  }
  for (NodeId id : tree.tiers.back()) tree.next_hop[static_cast<std::size_t>(id)] = kSinkHop;
  return tree;
}

// --- CAMP-TEEN -----------------------------------------------------------------

std::optional<double> campteen_timer(double e_norm, double k_const, double alpha) {
  if (!(k_const > 0.0)) throw std::invalid_argument("campteen_timer: K must be > 0");
  if (!(e_norm > 0.0)) return std::nullopt;
  return k_const / e_norm - alpha;
}

CampElection campteen_elect_chs(const NetworkState& network, const ProtocolConfig& config,
                                Rng& rng) {
  const std::size_t n = network.nodes.size();
  CampElection out;
  out.timers.assign(n, std::numeric_limits<double>::infinity());

  for (const NodeState& node : network.nodes) {
    if (!node.alive) continue;
    const double alpha = rng.uniform01();
    const auto timer =
        campteen_timer(node.residual_energy / node.initial_energy, config.timer_k, alpha);
    if (timer) out.timers[static_cast<std::size_t>(node.id)] = *timer;
  }

  const std::span<const NodeState> nodes = network.nodes;
  const kernels::NeighborTable table = n >= kernels::kParallelThreshold
                                           ? kernels::neighbor_table_parallel(nodes, config.comm_range)
                                           : kernels::neighbor_table_serial(nodes, config.comm_range);
  out.heads = campteen_claim_heads(out.timers, table);
  return out;
}

std::vector<NodeId> campteen_claim_heads(std::span<const double> timers,
                                         const kernels::NeighborTable& neighbors) {
  std::vector<NodeId> order;
  for (std::size_t i = 0; i < timers.size(); ++i) {
    if (std::isfinite(timers[i])) order.push_back(static_cast<NodeId>(i));
  }
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return timers[static_cast<std::size_t>(a)] < timers[static_cast<std::size_t>(b)];
  });

  std::vector<char> cancelled(timers.size(), 0);
  std::vector<NodeId> heads;
  for (NodeId id : order) {
    if (cancelled[static_cast<std::size_t>(id)]) continue;
    heads.push_back(id);
    for (NodeId nb : neighbors[static_cast<std::size_t>(id)]) cancelled[static_cast<std::size_t>(nb)] = 1;
  }
  std::sort(heads.begin(), heads.end());
  return heads;
}

// --- steady state and rounds ---------------------------------------------------

std::unique_ptr<ProtocolEngine> make_engine(ProtocolKind kind, const ProtocolConfig& config,
                                            const EnergyParams& params, std::size_t node_count) {
  config.validate();
  params.validate();
  switch (kind) {
    case ProtocolKind::leach:
    case ProtocolKind::teen:
      return std::make_unique<RotatingEngine>(kind, config, params, node_count);
    case ProtocolKind::deec: return std::make_unique<DeecEngine>(config, params);
    case ProtocolKind::hteen: return std::make_unique<HteenEngine>(config, params, node_count);
    case ProtocolKind::campteen: return std::make_unique<CampteenEngine>(config, params);
  }
  throw std::invalid_argument("make_engine: unknown protocol");
}

RoundMetrics steady_state(NetworkState& network, const SinkState& sink, const RoundPlan& plan,
                          const ProtocolConfig& config, const EnergyParams& params) {
  const std::size_t n = network.nodes.size();
  const std::uint64_t bits = params.packet_bits;
  RoundMetrics m;
  m.ch_count = static_cast<int>(plan.heads.size());

  const auto pay = [&](NodeId id, double joules) {
    if (!config.charge_energy) return network.nodes[static_cast<std::size_t>(id)].alive;
    return network.charge(id, joules);
  };
  const auto reports_own_reading = [&](NodeState& node) {
    if (!plan.threshold_gated) return true;
    if (!teen_should_transmit(node.sensed_value, node.last_transmitted_value,
                              config.hard_threshold, config.soft_threshold)) {
      return false;
    }
    node.last_transmitted_value = node.sensed_value;
    return true;
  };

  std::vector<std::uint64_t> received(n, 0);
  const auto send = [&](NodeId from, NodeId to) {
    const Point origin = network.nodes[static_cast<std::size_t>(from)].position;
    const double d = to == kSinkHop
                         ? collection_distance(sink, origin, network.round)
                         : distance(origin, network.nodes[static_cast<std::size_t>(to)].position);
    if (!pay(from, tx_energy(params, bits, d))) return;
    if (to == kSinkHop) {
      ++m.packets_to_bs;
      return;
    }
    if (!network.nodes[static_cast<std::size_t>(to)].alive) return;
    if (!pay(to, rx_energy(params, bits))) return;
    ++received[static_cast<std::size_t>(to)];
    ++m.packets_to_ch;
  };

  const int top = plan.tier.empty() ? 0 : *std::max_element(plan.tier.begin(), plan.tier.end());
  for (int tier = 0; tier <= top; ++tier) {
    for (std::size_t i = 0; i < n; ++i) {
      if (plan.tier[i] != tier) continue;
      NodeState& node = network.nodes[i];
      const NodeId hop = plan.next_hop[i];
      if (!node.alive || hop == kNoNode) continue;
      const auto id = static_cast<NodeId>(i);
      if (tier == 0) {
        if (reports_own_reading(node)) send(id, hop);
        continue;
      }
      const std::uint64_t signals = received[i] + (reports_own_reading(node) ? 1 : 0);
      if (signals == 0) continue;
      if (!pay(id, aggregation_energy(params, bits, signals))) continue;
      send(id, hop);
    }
  }
  return m;
}

RoundMetrics run_round(ProtocolEngine& engine, NetworkState& network, const SinkState& sink,
                       Rng& rng) {
  const double consumed_before = network.consumed_total;
  const RoundPlan plan = engine.setup(network, sink, rng);
  RoundMetrics m = steady_state(network, sink, plan, engine.config(), engine.params());

  m.round = network.round;
  m.alive = static_cast<int>(network.alive_count());
  m.dead = static_cast<int>(network.nodes.size()) - m.alive;
  m.energy_consumed = network.consumed_total - consumed_before;
  engine.cumulative_to_bs_ += m.packets_to_bs;
  m.cumulative_packets_to_bs = engine.cumulative_to_bs_;
  ++network.round;
  return m;
}

}  // namespace wsnsim

#include "wsnsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wsnsim/kernels.hpp"

namespace wsnsim {

void Heterogeneity::validate() const {
  if (m < 0.0 || m0 < 0.0 || m + m0 > 1.0) {
    throw std::invalid_argument("heterogeneity fractions must satisfy 0 <= m + m0 <= 1");
  }
  if (a < 0.0) throw std::invalid_argument("heterogeneity multiplier a must be >= 0");
  if (m0 > 0.0 && b < a) throw std::invalid_argument("heterogeneity multiplier b must be >= a when super nodes exist");
}

std::size_t NetworkState::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.alive; }));
}

double NetworkState::residual_total() const {
  return std::accumulate(nodes.begin(), nodes.end(), 0.0,
                         [](double acc, const NodeState& n) { return acc + n.residual_energy; });
}

bool NetworkState::charge(NodeId id, double amount) {
  NodeState& node = nodes.at(static_cast<std::size_t>(id));
  if (!node.alive) return false;
  const double drawn = consume(node, amount);
  consumed_total += drawn;
  return node.alive;
}

NetworkState deploy(int node_count, double field_m, double e0, const Heterogeneity& het,
                    std::uint64_t rng_seed) {
  if (node_count < 1) throw std::invalid_argument("deploy: node_count must be >= 1");
  if (!(field_m > 0.0)) throw std::invalid_argument("deploy: field size must be > 0");
  if (!(e0 > 0.0)) throw std::invalid_argument("deploy: initial energy must be > 0");
  het.validate();

  // Fraction products such as 0.1 * 100 land a hair under the integer in
  // binary floating point.
  const auto count_of = [node_count](double fraction) {
    return static_cast<int>(std::floor(fraction * node_count + 1e-9));
  };
  const int advanced = count_of(het.m);
  const int super_nodes = count_of(het.m0);

  Rng rng(rng_seed);
  NetworkState net;
  net.field_m = field_m;
  net.nodes.resize(static_cast<std::size_t>(node_count));
  for (int i = 0; i < node_count; ++i) {
    NodeState& node = net.nodes[static_cast<std::size_t>(i)];
    node.id = i;
    node.position.x = rng.uniform(0.0, field_m);
    node.position.y = rng.uniform(0.0, field_m);
    if (i < advanced) {
      node.tier = {TierKind::advanced, het.a};
    } else if (i < advanced + super_nodes) {
      node.tier = {TierKind::super, het.b};
    }
    node.initial_energy = e0 * (1.0 + node.tier.energy_fraction);
    node.residual_energy = node.initial_energy;
    net.e_total += node.initial_energy;
  }
  return net;
}

double consume(NodeState& node, double amount) {
  if (!(amount >= 0.0)) throw std::invalid_argument("consume: amount must be >= 0");
  if (!node.alive) return 0.0;
  if (amount >= node.residual_energy) {
    const double drawn = node.residual_energy;
    node.residual_energy = 0.0;
    node.alive = false;
    return drawn;
  }
  node.residual_energy -= amount;
  return amount;
}

bool ClusterAssignment::empty() const {
  return std::all_of(head_of.begin(), head_of.end(), [](NodeId h) { return h == kNoNode; });
}

ClusterAssignment assign_clusters(const NetworkState& network, std::span<const NodeId> ch_ids) {
  std::vector<NodeId> sorted(ch_ids.begin(), ch_ids.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (NodeId id : sorted) {
    if (id < 0 || static_cast<std::size_t>(id) >= network.nodes.size()) {
      throw std::invalid_argument("assign_clusters: unknown CH id");
    }
    if (!network.nodes[static_cast<std::size_t>(id)].alive) {
      throw std::invalid_argument("assign_clusters: dead node listed as CH");
    }
  }

  const std::span<const NodeState> nodes = network.nodes;
  ClusterAssignment out;
  out.head_of = nodes.size() >= kernels::kParallelThreshold
                    ? kernels::nearest_head_parallel(nodes, sorted)
                    : kernels::nearest_head_serial(nodes, sorted);
  return out;
}

void sense_environment(NetworkState& network, Rng& rng) {
  for (NodeState& node : network.nodes) {
    if (node.alive) node.sensed_value = rng.uniform(kSensedMin, kSensedMax);
  }
}

}  // namespace wsnsim

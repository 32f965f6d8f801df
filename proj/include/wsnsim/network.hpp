// Node deployment, per-node energy accounting and cluster membership.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsnsim/rng.hpp"

namespace wsnsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

enum class TierKind { normal, advanced, super };

struct NodeTier {
  TierKind kind = TierKind::normal;
  double energy_fraction = 0.0;  ///< a_i, extra-energy multiplier; 0 for normal nodes
};

enum class Role { member, cluster_head };

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct NodeState {
  NodeId id = 0;
  Point position;
  NodeTier tier;
  double initial_energy = 0.0;
  double residual_energy = 0.0;
  bool alive = true;
  Role role = Role::member;
  std::optional<NodeId> cluster_of;
  bool eligible = true;  ///< member of the CH-eligible set for the current epoch
  int rounds_as_ch = 0;
  double sensed_value = 0.0;
  std::optional<double> last_transmitted_value;
};

/// Extra-energy population mix: fraction m of advanced nodes holding (1 + a) E0
/// and fraction m0 of super nodes holding (1 + b) E0.
struct Heterogeneity {
  double m = 0.0;
  double a = 0.0;
  double m0 = 0.0;
  double b = 0.0;

  void validate() const;
};

struct NetworkState {
  std::vector<NodeState> nodes;
  double field_m = 0.0;
  int round = 0;
  double e_total = 0.0;              ///< sum of initial energies, fixed at deployment
  double lifetime_estimate = 0.0;    ///< estimated total rounds R; 0 when not computed
  double consumed_total = 0.0;       ///< every joule drawn through consume()

  std::size_t alive_count() const;
  double residual_total() const;

  /// Draws `amount` from node `id`, adds the drawn energy to consumed_total.
  /// Returns true when the node could pay the full amount.
  bool charge(NodeId id, double amount);
};

NetworkState deploy(int node_count, double field_m, double e0, const Heterogeneity& het,
                    std::uint64_t rng_seed);

/// Removes `amount` from the node's residual energy, flooring at zero. A node
/// that reaches zero dies; dead nodes are left untouched. Returns the energy
/// actually drawn.
double consume(NodeState& node, double amount);

/// Per-node CH assignment indexed by node id. CHs and dead nodes map to kNoNode.
struct ClusterAssignment {
  std::vector<NodeId> head_of;

  bool empty() const;
};

/// Every alive non-CH node joins its Euclidean-nearest CH, ties to the lowest
/// CH id. Uses the parallel kernel for large populations.
ClusterAssignment assign_clusters(const NetworkState& network, std::span<const NodeId> ch_ids);

/// Draws a fresh sensed value, uniform on [0, 200], for every alive node in id order.
void sense_environment(NetworkState& network, Rng& rng);

inline constexpr double kSensedMin = 0.0;
inline constexpr double kSensedMax = 200.0;

}  // namespace wsnsim

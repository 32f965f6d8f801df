// Data-parallel geometry kernels.
//
// Each kernel has a serial reference and an OpenMP variant with identical
// results; tests compare the two and bench/ times them.
#pragma once

#include <span>
#include <vector>

#include "wsnsim/network.hpp"

namespace wsnsim::kernels {

/// Population size from which the dispatching wrappers go parallel.
inline constexpr std::size_t kParallelThreshold = 512;

/// Nearest-CH lookup for every alive node not listed in `ch_ids`. `ch_ids`
/// must be sorted ascending so the first strict minimum is the lowest-id tie
/// winner. CHs and dead nodes map to kNoNode.
std::vector<NodeId> nearest_head_serial(std::span<const NodeState> nodes,
                                        std::span<const NodeId> ch_ids);
std::vector<NodeId> nearest_head_parallel(std::span<const NodeState> nodes,
                                          std::span<const NodeId> ch_ids);

/// Range graph over alive nodes: entry i lists, in ascending id order, every
/// other alive node within `range` metres of node i. Dead nodes get an empty list.
using NeighborTable = std::vector<std::vector<NodeId>>;

NeighborTable neighbor_table_serial(std::span<const NodeState> nodes, double range);
NeighborTable neighbor_table_parallel(std::span<const NodeState> nodes, double range);

/// Thread count the parallel kernels would use (1 without OpenMP).
int max_threads();

}  // namespace wsnsim::kernels

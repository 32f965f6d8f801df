#include "wsnsim/kernels.hpp"

#include <limits>

#ifdef WSNSIM_HAVE_OPENMP
#include <omp.h>
#endif

namespace wsnsim::kernels {
namespace {

NodeId nearest_of(const NodeState& node, std::span<const NodeState> nodes,
                  std::span<const NodeId> ch_ids) {
  NodeId best = kNoNode;
  double best_d = std::numeric_limits<double>::infinity();
  for (NodeId ch : ch_ids) {
    const double d = distance(node.position, nodes[ch].position);
    if (d < best_d) {
      best_d = d;
      best = ch;
    }
  }
  return best;
}

std::vector<char> head_mask(std::size_t n, std::span<const NodeId> ch_ids) {
  std::vector<char> mask(n, 0);
  for (NodeId ch : ch_ids) mask[static_cast<std::size_t>(ch)] = 1;
  return mask;
}

void fill_neighbors(std::span<const NodeState> nodes, double range, std::size_t i,
                    std::vector<NodeId>& out) {
  if (!nodes[i].alive) return;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == i || !nodes[j].alive) continue;
    if (distance(nodes[i].position, nodes[j].position) <= range) {
      out.push_back(static_cast<NodeId>(j));
    }
  }
}

}  // namespace

std::vector<NodeId> nearest_head_serial(std::span<const NodeState> nodes,
                                        std::span<const NodeId> ch_ids) {
  std::vector<NodeId> head(nodes.size(), kNoNode);
  if (ch_ids.empty()) return head;
  const auto is_head = head_mask(nodes.size(), ch_ids);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].alive && !is_head[i]) head[i] = nearest_of(nodes[i], nodes, ch_ids);
  }
  return head;
}

std::vector<NodeId> nearest_head_parallel(std::span<const NodeState> nodes,
                                          std::span<const NodeId> ch_ids) {
  std::vector<NodeId> head(nodes.size(), kNoNode);
  if (ch_ids.empty()) return head;
  const auto is_head = head_mask(nodes.size(), ch_ids);
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (nodes[i].alive && !is_head[i]) head[i] = nearest_of(nodes[i], nodes, ch_ids);
  }
  return head;
}

NeighborTable neighbor_table_serial(std::span<const NodeState> nodes, double range) {
  NeighborTable table(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) fill_neighbors(nodes, range, i, table[i]);
  return table;
}

NeighborTable neighbor_table_parallel(std::span<const NodeState> nodes, double range) {
  NeighborTable table(nodes.size());
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    fill_neighbors(nodes, range, static_cast<std::size_t>(i), table[i]);
  }
  return table;
}

int max_threads() {
#ifdef WSNSIM_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace wsnsim::kernels

// Serial vs OpenMP timings for the per-round geometric kernels.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "wsnsim/kernels.hpp"
#include "wsnsim/network.hpp"

using namespace wsnsim;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count());
  }
  return best;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::max_threads());
  std::printf("%8s %-14s %12s %12s %8s\n", "nodes", "kernel", "serial_ms", "parallel_ms", "match");
  for (int n : {100, 1000, 5000, 10000}) {
    const NetworkState net = deploy(n, 100.0 * std::sqrt(n / 100.0), 0.5, {}, 1);
    std::vector<NodeId> heads;
    Rng rng(2);
    for (const NodeState& node : net.nodes) {
      if (rng.uniform01() < 0.1) heads.push_back(node.id);
    }
    std::vector<NodeId> a, b;
    const double s1 = best_of(5, [&] { a = kernels::nearest_head_serial(net.nodes, heads); });
    const double p1 = best_of(5, [&] { b = kernels::nearest_head_parallel(net.nodes, heads); });
    std::printf("%8d %-14s %12.3f %12.3f %8s\n", n, "nearest_head", s1, p1, a == b ? "yes" : "NO");

    kernels::NeighborTable ta, tb;
    const double s2 = best_of(3, [&] { ta = kernels::neighbor_table_serial(net.nodes, 25.0); });
    const double p2 = best_of(3, [&] { tb = kernels::neighbor_table_parallel(net.nodes, 25.0); });
    std::printf("%8d %-14s %12.3f %12.3f %8s\n", n, "neighbor_table", s2, p2, ta == tb ? "yes" : "NO");
  }
  return 0;
}

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wsnsim/energy_model.hpp"
#include "wsnsim/kernels.hpp"
#include "wsnsim/network.hpp"
#include "wsnsim/protocols.hpp"
#include "wsnsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace wsnsim;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern, a);
  return buf;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- 1 ---------------------------------------------------------------------

Outcome sum_of_probabilities() {
  const auto start = Clock::now();
  ProtocolConfig config;
  config.heterogeneity = {};
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    NetworkState net = deploy(100, 100.0, 0.5, {}, seed);
    const double avg = 0.5 * (1.0 - static_cast<double>(seed) / 40.0);
    for (NodeState& n : net.nodes) n.residual_energy = avg;
    const DeecPopulation pop = deec_population(net);
    double sum = 0.0;
    for (const NodeState& n : net.nodes) sum += deec_p_i(n, avg, config, pop);
    worst = std::max(worst, std::abs(sum - 100 * config.p_opt) / (100 * config.p_opt));
  }
  const double t = seconds_since(start);
  return {worst < 1e-12 && t < 1.0, fmt("max relative error %.3g", worst) + fmt(", %.3f s", t)};
}

// --- 2 ---------------------------------------------------------------------

Outcome epoch_completeness() {
  const auto start = Clock::now();
  ProtocolConfig config;
  config.p_opt = 0.1;
  config.charge_energy = false;
  NetworkState net = deploy(100, 100.0, 0.5, {}, 2);
  auto engine = make_engine(ProtocolKind::leach, config, EnergyParams{}, net.nodes.size());
  const SinkState sink{SinkMode::static_center, 100.0, 10.0, 1};
  Rng rng(7);
  std::vector<int> terms(100, 0);
  for (int r = 0; r < 10; ++r) {
    sense_environment(net, rng);
    run_round(*engine, net, sink, rng);
    for (const NodeState& n : net.nodes) terms[n.id] += n.role == Role::cluster_head;
  }
  const bool once = std::all_of(terms.begin(), terms.end(), [](int t) { return t == 1; });
  const double t = seconds_since(start);
  const auto [lo, hi] = std::minmax_element(terms.begin(), terms.end());
  return {once && net.alive_count() == 100 && t < 1.0,
          "CH terms per node in [" + std::to_string(*lo) + ", " + std::to_string(*hi) + "]" +
              fmt(", %.3f s", t)};
}

// --- 3 ---------------------------------------------------------------------

Outcome energy_conservation() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (ProtocolKind kind : kAllProtocols) {
    for (SinkMode mode : {SinkMode::static_center, SinkMode::mobile_top}) {
      ScenarioConfig c;
      c.protocol = kind;
      c.sink_mode = mode;
      c.rounds = 1000;
      const RunResult run = run_scenario(c, 1);
      double consumed = 0.0;
      for (const RoundMetrics& m : run.history.rounds()) consumed += m.energy_consumed;
      const NetworkState& net = run.final_state;
      const double drawn = net.e_total - net.residual_total();
      worst = std::max(worst, std::abs(drawn - consumed) / drawn);
    }
  }
  const double t = seconds_since(start);
  return {worst < 1e-9 && t < 10.0, fmt("max relative error %.3g", worst) + fmt(", %.2f s", t)};
}

// --- 4 ---------------------------------------------------------------------

Outcome radio_continuity() {
  const EnergyParams p;
  const double d0 = p.d0();
  const double below = tx_energy(p, p.packet_bits, d0 - 1e-6);
  const double above = tx_energy(p, p.packet_bits, d0 + 1e-6);
  const double rel = std::abs(below - above) / tx_energy(p, p.packet_bits, d0);
  return {rel < 1e-6, fmt("d0 = %.6f m", d0) + fmt(", relative jump %.3g", rel)};
}

// --- 5 ---------------------------------------------------------------------

std::vector<NodeId> greedy_oracle(const NetworkState& net, const std::vector<double>& timers,
                                  double range) {
  std::vector<NodeId> order;
  for (const NodeState& n : net.nodes) {
    if (n.alive) order.push_back(n.id);
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return timers[a] < timers[b] || (timers[a] == timers[b] && a < b);
  });
  std::vector<NodeId> heads;
  for (NodeId id : order) {
    const bool blocked = std::any_of(heads.begin(), heads.end(), [&](NodeId h) {
      const double dx = net.nodes[id].position.x - net.nodes[h].position.x;
      const double dy = net.nodes[id].position.y - net.nodes[h].position.y;
      return std::sqrt(dx * dx + dy * dy) <= range;
    });
    if (!blocked) heads.push_back(id);
  }
  std::sort(heads.begin(), heads.end());
  return heads;
}

Outcome campteen_oracle() {
  Rng topo(2025);
  int mismatches = 0;
  int violations = 0;
  for (int instance = 0; instance < 50; ++instance) {
    const int n = 4 + instance % 17;  // 4..20 nodes
    NetworkState net = deploy(n, 100.0, 0.5, {}, 700 + instance);
    for (NodeState& node : net.nodes) node.residual_energy = topo.uniform(0.01, 0.5);
    ProtocolConfig config;
    config.comm_range = topo.uniform(10.0, 45.0);

    Rng rng(instance);
    Rng oracle_rng = rng;
    const CampElection got = campteen_elect_chs(net, config, rng);

    std::vector<double> timers(n, std::numeric_limits<double>::infinity());
    for (const NodeState& node : net.nodes) {
      const double alpha = oracle_rng.uniform01();
      timers[node.id] = config.timer_k / (node.residual_energy / node.initial_energy) - alpha;
    }
    mismatches += got.heads != greedy_oracle(net, timers, config.comm_range);
    for (std::size_t a = 0; a < got.heads.size(); ++a) {
      for (std::size_t b = a + 1; b < got.heads.size(); ++b) {
        violations += distance(net.nodes[got.heads[a]].position, net.nodes[got.heads[b]].position) <=
                      config.comm_range;
      }
    }
  }
  return {mismatches == 0 && violations == 0,
          std::to_string(mismatches) + " oracle mismatches, " + std::to_string(violations) +
              " CH pairs within range over 50 instances"};
}

// --- 6 ---------------------------------------------------------------------

Outcome assignment_oracle() {
  Rng pick(31);
  int mismatches = 0;
  for (int instance = 0; instance < 50; ++instance) {
    NetworkState net = deploy(100 + 20 * instance, 100.0, 0.5, {}, 4000 + instance);
    for (NodeState& n : net.nodes) {
      if (pick.uniform01() < 0.1) {
        n.alive = false;
        n.residual_energy = 0.0;
      }
    }
    std::vector<NodeId> chs;
    for (const NodeState& n : net.nodes) {
      if (n.alive && pick.uniform01() < 0.08) chs.push_back(n.id);
    }
    const ClusterAssignment got = assign_clusters(net, chs);
    for (const NodeState& node : net.nodes) {
      NodeId best = kNoNode;
      double best_d = std::numeric_limits<double>::infinity();
      const bool is_ch = std::find(chs.begin(), chs.end(), node.id) != chs.end();
      if (node.alive && !is_ch) {
        for (NodeId c : chs) {
          const double d = distance(node.position, net.nodes[c].position);
          if (d < best_d || (d == best_d && c < best)) {
            best_d = d;
            best = c;
          }
        }
      }
      mismatches += got.head_of[node.id] != best;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatched nodes over 50 instances"};
}

// --- 7-10: seed-averaged comparison matrix -----------------------------------

struct Averages {
  double throughput = 0.0;
  double avg_alive = 0.0;
  double first_death = 0.0;
};

using AverageTable = std::map<std::pair<ProtocolKind, SinkMode>, Averages>;

AverageTable average(const MatrixResult& m) {
  AverageTable table;
  std::map<std::pair<ProtocolKind, SinkMode>, int> counts;
  for (const RunResult& r : m.runs) {
    Averages& a = table[{r.protocol, r.sink_mode}];
    a.throughput += static_cast<double>(r.summary.total_throughput);
    a.avg_alive += r.summary.avg_alive;
    a.first_death += r.summary.stability_period.value_or(r.summary.horizon);
    ++counts[{r.protocol, r.sink_mode}];
  }
  for (auto& [key, a] : table) {
    const double n = counts[key];
    a.throughput /= n;
    a.avg_alive /= n;
    a.first_death /= n;
  }
  return table;
}

Outcome throughput_ordering(const AverageTable& t) {
  const auto tp = [&](ProtocolKind k) { return t.at({k, SinkMode::static_center}).throughput; };
  bool deec_max = true;
  bool camp_min = true;
  std::string line;
  for (ProtocolKind k : kAllProtocols) {
    deec_max = deec_max && tp(ProtocolKind::deec) >= tp(k);
    camp_min = camp_min && tp(ProtocolKind::campteen) <= tp(k);
    line += std::string(to_string(k)) + "=" + fmt("%.0f ", tp(k));
  }
  const double ratio = tp(ProtocolKind::deec) / tp(ProtocolKind::leach);
  line += fmt("| DEEC/LEACH %.2f", ratio);
  line += deec_max ? "" : " | DEEC not max";
  line += camp_min ? "" : " | CAMPTEEN not min";
  return {deec_max && camp_min && ratio >= 2.0, line};
}

Outcome stability_ordering(const AverageTable& t) {
  const auto fd = [&](ProtocolKind k) { return t.at({k, SinkMode::static_center}).first_death; };
  const double bound = 0.7 * std::min(fd(ProtocolKind::deec), fd(ProtocolKind::teen));
  return {fd(ProtocolKind::leach) < bound,
          fmt("first death LEACH=%.1f", fd(ProtocolKind::leach)) +
              fmt(" DEEC=%.1f", fd(ProtocolKind::deec)) + fmt(" TEEN=%.1f", fd(ProtocolKind::teen)) +
              fmt(" | bound %.1f", bound)};
}

Outcome lifetime_ordering(const AverageTable& t) {
  const auto al = [&](ProtocolKind k) { return t.at({k, SinkMode::static_center}).avg_alive; };
  const double h = al(ProtocolKind::hteen);
  return {h > al(ProtocolKind::teen) && h > al(ProtocolKind::leach),
          fmt("avg alive HTEEN=%.2f", h) + fmt(" TEEN=%.2f", al(ProtocolKind::teen)) +
              fmt(" LEACH=%.2f", al(ProtocolKind::leach))};
}

Outcome mobility_deltas(const AverageTable& t) {
  const auto delta = [&](ProtocolKind k) {
    return t.at({k, SinkMode::mobile_top}).throughput - t.at({k, SinkMode::static_center}).throughput;
  };
  const double h = delta(ProtocolKind::hteen);
  const double l = delta(ProtocolKind::leach);
  const double d = delta(ProtocolKind::deec);
  return {h > 0.0 && l < 0.0 && d < 0.0,
          fmt("mobile - static: HTEEN %+.1f", h) + fmt(", LEACH %+.1f", l) + fmt(", DEEC %+.1f", d)};
}

// --- 11 ----------------------------------------------------------------------

Outcome determinism(const fs::path& out_dir) {
  ScenarioConfig c;
  c.seeds = {1, 2};
  const std::vector<ProtocolKind> protocols(kAllProtocols.begin(), kAllProtocols.end());
  const std::vector<SinkMode> modes = {SinkMode::static_center, SinkMode::mobile_top};
  const fs::path a = out_dir / "determinism_a";
  const fs::path b = out_dir / "determinism_b";
  fs::remove_all(a);
  fs::remove_all(b);
  write_matrix_outputs(run_matrix(c, protocols, modes, c.seeds), c, a);
  write_matrix_outputs(run_matrix(c, protocols, modes, c.seeds), c, b);

  int files = 0;
  int differing = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    const fs::path twin = b / entry.path().filename();
    differing += !fs::exists(twin) || read_bytes(entry.path()) != read_bytes(twin);
  }
  const bool complete = files == 21 && std::distance(fs::directory_iterator(b), fs::directory_iterator{}) == 21;
  return {complete && differing == 0,
          std::to_string(files) + " files compared, " + std::to_string(differing) + " differ"};
}

// --- 12 ----------------------------------------------------------------------

Outcome performance() {
  double worst = 0.0;
  std::string slowest;
  for (ProtocolKind kind : kAllProtocols) {
    ScenarioConfig c;
    c.protocol = kind;
    const auto start = Clock::now();
    run_scenario(c, 1);
    const double t = seconds_since(start);
    if (t > worst) {
      worst = t;
      slowest = std::string(to_string(kind));
    }
  }
  return {worst < 5.0, "slowest 100-node 5000-round scenario " + slowest + fmt(" %.3f s", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wsnsim acceptance suite"};
  std::string out_dir = "acceptance_out";
  int seeds = 10;
  app.add_option("--out-dir", out_dir, "Scratch directory for generated outputs");
  app.add_option("--seeds", seeds, "Seeds averaged for the comparison criteria")->check(CLI::Range(1, 1000));
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out_dir);

  int failed = 0;
  const auto report = [&](int id, const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] criterion %2d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "DEEC probabilities sum to N p_opt", sum_of_probabilities);
  report(2, "LEACH epoch elects every node exactly once", epoch_completeness);
  report(3, "energy conservation across all protocol and sink combinations", energy_conservation);
  report(4, "radio model continuous at the crossover distance", radio_continuity);
  report(5, "CAMP-TEEN heads match the greedy oracle and are independent", campteen_oracle);
  report(6, "cluster assignment matches the exhaustive scan", assignment_oracle);

  AverageTable table;
  double matrix_seconds = 0.0;
  try {
    ScenarioConfig c;
    std::vector<std::uint64_t> seed_list;
    for (int s = 1; s <= seeds; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));
    const auto start = Clock::now();
    const MatrixResult m =
        run_matrix(c, std::vector<ProtocolKind>(kAllProtocols.begin(), kAllProtocols.end()),
                   {SinkMode::static_center, SinkMode::mobile_top}, seed_list);
    matrix_seconds = seconds_since(start);
    table = average(m);
  } catch (const std::exception& e) {
    std::printf("comparison matrix failed: %s\n", e.what());
  }
  std::printf("comparison matrix: %d seeds, %.1f s\n", seeds, matrix_seconds);
  const bool have_table = !table.empty();
  const auto matrix_check = [&](Outcome (*f)(const AverageTable&)) {
    return [&, f] {
      if (!have_table) return Outcome{false, "comparison matrix unavailable"};
      Outcome o = f(table);
      if (matrix_seconds >= 120.0) {
        o.pass = false;
        o.detail += fmt(" | matrix took %.1f s", matrix_seconds);
      }
      return o;
    };
  };
  report(7, "static-sink throughput ordering", matrix_check(throughput_ordering));
  report(8, "LEACH stability below 0.7x DEEC and TEEN", matrix_check(stability_ordering));
  report(9, "H-TEEN keeps more nodes alive than TEEN and LEACH", matrix_check(lifetime_ordering));
  report(10, "mobility deltas: H-TEEN up, LEACH and DEEC down", matrix_check(mobility_deltas));
  report(11, "compare outputs are byte-identical across reruns", [&] { return determinism(out_dir); });
  report(12, "single scenario under 5 s", performance);

  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

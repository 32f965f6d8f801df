// First-order radio energy dissipation model.
//
// Transmission costs an electronics term plus an amplifier term that is
// quadratic below the crossover distance d0 and quartic above it. Everything
// here is a pure function of its arguments.
#pragma once

#include <cstdint>

namespace wsnsim {

struct EnergyParams {
  double e_elec = 50e-9;      ///< J/bit, transmitter and receiver electronics
  double e_fs = 10e-12;       ///< J/bit/m^2, free-space amplifier
  double e_mp = 0.0013e-12;   ///< J/bit/m^4, multipath amplifier
  double e_da = 5e-9;         ///< J/bit/signal, data aggregation
  std::uint32_t packet_bits = 4000;

  /// Crossover distance sqrt(e_fs / e_mp). Always derived from the pair.
  double d0() const;

  /// Throws std::invalid_argument unless every coefficient is strictly positive.
  void validate() const;
};

double tx_energy(const EnergyParams& params, std::uint64_t bits, double distance);
double rx_energy(const EnergyParams& params, std::uint64_t bits);
double aggregation_energy(const EnergyParams& params, std::uint64_t bits, std::uint64_t signals);

/// True when relaying A -> B -> C is cheaper than sending A -> C directly.
bool relay_beneficial(const EnergyParams& params, double d_ab, double d_bc, double d_ac,
                      std::uint64_t bits);

/// Mean member-to-CH distance M / sqrt(2 pi k) for k clusters on an M x M field.
double mean_member_distance(double field_m, double clusters);

/// Reference CH-to-BS distance 0.765 * M / 2 used by the analytical estimates.
double reference_bs_distance(double field_m);

/// Analytical energy dissipated by the whole network in one round with
/// `clusters` CHs, all costs using params.packet_bits as L.
double expected_round_energy(const EnergyParams& params, std::uint64_t clusters,
                             std::uint64_t nodes, double field_m, double d_to_bs);

/// Analytical optimum cluster count. Not rounded; simulations use p_opt instead.
double optimal_cluster_count(const EnergyParams& params, std::uint64_t nodes, double field_m,
                             double d_to_bs);

}  // namespace wsnsim

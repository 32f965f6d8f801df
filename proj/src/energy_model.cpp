#include "wsnsim/energy_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wsnsim {

double EnergyParams::d0() const { return std::sqrt(e_fs / e_mp); }

void EnergyParams::validate() const {
  if (!(e_elec > 0.0) || !(e_fs > 0.0) || !(e_mp > 0.0) || !(e_da > 0.0)) {
    throw std::invalid_argument("energy coefficients must be strictly positive");
  }
  if (packet_bits == 0) {
    throw std::invalid_argument("packet_bits must be positive");
  }
}

double tx_energy(const EnergyParams& params, std::uint64_t bits, double distance) {
  if (bits == 0) throw std::invalid_argument("tx_energy: bits must be positive");
  if (!(distance >= 0.0)) throw std::invalid_argument("tx_energy: distance must be >= 0");
  const double l = static_cast<double>(bits);
  const double d2 = distance * distance;
  if (distance < params.d0()) {
    return l * params.e_elec + l * params.e_fs * d2;
  }
  return l * params.e_elec + l * params.e_mp * d2 * d2;
}

double rx_energy(const EnergyParams& params, std::uint64_t bits) {
  if (bits == 0) throw std::invalid_argument("rx_energy: bits must be positive");
  return static_cast<double>(bits) * params.e_elec;
}

double aggregation_energy(const EnergyParams& params, std::uint64_t bits, std::uint64_t signals) {
  if (bits == 0) throw std::invalid_argument("aggregation_energy: bits must be positive");
  return static_cast<double>(signals) * static_cast<double>(bits) * params.e_da;
}

bool relay_beneficial(const EnergyParams& params, double d_ab, double d_bc, double d_ac,
                      std::uint64_t bits) {
  if (!(d_ab >= 0.0) || !(d_bc >= 0.0) || !(d_ac >= 0.0)) {
    throw std::invalid_argument("relay_beneficial: distances must be >= 0");
  }
  return tx_energy(params, bits, d_ab) + tx_energy(params, bits, d_bc) <
         tx_energy(params, bits, d_ac);
}

double mean_member_distance(double field_m, double clusters) {
  if (!(clusters > 0.0)) throw std::invalid_argument("cluster count must be positive");
  return field_m / std::sqrt(2.0 * std::numbers::pi * clusters);
}

double reference_bs_distance(double field_m) { return 0.765 * field_m / 2.0; }

double expected_round_energy(const EnergyParams& params, std::uint64_t clusters,
                             std::uint64_t nodes, double field_m, double d_to_bs) {
  if (clusters == 0) throw std::invalid_argument("expected_round_energy: clusters must be >= 1");
  if (nodes < clusters) throw std::invalid_argument("expected_round_energy: nodes < clusters");
  if (!(field_m > 0.0)) throw std::invalid_argument("expected_round_energy: field must be > 0");
  if (!(d_to_bs >= 0.0)) throw std::invalid_argument("expected_round_energy: d_to_bs must be >= 0");

  const double l = params.packet_bits;
  const double n = static_cast<double>(nodes);
  const double k = static_cast<double>(clusters);
  const double d_ch = mean_member_distance(field_m, k);
  const double d_bs2 = d_to_bs * d_to_bs;
  return l * (2.0 * n * params.e_elec + n * params.e_da + k * params.e_mp * d_bs2 * d_bs2 +
              n * params.e_fs * d_ch * d_ch);
}

double optimal_cluster_count(const EnergyParams& params, std::uint64_t nodes, double field_m,
                             double d_to_bs) {
  if (nodes == 0) throw std::invalid_argument("optimal_cluster_count: nodes must be >= 1");
  if (!(field_m > 0.0)) throw std::invalid_argument("optimal_cluster_count: field must be > 0");
  if (!(d_to_bs > 0.0)) throw std::invalid_argument("optimal_cluster_count: d_to_bs must be > 0");
  const double n = static_cast<double>(nodes);
  return std::sqrt(n) / std::sqrt(2.0 * std::numbers::pi) * std::sqrt(params.e_fs / params.e_mp) *
         field_m / (d_to_bs * d_to_bs);
}

}  // namespace wsnsim

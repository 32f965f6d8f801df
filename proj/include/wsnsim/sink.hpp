// Sink placement and the top-axis sweep trajectory.
#pragma once

#include <string_view>

#include "wsnsim/network.hpp"

namespace wsnsim {

enum class SinkMode { static_center, static_top, mobile_top };

std::string_view to_string(SinkMode mode);
/// Throws std::invalid_argument for unknown names.
SinkMode parse_sink_mode(std::string_view name);

/// The mobile sink sweeps y = M back and forth between x = 0 and x = M,
/// moving step_m after every pause_rounds rounds spent at a stop. During a
/// pause every CH with data transmits once to the sink's current stop.
struct SinkState {
  SinkMode mode = SinkMode::static_center;
  double field_m = 100.0;
  double step_m = 10.0;
  int pause_rounds = 1;

  void validate() const;

  /// Rounds after which the mobile trajectory repeats: 2 * (M / step) * pause.
  int sweep_period() const;
};

/// Pure function of (sink configuration, round).
Point sink_position(const SinkState& sink, int round);

/// Distance from a CH to the sink's position in the given round.
double collection_distance(const SinkState& sink, Point ch_position, int round);

}  // namespace wsnsim

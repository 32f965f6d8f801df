#include "wsnsim/sink.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wsnsim {
namespace {

// Number of steps in one direction of the sweep.
int stops_per_leg(const SinkState& sink) {
  return std::max(1, static_cast<int>(std::ceil(sink.field_m / sink.step_m - 1e-9)));
}

}  // namespace

std::string_view to_string(SinkMode mode) {
  switch (mode) {
    case SinkMode::static_center: return "static_center";
    case SinkMode::static_top: return "static_top";
    case SinkMode::mobile_top: return "mobile_top";
  }
  return "unknown";
}

SinkMode parse_sink_mode(std::string_view name) {
  if (name == "static_center") return SinkMode::static_center;
  if (name == "static_top") return SinkMode::static_top;
  if (name == "mobile_top") return SinkMode::mobile_top;
  throw std::invalid_argument("unknown sink mode '" + std::string(name) + "'");
}

void SinkState::validate() const {
  if (!(field_m > 0.0)) throw std::invalid_argument("sink: field size must be > 0");
  if (!(step_m > 0.0)) throw std::invalid_argument("sink: step must be > 0");
  if (pause_rounds < 1) throw std::invalid_argument("sink: pause_rounds must be >= 1");
}

int SinkState::sweep_period() const { return 2 * stops_per_leg(*this) * pause_rounds; }

Point sink_position(const SinkState& sink, int round) {
  switch (sink.mode) {
    case SinkMode::static_center: return {sink.field_m / 2.0, sink.field_m / 2.0};
    case SinkMode::static_top: return {sink.field_m / 2.0, sink.field_m};
    case SinkMode::mobile_top: break;
  }
  const int leg = stops_per_leg(sink);
  const int stop = (std::max(round, 0) / sink.pause_rounds) % (2 * leg);
  const int index = stop <= leg ? stop : 2 * leg - stop;
  return {std::min(index * sink.step_m, sink.field_m), sink.field_m};
}

double collection_distance(const SinkState& sink, Point ch_position, int round) {
  return distance(ch_position, sink_position(sink, round));
}

}  // namespace wsnsim

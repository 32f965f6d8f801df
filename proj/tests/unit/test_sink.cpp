#include "wsnsim/sink.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace wsnsim;

TEST_CASE("static sinks never move") {
  const SinkState center{SinkMode::static_center, 100.0, 10.0, 1};
  const SinkState top{SinkMode::static_top, 100.0, 10.0, 1};
  for (int r : {0, 1, 17, 4999}) {
    CHECK(sink_position(center, r).x == 50.0);
    CHECK(sink_position(center, r).y == 50.0);
    CHECK(sink_position(top, r).x == 50.0);
    CHECK(sink_position(top, r).y == 100.0);
  }
  const Point ch{13.0, 71.0};
  CHECK(collection_distance(center, ch, 0) == collection_distance(center, ch, 3210));
}

TEST_CASE("mobile sink ping-pongs along the top edge") {
  const SinkState sink{SinkMode::mobile_top, 100.0, 10.0, 1};
  for (int r = 0; r <= 10; ++r) {
    CHECK(sink_position(sink, r).x == doctest::Approx(10.0 * r));
    CHECK(sink_position(sink, r).y == 100.0);
  }
  CHECK(sink_position(sink, 11).x == doctest::Approx(90.0));
  CHECK(sink_position(sink, 19).x == doctest::Approx(10.0));
  CHECK(sink_position(sink, 20).x == doctest::Approx(0.0));
  CHECK(sink.sweep_period() == 20);

  const SinkState slow{SinkMode::mobile_top, 100.0, 10.0, 3};
  CHECK(slow.sweep_period() == 60);
  CHECK(sink_position(slow, 2).x == 0.0);
  CHECK(sink_position(slow, 3).x == doctest::Approx(10.0));
  for (int r = 0; r < 500; ++r) {
    CHECK(sink_position(slow, r).x == sink_position(slow, r + slow.sweep_period()).x);
    CHECK(sink_position(slow, r).y == 100.0);
  }
}

TEST_CASE("collection distance") {
  const SinkState center{SinkMode::static_center, 100.0, 10.0, 1};
  CHECK(collection_distance(center, {50.0, 50.0}, 4) == 0.0);
  CHECK(collection_distance(center, {0.0, 0.0}, 0) == doctest::Approx(std::sqrt(5000.0)));
  const SinkState mobile{SinkMode::mobile_top, 100.0, 10.0, 1};
  CHECK(collection_distance(mobile, {0.0, 100.0}, 0) == 0.0);
}

TEST_CASE("mobile sweep beats the centre for points on the top edge near the path") {
  const SinkState center{SinkMode::static_center, 100.0, 10.0, 1};
  const SinkState mobile{SinkMode::mobile_top, 100.0, 10.0, 1};
  for (double x = 0.0; x <= 100.0; x += 2.5) {
    for (double dy : {0.0, 5.0, 9.9}) {
      const Point p{x, 100.0 - dy};
      double sum = 0.0;
      for (int r = 0; r < mobile.sweep_period(); ++r) sum += collection_distance(mobile, p, r);
      CHECK(sum / mobile.sweep_period() < collection_distance(center, p, 0));
    }
  }
}

TEST_CASE("sink mode names round-trip and invalid configs are rejected") {
  for (SinkMode m : {SinkMode::static_center, SinkMode::static_top, SinkMode::mobile_top}) {
    CHECK(parse_sink_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_sink_mode("orbit"), std::invalid_argument);
  CHECK_THROWS_AS((SinkState{SinkMode::mobile_top, 100.0, 0.0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SinkState{SinkMode::mobile_top, 100.0, 10.0, 0}.validate()), std::invalid_argument);
}

#include <stdexcept>
#include "doctest.h"
#include "semfoot/config.hpp"

using namespace semfoot;

TEST_CASE("empty object keeps defaults") {
  const Settings s = parse_settings("{}");
  CHECK(s.sim.params == BehaviorParams{});
  CHECK(s.search.side == 7);
  CHECK(s.sizes.height_max == ObstacleSizeRange{}.height_max);
}

TEST_CASE("dump and parse round trip") {
  Settings s;
  s.sim.params.frequency = 2.5;
  s.search.side = 9;
  s.search.w_col = 20.0;
  s.sim.map_spec.offset = {0.3, 0.0};
  s.sim.reward.penalty_weights = {{penalty::kClearance, 3.0}};
  const Settings back = parse_settings(dump_settings(s));
  CHECK(back.sim.params.frequency == 2.5);
  CHECK(back.search.side == 9);
  CHECK(back.sim.map_spec.offset == Vec2{0.3, 0.0});
  CHECK(back.sim.reward.penalty_weights.size() == 1);
  CHECK(dump_settings(back) == dump_settings(s));
}

TEST_CASE("invalid settings are rejected") {
  CHECK_THROWS(parse_settings("{"));
  CHECK_THROWS(parse_settings(R"({"gait": {"duty": 1.5}})"));
  CHECK_THROWS(parse_settings(R"({"search": {"side": 4}})"));
  CHECK_THROWS(parse_settings(R"({"search": {"w_col": 0.1}})"));
  CHECK_THROWS(parse_settings(R"({"gait": {"frequency": "fast"}})"));
}

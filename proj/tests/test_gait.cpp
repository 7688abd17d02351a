#include <stdexcept>
#include <random>

#include "doctest.h"
#include "semfoot/gait.hpp"

using namespace semfoot;

TEST_CASE("stance duration is d / f") {
  CHECK(stance_duration(2.0, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(stance_duration(4.0, 0.6) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(stance_duration(1.0, 0.999) == doctest::Approx(0.999).epsilon(1e-15));
  CHECK(swing_duration(2.0, 0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(stance_duration(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(stance_duration(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(stance_duration(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(swing_duration(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("params validation") {
  BehaviorParams p;
  CHECK_NOTHROW(p.validate());
  p.phase_offsets[1] = 1.0;
  CHECK_THROWS(p.validate());
  p = {};
  p.duty = 1.0;
  CHECK_THROWS(p.validate());
  p = {};
  p.stance_width = 0.0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("advancing one full period returns the same phases") {
  BehaviorParams p;
  p.frequency = 2.5;
  GaitState s = gait_at(0.13, p);
  GaitState t = s;
  for (int i = 0; i < 10; ++i) t = advance(t, p, 0.04);  // 10 * 0.04 * 2.5 = 1
  for (std::size_t i = 0; i < kNumLegs; ++i) {
    CHECK(t.leg_phase[i] == doctest::Approx(s.leg_phase[i]).epsilon(1e-9));
    CHECK(t.in_contact[i] == s.in_contact[i]);
  }
  CHECK_THROWS_AS(advance(s, p, 0.0), std::invalid_argument);
}

TEST_CASE("duty 0.75 with quarter offsets keeps exactly three legs down") {
  BehaviorParams p;
  p.duty = 0.75;
  p.phase_offsets = {0.25, 0.5, 0.75};
  for (int k = 0; k < 1000; ++k) {
    const GaitState s = gait_at(k / 1000.0, p);
    int down = 0;
    for (bool c : s.in_contact) down += c;
    CHECK(down == 3);
  }
}

TEST_CASE("leg phase equal to duty starts the swing") {
  BehaviorParams p;
  p.phase_offsets = {0.5, 0.75, 0.25};
  const GaitState s = gait_at(0.5, p);  // FL phase 0.5 == d
  CHECK_FALSE(s.in_contact[0]);
  CHECK(s.swing_progress[0] == 0.0);
  CHECK(s.in_contact[1]);  // FR phase 0.0
}

TEST_CASE("phase advance is additive") {
  BehaviorParams p;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(0.001, 0.7);
  for (int i = 0; i < 200; ++i) {
    const GaitState s = gait_at(d(rng), p);
    const double a = d(rng), b = d(rng);
    const GaitState two = advance(advance(s, p, a), p, b);
    const GaitState one = advance(s, p, a + b);
    const double diff = std::abs(two.global_phase - one.global_phase);
    CHECK(std::min(diff, 1.0 - diff) < 1e-9);
  }
}

TEST_CASE("each leg spends a duty fraction of the period in contact") {
  BehaviorParams p;
  p.duty = 0.6;
  const int n = 10000;
  PerLeg<int> down{};
  GaitState s = gait_at(0.0, p);
  for (int k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < kNumLegs; ++i) down[i] += s.in_contact[i];
    s = advance(s, p, 1.0 / (p.frequency * n));
  }
  for (int c : down) CHECK(static_cast<double>(c) / n == doctest::Approx(0.6).epsilon(1e-3));
}

TEST_CASE("swing reference profile") {
  const double s = 0.09;
  CHECK(swing_reference_height(0.0, s) == 0.02);
  CHECK(swing_reference_height(1.0, s) == 0.02);
  CHECK(std::abs(swing_reference_height(0.5, s) - (s + 0.02)) <= 1e-12);
  CHECK(swing_reference_height(0.25, s) == doctest::Approx(0.8408964152537145 * s + 0.02).epsilon(1e-12));
  CHECK_THROWS_AS(swing_reference_height(-0.01, s), std::invalid_argument);
  CHECK_THROWS_AS(swing_reference_height(1.01, s), std::invalid_argument);
  // Symmetric about the apex.
  for (int k = 0; k <= 100; ++k) {
    const double phi = k / 100.0;
    CHECK(swing_reference_height(phi, s) == doctest::Approx(swing_reference_height(1.0 - phi, s)).epsilon(1e-12));
  }
}

TEST_CASE("timers carry the leg phases") {
  BehaviorParams p;
  const GaitState s = gait_at(0.3, p);
  CHECK(with_timers(p, s).contact_timers == s.leg_phase);
}

#include <stdexcept>
#include <random>

#include "doctest.h"
#include "semfoot/reward.hpp"

using namespace semfoot;

namespace {

GaitState swinging(std::initializer_list<std::size_t> legs, double phi = 0.5) {
  GaitState g;
  for (std::size_t i : legs) {
    g.in_contact[i] = false;
    g.swing_progress[i] = phi;
  }
  return g;
}

}  // namespace

TEST_CASE("velocity tracking values") {
  const RewardConfig cfg;
  CHECK(velocity_tracking({0.7, 0.0}, {0.7, 0.0, 0.1}, 0.1, cfg) == 2.0);
  // |e|^2 = sigma_v.
  const double e = std::sqrt(cfg.sigma_v);
  CHECK(velocity_tracking({0.7 + e, 0.0}, {0.7, 0.0, 0.0}, 0.0, cfg) ==
        doctest::Approx(std::exp(-1.0) + 1.0).epsilon(1e-12));
  CHECK(velocity_tracking({0.7 + e, 0.0}, {0.7, 0.0, 0.0}, 0.0, cfg) == doctest::Approx(1.3679).epsilon(1e-4));
  const double far = velocity_tracking({3.0, 0.0}, {0.0, 0.0, 0.0}, 1.0, cfg);
  CHECK(far > 0.0);
  CHECK(far < 0.1);
}

TEST_CASE("velocity tracking gradient matches central differences") {
  const RewardConfig cfg;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const VelocityCommand cmd{u(rng), 0.5 * u(rng), u(rng)};
    const Vec2 v{cmd.vx + 0.5 * u(rng), cmd.vy + 0.5 * u(rng)};
    const Vec2 g = velocity_tracking_gradient(v, cmd, cfg);
    const double h = 1e-6;
    const double gx = (velocity_tracking({v.x + h, v.y}, cmd, 0, cfg) - velocity_tracking({v.x - h, v.y}, cmd, 0, cfg)) / (2 * h);
    const double gy = (velocity_tracking({v.x, v.y + h}, cmd, 0, cfg) - velocity_tracking({v.x, v.y - h}, cmd, 0, cfg)) / (2 * h);
    CHECK(g.x == doctest::Approx(gx).epsilon(1e-5));
    CHECK(g.y == doctest::Approx(gy).epsilon(1e-5));
  }
}

TEST_CASE("semantic foothold tracking") {
  const RewardConfig cfg;
  PerLeg<Vec2> feet{Vec2{0.2, 0.15}, Vec2{0.2, -0.15}, Vec2{-0.2, 0.15}, Vec2{-0.2, -0.15}};
  CHECK(semantic_foothold_tracking(feet, feet, GaitState{}, cfg) == 0.0);
  CHECK(semantic_foothold_tracking(feet, feet, swinging({0, 3}), cfg) == 2.0);
  PerLeg<Vec2> targets = feet;
  targets[1].x += std::sqrt(cfg.sigma_foot);
  CHECK(semantic_foothold_tracking(feet, targets, swinging({1}), cfg) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  FootholdPlan plan;
  for (std::size_t i = 0; i < 4; ++i) plan.legs[i].target = feet[i];
  CHECK(semantic_foothold_tracking(feet, plan, swinging({0, 1, 2, 3}), cfg) == 4.0);
}

TEST_CASE("clearance penalty") {
  const RewardConfig cfg;
  const BehaviorParams p;
  const GaitState g = swinging({2}, 0.5);
  const double ref = swing_reference_height(0.5, p.swing_height, cfg.delta_z);
  CHECK(clearance_penalty({0, 0, ref, 0}, g, p, cfg) == 0.0);
  CHECK(clearance_penalty({0, 0, ref + 0.05, 0}, g, p, cfg) == 0.0);
  CHECK(clearance_penalty({0, 0, ref - 0.03, 0}, g, p, cfg) == doctest::Approx(9e-4).epsilon(1e-9));
  // Stance legs never count.
  CHECK(clearance_penalty({-1, -1, ref, -1}, g, p, cfg) == 0.0);
  // Deeper shortfall, larger penalty.
  double prev = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double c = clearance_penalty({0, 0, ref - 0.01 * k, 0}, g, p, cfg);
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("multiplicative total") {
  CHECK(compose_total(1.7, 0.0, 0.1) == 1.7);
  CHECK(compose_total(0.0, -5.0, 0.1) == 0.0);
  CHECK(compose_total(2.0, -1.0, 1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-12));
  CHECK(compose_total(2.0, -1.0, 1.0) == doctest::Approx(0.7358).epsilon(1e-4));
  CHECK_THROWS_AS(compose_total(1.0, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("total_reward weights and aggregates penalties") {
  const RewardConfig cfg;
  RewardInputs in{2.0, 1.0, {{penalty::kClearance, 0.001}, {penalty::kBaseCollision, 2.0}, {"unknown", 9.0}}};
  const RewardBreakdown b = total_reward(in, cfg);
  CHECK(b.r_primary == doctest::Approx(2.5));
  CHECK(b.r_penalty == doctest::Approx(-10.0 * 0.001 - 2.0));
  CHECK(b.total == doctest::Approx(2.5 * std::exp(0.1 * b.r_penalty)));
  CHECK(b.penalties.size() == 3);
  CHECK(b.penalties[2].second == 0.0);
  // Negative cost (a reward in disguise) is rejected.
  RewardInputs bad{1.0, 0.0, {{penalty::kClearance, -1.0}}};
  CHECK_THROWS_AS(total_reward(bad, cfg), std::invalid_argument);
}

TEST_CASE("ranges and bounds over random inputs") {
  const RewardConfig cfg;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0), c(0.0, 5.0);
  for (int i = 0; i < 20000; ++i) {
    const double r = velocity_tracking({u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, u(rng), cfg);
    CHECK(r > 0.0);
    CHECK(r <= 2.0);
    PerLeg<Vec2> a{Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}, Vec2{0, 0}, Vec2{0, 0}};
    PerLeg<Vec2> b{Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}, Vec2{0, 0}, Vec2{0, 0}};
    const double s = semantic_foothold_tracking(a, b, swinging({0, 1, 2, 3}), cfg);
    CHECK(s >= 0.0);
    CHECK(s <= 4.0);
    const double primary = r + 0.5 * s;
    const double total = compose_total(primary, -c(rng), 0.1);
    CHECK(total <= primary);
    CHECK(total >= 0.0);
  }
}

TEST_CASE("config validation") {
  RewardConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.sigma_foot = 0.0;
  CHECK_THROWS(cfg.validate());
  CHECK(RewardConfig{}.weight("nope") == 0.0);
  CHECK(RewardConfig{}.weight(penalty::kClearance) == 10.0);
}

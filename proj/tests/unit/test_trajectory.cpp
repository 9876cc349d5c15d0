#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "trajregion/trajectory.hpp"

using namespace trajregion;
using testing::traj;

TEST_SUITE("trajectory") {

TEST_CASE("min_sq_dist finds the nearest state and its index") {
  SUBCASE("state equal to the center") {
    const auto t = traj("a", {{2, 2}, {0.5, -1}, {3, 3}});
    const auto n = min_sq_dist(t, State{0.5, -1});
    CHECK(n.dist2 == 0.0);
    CHECK(n.index == 1);
  }
  SUBCASE("first state exact") {
    const auto n = min_sq_dist(traj("a", {{0, 0}, {3, 4}}), State{0, 0});
    CHECK(n.dist2 == 0.0);
    CHECK(n.index == 0);
  }
  SUBCASE("enumerated distances 1 and 4") {
    const auto n = min_sq_dist(traj("a", {{1, 0}, {0, 2}}), State{0, 0});
    CHECK(n.dist2 == 1.0);
    CHECK(n.index == 0);
  }
  SUBCASE("ties go to the lowest index") {
    const auto n = min_sq_dist(traj("a", {{0, 3}, {1, 0}, {-1, 0}, {0, 1}}), State{0, 0});
    CHECK(n.dist2 == 1.0);
    CHECK(n.index == 1);
  }
}

TEST_CASE("min_sq_dist dimension mismatch names the trajectory") {
  try {
    min_sq_dist(traj("walk-17", {{1, 0}}), State{0, 0, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension_mismatch);
    CHECK(std::string(e.what()).find("walk-17") != std::string::npos);
  }
}

TEST_CASE("hard membership uses a closed ball") {
  const auto t = traj("a", {{1, 0}});
  CHECK(hard_membership(t, Region{{0, 0}, 0.5}) == 0);
  CHECK(hard_membership(t, Region{{0, 0}, 1.0}) == 1);
  CHECK(hard_membership(traj("b", {{4, 4}, {0, 0}}), Region{{0, 0}, 1e-9}) == 1);
}

TEST_CASE("soft membership values") {
  const auto t = traj("a", {{1, 0}});
  // gap = 0 gives one half for any alpha
  for (double alpha : {0.1, 1.0, 37.0, 1e6}) CHECK(soft_membership(t, Region{{0, 0}, 1.0}, alpha) == doctest::Approx(0.5));
  // gap = -1 and alpha = ln 3 gives 3/4
  CHECK(soft_membership(t, Region{{0, 0}, std::sqrt(2.0)}, std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-14));
  // gap = +50 and alpha = 10 saturates
  const auto far = traj("b", {{std::sqrt(51.0), 0}});
  CHECK(soft_membership(far, Region{{0, 0}, 1.0}, 10.0) < 1e-6);
  CHECK_THROWS_AS(soft_membership(t, Region{{0, 0}, 1.0}, 0.0), Error);
  CHECK_THROWS_AS(soft_membership(t, Region{{0, 0}, 1.0}, -1.0), Error);
}

TEST_CASE("relaxed indicator stays finite past the exponent clamp") {
  CHECK(relaxed_indicator(1e9, 1e9) == doctest::Approx(1.0 / (1.0 + std::exp(kSigmoidExponentClamp))));
  CHECK(relaxed_indicator(1e9, 1e9) < 1e-200);
  CHECK(relaxed_indicator(-1e9, 1e9) == 1.0);
  CHECK(std::isfinite(relaxed_indicator(1e300, 1e300)));
}

TEST_CASE("soft membership approaches the hard indicator") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = traj("a", {{u(rng), u(rng)}, {u(rng), u(rng)}});
    const Region r{{u(rng), u(rng)}, 0.2 + 0.5 * (u(rng) + 1.0)};
    const double gap = min_sq_dist(t, r.center).dist2 - r.radius * r.radius;
    const double delta = std::abs(gap);
    if (delta < 1e-3) continue;
    for (double alpha : {1.0, 10.0, 100.0, 1e4}) {
      // the clamped exponent floors the gap at 1/(1+e^500); 1 - g costs an ulp
      const double bound = 1.0 / (1.0 + std::exp(std::min(alpha * delta, kSigmoidExponentClamp)));
      CHECK(std::abs(soft_membership(t, r, alpha) - hard_membership(t, r)) <= bound * (1 + 1e-9) + 2.3e-16);
    }
  }
}

TEST_CASE("membership properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<State> states;
    for (int i = 0; i < 6; ++i) states.push_back({u(rng), u(rng), u(rng)});
    const State c{u(rng), u(rng), u(rng)};
    const auto t = traj("a", states);

    // permutation of states
    auto shuffled = states;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Region r{c, 0.3 + 0.5 * (u(rng) + 1.0)};
    CHECK(soft_membership(traj("b", shuffled), r, 7.0) == soft_membership(t, r, 7.0));

    // monotone in radius
    const double e1 = 0.05 + (u(rng) + 1.0), e2 = e1 + 0.5 * (u(rng) + 1.0);
    CHECK(hard_membership(t, Region{c, e1}) <= hard_membership(t, Region{c, e2}));

    // rotation about the z axis
    const double th = 3.0 * u(rng), cs = std::cos(th), sn = std::sin(th);
    auto rot = [&](const State& p) { return State{cs * p[0] - sn * p[1], sn * p[0] + cs * p[1], p[2]}; };
    std::vector<State> rotated;
    for (const auto& s : states) rotated.push_back(rot(s));
    CHECK(min_sq_dist(traj("c", rotated), rot(c)).dist2 == doctest::Approx(min_sq_dist(t, c).dist2).epsilon(1e-12));
  }
}

TEST_CASE("dataset validation") {
  using testing::dataset;
  CHECK_THROWS_AS(Dataset({}, 2), Error);
  CHECK_THROWS_AS(Dataset({traj("a", {{0, 0}}), traj("a", {{1, 1}})}, 2), Error);
  CHECK_THROWS_AS(Dataset({traj("a", {})}, 2), Error);
  try {
    Dataset({traj("a", {{0, 0}}), traj("b", {{1, 1, 1}})}, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension_mismatch);
  }
  CHECK_THROWS_AS(Dataset({traj("a", {{0, NAN}})}, 2), Error);
  CHECK_THROWS_AS(Dataset({traj("a", {{0, 0}}, INFINITY)}, 2), Error);

  const auto ds = dataset({{{0, 0}, {1, 0}}, {{0, 2}}}, {0, 1});
  CHECK(ds.size() == 2);
  CHECK(ds.total_states() == 3);
  CHECK(ds.workspace_diameter() == doctest::Approx(std::sqrt(5.0)));
  const auto c = ds.centroid();
  CHECK(c[0] == doctest::Approx(1.0 / 3));
  CHECK(c[1] == doctest::Approx(2.0 / 3));
  CHECK(ds.rewards() == std::vector<double>{0, 1});
}

TEST_CASE("region checks") {
  CHECK_NOTHROW(check_region(Region{{0, 0}, 1.0}, 2));
  CHECK_THROWS_AS(check_region(Region{{0, 0}, 0.0}, 2), Error);
  CHECK_THROWS_AS(check_region(Region{{0, NAN}, 1.0}, 2), Error);
  CHECK_THROWS_AS(check_region(Region{{0}, 1.0}, 2), Error);
}

}

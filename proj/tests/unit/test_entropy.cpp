#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "trajregion/entropy.hpp"

using namespace trajregion;
using testing::alphabet;

namespace {

MembershipMatrix column(const std::vector<double>& v) {
  MembershipMatrix m(v.size(), 1);
  for (std::size_t l = 0; l < v.size(); ++l) m(l, 0) = v[l];
  return m;
}

MembershipMatrix random_matrix(std::mt19937_64& rng, std::size_t L, std::size_t m, bool hard) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MembershipMatrix out(L, m);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < m; ++j) out(l, j) = hard ? (u(rng) < 0.5 ? 0.0 : 1.0) : u(rng);
  return out;
}

RewardAlphabet random_labels(std::mt19937_64& rng, std::size_t L, std::size_t k) {
  std::uniform_int_distribution<std::size_t> lab(0, k - 1);
  std::vector<std::size_t> v(L);
  for (auto& x : v) x = lab(rng);
  return alphabet(v, k);
}

} // namespace

TEST_SUITE("entropy") {

TEST_CASE("estimate_joint examples") {
  SUBCASE("perfect separation") {
    const auto t = estimate_joint(column({1, 0}), alphabet({0, 1}, 2));
    CHECK(t.at(1, 0) == 0.5);
    CHECK(t.at(0, 1) == 0.5);
    CHECK(t.at(1, 1) == 0.0);
    CHECK(t.at(0, 0) == 0.0);
  }
  SUBCASE("single soft row") {
    const auto t = estimate_joint(column({0.25}), alphabet({0}, 1));
    CHECK(t.at(1, 0) == 0.25);
    CHECK(t.at(0, 0) == 0.75);
  }
  SUBCASE("two hard variables") {
    MembershipMatrix m(4, 2);
    const double rows[4][2] = {{1, 1}, {1, 0}, {0, 1}, {0, 0}};
    for (int l = 0; l < 4; ++l) m(l, 0) = rows[l][0], m(l, 1) = rows[l][1];
    const auto t = estimate_joint(m, alphabet({0, 0, 0, 0}, 1));
    for (std::size_t a = 0; a < 4; ++a) CHECK(t.at(a, 0) == 0.25);
    CHECK(t.marginal_assignment == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  }
  CHECK_THROWS_AS(estimate_joint(column({1, 0, 1}), alphabet({0, 1}, 2)), Error);
}

TEST_CASE("conditional entropy examples") {
  CHECK(conditional_entropy(estimate_joint(column({1, 1, 0, 0}), alphabet({1, 1, 0, 0}, 2))) == 0.0);
  CHECK(conditional_entropy(estimate_joint(column({1, 0, 1, 0}), alphabet({0, 0, 1, 1}, 2))) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  const auto labels = alphabet({0, 0, 1, 0}, 2);
  const auto t = estimate_joint(column({1, 1, 0, 0}), labels);
  CHECK(conditional_entropy(t) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(information_gain(alphabet({0, 1, 0, 1}, 2), estimate_joint(column({1, 1, 0, 0}), alphabet({0, 1, 0, 1}, 2))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // the L=4 example: ln 2 - 0.5 ln 2 against a balanced reward
  const auto balanced = alphabet({0, 0, 1, 1}, 2);
  const auto tb = estimate_joint(column({1, 1, 0, 1}), balanced);
  CHECK(information_gain(balanced, tb) == doctest::Approx(std::log(2.0) - conditional_entropy(tb)));
}

TEST_CASE("marginal entropy examples") {
  CHECK(marginal_entropy(alphabet({1, 1, 1}, 2)) == 0.0);
  CHECK(marginal_entropy(alphabet({0, 1, 0, 1}, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(marginal_entropy(alphabet({0, 0, 0, 1}, 2)) ==
        doctest::Approx(-(0.75 * std::log(0.75) + 0.25 * std::log(0.25))).epsilon(1e-14));
  CHECK(marginal_entropy(alphabet({0, 0, 0, 1}, 2)) == doctest::Approx(0.5623).epsilon(1e-4));
  CHECK(nats_to_bits(std::log(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("perfect determiner recovers all information") {
  const auto labels = alphabet({0, 1, 1, 0, 1}, 2);
  const auto t = estimate_joint(column({0, 1, 1, 0, 1}), labels);
  CHECK(information_gain(labels, t) == doctest::Approx(marginal_entropy(labels)).epsilon(1e-14));
}

TEST_CASE("entropy identities on random tables") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t L = 1 + trial % 17, m = 1 + trial % 4, k = 1 + trial % 3;
    const auto labels = random_labels(rng, L, k);
    const auto mm = random_matrix(rng, L, m, trial % 2 == 0);
    const auto t = estimate_joint(mm, labels);

    const double total = std::accumulate(t.probs.begin(), t.probs.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t a = 0; a < t.assignments(); ++a) {
      double row = 0.0;
      for (std::size_t r = 0; r < k; ++r) row += t.at(a, r);
      CHECK(std::abs(row - t.marginal_assignment[a]) <= 1e-9);
    }
    for (std::size_t r = 0; r < k; ++r) {
      double col = 0.0;
      for (std::size_t a = 0; a < t.assignments(); ++a) col += t.at(a, r);
      CHECK(std::abs(col - t.marginal_reward[r]) <= 1e-9);
    }

    const double h = conditional_entropy(t), hr = marginal_entropy(labels);
    CHECK(h >= 0.0);
    CHECK(h <= hr + 1e-9);
    CHECK(information_gain(labels, t) >= -1e-9);
    CHECK(std::abs(h - (joint_entropy(t) - assignment_entropy(t))) <= 1e-9);
    if (m == 1) CHECK(std::abs(h - single_variable_conditional_entropy(t)) <= 1e-12);
  }
}

TEST_CASE("estimate_joint permutation invariance") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t L = 3 + trial % 9, m = 1 + trial % 3, k = 2;
    const auto labels = random_labels(rng, L, k);
    const auto mm = random_matrix(rng, L, m, false);
    const auto t = estimate_joint(mm, labels);

    std::vector<std::size_t> rows(L), cols(m);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    MembershipMatrix pm(L, m);
    std::vector<std::size_t> pl(L);
    for (std::size_t l = 0; l < L; ++l) {
      pl[l] = labels.label_of[rows[l]];
      for (std::size_t j = 0; j < m; ++j) pm(l, j) = mm(rows[l], cols[j]);
    }
    const auto p = estimate_joint(pm, alphabet(pl, k));
    for (std::size_t a = 0; a < t.assignments(); ++a) {
      // bit j of the permuted table is bit cols[j] of the original
      std::size_t orig = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (a >> j & 1U) orig |= std::size_t{1} << cols[j];
      for (std::size_t r = 0; r < k; ++r) CHECK(p.at(a, r) == doctest::Approx(t.at(orig, r)).epsilon(1e-12));
    }
  }
}

TEST_CASE("hard entropy helpers match the table path") {
  std::mt19937_64 rng(2);
  RewardAlphabet labels;
  const auto ds = testing::random_dataset(rng, 12, 6, 2, 2, &labels);
  const std::vector<Region> regions{{{0.5, 0.5}, 0.3}, {{0.2, 0.8}, 0.25}};
  const auto mm = hard_memberships(ds, regions);
  for (std::size_t l = 0; l < ds.size(); ++l)
    for (std::size_t j = 0; j < regions.size(); ++j) CHECK(mm(l, j) == hard_membership(ds[l], regions[j]));
  CHECK(hard_conditional_entropy(ds, labels, regions) == conditional_entropy(estimate_joint(mm, labels)));

  const RegionObjective obj(ds, labels, std::vector<Region>{regions[0]});
  CHECK(obj.hard_entropy(regions[1]) == doctest::Approx(hard_conditional_entropy(ds, labels, regions)).epsilon(1e-12));
  CHECK(obj.frozen_entropy() ==
        doctest::Approx(hard_conditional_entropy(ds, labels, std::vector<Region>{regions[0]})).epsilon(1e-12));
  CHECK(obj.reward_entropy() == doctest::Approx(marginal_entropy(labels)));
}

TEST_CASE("soft objective at saturating alpha reproduces the hard entropy") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    RewardAlphabet labels;
    const auto ds = testing::random_dataset(rng, 15, 5, 2, 2, &labels);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    const std::vector<Region> frozen{{{u(rng), u(rng)}, 0.2}};
    const Region free{{u(rng), u(rng)}, 0.15 + 0.2 * u(rng)};
    const auto v = objective_with_gradient(ds, labels, frozen, free, 1e12);
    bool boundary = false;
    for (const auto& t : ds.trajectories())
      boundary |= std::abs(min_sq_dist(t, free.center).dist2 - free.radius * free.radius) < 1e-9;
    if (boundary) continue;
    CHECK(v.h_soft == doctest::Approx(v.h_hard).epsilon(1e-12));
    CHECK(v.h_hard == doctest::Approx(hard_conditional_entropy(ds, labels, std::vector<Region>{frozen[0], free})));
  }
}

TEST_CASE("objective plateau and symmetry") {
  SUBCASE("region containing everything") {
    const auto ds = testing::dataset({{{0, 0}}, {{1, 0}}, {{0, 1}}, {{1, 1}}}, {0, 1, 0, 1});
    const auto labels = alphabet({0, 1, 0, 1}, 2);
    const auto v = objective_with_gradient(ds, labels, {}, Region{{0.5, 0.5}, 3.0}, 50.0);
    CHECK(v.h_soft == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(std::abs(v.grad_center[0]) < 1e-100);
    CHECK(std::abs(v.grad_radius) < 1e-100);
  }
  SUBCASE("mirrored pair") {
    const auto ds = testing::dataset({{{-1, 0.3}}, {{1, 0.3}}, {{0, 2}}}, {1, 1, 0});
    const auto labels = alphabet({1, 1, 0}, 2);
    const auto v = objective_with_gradient(ds, labels, {}, Region{{0, 0}, 0.9}, 3.0);
    CHECK(v.grad_center[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(v.grad_center[1]) > 1e-6);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 120; ++trial) {
    RewardAlphabet labels;
    const auto ds = testing::random_dataset(rng, 6, 4, 2, 2 + trial % 2, &labels);
    std::vector<Region> frozen;
    if (trial % 3 == 1) frozen.push_back(Region{{u(rng), u(rng)}, 0.3});
    const Region free{{u(rng), u(rng)}, 0.1 + 0.4 * u(rng)};
    const double alpha = 2.0 + 40.0 * u(rng);
    const auto probe = testing::gradient_probe(ds, labels, frozen, free, alpha);
    if (!probe) continue;
    ++checked;
    CHECK(probe->rel_error <= 1e-4);
  }
  CHECK(checked >= 100);
}

TEST_CASE("degenerate labels are flagged, not thrown") {
  const auto ds = testing::dataset({{{0, 0}}, {{1, 1}}}, {1, 1});
  const auto v = objective_with_gradient(ds, alphabet({0, 0}, 1), {}, Region{{0, 0}, 0.5}, 2.0);
  CHECK(v.degenerate_labels);
  CHECK(v.h_soft == 0.0);
  CHECK_THROWS_AS(objective_with_gradient(ds, alphabet({0, 0}, 1), {}, Region{{0, 0}, 0.5}, 0.0), Error);
}

}

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "trajregion/reward_discretize.hpp"

using namespace trajregion;

namespace {

double sse(const std::vector<double>& x, const std::vector<std::size_t>& label, std::size_t k) {
  std::vector<double> sum(k, 0.0), n(k, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) sum[label[i]] += x[i], n[label[i]] += 1;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = sum[label[i]] / n[label[i]];
    s += (x[i] - m) * (x[i] - m);
  }
  return s;
}

// Minimum within-cluster sum of squares over every assignment with k
// non-empty clusters.
double exhaustive_sse(const std::vector<double>& x, std::size_t k) {
  std::vector<std::size_t> label(x.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    if (std::set<std::size_t>(label.begin(), label.end()).size() == k) best = std::min(best, sse(x, label, k));
    std::size_t i = 0;
    while (i < label.size() && ++label[i] == k) label[i++] = 0;
    if (i == label.size()) break;
  }
  return best;
}

} // namespace

TEST_SUITE("reward_discretize") {

TEST_CASE("already discrete input passes through") {
  const std::vector<double> r{0, 0, 1, 1};
  const auto a = discretize_rewards(r, 2);
  CHECK(a.values == std::vector<double>{0, 1});
  CHECK(a.label_of == std::vector<std::size_t>{0, 0, 1, 1});

  const auto b = discretize_rewards(std::vector<double>{3, -1, 3, 7}, 3);
  CHECK(b.values == std::vector<double>{-1, 3, 7});
  CHECK(b.label_of == std::vector<std::size_t>{1, 0, 1, 2});
}

TEST_CASE("two clear clusters") {
  const std::vector<double> r{0.0, 0.1, 0.9, 1.0};
  const auto a = discretize_rewards(r, 2);
  CHECK(a.values[0] == doctest::Approx(0.05));
  CHECK(a.values[1] == doctest::Approx(0.95));
  CHECK(a.label_of == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(sse(r, a.label_of, 2) == doctest::Approx(exhaustive_sse(r, 2)));
}

TEST_CASE("one cluster") {
  const auto a = discretize_rewards(std::vector<double>{5, 5, 5}, 1);
  CHECK(a.size() == 1);
  CHECK(a.values[0] == 5.0);
  CHECK(a.label_of == std::vector<std::size_t>{0, 0, 0});
  CHECK(discretize_rewards(std::vector<double>{1, 2, 4}, 1).values[0] == doctest::Approx(7.0 / 3));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(discretize_rewards(std::vector<double>{}, 1), Error);
  CHECK_THROWS_AS(discretize_rewards(std::vector<double>{1, 2}, 0), Error);
  CHECK_THROWS_AS(discretize_rewards(std::vector<double>{1, 1, 2}, 3), Error);
}

TEST_CASE("separated groups match the exhaustive optimum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + trial % 2;
    std::vector<double> x;
    for (std::size_t g = 0; g < k; ++g)
      for (int i = 0; i < 2 + trial % 3; ++i) x.push_back(10.0 * g + u(rng));
    std::shuffle(x.begin(), x.end(), rng);
    const auto a = discretize_rewards(x, k);
    CHECK(sse(x, a.label_of, k) == doctest::Approx(exhaustive_sse(x, k)).epsilon(1e-12));
  }
}

TEST_CASE("labels are monotone, permutation invariant and deterministic") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(5 + trial % 20);
    for (auto& v : x) v = n(rng);
    const std::size_t k = 1 + trial % 4;
    const auto a = discretize_rewards(x, k);
    CHECK(a.count() == x.size());
    CHECK(std::is_sorted(a.values.begin(), a.values.end()));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x[i] < x[j]) CHECK(a.label_of[i] <= a.label_of[j]);

    std::vector<std::size_t> perm(x.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < perm.size(); ++i) y[i] = x[perm[i]];
    const auto b = discretize_rewards(y, k);
    CHECK(b.values == a.values);
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(b.label_of[i] == a.label_of[perm[i]]);

    const auto c = discretize_rewards(x, k);
    CHECK(c.values == a.values);
    CHECK(c.label_of == a.label_of);
  }
}

}

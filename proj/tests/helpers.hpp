#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "trajregion/trajectory.hpp"

namespace testing {

using trajregion::Dataset;
using trajregion::RewardAlphabet;
using trajregion::State;
using trajregion::Trajectory;

inline Trajectory traj(std::string id, std::vector<State> states, double reward = 0.0) {
  Trajectory t;
  t.id = std::move(id);
  t.states = std::move(states);
  t.reward = reward;
  return t;
}

/// Dataset with ids t0, t1, ... from per-trajectory state lists and rewards.
inline Dataset dataset(const std::vector<std::vector<State>>& states, const std::vector<double>& rewards) {
  std::vector<Trajectory> ts;
  for (std::size_t i = 0; i < states.size(); ++i) ts.push_back(traj("t" + std::to_string(i), states[i], rewards[i]));
  return Dataset(std::move(ts), states.front().front().size());
}

/// Alphabet 0..k-1 with the given positional labels.
inline RewardAlphabet alphabet(const std::vector<std::size_t>& label_of, std::size_t k) {
  RewardAlphabet a;
  for (std::size_t i = 0; i < k; ++i) a.values.push_back(static_cast<double>(i));
  a.label_of = label_of;
  return a;
}

/// Random walks in [0,1]^d with uniform starts, random labels in 0..k-1.
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t L, std::size_t T, std::size_t d, std::size_t k,
                              RewardAlphabet* labels) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> step(0.0, 0.1);
  std::uniform_int_distribution<std::size_t> lab(0, k - 1);
  std::vector<std::vector<State>> states(L);
  std::vector<double> rewards(L);
  std::vector<std::size_t> label_of(L);
  for (std::size_t l = 0; l < L; ++l) {
    State z(d);
    for (auto& x : z) x = u(rng);
    for (std::size_t t = 0; t < T; ++t) {
      states[l].push_back(z);
      for (auto& x : z) x += step(rng);
    }
    label_of[l] = lab(rng);
    rewards[l] = static_cast<double>(label_of[l]);
  }
  // Every label used at least once keeps the alphabet honest.
  for (std::size_t i = 0; i < k && i < L; ++i) label_of[i] = i, rewards[i] = static_cast<double>(i);
  if (labels) *labels = alphabet(label_of, k);
  return dataset(states, rewards);
}

} // namespace testing

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "trajregion/entropy.hpp"

namespace testing {

struct GradientProbe {
  double rel_error = 0.0;
  double grad_norm = 0.0;
};

/// Compares the analytic gradient of the relaxed objective with central
/// differences of step h. Returns nothing when the probe sits near an argmin
/// tie, the exponent clamp or a flat spot, where differences are not
/// meaningful.
inline std::optional<GradientProbe> gradient_probe(const Dataset& ds, const RewardAlphabet& labels,
                                                   const std::vector<trajregion::Region>& frozen,
                                                   const trajregion::Region& free, double alpha, double h = 1e-5) {
  using namespace trajregion;
  const double r2 = free.radius * free.radius;
  for (const auto& t : ds.trajectories()) {
    std::vector<double> d2;
    for (const auto& s : t.states) {
      double acc = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) acc += (s[i] - free.center[i]) * (s[i] - free.center[i]);
      d2.push_back(acc);
    }
    std::sort(d2.begin(), d2.end());
    // the nearest state must not change within the difference stencil
    if (d2.size() > 1 && std::sqrt(d2[1]) - std::sqrt(d2[0]) < 1e-3) return std::nullopt;
    if (std::abs(alpha * (d2[0] - r2)) > 0.9 * kSigmoidExponentClamp) return std::nullopt;
  }
  const ObjectiveValue v = objective_with_gradient(ds, labels, frozen, free, alpha);
  std::vector<double> analytic = v.grad_center, numeric;
  analytic.push_back(v.grad_radius);
  for (std::size_t i = 0; i <= free.center.size(); ++i) {
    Region plus = free, minus = free;
    if (i < free.center.size()) {
      plus.center[i] += h;
      minus.center[i] -= h;
    } else {
      plus.radius += h;
      minus.radius -= h;
    }
    const double fp = objective_with_gradient(ds, labels, frozen, plus, alpha).h_soft;
    const double fm = objective_with_gradient(ds, labels, frozen, minus, alpha).h_soft;
    numeric.push_back((fp - fm) / (2.0 * h));
  }
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  const double scale = std::sqrt(std::max(na, nn));
  if (scale < 1e-6) return std::nullopt;
  return GradientProbe{std::sqrt(diff) / scale, std::sqrt(na)};
}

} // namespace testing

#pragma once

#include <span>
#include <vector>

#include "trajregion/entropy.hpp"
#include "trajregion/optimizer.hpp"

namespace trajregion {

/// Every state of every trajectory, in dataset order.
std::vector<State> all_states(const Dataset& dataset);

/// `count` radii geometrically spaced over [bounds.min, bounds.max].
std::vector<double> geometric_radii(const RadiusBounds& bounds, std::size_t count = 32);

struct GridResult {
  Region best;
  double best_h_hard = 0.0;
  std::size_t best_center = 0;
  std::size_t best_radius = 0;
  std::vector<State> centers;
  std::vector<double> radii;
  /// Hard H(R | frozen, candidate), row-major [center][radius].
  std::vector<double> table;

  double at(std::size_t center, std::size_t radius) const { return table[center * radii.size() + radius]; }
};

/// Exhaustive evaluation of every (center, radius) pair. Among equal minima
/// the lexicographically smallest center, then the smallest radius, wins.
/// `jobs` splits the centers across threads without changing the result.
GridResult grid_search(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen,
                       std::vector<State> centers, std::vector<double> radii, std::size_t jobs = 1);

/// grid_search with centers = all_states and 32 geometric radii.
GridResult grid_search(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen,
                       std::size_t jobs = 1);

} // namespace trajregion

#pragma once

#include <cstddef>
#include <span>

#include "trajregion/trajectory.hpp"

namespace trajregion {

/// Clusters scalar rewards into k ordered labels with 1-D k-means.
///
/// Centers start at the k evenly spaced quantiles of the sorted distinct
/// values and Lloyd iterations run until the assignment is stable. When
/// the input already has exactly k distinct values each value becomes its
/// own label. Alphabet values are the final centers in ascending order, so
/// labels are monotone in the reward.
RewardAlphabet discretize_rewards(std::span<const double> rewards, std::size_t k);

} // namespace trajregion

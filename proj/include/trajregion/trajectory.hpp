#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trajregion/error.hpp"

namespace trajregion {

/// A point of the observable state space, R^d.
using State = std::vector<double>;

struct Trajectory {
  std::string id;
  std::vector<State> states;
  /// Opaque per-step action records, carried through I/O but never read by
  /// the discovery pipeline. Stored as serialized JSON text.
  std::vector<std::string> actions;
  double reward = 0.0;
};

/// Validated collection of trajectories sharing one state dimension.
class Dataset {
public:
  Dataset() = default;
  /// Throws Error on an empty corpus, empty trajectories, non-finite values,
  /// duplicate ids or mixed dimensions.
  Dataset(std::vector<Trajectory> trajectories, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return trajectories_.size(); }
  const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
  const std::vector<Trajectory>& trajectories() const { return trajectories_; }

  std::vector<double> rewards() const;
  std::size_t total_states() const;

  /// Length of the diagonal of the axis-aligned bounding box of all states.
  double workspace_diameter() const;
  /// Mean of all states, every state weighted equally.
  State centroid() const;

private:
  std::vector<Trajectory> trajectories_;
  std::size_t dim_ = 0;
};

/// Hyper-sphere in state space; traversal activates one hidden variable.
struct Region {
  State center;
  double radius = 0.0;
};

/// Discrete reward labels. `label_of[l]` is the alphabet index of trajectory
/// l in dataset order.
struct RewardAlphabet {
  std::vector<double> values;
  std::vector<std::size_t> label_of;

  std::size_t size() const { return values.size(); }
  std::size_t count() const { return label_of.size(); }
  std::vector<std::size_t> frequencies() const;
};

struct NearestState {
  double dist2 = 0.0;
  std::size_t index = 0;
};

/// Smallest squared Euclidean distance from any state of `traj` to `center`.
/// Ties resolve to the lowest state index.
NearestState min_sq_dist(const Trajectory& traj, std::span<const double> center);

/// 1 iff the trajectory enters the closed ball of the region.
int hard_membership(const Trajectory& traj, const Region& region);

/// Largest |alpha * gap| fed to exp() in the sigmoid relaxation.
inline constexpr double kSigmoidExponentClamp = 500.0;

/// 1 / (1 + exp(alpha * gap)), with the exponent clamped to
/// +-kSigmoidExponentClamp. `gap` is min_sq_dist - radius^2.
double relaxed_indicator(double gap, double alpha);

/// Sigmoid relaxation of hard_membership with sharpness alpha > 0.
double soft_membership(const Trajectory& traj, const Region& region, double alpha);

void check_region(const Region& region, std::size_t dim);

} // namespace trajregion

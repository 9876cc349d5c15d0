#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trajregion/trajectory.hpp"

namespace trajregion {

enum class TaskKind {
  paint,  ///< reward 1 iff the walk visits one planted region
  door,   ///< reward 1 iff the walk visits both planted regions
  null,   ///< reward independent of the states
};

std::string_view task_kind_name(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);

/// Reflected Gaussian random walks in the unit cube [0,1]^d with planted
/// reward structure.
struct TaskSpec {
  TaskKind kind = TaskKind::paint;
  std::size_t dim = 2;
  std::size_t horizon = 50;  ///< states per trajectory
  std::size_t n_traj = 200;
  std::vector<Region> truth;
  double step_scale = 0.05;  ///< per-coordinate step standard deviation
  double label_noise = 0.0;  ///< independent flip probability, [0, 0.5)
  double null_success_rate = 0.3;
  std::uint64_t seed = 0;
};

/// Defaults used by the CLI and the acceptance suite for each task kind.
TaskSpec default_task(TaskKind kind, std::size_t dim = 2);

struct SynthInstance {
  Dataset dataset;
  TaskSpec spec;
  double success_fraction = 0.0;
};

/// Dispatches on spec.kind. Throws Error when the planted structure is
/// invalid or yields a success fraction outside [0.05, 0.95].
SynthInstance generate_task(const TaskSpec& spec);
SynthInstance gen_paint(const TaskSpec& spec);
SynthInstance gen_door(const TaskSpec& spec);
SynthInstance gen_null(const TaskSpec& spec);

/// Noise-free reward of a trajectory under the planted truth of `spec`.
double planted_reward(const TaskSpec& spec, const Trajectory& traj);

} // namespace trajregion

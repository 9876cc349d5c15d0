#include "trajregion/synth.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "trajregion/rng.hpp"

namespace trajregion {

std::string_view task_kind_name(TaskKind kind) {
  switch (kind) {
  case TaskKind::paint: return "paint";
  case TaskKind::door: return "door";
  case TaskKind::null: return "null";
  }
  return "unknown";
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "paint") return TaskKind::paint;
  if (name == "door") return TaskKind::door;
  if (name == "null") return TaskKind::null;
  throw Error(ErrorCode::invalid_parameter, "unknown task kind '" + std::string(name) + "'");
}

TaskSpec default_task(TaskKind kind, std::size_t dim) {
  TaskSpec s;
  s.kind = kind;
  s.dim = dim;
  switch (kind) {
  case TaskKind::paint:
    s.truth = {Region{State(dim, 0.7), 0.08}};
    break;
  case TaskKind::door:
    // A small "card reader" next to a larger "door".
    s.horizon = 80;
    s.truth = {Region{State(dim, 0.5), 0.05}, Region{State(dim, 0.5), 0.12}};
    s.truth[0].center[0] = 0.4;
    s.truth[1].center[0] = 0.65;
    break;
  case TaskKind::null:
    break;
  }
  return s;
}

namespace {

double reflect(double x) {
  // Fold onto [0, 1] with period 2.
  x = std::fmod(std::abs(x), 2.0);
  return x > 1.0 ? 2.0 - x : x;
}

void validate(const TaskSpec& spec, std::size_t regions) {
  if (spec.dim == 0 || spec.horizon == 0 || spec.n_traj == 0)
    throw Error(ErrorCode::invalid_parameter, "task needs positive dim, horizon and trajectory count");
  if (!(spec.step_scale > 0.0) || !std::isfinite(spec.step_scale))
    throw Error(ErrorCode::invalid_parameter, "step_scale must be positive");
  if (!(spec.label_noise >= 0.0 && spec.label_noise < 0.5))
    throw Error(ErrorCode::invalid_parameter, "label_noise must lie in [0, 0.5)");
  if (spec.truth.size() != regions)
    throw Error(ErrorCode::invalid_parameter, std::string(task_kind_name(spec.kind)) + " task needs " +
                                                  std::to_string(regions) + " planted region(s)");
  for (const auto& r : spec.truth) {
    check_region(r, spec.dim);
    for (double c : r.center)
      if (c - r.radius < 0.0 || c + r.radius > 1.0)
        throw Error(ErrorCode::invalid_parameter, "planted region must lie inside the unit workspace");
  }
}

Trajectory walk(const TaskSpec& spec, std::size_t index, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> step(0.0, spec.step_scale);
  Trajectory t;
  t.id = "t" + std::to_string(index);
  State s(spec.dim);
  for (auto& x : s) x = unit(rng);
  t.states.push_back(s);
  for (std::size_t h = 1; h < spec.horizon; ++h) {
    State next(spec.dim);
    std::vector<double> delta(spec.dim);
    for (std::size_t k = 0; k < spec.dim; ++k) {
      delta[k] = step(rng);
      next[k] = reflect(s[k] + delta[k]);
    }
    t.actions.push_back(nlohmann::json(delta).dump());
    t.states.push_back(next);
    s = std::move(next);
  }
  return t;
}

SynthInstance build(const TaskSpec& spec) {
  std::vector<Trajectory> trajs;
  trajs.reserve(spec.n_traj);
  std::size_t successes = 0;
  for (std::size_t l = 0; l < spec.n_traj; ++l) {
    Rng rng(derive_seed(spec.seed, stream::trajectory, {l}));
    Trajectory t = walk(spec, l, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double reward = spec.kind == TaskKind::null ? (unit(rng) < spec.null_success_rate ? 1.0 : 0.0)
                                                : planted_reward(spec, t);
    if (reward > 0.5) ++successes;
    if (spec.kind != TaskKind::null && unit(rng) < spec.label_noise) reward = 1.0 - reward;
    t.reward = reward;
    trajs.push_back(std::move(t));
  }
  const double frac = static_cast<double>(successes) / static_cast<double>(spec.n_traj);
  if (frac < 0.05 || frac > 0.95)
    throw Error(ErrorCode::invalid_parameter,
                "planted structure gives a success fraction of " + std::to_string(frac) +
                    ", outside [0.05, 0.95]; adjust the planted radius, horizon or step scale");
  return {Dataset(std::move(trajs), spec.dim), spec, frac};
}

} // namespace

double planted_reward(const TaskSpec& spec, const Trajectory& traj) {
  switch (spec.kind) {
  case TaskKind::paint:
    return hard_membership(traj, spec.truth.at(0)) ? 1.0 : 0.0;
  case TaskKind::door:
    return hard_membership(traj, spec.truth.at(0)) && hard_membership(traj, spec.truth.at(1)) ? 1.0 : 0.0;
  case TaskKind::null:
    break;
  }
  throw Error(ErrorCode::invalid_parameter, "null task has no planted reward");
}

SynthInstance gen_paint(const TaskSpec& spec) {
  if (spec.kind != TaskKind::paint) throw Error(ErrorCode::invalid_parameter, "gen_paint needs a paint task");
  validate(spec, 1);
  return build(spec);
}

SynthInstance gen_door(const TaskSpec& spec) {
  if (spec.kind != TaskKind::door) throw Error(ErrorCode::invalid_parameter, "gen_door needs a door task");
  validate(spec, 2);
  return build(spec);
}

SynthInstance gen_null(const TaskSpec& spec) {
  if (spec.kind != TaskKind::null) throw Error(ErrorCode::invalid_parameter, "gen_null needs a null task");
  validate(spec, 0);
  if (!(spec.null_success_rate > 0.0 && spec.null_success_rate < 1.0))
    throw Error(ErrorCode::invalid_parameter, "null success rate must lie in (0, 1)");
  return build(spec);
}

SynthInstance generate_task(const TaskSpec& spec) {
  switch (spec.kind) {
  case TaskKind::paint: return gen_paint(spec);
  case TaskKind::door: return gen_door(spec);
  case TaskKind::null: return gen_null(spec);
  }
  throw Error(ErrorCode::invalid_parameter, "unknown task kind");
}

} // namespace trajregion

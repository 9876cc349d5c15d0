#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <span>
#include <vector>

#include "trajregion/entropy.hpp"

namespace trajregion {

/// Geometric sharpness schedule: alpha0 * growth^(step / period), capped at
/// alpha_max.
struct AnnealSchedule {
  double alpha0 = 1.0;
  double growth = 2.0;
  std::size_t period = 50;
  double alpha_max = 1e4;

  double at(std::size_t step) const;
  void validate() const;
};

/// Admissible radius interval [min, max].
struct RadiusBounds {
  double min = 0.0;
  double max = 0.0;

  /// min = 1e-3 * diameter, max = diameter of the dataset's bounding box.
  static RadiusBounds for_dataset(const Dataset& dataset);
  double clamp(double r) const;
};

enum class StepRule {
  /// x -= lr * grad.
  plain,
  /// Per-coordinate normalized step (Adam moments), so lr is a length.
  adaptive,
};

std::string_view step_rule_name(StepRule rule);
StepRule parse_step_rule(std::string_view name);

/// Optimizer settings as configured; unset values are derived from the
/// data around the initial region by resolve().
struct OptimizerConfig {
  std::optional<double> lr;
  std::optional<double> alpha0;
  /// Derived alpha0 = alpha0_scale / s, s = typical_sq_distance().
  double alpha0_scale = 32.0;
  double growth = 2.0;
  std::optional<std::size_t> period;
  std::optional<double> alpha_max;
  std::size_t max_steps = 400;
  double tol = 1e-4;
  /// Multiplier on lr for the radius coordinate.
  double radius_lr_scale = 1.0;
  /// Heavy-ball coefficient of the plain rule; 0 gives plain gradient descent.
  double momentum = 0.0;
  StepRule rule = StepRule::adaptive;
};

struct OptimizerSettings {
  AnnealSchedule schedule;
  double lr = 0.0;
  double radius_lr_scale = 1.0;
  double momentum = 0.0;
  StepRule rule = StepRule::adaptive;
  std::size_t max_steps = 0;
  double tol = 0.0;
  RadiusBounds bounds;
};

/// Median over trajectories of min_sq_dist to `center`, floored at
/// 1e-6 * diameter^2 so that derived scales stay finite.
double typical_sq_distance(const Dataset& dataset, std::span<const double> center);

OptimizerSettings resolve_settings(const Dataset& dataset, const Region& init, const OptimizerConfig& cfg);

struct TraceRecord {
  std::size_t step = 0;
  double alpha = 0.0;
  double h_soft = 0.0;
  double h_hard = 0.0;
  State center;
  double radius = 0.0;
  double grad_norm = 0.0;
};

struct OptimTrace {
  std::vector<TraceRecord> records;
};

struct OptimResult {
  Region best;
  double best_h_hard = 0.0;
  std::size_t best_step = 0;
  /// Soft entropy of the last evaluated iterate and the alpha it used.
  double final_h_soft = 0.0;
  double final_h_hard = 0.0;
  double final_alpha = 0.0;
  OptimTrace trace;
};

class OptimizationError : public Error {
public:
  OptimizationError(ErrorCode code, const std::string& message, OptimTrace trace)
      : Error(code, message), trace_(std::move(trace)) {}
  const OptimTrace& trace() const { return trace_; }

private:
  OptimTrace trace_;
};

/// Projected gradient descent on the relaxed conditional entropy of one free
/// region. Returns the iterate with the lowest hard-indicator entropy seen
/// (earliest on ties). Stops after max_steps or once the hard entropy moved
/// less than tol across a full schedule period.
OptimResult optimize_region(const RegionObjective& objective, const Region& init, const OptimizerSettings& settings);

OptimResult optimize_region(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen,
                            const Region& init, const OptimizerSettings& settings);

/// Exact line search over the radius with the center held fixed. The hard
/// entropy only changes where the radius crosses a trajectory's nearest
/// distance, so each gap between consecutive distances is probed at its
/// midpoint. Returns `region` unchanged unless some radius in `bounds` is
/// strictly better.
Region refine_radius(const Dataset& dataset, const RegionObjective& objective, const Region& region,
                     const RadiusBounds& bounds, double* h_hard = nullptr);

} // namespace trajregion

#include "trajregion/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace trajregion {

std::string_view step_rule_name(StepRule rule) {
  return rule == StepRule::plain ? "plain" : "adaptive";
}

StepRule parse_step_rule(std::string_view name) {
  if (name == "plain") return StepRule::plain;
  if (name == "adaptive") return StepRule::adaptive;
  throw Error(ErrorCode::invalid_parameter, "unknown step rule '" + std::string(name) + "'");
}

double AnnealSchedule::at(std::size_t step) const {
  const double e = static_cast<double>(step / period);
  return std::min(alpha_max, alpha0 * std::pow(growth, e));
}

void AnnealSchedule::validate() const {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw Error(ErrorCode::invalid_parameter, "opt.alpha0 must be positive");
  if (!(growth > 1.0) || !std::isfinite(growth)) throw Error(ErrorCode::invalid_parameter, "opt.growth must exceed 1");
  if (period == 0) throw Error(ErrorCode::invalid_parameter, "opt.period must be at least 1");
  if (!(alpha_max >= alpha0)) throw Error(ErrorCode::invalid_parameter, "opt.alpha_max must be >= opt.alpha0");
}

RadiusBounds RadiusBounds::for_dataset(const Dataset& dataset) {
  double diam = dataset.workspace_diameter();
  if (!(diam > 0.0)) diam = 1.0;  // every state identical
  return {1e-3 * diam, diam};
}

double RadiusBounds::clamp(double r) const { return std::clamp(r, min, max); }

double typical_sq_distance(const Dataset& dataset, std::span<const double> center) {
  std::vector<double> d2;
  d2.reserve(dataset.size());
  for (const auto& t : dataset.trajectories()) d2.push_back(min_sq_dist(t, center).dist2);
  const auto mid = d2.begin() + static_cast<std::ptrdiff_t>(d2.size() / 2);
  std::nth_element(d2.begin(), mid, d2.end());
  double median = *mid;
  if (d2.size() % 2 == 0) median = 0.5 * (median + *std::max_element(d2.begin(), mid));
  const double diam = dataset.workspace_diameter();
  return std::max(median, 1e-6 * std::max(diam * diam, 1.0e-12));
}

OptimizerSettings resolve_settings(const Dataset& dataset, const Region& init, const OptimizerConfig& cfg) {
  check_region(init, dataset.dim());
  const double s = typical_sq_distance(dataset, init.center);
  OptimizerSettings out;
  out.schedule.alpha0 = cfg.alpha0.value_or(cfg.alpha0_scale / s);
  out.schedule.growth = cfg.growth;
  out.schedule.period = cfg.period.value_or(std::max<std::size_t>(1, cfg.max_steps / 8));
  out.schedule.alpha_max = cfg.alpha_max.value_or(1e4 / s);
  out.schedule.validate();
  out.lr = cfg.lr.value_or(0.05 * std::sqrt(s));
  if (!(out.lr > 0.0)) throw Error(ErrorCode::invalid_parameter, "opt.lr must be positive");
  if (!(cfg.alpha0_scale > 0.0)) throw Error(ErrorCode::invalid_parameter, "opt.alpha0_scale must be positive");
  if (!(cfg.radius_lr_scale > 0.0)) throw Error(ErrorCode::invalid_parameter, "opt.radius_lr_scale must be positive");
  if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0)) throw Error(ErrorCode::invalid_parameter, "opt.momentum must lie in [0, 1)");
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::invalid_parameter, "opt.tol must be positive");
  if (cfg.max_steps == 0) throw Error(ErrorCode::invalid_parameter, "opt.max_steps must be at least 1");
  out.radius_lr_scale = cfg.radius_lr_scale;
  out.momentum = cfg.momentum;
  out.rule = cfg.rule;
  out.max_steps = cfg.max_steps;
  out.tol = cfg.tol;
  out.bounds = RadiusBounds::for_dataset(dataset);
  return out;
}

OptimResult optimize_region(const RegionObjective& objective, const Region& init, const OptimizerSettings& settings) {
  settings.schedule.validate();
  if (objective.reward_entropy() == 0.0)
    throw Error(ErrorCode::degenerate_labels, "degenerate labels: every trajectory has the same reward");
  if (!(init.radius >= settings.bounds.min && init.radius <= settings.bounds.max))
    throw Error(ErrorCode::invalid_parameter, "initial radius lies outside the admissible radius bounds");

  Region cur = init;
  const std::size_t d = cur.center.size();
  const std::size_t n = d + 1;  // center coordinates, then radius
  std::vector<double> first(n, 0.0), second(n, 0.0);
  double decay1 = 1.0, decay2 = 1.0;
  const double move_tol = 1e-3 * settings.bounds.max;

  OptimResult res;
  res.best = init;
  res.best_h_hard = HUGE_VAL;
  double anchor_h = HUGE_VAL;
  Region anchor = init;

  for (std::size_t step = 0;; ++step) {
    const double alpha = settings.schedule.at(step);
    const ObjectiveValue v = objective.evaluate(cur, alpha);

    double gn2 = v.grad_radius * v.grad_radius;
    for (double g : v.grad_center) gn2 += g * g;
    res.trace.records.push_back({step, alpha, v.h_soft, v.h_hard, cur.center, cur.radius, std::sqrt(gn2)});
    res.final_h_soft = v.h_soft;
    res.final_h_hard = v.h_hard;
    res.final_alpha = alpha;

    if (!std::isfinite(gn2) || !std::isfinite(v.h_soft))
      throw OptimizationError(ErrorCode::non_finite, "non-finite gradient at step " + std::to_string(step),
                              std::move(res.trace));

    if (v.h_hard < res.best_h_hard) {
      res.best_h_hard = v.h_hard;
      res.best = cur;
      res.best_step = step;
    }

    if (step >= settings.max_steps) break;
    if (step % settings.schedule.period == 0) {
      // Converged when neither the hard entropy nor the parameters moved
      // over a whole period.
      double moved2 = (cur.radius - anchor.radius) * (cur.radius - anchor.radius);
      for (std::size_t c = 0; c < d; ++c) moved2 += (cur.center[c] - anchor.center[c]) * (cur.center[c] - anchor.center[c]);
      if (step > 0 && std::abs(v.h_hard - anchor_h) < settings.tol && std::sqrt(moved2) < move_tol) break;
      anchor_h = v.h_hard;
      anchor = cur;
    }

    std::vector<double> grad(v.grad_center);
    grad.push_back(v.grad_radius);
    std::vector<double> delta(n);
    if (settings.rule == StepRule::plain) {
      for (std::size_t i = 0; i < n; ++i) {
        first[i] = settings.momentum * first[i] + grad[i];
        delta[i] = settings.lr * first[i];
      }
    } else {
      constexpr double beta1 = 0.9;
      constexpr double beta2 = 0.999;
      decay1 *= beta1;
      decay2 *= beta2;
      for (std::size_t i = 0; i < n; ++i) {
        first[i] = beta1 * first[i] + (1.0 - beta1) * grad[i];
        second[i] = beta2 * second[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double m_hat = first[i] / (1.0 - decay1);
        const double v_hat = second[i] / (1.0 - decay2);
        delta[i] = v_hat > 0.0 ? settings.lr * m_hat / std::sqrt(v_hat) : 0.0;
      }
    }
    for (std::size_t c = 0; c < d; ++c) cur.center[c] -= delta[c];
    cur.radius = settings.bounds.clamp(cur.radius - settings.radius_lr_scale * delta[d]);
  }
  return res;
}

OptimResult optimize_region(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen,
                            const Region& init, const OptimizerSettings& settings) {
  return optimize_region(RegionObjective(dataset, labels, frozen), init, settings);
}

Region refine_radius(const Dataset& dataset, const RegionObjective& objective, const Region& region,
                     const RadiusBounds& bounds, double* h_hard) {
  std::vector<double> dist;
  dist.reserve(dataset.size() + 2);
  for (const auto& t : dataset.trajectories()) dist.push_back(std::sqrt(min_sq_dist(t, region.center).dist2));
  dist.push_back(bounds.min);
  dist.push_back(bounds.max);
  std::sort(dist.begin(), dist.end());
  dist.erase(std::unique(dist.begin(), dist.end()), dist.end());

  Region best = region;
  double best_h = objective.hard_entropy(region);
  Region probe = region;
  auto consider = [&](double radius) {
    if (radius < bounds.min || radius > bounds.max) return;
    probe.radius = radius;
    const double h = objective.hard_entropy(probe);
    if (h < best_h) {
      best_h = h;
      best = probe;
    }
  };
  consider(bounds.min);
  for (std::size_t i = 0; i + 1 < dist.size(); ++i) consider(0.5 * (dist[i] + dist[i + 1]));
  consider(bounds.max);
  if (h_hard) *h_hard = best_h;
  return best;
}

} // namespace trajregion

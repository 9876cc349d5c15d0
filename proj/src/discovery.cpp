#include "trajregion/discovery.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <thread>

#include "trajregion/rng.hpp"

namespace trajregion {

namespace {

RestartSummary run_restart(const Dataset& dataset, const RegionObjective& objective, const KdeSeeder& seeder,
                           const DiscoveryConfig& cfg, const RadiusBounds& bounds, std::size_t stage, std::size_t j) {
  Rng rng(derive_seed(cfg.seed, stream::restart, {stage, j}));
  const CenterProposal proposal = seeder.propose(rng);
  std::uniform_real_distribution<double> radius(bounds.min, std::max(bounds.min, cfg.init_radius_fraction * bounds.max));

  RestartSummary s;
  s.index = j;
  s.init = Region{proposal.center, radius(rng)};
  s.init_density = proposal.ranked.front().density;
  s.settings = resolve_settings(dataset, s.init, cfg.opt);

  OptimResult r = optimize_region(objective, s.init, s.settings);
  s.result = r.best;
  s.h_hard = r.best_h_hard;
  if (cfg.refine_radius) s.result = refine_radius(dataset, objective, r.best, s.settings.bounds, &s.h_hard);
  s.best_step = r.best_step;
  s.steps = r.trace.records.empty() ? 0 : r.trace.records.back().step;
  s.final_h_soft = r.final_h_soft;
  s.final_h_hard = r.final_h_hard;
  s.final_alpha = r.final_alpha;
  if (cfg.keep_traces) s.trace = std::move(r.trace);
  return s;
}

} // namespace

DiscoveryReport discover(const Dataset& dataset, const RewardAlphabet& labels, const DiscoveryConfig& cfg) {
  if (cfg.m == 0) throw Error(ErrorCode::invalid_parameter, "number of regions m must be at least 1");
  if (cfg.restarts == 0) throw Error(ErrorCode::invalid_parameter, "restart count must be at least 1");
  if (labels.count() != dataset.size())
    throw Error(ErrorCode::invalid_parameter, "reward labels do not match the dataset");
  if (!(cfg.init_radius_fraction > 0.0 && cfg.init_radius_fraction <= 1.0))
    throw Error(ErrorCode::invalid_parameter, "init.radius_fraction must lie in (0, 1]");

  DiscoveryReport report;
  report.h_reward = marginal_entropy(labels);
  if (report.h_reward == 0.0)
    throw Error(ErrorCode::degenerate_labels, "degenerate labels: every trajectory has the same reward label");
  report.success_labels = cfg.init.success_labels.empty() ? default_success_labels(labels) : cfg.init.success_labels;

  const RadiusBounds bounds = RadiusBounds::for_dataset(dataset);
  const Region floor_candidate{dataset.centroid(), bounds.max};
  double h_current = report.h_reward;

  for (std::size_t stage = 1; stage <= cfg.m; ++stage) {
    const RegionObjective objective(dataset, labels, report.regions);

    InitConfig init = cfg.init;
    init.success_labels = report.success_labels;
    std::optional<KdeSeeder> seeder;
    try {
      seeder.emplace(dataset, labels, report.regions, init);
    } catch (const Error& e) {
      throw Error(e.code(), "stage " + std::to_string(stage) + ": " + e.what());
    }

    StageReport sr;
    sr.stage = stage;
    sr.h_before = h_current;
    sr.seed_pool = seeder->pool_size();
    sr.seed_bandwidth = seeder->bandwidth();
    sr.restarts.resize(cfg.restarts);

    std::vector<std::exception_ptr> errors(cfg.restarts);
    auto work = [&](std::size_t worker, std::size_t workers) {
      for (std::size_t j = worker; j < cfg.restarts; j += workers) {
        try {
          sr.restarts[j] = run_restart(dataset, objective, *seeder, cfg, bounds, stage, j);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      }
    };
    const std::size_t workers = std::clamp<std::size_t>(cfg.jobs, 1, cfg.restarts);
    if (workers == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    sr.floor_candidate = floor_candidate;
    sr.floor_h_hard = objective.hard_entropy(floor_candidate);
    sr.chosen = floor_candidate;
    sr.h_after = sr.floor_h_hard;
    for (std::size_t j = 0; j < cfg.restarts; ++j) {
      const auto& r = sr.restarts[j];
      if (!sr.chosen_restart ? r.h_hard <= sr.h_after : r.h_hard < sr.h_after) {
        sr.chosen_restart = j;
        sr.chosen = r.result;
        sr.h_after = r.h_hard;
      }
    }
    sr.ig_stage = sr.h_before - sr.h_after;
    sr.ig_total = report.h_reward - sr.h_after;

    const bool stop = cfg.ig_floor && sr.ig_stage < *cfg.ig_floor;
    if (!stop) {
      report.regions.push_back(sr.chosen);
      h_current = sr.h_after;
    }
    report.stages.push_back(std::move(sr));
    if (stop) {
      report.early_stop = true;
      break;
    }
  }

  report.h_final = h_current;
  report.no_structure = report.h_reward - report.h_final < cfg.no_structure_ig;
  return report;
}

} // namespace trajregion

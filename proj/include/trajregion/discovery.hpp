#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trajregion/kde_init.hpp"
#include "trajregion/optimizer.hpp"

namespace trajregion {

struct DiscoveryConfig {
  std::size_t m = 1;
  std::size_t restarts = 8;
  InitConfig init;
  OptimizerConfig opt;
  std::uint64_t seed = 0;
  /// Worker threads for restarts within a stage. Results do not depend on it.
  std::size_t jobs = 1;
  /// When set, stop before appending a stage whose information gain is
  /// below this many nats.
  std::optional<double> ig_floor;
  /// Total information gain (nats) under which the report flags no structure.
  double no_structure_ig = 0.05;
  /// Initial radii are drawn uniformly from [min, fraction * max] of the
  /// admissible radius bounds.
  double init_radius_fraction = 0.1;
  /// Follow each restart with an exact radius line search at its best center.
  bool refine_radius = true;
  bool keep_traces = true;
};

struct RestartSummary {
  std::size_t index = 0;
  Region init;
  double init_density = 0.0;
  OptimizerSettings settings;
  Region result;
  double h_hard = 0.0;
  std::size_t best_step = 0;
  std::size_t steps = 0;
  double final_h_soft = 0.0;
  double final_h_hard = 0.0;
  double final_alpha = 0.0;
  OptimTrace trace;
};

struct StageReport {
  std::size_t stage = 0;  ///< 1-based
  double h_before = 0.0;
  double h_after = 0.0;
  double ig_stage = 0.0;  ///< h_before - h_after
  double ig_total = 0.0;  ///< H(R) - h_after
  /// Index into restarts, or empty when the always-on floor candidate won.
  std::optional<std::size_t> chosen_restart;
  Region chosen;
  Region floor_candidate;
  double floor_h_hard = 0.0;
  std::size_t seed_pool = 0;
  double seed_bandwidth = 0.0;
  std::vector<RestartSummary> restarts;
};

struct DiscoveryReport {
  std::vector<Region> regions;
  std::vector<StageReport> stages;
  double h_reward = 0.0;
  double h_final = 0.0;
  bool early_stop = false;
  bool no_structure = false;
  std::vector<std::size_t> success_labels;
};

/// Finds up to cfg.m regions one at a time. Each stage runs cfg.restarts
/// KDE-seeded optimizations with the earlier regions frozen as hard
/// indicators and keeps the candidate with the lowest hard conditional
/// entropy. An always-on region (dataset centroid, maximal radius) is scored
/// alongside the restarts, so the entropy never increases across stages.
DiscoveryReport discover(const Dataset& dataset, const RewardAlphabet& labels, const DiscoveryConfig& cfg);

} // namespace trajregion

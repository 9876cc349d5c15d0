#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trajregion/rng.hpp"
#include "trajregion/trajectory.hpp"

namespace trajregion {

struct InitConfig {
  std::size_t n_samples = 16;
  /// Explicit Gaussian bandwidth; Scott's rule when empty.
  std::optional<double> bandwidth;
  /// Alphabet indices counted as success. Empty selects every label except
  /// the most frequent one.
  std::vector<std::size_t> success_labels;
  /// Draw candidates with probability proportional to their density instead
  /// of uniformly.
  bool weighted_sampling = false;
  std::uint64_t rng_seed = 0;
};

/// Gaussian KDE, (1 / (N (2 pi)^(d/2) b^d)) sum_i exp(-|q - p_i|^2 / (2 b^2)).
double kde_density(std::span<const State> points, double bandwidth, std::span<const double> query);

/// Scott's rule b = N^(-1/(d+4)) * mean per-dimension standard deviation.
double scott_bandwidth(std::span<const State> points);

/// All labels except the most frequent (lowest index wins a frequency tie).
std::vector<std::size_t> default_success_labels(const RewardAlphabet& labels);

struct SeedCandidate {
  State state;
  double density = 0.0;
  std::size_t trajectory = 0;
  std::size_t step = 0;
};

struct CenterProposal {
  State center;
  std::vector<SeedCandidate> ranked;  ///< highest density first
  double bandwidth = 0.0;
};

/// Holds the success-state evidence and candidate pool for one discovery
/// stage so that several restarts can draw from it.
class KdeSeeder {
public:
  KdeSeeder(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> found,
            const InitConfig& cfg);

  /// Samples candidates with `rng` and ranks them by density.
  CenterProposal propose(Rng& rng) const;

  std::size_t pool_size() const { return pool_.size(); }
  double bandwidth() const { return bandwidth_; }
  std::span<const State> evidence() const { return evidence_; }

private:
  std::vector<State> evidence_;
  std::vector<SeedCandidate> pool_;
  std::vector<double> pool_density_;
  std::size_t n_samples_;
  bool weighted_;
  double bandwidth_ = 0.0;
};

/// One-shot form of KdeSeeder using cfg.rng_seed.
CenterProposal sample_center(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> found,
                             const InitConfig& cfg);

} // namespace trajregion

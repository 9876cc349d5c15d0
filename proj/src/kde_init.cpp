#include "trajregion/kde_init.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace trajregion {

double kde_density(std::span<const State> points, double bandwidth, std::span<const double> query) {
  if (points.empty()) throw Error(ErrorCode::invalid_parameter, "KDE needs at least one point");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw Error(ErrorCode::invalid_parameter, "KDE bandwidth must be positive");
  const std::size_t d = query.size();
  const double inv_2b2 = 1.0 / (2.0 * bandwidth * bandwidth);
  double sum = 0.0;
  for (const auto& p : points) {
    if (p.size() != d)
      throw Error(ErrorCode::dimension_mismatch, "KDE point dimension does not match the query");
    double d2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) d2 += (query[k] - p[k]) * (query[k] - p[k]);
    sum += std::exp(-d2 * inv_2b2);
  }
  const double norm = static_cast<double>(points.size()) *
                      std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(d)) *
                      std::pow(bandwidth, static_cast<double>(d));
  return sum / norm;
}

double scott_bandwidth(std::span<const State> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_parameter, "bandwidth rule needs at least one point");
  const std::size_t d = points.front().size();
  const double n = static_cast<double>(points.size());
  double sigma = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double mean = 0.0;
    for (const auto& p : points) mean += p[k];
    mean /= n;
    double var = 0.0;
    for (const auto& p : points) var += (p[k] - mean) * (p[k] - mean);
    sigma += points.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  }
  sigma /= static_cast<double>(d);
  return std::pow(n, -1.0 / (static_cast<double>(d) + 4.0)) * sigma;
}

std::vector<std::size_t> default_success_labels(const RewardAlphabet& labels) {
  const auto freq = labels.frequencies();
  const auto common = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (k != common) out.push_back(k);
  return out;
}

KdeSeeder::KdeSeeder(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> found,
                     const InitConfig& cfg)
    : n_samples_(cfg.n_samples), weighted_(cfg.weighted_sampling) {
  if (cfg.n_samples == 0) throw Error(ErrorCode::invalid_parameter, "init.n_samples must be at least 1");
  if (cfg.bandwidth && !(*cfg.bandwidth > 0.0))
    throw Error(ErrorCode::invalid_parameter, "init.bandwidth must be positive");
  if (labels.count() != dataset.size())
    throw Error(ErrorCode::invalid_parameter, "reward labels do not match the dataset");
  for (const auto& r : found) check_region(r, dataset.dim());

  const auto success = cfg.success_labels.empty() ? default_success_labels(labels) : cfg.success_labels;
  std::vector<bool> is_success(labels.size(), false);
  for (auto k : success) {
    if (k >= labels.size()) throw Error(ErrorCode::invalid_parameter, "success label out of range");
    is_success[k] = true;
  }

  for (std::size_t l = 0; l < dataset.size(); ++l) {
    if (!is_success[labels.label_of[l]]) continue;
    const auto& traj = dataset[l];
    for (std::size_t h = 0; h < traj.states.size(); ++h) {
      evidence_.push_back(traj.states[h]);
      const bool excluded = std::any_of(found.begin(), found.end(), [&](const Region& r) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < r.center.size(); ++k)
          d2 += (traj.states[h][k] - r.center[k]) * (traj.states[h][k] - r.center[k]);
        return d2 <= r.radius * r.radius;
      });
      if (!excluded) pool_.push_back({traj.states[h], 0.0, l, h});
    }
  }
  if (evidence_.empty())
    throw Error(ErrorCode::seeding_failure, "no success set for KDE seeding");
  if (pool_.empty())
    throw Error(ErrorCode::seeding_failure,
                "every success state lies inside a found region; use smaller found-region radii "
                "or different success labels");

  bandwidth_ = cfg.bandwidth ? *cfg.bandwidth : scott_bandwidth(evidence_);
  if (!(bandwidth_ > 0.0)) bandwidth_ = 1.0;  // all evidence coincides; ranking is flat anyway

  if (weighted_) {
    pool_density_.reserve(pool_.size());
    for (const auto& c : pool_) pool_density_.push_back(kde_density(evidence_, bandwidth_, c.state));
  }
}

CenterProposal KdeSeeder::propose(Rng& rng) const {
  const std::size_t n = pool_.size();
  const std::size_t take = std::min(n_samples_, n);
  std::vector<std::size_t> picked;

  if (take == n) {
    picked.resize(n);
    std::iota(picked.begin(), picked.end(), std::size_t{0});
  } else if (weighted_) {
    // Efraimidis-Spirakis: keep the `take` largest ln(u) / w.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, std::size_t>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = std::max(unit(rng), 1e-300);
      const double w = pool_density_[i];
      keys[i] = {w > 0.0 ? std::log(u) / w : -HUGE_VAL, i};
    }
    std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(take), keys.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t i = 0; i < take; ++i) picked.push_back(keys[i].second);
  } else {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    picked.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
  }

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(picked.size());
  for (auto i : picked)
    scored.emplace_back(weighted_ ? pool_density_[i] : kde_density(evidence_, bandwidth_, pool_[i].state), i);
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });

  CenterProposal out;
  out.bandwidth = bandwidth_;
  out.ranked.reserve(scored.size());
  for (const auto& [density, i] : scored) {
    auto c = pool_[i];
    c.density = density;
    out.ranked.push_back(std::move(c));
  }
  out.center = out.ranked.front().state;
  return out;
}

CenterProposal sample_center(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> found,
                             const InitConfig& cfg) {
  Rng rng(cfg.rng_seed);
  return KdeSeeder(dataset, labels, found, cfg).propose(rng);
}

} // namespace trajregion

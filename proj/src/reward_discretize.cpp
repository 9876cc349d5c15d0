#include "trajregion/reward_discretize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace trajregion {

namespace {

// Nearest center; ties go to the lower index so labels stay monotone.
std::size_t nearest(const std::vector<double>& centers, double x) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < centers.size(); ++c)
    if (std::abs(x - centers[c]) < std::abs(x - centers[best])) best = c;
  return best;
}

} // namespace

RewardAlphabet discretize_rewards(std::span<const double> rewards, std::size_t k) {
  if (rewards.empty()) throw Error(ErrorCode::invalid_parameter, "no rewards to discretize");
  if (k == 0) throw Error(ErrorCode::invalid_parameter, "reward cluster count must be at least 1");
  for (double r : rewards)
    if (!std::isfinite(r)) throw Error(ErrorCode::invalid_parameter, "non-finite reward");

  std::vector<double> distinct(rewards.begin(), rewards.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (k > distinct.size())
    throw Error(ErrorCode::invalid_parameter,
                "requested " + std::to_string(k) + " reward clusters but only " +
                    std::to_string(distinct.size()) + " distinct reward values exist");

  RewardAlphabet out;
  if (k == distinct.size()) {
    out.values = distinct;
    out.label_of.reserve(rewards.size());
    for (double r : rewards)
      out.label_of.push_back(static_cast<std::size_t>(
          std::lower_bound(distinct.begin(), distinct.end(), r) - distinct.begin()));
    return out;
  }

  std::vector<double> centers(k);
  const std::size_t n = distinct.size();
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t idx = k == 1 ? (n - 1) / 2 : (c * (n - 1) + (k - 1) / 2) / (k - 1);
    centers[c] = distinct[idx];
  }

  // Iterate on the sorted values so the sums, and hence the centers, do not
  // depend on trajectory order.
  std::vector<double> sorted(rewards.begin(), rewards.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> assign(sorted.size(), k);
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const std::size_t c = nearest(centers, sorted[i]);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<double> sum(k, 0.0);
    std::vector<std::size_t> cnt(k, 0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      sum[assign[i]] += sorted[i];
      ++cnt[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c)
      if (cnt[c] > 0) centers[c] = sum[c] / static_cast<double>(cnt[c]);
  }

  // Relabel by ascending center.
  std::vector<std::size_t> order(k);
  for (std::size_t c = 0; c < k; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return centers[a] < centers[b]; });
  std::vector<std::size_t> rank(k);
  for (std::size_t r = 0; r < k; ++r) rank[order[r]] = r;
  out.values.resize(k);
  for (std::size_t c = 0; c < k; ++c) out.values[rank[c]] = centers[c];
  out.label_of.reserve(rewards.size());
  for (double r : rewards) out.label_of.push_back(rank[nearest(centers, r)]);
  return out;
}

} // namespace trajregion

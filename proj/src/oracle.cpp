#include "trajregion/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace trajregion {

namespace {

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

} // namespace

std::vector<State> all_states(const Dataset& dataset) {
  std::vector<State> out;
  out.reserve(dataset.total_states());
  for (const auto& t : dataset.trajectories())
    for (const auto& s : t.states) out.push_back(s);
  return out;
}

std::vector<double> geometric_radii(const RadiusBounds& bounds, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::invalid_parameter, "need at least one radius");
  if (!(bounds.min > 0.0 && bounds.max >= bounds.min))
    throw Error(ErrorCode::invalid_parameter, "radius bounds must satisfy 0 < min <= max");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = bounds.max;
    return out;
  }
  const double ratio = std::log(bounds.max / bounds.min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = bounds.min * std::exp(ratio * static_cast<double>(i));
  out.back() = bounds.max;
  return out;
}

GridResult grid_search(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen,
                       std::vector<State> centers, std::vector<double> radii, std::size_t jobs) {
  if (centers.empty() || radii.empty())
    throw Error(ErrorCode::invalid_parameter, "grid search needs at least one center and one radius");
  if (labels.count() != dataset.size())
    throw Error(ErrorCode::invalid_parameter, "reward labels do not match the dataset");
  for (const auto& c : centers)
    if (c.size() != dataset.dim()) throw Error(ErrorCode::dimension_mismatch, "grid center dimension mismatch");
  for (double r : radii)
    if (!(r > 0.0)) throw Error(ErrorCode::invalid_parameter, "grid radii must be positive");

  const auto frozen_m = hard_memberships(dataset, frozen);
  const std::size_t L = dataset.size();
  const std::size_t K = labels.size();
  const std::size_t bit = std::size_t{1} << frozen.size();
  std::vector<std::size_t> base(L, 0);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < frozen.size(); ++j)
      if (frozen_m(l, j) > 0.5) base[l] |= std::size_t{1} << j;

  GridResult res;
  res.centers = std::move(centers);
  res.radii = std::move(radii);
  const std::size_t R = res.radii.size();
  res.table.assign(res.centers.size() * R, 0.0);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> d2(L);
    std::vector<double> counts(2 * bit * K);
    for (std::size_t c = begin; c < end; ++c) {
      for (std::size_t l = 0; l < L; ++l) d2[l] = min_sq_dist(dataset[l], res.centers[c]).dist2;
      for (std::size_t r = 0; r < R; ++r) {
        const double r2 = res.radii[r] * res.radii[r];
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::size_t l = 0; l < L; ++l)
          counts[(base[l] | (d2[l] <= r2 ? bit : 0)) * K + labels.label_of[l]] += 1.0;
        double h = 0.0;
        for (std::size_t a = 0; a < 2 * bit; ++a) {
          double pa = 0.0;
          for (std::size_t k = 0; k < K; ++k) {
            const double p = counts[a * K + k] / static_cast<double>(L);
            pa += p;
            h -= xlogx(p);
          }
          h += xlogx(pa);
        }
        res.table[c * R + r] = std::max(h, 0.0);
      }
    }
  };

  const std::size_t n = res.centers.size();
  jobs = std::clamp<std::size_t>(jobs, 1, n);
  if (jobs == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j * n / jobs, (j + 1) * n / jobs);
    for (auto& t : pool) t.join();
  }

  // Ties go to the smallest candidate by value (center lexicographically,
  // then radius), so the answer does not depend on enumeration order.
  std::size_t idx = 0;
  for (std::size_t i = 1; i < res.table.size(); ++i) {
    if (res.table[i] > res.table[idx]) continue;
    if (res.table[i] < res.table[idx]) {
      idx = i;
      continue;
    }
    const auto& ci = res.centers[i / R];
    const auto& cb = res.centers[idx / R];
    if (ci < cb || (ci == cb && res.radii[i % R] < res.radii[idx % R])) idx = i;
  }
  res.best_h_hard = res.table[idx];
  res.best_center = idx / R;
  res.best_radius = idx % R;
  res.best = Region{res.centers[res.best_center], res.radii[res.best_radius]};
  return res;
}

GridResult grid_search(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen,
                       std::size_t jobs) {
  return grid_search(dataset, labels, frozen, all_states(dataset),
                     geometric_radii(RadiusBounds::for_dataset(dataset), 32), jobs);
}

} // namespace trajregion

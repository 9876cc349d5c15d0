#include "trajregion/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace trajregion {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace

Dataset::Dataset(std::vector<Trajectory> trajectories, std::size_t dim)
    : trajectories_(std::move(trajectories)), dim_(dim) {
  if (dim_ == 0)
    throw Error(ErrorCode::invalid_parameter, "state dimension must be at least 1");
  if (trajectories_.empty())
    throw Error(ErrorCode::invalid_parameter, "dataset has no trajectories");

  std::unordered_set<std::string> seen;
  for (const auto& t : trajectories_) {
    if (!seen.insert(t.id).second)
      throw Error(ErrorCode::bad_schema, "duplicate trajectory id '" + t.id + "'");
    if (t.states.empty())
      throw Error(ErrorCode::bad_schema, "trajectory '" + t.id + "' has no states");
    if (!std::isfinite(t.reward))
      throw Error(ErrorCode::bad_schema, "trajectory '" + t.id + "' has a non-finite reward");
    for (const auto& s : t.states) {
      if (s.size() != dim_)
        throw Error(ErrorCode::dimension_mismatch,
                    "trajectory '" + t.id + "' has a state of dimension " +
                        std::to_string(s.size()) + ", expected " + std::to_string(dim_));
      if (!all_finite(s))
        throw Error(ErrorCode::bad_schema, "trajectory '" + t.id + "' has a non-finite coordinate");
    }
  }
}

std::vector<double> Dataset::rewards() const {
  std::vector<double> out;
  out.reserve(trajectories_.size());
  for (const auto& t : trajectories_) out.push_back(t.reward);
  return out;
}

std::size_t Dataset::total_states() const {
  std::size_t n = 0;
  for (const auto& t : trajectories_) n += t.states.size();
  return n;
}

double Dataset::workspace_diameter() const {
  State lo(dim_, std::numeric_limits<double>::infinity());
  State hi(dim_, -std::numeric_limits<double>::infinity());
  for (const auto& t : trajectories_)
    for (const auto& s : t.states)
      for (std::size_t k = 0; k < dim_; ++k) {
        lo[k] = std::min(lo[k], s[k]);
        hi[k] = std::max(hi[k], s[k]);
      }
  double d2 = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) d2 += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  return std::sqrt(d2);
}

State Dataset::centroid() const {
  State c(dim_, 0.0);
  std::size_t n = 0;
  for (const auto& t : trajectories_)
    for (const auto& s : t.states) {
      for (std::size_t k = 0; k < dim_; ++k) c[k] += s[k];
      ++n;
    }
  for (auto& x : c) x /= static_cast<double>(n);
  return c;
}

std::vector<std::size_t> RewardAlphabet::frequencies() const {
  std::vector<std::size_t> f(values.size(), 0);
  for (auto k : label_of) ++f[k];
  return f;
}

NearestState min_sq_dist(const Trajectory& traj, std::span<const double> center) {
  NearestState best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t h = 0; h < traj.states.size(); ++h) {
    const auto& s = traj.states[h];
    if (s.size() != center.size())
      throw Error(ErrorCode::dimension_mismatch,
                  "trajectory '" + traj.id + "': state dimension " + std::to_string(s.size()) +
                      " does not match center dimension " + std::to_string(center.size()));
    double d2 = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double diff = s[k] - center[k];
      d2 += diff * diff;
    }
    if (d2 < best.dist2) best = {d2, h};
  }
  return best;
}

int hard_membership(const Trajectory& traj, const Region& region) {
  return min_sq_dist(traj, region.center).dist2 <= region.radius * region.radius ? 1 : 0;
}

double relaxed_indicator(double gap, double alpha) {
  const double e = std::clamp(alpha * gap, -kSigmoidExponentClamp, kSigmoidExponentClamp);
  return 1.0 / (1.0 + std::exp(e));
}

double soft_membership(const Trajectory& traj, const Region& region, double alpha) {
  if (!(alpha > 0.0))
    throw Error(ErrorCode::invalid_parameter, "sharpness alpha must be positive");
  const double gap = min_sq_dist(traj, region.center).dist2 - region.radius * region.radius;
  return relaxed_indicator(gap, alpha);
}

void check_region(const Region& region, std::size_t dim) {
  if (region.center.size() != dim)
    throw Error(ErrorCode::dimension_mismatch,
                "region center has dimension " + std::to_string(region.center.size()) +
                    ", expected " + std::to_string(dim));
  if (!all_finite(region.center) || !std::isfinite(region.radius) || !(region.radius > 0.0))
    throw Error(ErrorCode::invalid_parameter, "region needs a finite center and a positive radius");
}

} // namespace trajregion

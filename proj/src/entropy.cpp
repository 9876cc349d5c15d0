#include "trajregion/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace trajregion {

namespace {

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

// Conditional entropy over raw cells laid out as [assignment][reward].
double conditional_entropy_cells(std::span<const double> cells, std::size_t rewards) {
  double h = 0.0;
  for (std::size_t base = 0; base < cells.size(); base += rewards) {
    double pa = 0.0;
    double inner = 0.0;
    for (std::size_t k = 0; k < rewards; ++k) {
      pa += cells[base + k];
      inner += xlogx(cells[base + k]);
    }
    h += xlogx(pa) - inner;
  }
  return std::max(h, 0.0);
}

void check_labels(const Dataset& dataset, const RewardAlphabet& labels) {
  if (labels.count() != dataset.size())
    throw Error(ErrorCode::invalid_parameter,
                "reward labels cover " + std::to_string(labels.count()) + " trajectories, dataset has " +
                    std::to_string(dataset.size()));
}

} // namespace

JointTable estimate_joint(const MembershipMatrix& memberships, const RewardAlphabet& labels) {
  const std::size_t L = memberships.rows();
  if (L == 0) throw Error(ErrorCode::invalid_parameter, "membership matrix has no rows");
  if (L != labels.count())
    throw Error(ErrorCode::invalid_parameter,
                "membership matrix has " + std::to_string(L) + " rows but " +
                    std::to_string(labels.count()) + " labels were given");

  JointTable t;
  t.vars = memberships.cols();
  t.rewards = labels.size();
  const std::size_t A = t.assignments();
  t.probs.assign(A * t.rewards, 0.0);

  const double inv_l = 1.0 / static_cast<double>(L);
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t k = labels.label_of[l];
    for (std::size_t a = 0; a < A; ++a) {
      double w = 1.0;
      for (std::size_t j = 0; j < t.vars && w != 0.0; ++j) {
        const double m = memberships(l, j);
        w *= (a >> j) & 1u ? m : 1.0 - m;
      }
      t.probs[a * t.rewards + k] += w;
    }
  }
  for (auto& p : t.probs) p *= inv_l;

  t.marginal_reward.assign(t.rewards, 0.0);
  t.marginal_assignment.assign(A, 0.0);
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t k = 0; k < t.rewards; ++k) {
      t.marginal_assignment[a] += t.at(a, k);
      t.marginal_reward[k] += t.at(a, k);
    }
  return t;
}

double conditional_entropy(const JointTable& table) {
  return conditional_entropy_cells(table.probs, table.rewards);
}

double joint_entropy(const JointTable& table) {
  double h = 0.0;
  for (double p : table.probs) h -= xlogx(p);
  return h;
}

double assignment_entropy(const JointTable& table) {
  double h = 0.0;
  for (double p : table.marginal_assignment) h -= xlogx(p);
  return h;
}

double single_variable_conditional_entropy(const JointTable& table) {
  if (table.vars != 1)
    throw Error(ErrorCode::invalid_parameter, "single-variable form needs exactly one membership variable");
  double h = 0.0;
  for (std::size_t k = 0; k < table.rewards; ++k)
    for (std::size_t mu = 0; mu < 2; ++mu) {
      const double joint = table.at(mu, k);
      if (joint > 0.0) h -= joint * std::log(joint / table.marginal_assignment[mu]);
    }
  return h;
}

double marginal_entropy(const RewardAlphabet& labels) {
  if (labels.count() == 0) return 0.0;
  const double inv_l = 1.0 / static_cast<double>(labels.count());
  double h = 0.0;
  for (auto f : labels.frequencies()) h -= xlogx(static_cast<double>(f) * inv_l);
  return h;
}

double information_gain(const RewardAlphabet& labels, const JointTable& table) {
  return marginal_entropy(labels) - conditional_entropy(table);
}

MembershipMatrix hard_memberships(const Dataset& dataset, std::span<const Region> regions) {
  MembershipMatrix m(dataset.size(), regions.size());
  for (std::size_t j = 0; j < regions.size(); ++j) {
    check_region(regions[j], dataset.dim());
    for (std::size_t l = 0; l < dataset.size(); ++l) m(l, j) = hard_membership(dataset[l], regions[j]);
  }
  return m;
}

double hard_conditional_entropy(const Dataset& dataset, const RewardAlphabet& labels,
                                std::span<const Region> regions) {
  check_labels(dataset, labels);
  return conditional_entropy(estimate_joint(hard_memberships(dataset, regions), labels));
}

RegionObjective::RegionObjective(const Dataset& dataset, const RewardAlphabet& labels,
                                 std::span<const Region> frozen)
    : dataset_(dataset), labels_(labels), frozen_count_(frozen.size()) {
  check_labels(dataset, labels);
  frozen_assignment_.assign(dataset.size(), 0);
  for (std::size_t j = 0; j < frozen.size(); ++j) {
    check_region(frozen[j], dataset.dim());
    for (std::size_t l = 0; l < dataset.size(); ++l)
      if (hard_membership(dataset[l], frozen[j])) frozen_assignment_[l] |= std::size_t{1} << j;
  }
  const std::size_t K = labels.size();
  std::vector<double> cells((std::size_t{1} << frozen_count_) * K, 0.0);
  for (std::size_t l = 0; l < dataset.size(); ++l) cells[frozen_assignment_[l] * K + labels.label_of[l]] += 1.0;
  for (auto& c : cells) c /= static_cast<double>(dataset.size());
  frozen_entropy_ = conditional_entropy_cells(cells, K);
  reward_entropy_ = marginal_entropy(labels);
}

double RegionObjective::hard_entropy(const Region& free) const {
  check_region(free, dataset_.dim());
  const std::size_t K = labels_.size();
  const std::size_t bit = std::size_t{1} << frozen_count_;
  std::vector<double> cells(2 * bit * K, 0.0);
  const double r2 = free.radius * free.radius;
  for (std::size_t l = 0; l < dataset_.size(); ++l) {
    const bool inside = min_sq_dist(dataset_[l], free.center).dist2 <= r2;
    cells[(frozen_assignment_[l] | (inside ? bit : 0)) * K + labels_.label_of[l]] += 1.0;
  }
  for (auto& c : cells) c /= static_cast<double>(dataset_.size());
  return conditional_entropy_cells(cells, K);
}

ObjectiveValue RegionObjective::evaluate(const Region& free, double alpha) const {
  if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_parameter, "sharpness alpha must be positive");
  check_region(free, dataset_.dim());

  const std::size_t L = dataset_.size();
  const std::size_t K = labels_.size();
  const std::size_t d = dataset_.dim();
  const std::size_t bit = std::size_t{1} << frozen_count_;
  const double r2 = free.radius * free.radius;
  const double inv_l = 1.0 / static_cast<double>(L);

  std::vector<NearestState> nearest(L);
  std::vector<double> g(L);
  std::vector<double> soft(2 * bit * K, 0.0);
  std::vector<double> hard(2 * bit * K, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    nearest[l] = min_sq_dist(dataset_[l], free.center);
    const double gap = nearest[l].dist2 - r2;
    g[l] = relaxed_indicator(gap, alpha);
    const std::size_t k = labels_.label_of[l];
    const std::size_t base = frozen_assignment_[l];
    soft[(base | bit) * K + k] += g[l];
    soft[base * K + k] += 1.0 - g[l];
    hard[(base | (gap <= 0.0 ? bit : 0)) * K + k] += 1.0;
  }
  for (auto& c : soft) c *= inv_l;
  for (auto& c : hard) c *= inv_l;

  ObjectiveValue out;
  out.h_soft = conditional_entropy_cells(soft, K);
  out.h_hard = conditional_entropy_cells(hard, K);
  out.degenerate_labels = reward_entropy_ == 0.0;
  out.grad_center.assign(d, 0.0);

  std::vector<double> assignment_mass(2 * bit, 0.0);
  for (std::size_t a = 0; a < 2 * bit; ++a)
    for (std::size_t k = 0; k < K; ++k) assignment_mass[a] += soft[a * K + k];

  // dH/dP(a,k) = ln P(a) - ln P(a,k); g moves mass from (base,k) to (base|bit,k).
  for (std::size_t l = 0; l < L; ++l) {
    const double gap = nearest[l].dist2 - r2;
    if (std::abs(alpha * gap) >= kSigmoidExponentClamp) continue;
    const double slope = alpha * g[l] * (1.0 - g[l]);  // -dg/dgap
    if (slope == 0.0) continue;
    const std::size_t k = labels_.label_of[l];
    const std::size_t in = frozen_assignment_[l] | bit;
    const std::size_t out_cell = frozen_assignment_[l];
    const double d_in = std::log(assignment_mass[in]) - std::log(soft[in * K + k]);
    const double d_out = std::log(assignment_mass[out_cell]) - std::log(soft[out_cell * K + k]);
    const double dh_dg = inv_l * (d_in - d_out);
    const auto& z = dataset_[l].states[nearest[l].index];
    for (std::size_t c = 0; c < d; ++c) out.grad_center[c] += dh_dg * (-slope) * 2.0 * (free.center[c] - z[c]);
    out.grad_radius += dh_dg * slope * 2.0 * free.radius;
  }
  return out;
}

ObjectiveValue objective_with_gradient(const Dataset& dataset, const RewardAlphabet& labels,
                                       std::span<const Region> frozen, const Region& free, double alpha) {
  return RegionObjective(dataset, labels, frozen).evaluate(free, alpha);
}

} // namespace trajregion

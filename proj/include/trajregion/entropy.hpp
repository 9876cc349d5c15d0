#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trajregion/trajectory.hpp"

namespace trajregion {

/// L x m membership values in [0, 1]; row l is trajectory l, column j is
/// hidden variable j.
class MembershipMatrix {
public:
  MembershipMatrix() = default;
  MembershipMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t l, std::size_t j) const { return v_[l * cols_ + j]; }
  double& operator()(std::size_t l, std::size_t j) { return v_[l * cols_ + j]; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

/// Joint distribution over membership assignments x reward labels.
///
/// Assignment index a encodes mu_j in bit j. Cells are stored densely,
/// `probs[a * rewards + k]`, so m is expected to stay small (<= ~16).
struct JointTable {
  std::size_t vars = 0;
  std::size_t rewards = 0;
  std::vector<double> probs;
  std::vector<double> marginal_reward;
  std::vector<double> marginal_assignment;

  std::size_t assignments() const { return std::size_t{1} << vars; }
  double at(std::size_t assignment, std::size_t k) const { return probs[assignment * rewards + k]; }
};

/// Frequency estimate P(mu, r_k) = 1/L sum_{l: label k} prod_j m_lj^mu_j (1 - m_lj)^(1 - mu_j).
JointTable estimate_joint(const MembershipMatrix& memberships, const RewardAlphabet& labels);

/// H(R | M^1..M^m) in nats, as sum_mu [P(mu) ln P(mu) - sum_k P(mu,k) ln P(mu,k)].
double conditional_entropy(const JointTable& table);

/// H(M^1..M^m, R) in nats.
double joint_entropy(const JointTable& table);

/// H(M^1..M^m) in nats.
double assignment_entropy(const JointTable& table);

/// Two-term single-variable form, -sum_k sum_mu P(mu,k) ln(P(mu,k) / P(mu)).
/// Requires table.vars == 1.
double single_variable_conditional_entropy(const JointTable& table);

/// H(R) in nats from label frequencies.
double marginal_entropy(const RewardAlphabet& labels);

double information_gain(const RewardAlphabet& labels, const JointTable& table);

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

/// Hard 0/1 memberships of every trajectory in every region.
MembershipMatrix hard_memberships(const Dataset& dataset, std::span<const Region> regions);

/// H(R | M^1..M^m) with hard indicators for all regions.
double hard_conditional_entropy(const Dataset& dataset, const RewardAlphabet& labels,
                                std::span<const Region> regions);

struct ObjectiveValue {
  double h_soft = 0.0;  ///< relaxed H(R | frozen, free) at the given alpha
  double h_hard = 0.0;  ///< same with the free region's hard indicator
  State grad_center;    ///< dh_soft / dC
  double grad_radius = 0.0;  ///< dh_soft / d(radius)
  bool degenerate_labels = false;  ///< H(R) = 0, objective is constant
};

/// Relaxed conditional-entropy objective for one free region given frozen
/// (hard) regions. Frozen assignments are computed once at construction;
/// evaluate() is const and safe to call from several threads.
class RegionObjective {
public:
  RegionObjective(const Dataset& dataset, const RewardAlphabet& labels, std::span<const Region> frozen);

  ObjectiveValue evaluate(const Region& free, double alpha) const;
  double hard_entropy(const Region& free) const;
  /// H(R | frozen regions only).
  double frozen_entropy() const { return frozen_entropy_; }
  double reward_entropy() const { return reward_entropy_; }

private:
  const Dataset& dataset_;
  const RewardAlphabet& labels_;
  std::size_t frozen_count_;
  std::vector<std::size_t> frozen_assignment_;
  double frozen_entropy_ = 0.0;
  double reward_entropy_ = 0.0;
};

ObjectiveValue objective_with_gradient(const Dataset& dataset, const RewardAlphabet& labels,
                                       std::span<const Region> frozen, const Region& free, double alpha);

} // namespace trajregion

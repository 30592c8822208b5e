#pragma once

// Linear pieces of the non-convex normalization constraint on c. The
// inverse LPs are solved once per piece and the best piece wins.

#include "lp.hpp"
#include "model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace invlp {

struct NormBranch {
  std::string label;
  Eigen::VectorXd lower;  // bounds on c
  Eigen::VectorXd upper;
  std::optional<Eigen::VectorXd> sum_coeffs;  // s'c (rel) sum_rhs
  Relation sum_relation = Relation::Equal;
  double sum_rhs = 1.0;
};

/// Pieces of ||c||' = 1 when `at_least` is empty, or of ||c||' >= K when it
/// holds K. Honors the nonnegativity flag and support mask in `cfg`.
std::vector<NormBranch> normalization_branches(Eigen::Index n, const SolverConfig& cfg,
                                               std::optional<double> at_least = std::nullopt);

/// Copies the branch's bounds and side row onto the c block [offset, offset+n).
void apply_branch(LpProblem& lp, const NormBranch& branch, Eigen::Index offset);

/// Bounds on c implied by the mask and sign restriction alone.
void apply_cost_restrictions(LpProblem& lp, const SolverConfig& cfg, Eigen::Index offset, Eigen::Index n);

/// Throws InvalidArgument if the mask has the wrong length or selects nothing.
void check_mask(const SolverConfig& cfg, Eigen::Index n);

inline bool masked_out(const SolverConfig& cfg, Eigen::Index j) {
  return cfg.support_mask && !(*cfg.support_mask)[static_cast<std::size_t>(j)];
}

/// Largest n for which the 1-norm orthant enumeration is attempted.
inline constexpr Eigen::Index kMaxOrthantDim = 16;

}  // namespace invlp

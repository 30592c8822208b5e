#pragma once

// Relative duality gap: min sum_q |c'x_q / b'y - 1| over A'y = c, y >= 0,
// ||c||' = 1, with eps_q = 1 whenever b'y = 0.

#include "model.hpp"

#include <optional>

namespace invlp {

enum class RdgKind { Plus, Minus, Zero };
const char* to_string(RdgKind kind);

struct RelaxationResult {
  RdgKind winner = RdgKind::Plus;
  double value = 0.0;
  Eigen::VectorXd c;  // unnormalized, possibly zero
  Eigen::VectorXd y;
  std::size_t lp_calls = 0;
};

struct AuxResult {
  bool unbounded = false;
  double k_star = 0.0;  // valid when !unbounded
  std::size_t lp_calls = 0;
};

/// Dispatcher: fast paths first, then the relaxation/K* pipeline. Throws
/// BIsZero when b = 0.
FitResult solve_rdg(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg = {});

/// Relaxation first, then K*-bounded sub-problems (or the delta heuristic).
FitResult solve_rdg_general(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg = {});

/// The three sub-problems with the normalization dropped. Infeasible kinds
/// score +inf; throws AllBranchesInfeasible when all three are.
RelaxationResult solve_rdg_relaxations(const ForwardProblem& fp, const EnsembleData& data,
                                       const SolverConfig& cfg = {});

/// K* = 1 / max{b'y, -b'y, 1'y : ||A'y||' = 1, y >= 0}.
AuxResult solve_aux_K(const ForwardProblem& fp, const SolverConfig& cfg = {});

/// Sub-problems with ||c||' >= K imposed piecewise; winner normalized.
FitResult solve_rdg_subproblems(const ForwardProblem& fp, const EnsembleData& data, double K,
                                const SolverConfig& cfg = {});

/// eps_q = c'x_q / b'y (1 when |b'y| <= 1e-12).
Eigen::VectorXd rdg_eps(const ForwardProblem& fp, const EnsembleData& data, const Eigen::VectorXd& c,
                        const Eigen::VectorXd& y);

/// sum_q |eps_q - 1| for an arbitrary (c, y).
double rdg_loss(const ForwardProblem& fp, const EnsembleData& data, const Eigen::VectorXd& c,
                const Eigen::VectorXd& y);

/// Per-row sums sum_q |a_i'x_q / b_i - 1|; nullopt marks rows with b_i = 0
/// that some point does not lie on.
std::vector<std::optional<double>> rdg_row_scores(const ForwardProblem& fp, const EnsembleData& data);

inline constexpr double kHeuristicDelta = 1e-6;

}  // namespace invlp

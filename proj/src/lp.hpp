#pragma once

// Dense two-phase primal simplex with Bland's rule. Every LP the inverse
// solvers build goes through solve_lp; instances are desk scale.

#include "model.hpp"

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace invlp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { GreaterEqual, LessEqual, Equal };

struct LpRow {
  Eigen::VectorXd coeffs;
  Relation relation = Relation::GreaterEqual;
  double rhs = 0.0;
};

/// min objective'x subject to rows and lower <= x <= upper.
class LpProblem {
 public:
  explicit LpProblem(Eigen::Index num_vars);

  Eigen::Index num_vars() const { return objective_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  Eigen::VectorXd& objective() { return objective_; }
  const Eigen::VectorXd& objective() const { return objective_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  void add_row(Eigen::VectorXd coeffs, Relation rel, double rhs);
  void set_bounds(Eigen::Index var, double lo, double hi);
  void set_free(Eigen::Index var) { set_bounds(var, -kInf, kInf); }
  void fix(Eigen::Index var, double value) { set_bounds(var, value, value); }

  /// Throws Error(InvalidArgument) on inconsistent sizes, non-finite
  /// coefficients, or lower > upper.
  void validate() const;

 private:
  Eigen::VectorXd objective_;
  std::vector<LpRow> rows_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

struct SimplexTolerances {
  double pivot = 1e-10;
  double feasibility = 1e-9;
  double optimality = 1e-9;
};

LpSolution solve_lp(const LpProblem& problem, const SimplexTolerances& tol = {});

/// min c'x over {A x >= b}, with x >= 0 added when fp.x_nonneg.
LpSolution solve_forward(const ForwardProblem& fp, const Eigen::VectorXd& c);

struct MedianFit {
  double t = 0.0;
  double loss = 0.0;
};

/// argmin over t in [t_lo, t_hi] of sum_q |v_q - t|: the lower median
/// clamped into the interval.
MedianFit min_abs_deviation(std::span<const double> values, double t_lo, double t_hi);

}  // namespace invlp

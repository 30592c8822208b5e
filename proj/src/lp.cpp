#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace invlp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

LpProblem::LpProblem(Eigen::Index num_vars)
    : objective_(Eigen::VectorXd::Zero(num_vars)),
      lower_(Eigen::VectorXd::Zero(num_vars)),
      upper_(Eigen::VectorXd::Constant(num_vars, kInf)) {}

void LpProblem::add_row(Eigen::VectorXd coeffs, Relation rel, double rhs) {
  if (coeffs.size() != num_vars()) {
    throw Error(ErrorCode::InvalidArgument, "LP row has " + std::to_string(coeffs.size()) +
                                                " coefficients, expected " + std::to_string(num_vars()));
  }
  rows_.push_back(LpRow{std::move(coeffs), rel, rhs});
}

void LpProblem::set_bounds(Eigen::Index var, double lo, double hi) {
  if (var < 0 || var >= num_vars()) throw Error(ErrorCode::InvalidArgument, "LP variable index out of range");
  lower_[var] = lo;
  upper_[var] = hi;
}

void LpProblem::validate() const {
  if (!objective_.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite LP objective");
  for (const auto& row : rows_) {
    if (row.coeffs.size() != num_vars() || !row.coeffs.allFinite() || !std::isfinite(row.rhs)) {
      throw Error(ErrorCode::InvalidArgument, "malformed LP row");
    }
  }
  for (Eigen::Index j = 0; j < num_vars(); ++j) {
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] > upper_[j] || lower_[j] == kInf ||
        upper_[j] == -kInf) {
      throw Error(ErrorCode::InvalidArgument, "inconsistent bounds on LP variable " + std::to_string(j));
    }
  }
}

namespace {

// How an original variable is expressed in standard-form columns:
// x = offset + sum(sign_k * column_k), every column >= 0.
struct VarMap {
  double offset = 0.0;
  Eigen::Index pos = -1;  // column with sign +1 (or -1 when `flipped`)
  Eigen::Index neg = -1;  // second column for free variables (sign -1)
  bool flipped = false;
};

struct StdRow {
  Eigen::VectorXd coeffs;
  Relation relation;
  double rhs;
};

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double at(Eigen::Index r, Eigen::Index c) const { return t_(r, c); }
  double& rhs(Eigen::Index r) { return t_(r, cols()); }
  double rhs(Eigen::Index r) const { return t_(r, cols()); }
  double& cost(Eigen::Index c) { return t_(rows(), c); }
  double value() const { return -t_(rows(), cols()); }
  std::vector<Eigen::Index>& basis() { return basis_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

  void pivot(Eigen::Index pr, Eigen::Index pc) {
    t_.row(pr) /= t_(pr, pc);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == pr) continue;
      const double f = t_(r, pc);
      if (f != 0.0) t_.row(r) -= f * t_.row(pr);
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  // Rebuild the reduced-cost row for the given column costs.
  void price(const Eigen::VectorXd& costs) {
    t_.row(rows()).setZero();
    t_.row(rows()).head(cols()) = costs.transpose();
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const double cb = costs[basis_[static_cast<std::size_t>(r)]];
      if (cb != 0.0) t_.row(rows()) -= cb * t_.row(r);
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

enum class Outcome { Optimal, Unbounded };

// Bland's rule: lowest-index improving column enters, lowest-index basic
// variable leaves among ratio ties.
Outcome run_simplex(Tableau& tab, const std::vector<bool>& eligible, const SimplexTolerances& tol) {
  constexpr int kMaxIterations = 200000;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index c = 0; c < tab.cols(); ++c) {
      if (eligible[static_cast<std::size_t>(c)] && tab.cost(c) < -tol.optimality) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return Outcome::Optimal;

    Eigen::Index leave = -1;
    double best = kInf;
    for (Eigen::Index r = 0; r < tab.rows(); ++r) {
      const double a = tab.at(r, enter);
      if (a <= tol.pivot) continue;
      const double ratio = std::max(tab.rhs(r), 0.0) / a;
      if (leave < 0 || ratio < best - 1e-12 * (1.0 + std::abs(best))) {
        best = ratio;
        leave = r;
      } else if (std::abs(ratio - best) <= 1e-12 * (1.0 + std::abs(best)) &&
                 tab.basis()[static_cast<std::size_t>(r)] < tab.basis()[static_cast<std::size_t>(leave)]) {
        leave = r;
      }
    }
    if (leave < 0) return Outcome::Unbounded;
    tab.pivot(leave, enter);
  }
  throw Error(ErrorCode::NumericFailure, "simplex iteration limit reached");
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SimplexTolerances& tol) {
  problem.validate();
  const Eigen::Index n = problem.num_vars();

  // Standard-form columns for the structural variables.
  std::vector<VarMap> vars(static_cast<std::size_t>(n));
  Eigen::Index ncols = 0;
  std::vector<std::pair<Eigen::Index, double>> upper_rows;  // (column, bound) with column <= bound
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& v = vars[static_cast<std::size_t>(j)];
    const double lo = problem.lower()[j];
    const double hi = problem.upper()[j];
    if (std::isfinite(lo) && std::isfinite(hi) && lo == hi) {
      v.offset = lo;
    } else if (std::isfinite(lo)) {
      v.offset = lo;
      v.pos = ncols++;
      if (std::isfinite(hi)) upper_rows.emplace_back(v.pos, hi - lo);
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.pos = ncols++;
      v.flipped = true;
    } else {
      v.pos = ncols++;
      v.neg = ncols++;
    }
  }

  std::vector<StdRow> rows;
  rows.reserve(problem.num_rows() + upper_rows.size());
  double obj_offset = 0.0;
  Eigen::VectorXd std_cost = Eigen::VectorXd::Zero(ncols);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    const double cj = problem.objective()[j];
    obj_offset += cj * v.offset;
    if (v.pos >= 0) std_cost[v.pos] += v.flipped ? -cj : cj;
    if (v.neg >= 0) std_cost[v.neg] -= cj;
  }
  for (const auto& row : problem.rows()) {
    StdRow sr{Eigen::VectorXd::Zero(ncols), row.relation, row.rhs};
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = row.coeffs[j];
      if (a == 0.0) continue;
      const auto& v = vars[static_cast<std::size_t>(j)];
      sr.rhs -= a * v.offset;
      if (v.pos >= 0) sr.coeffs[v.pos] += v.flipped ? -a : a;
      if (v.neg >= 0) sr.coeffs[v.neg] -= a;
    }
    rows.push_back(std::move(sr));
  }
  for (const auto& [col, bound] : upper_rows) {
    StdRow sr{Eigen::VectorXd::Zero(ncols), Relation::LessEqual, bound};
    sr.coeffs[col] = 1.0;
    rows.push_back(std::move(sr));
  }

  // A row with no columns left is either trivially satisfied or infeasible.
  std::vector<StdRow> live;
  live.reserve(rows.size());
  double rhs_scale = 1.0;
  for (auto& sr : rows) rhs_scale = std::max(rhs_scale, std::abs(sr.rhs));
  const double feas_tol = tol.feasibility * rhs_scale;
  for (auto& sr : rows) {
    if (sr.coeffs.size() == 0 || sr.coeffs.cwiseAbs().maxCoeff() == 0.0) {
      const bool ok = (sr.relation == Relation::GreaterEqual && sr.rhs <= feas_tol) ||
                      (sr.relation == Relation::LessEqual && sr.rhs >= -feas_tol) ||
                      (sr.relation == Relation::Equal && std::abs(sr.rhs) <= feas_tol);
      if (!ok) return LpSolution{LpStatus::Infeasible, {}, 0.0};
      continue;
    }
    if (sr.rhs < 0.0) {
      sr.coeffs = -sr.coeffs;
      sr.rhs = -sr.rhs;
      if (sr.relation == Relation::GreaterEqual) {
        sr.relation = Relation::LessEqual;
      } else if (sr.relation == Relation::LessEqual) {
        sr.relation = Relation::GreaterEqual;
      }
    }
    live.push_back(std::move(sr));
  }

  const auto nrows = static_cast<Eigen::Index>(live.size());
  Eigen::Index nslack = 0;
  Eigen::Index nart = 0;
  for (const auto& sr : live) {
    if (sr.relation != Relation::Equal) ++nslack;
    if (sr.relation != Relation::LessEqual) ++nart;
  }
  const Eigen::Index art_begin = ncols + nslack;
  const Eigen::Index total = art_begin + nart;

  Tableau tab(nrows, total);
  Eigen::MatrixXd original(nrows, total);
  Eigen::VectorXd original_rhs(nrows);
  {
    Eigen::Index slack = ncols;
    Eigen::Index art = art_begin;
    for (Eigen::Index r = 0; r < nrows; ++r) {
      const auto& sr = live[static_cast<std::size_t>(r)];
      for (Eigen::Index c = 0; c < ncols; ++c) tab.at(r, c) = sr.coeffs[c];
      tab.rhs(r) = sr.rhs;
      switch (sr.relation) {
        case Relation::LessEqual:
          tab.at(r, slack) = 1.0;
          tab.basis()[static_cast<std::size_t>(r)] = slack++;
          break;
        case Relation::GreaterEqual:
          tab.at(r, slack++) = -1.0;
          tab.at(r, art) = 1.0;
          tab.basis()[static_cast<std::size_t>(r)] = art++;
          break;
        case Relation::Equal:
          tab.at(r, art) = 1.0;
          tab.basis()[static_cast<std::size_t>(r)] = art++;
          break;
      }
      for (Eigen::Index c = 0; c < total; ++c) original(r, c) = tab.at(r, c);
      original_rhs[r] = sr.rhs;
    }
  }

  auto is_artificial = [art_begin](Eigen::Index c) { return c >= art_begin; };

  // Phase 1: minimise the sum of artificials.
  if (nart > 0) {
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(total);
    phase1_cost.tail(nart).setOnes();
    tab.price(phase1_cost);
    std::vector<bool> eligible(static_cast<std::size_t>(total), true);
    run_simplex(tab, eligible, tol);
    if (tab.value() > feas_tol) return LpSolution{LpStatus::Infeasible, {}, 0.0};

    // Pivot zero-level artificials out of the basis where possible; rows
    // where that is impossible are redundant and stay inert.
    for (Eigen::Index r = 0; r < nrows; ++r) {
      if (!is_artificial(tab.basis()[static_cast<std::size_t>(r)])) continue;
      for (Eigen::Index c = 0; c < art_begin; ++c) {
        if (std::abs(tab.at(r, c)) > tol.pivot) {
          tab.pivot(r, c);
          break;
        }
      }
    }
  }

  // Phase 2.
  Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(total);
  phase2_cost.head(ncols) = std_cost;
  tab.price(phase2_cost);
  std::vector<bool> eligible(static_cast<std::size_t>(total), true);
  for (Eigen::Index c = art_begin; c < total; ++c) eligible[static_cast<std::size_t>(c)] = false;
  if (run_simplex(tab, eligible, tol) == Outcome::Unbounded) {
    return LpSolution{LpStatus::Unbounded, {}, -kInf};
  }

  // Recover the basic solution from the original columns to shed pivoting
  // round-off.
  Eigen::VectorXd std_x = Eigen::VectorXd::Zero(total);
  for (Eigen::Index r = 0; r < nrows; ++r) std_x[tab.basis()[static_cast<std::size_t>(r)]] = tab.rhs(r);
  if (nrows > 0) {
    Eigen::MatrixXd basis_matrix(nrows, nrows);
    for (Eigen::Index r = 0; r < nrows; ++r) basis_matrix.col(r) = original.col(tab.basis()[static_cast<std::size_t>(r)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (lu.isInvertible()) {
      Eigen::VectorXd xb = lu.solve(original_rhs);
      if ((basis_matrix * xb - original_rhs).cwiseAbs().maxCoeff() <= feas_tol) {
        for (Eigen::Index r = 0; r < nrows; ++r) {
          double v = xb[r];
          if (v < 0.0 && v > -feas_tol) v = 0.0;
          std_x[tab.basis()[static_cast<std::size_t>(r)]] = v;
        }
      }
    }
  }

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    double x = v.offset;
    if (v.pos >= 0) x += v.flipped ? -std_x[v.pos] : std_x[v.pos];
    if (v.neg >= 0) x -= std_x[v.neg];
    sol.x[j] = x;
  }
  (void)obj_offset;
  sol.objective = problem.objective().dot(sol.x);
  return sol;
}

LpSolution solve_forward(const ForwardProblem& fp, const Eigen::VectorXd& c) {
  if (c.size() != fp.cols()) {
    throw Error(ErrorCode::InvalidArgument, "cost vector has length " + std::to_string(c.size()) +
                                                ", expected " + std::to_string(fp.cols()));
  }
  LpProblem lp(fp.cols());
  lp.objective() = c;
  for (Eigen::Index j = 0; j < fp.cols(); ++j) {
    if (!fp.x_nonneg) lp.set_free(j);
  }
  for (Eigen::Index i = 0; i < fp.rows(); ++i) lp.add_row(fp.A.row(i).transpose(), Relation::GreaterEqual, fp.b[i]);
  return solve_lp(lp);
}

MedianFit min_abs_deviation(std::span<const double> values, double t_lo, double t_hi) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "min_abs_deviation of no values");
  if (t_lo > t_hi) throw Error(ErrorCode::InvalidArgument, "empty interval in min_abs_deviation");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[(sorted.size() - 1) / 2];
  MedianFit fit;
  fit.t = std::clamp(median, t_lo, t_hi);
  for (double v : values) fit.loss += std::abs(v - fit.t);
  return fit;
}

}  // namespace invlp

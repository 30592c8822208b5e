#include "structured.hpp"

#include "lp.hpp"

#include <cmath>
#include <random>

namespace invlp {

namespace {

const Eigen::MatrixXd& cost_matrix(const ForwardProblem& fp) {
  if (!fp.cost_structure) throw Error(ErrorCode::InvalidArgument, "structured mode needs a cost matrix C");
  return fp.cost_structure->C;
}

ForwardProblem nonneg_problem(const ForwardProblem& fp) {
  ForwardProblem out = fp;
  out.x_nonneg = true;
  return out;
}

// Variables: alpha (K) >= 0, y (m) >= 0, t (Q) >= 0. Rows C'alpha - A'y >= 0.
LpProblem cone_lp(const ForwardProblem& fp, Eigen::Index Q) {
  const Eigen::MatrixXd& C = cost_matrix(fp);
  const Eigen::Index K = C.rows();
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  const Eigen::Index nv = K + m + Q;
  LpProblem lp(nv);
  lp.objective().tail(Q).setOnes();
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
    row.head(K) = C.col(j);
    row.segment(K, m) = -fp.A.col(j);
    lp.add_row(row, Relation::GreaterEqual, 0.0);
  }
  return lp;
}

// t_q >= |alpha'z_q - (y-part or constant)|, written with `shift` on the rhs.
void add_abs_rows(LpProblem& lp, const Eigen::MatrixXd& Z, Eigen::Index K, Eigen::Index m, const Eigen::VectorXd* b,
                  double shift) {
  const Eigen::Index Q = Z.rows();
  const Eigen::Index nv = lp.num_vars();
  for (Eigen::Index q = 0; q < Q; ++q) {
    Eigen::VectorXd gap = Eigen::VectorXd::Zero(nv);
    gap.head(K) = Z.row(q).transpose();
    if (b) gap.segment(K, m) = -*b;
    Eigen::VectorXd up = -gap;
    up[K + m + q] = 1.0;
    lp.add_row(up, Relation::GreaterEqual, -shift);
    Eigen::VectorXd down = gap;
    down[K + m + q] = 1.0;
    lp.add_row(down, Relation::GreaterEqual, shift);
  }
}

void check_structured(const ForwardProblem& fp, const EnsembleData& data) {
  require_valid(fp, data);
  cost_matrix(fp);
}

}  // namespace

Eigen::MatrixXd objective_values(const ForwardProblem& fp, const EnsembleData& data) {
  const Eigen::MatrixXd& C = cost_matrix(fp);
  if (data.points_are_objectives) return data.points;
  return data.points * C.transpose();
}

FitResult solve_structured_adg(const ForwardProblem& fp, const EnsembleData& data) {
  check_structured(fp, data);
  const Eigen::MatrixXd& C = cost_matrix(fp);
  if ((C.array() < 0.0).any()) {
    throw Error(ErrorCode::StructureNotNonneg, "structured absolute-gap LP needs C >= 0");
  }
  const Eigen::Index K = C.rows();
  const Eigen::Index m = fp.rows();
  const Eigen::MatrixXd Z = objective_values(fp, data);
  LpProblem lp = cone_lp(fp, data.size());
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(lp.num_vars());
  sum.head(K) = C.rowwise().sum();
  lp.add_row(sum, Relation::Equal, 1.0);
  add_abs_rows(lp, Z, K, m, &fp.b, 0.0);

  const LpSolution sol = solve_lp(lp);
  if (!sol.optimal()) throw Error(ErrorCode::NoFiniteSolution, "structured absolute-gap LP has no optimum");
  FitResult fit;
  fit.variant = Variant::ADG;
  fit.path = SolutionPath::StructuredLp;
  fit.alpha = sol.x.head(K).cwiseMax(0.0);
  fit.y_star = sol.x.segment(K, m).cwiseMax(0.0);
  fit.c_star = C.transpose() * fit.alpha;
  fit.eps = Z * fit.alpha - Eigen::VectorXd::Constant(data.size(), fp.b.dot(fit.y_star));
  fit.z_star = fit.eps.cwiseAbs().sum();
  fit.diagnostics.lp_calls = 1;
  return fit;
}

FitResult solve_structured_rdg(const ForwardProblem& fp, const EnsembleData& data) {
  check_structured(fp, data);
  const Eigen::MatrixXd& C = cost_matrix(fp);
  const Eigen::Index K = C.rows();
  const Eigen::Index m = fp.rows();
  const Eigen::MatrixXd Z = objective_values(fp, data);
  LpProblem lp = cone_lp(fp, data.size());
  Eigen::VectorXd by = Eigen::VectorXd::Zero(lp.num_vars());
  by.segment(K, m) = fp.b;
  lp.add_row(by, Relation::Equal, 1.0);
  add_abs_rows(lp, Z, K, m, nullptr, 1.0);

  const LpSolution sol = solve_lp(lp);
  if (!sol.optimal()) throw Error(ErrorCode::NoFiniteSolution, "structured relative-gap LP has no optimum");
  Eigen::VectorXd alpha = sol.x.head(K).cwiseMax(0.0);
  Eigen::VectorXd y = sol.x.segment(K, m).cwiseMax(0.0);
  const double scale = (C.transpose() * alpha).lpNorm<1>();
  if (alpha.lpNorm<1>() <= 1e-9 || scale <= 1e-9) {
    throw Error(ErrorCode::StructuredDegenerate, "relative-gap relaxation returned zero weights");
  }
  FitResult fit;
  fit.variant = Variant::RDG;
  fit.path = SolutionPath::StructuredLp;
  fit.alpha = alpha / scale;
  fit.y_star = y / scale;
  fit.c_star = C.transpose() * fit.alpha;
  fit.eps = Z * fit.alpha / fp.b.dot(fit.y_star);
  fit.z_star = (fit.eps.array() - 1.0).abs().sum();
  fit.diagnostics.lp_calls = 1;
  return fit;
}

Eigen::VectorXd structured_forward(const ForwardProblem& fp, const Eigen::VectorXd& alpha) {
  const Eigen::MatrixXd& C = cost_matrix(fp);
  if (alpha.size() != C.rows()) {
    throw Error(ErrorCode::InvalidArgument, "alpha has length " + std::to_string(alpha.size()) + ", expected " +
                                                std::to_string(C.rows()));
  }
  const LpSolution sol = solve_forward(nonneg_problem(fp), C.transpose() * alpha);
  if (sol.status == LpStatus::Infeasible) throw Error(ErrorCode::InfeasibleForward, "forward problem is infeasible");
  if (!sol.optimal()) throw Error(ErrorCode::NoFiniteSolution, "forward problem is unbounded");
  return sol.x;
}

EnsembleData gen_ensemble(const ForwardProblem& fp, const Eigen::VectorXd& true_alpha, Eigen::Index Q, double noise,
                          std::uint64_t seed) {
  if (Q < 1) throw Error(ErrorCode::InvalidArgument, "ensemble size must be at least 1");
  if ((true_alpha.array() < 0.0).any() || true_alpha.sum() <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "true alpha must be nonnegative and nonzero");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::VectorXd fallback = true_alpha / true_alpha.sum();
  EnsembleData out(Eigen::MatrixXd(Q, fp.cols()));
  for (Eigen::Index q = 0; q < Q; ++q) {
    Eigen::VectorXd alpha(true_alpha.size());
    for (Eigen::Index k = 0; k < alpha.size(); ++k) alpha[k] = std::max(0.0, true_alpha[k] + noise * gauss(rng));
    alpha = alpha.sum() > 0.0 ? Eigen::VectorXd(alpha / alpha.sum()) : fallback;
    out.points.row(q) = structured_forward(fp, alpha).transpose();
  }
  return out;
}

}  // namespace invlp

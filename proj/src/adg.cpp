#include "adg.hpp"

#include "branches.hpp"
#include "lp.hpp"

#include <cmath>

namespace invlp {

namespace {

bool restricted(const AdgConfig& cfg) { return cfg.nonneg_cost || cfg.support_mask.has_value(); }

void fill_adg_eps(const ForwardProblem& fp, const EnsembleData& data, FitResult& fit) {
  const double by = fp.b.dot(fit.y_star);
  fit.eps = data.points * fit.c_star - Eigen::VectorXd::Constant(data.size(), by);
  fit.z_star = fit.eps.cwiseAbs().sum();
}

FitResult best_row(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg, double sign,
                   SolutionPath path) {
  const Eigen::MatrixXd r = residuals(fp, data);
  Eigen::Index best = -1;
  double best_score = kInf;
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    const double score = sign * r.col(i).sum() / norm_of(fp.A.row(i).transpose(), cfg.normalization_norm);
    if (score < best_score) {
      best_score = score;
      best = i;
    }
  }
  FitResult fit = row_solution(fp, best, cfg.normalization_norm);
  fit.path = path;
  fill_adg_eps(fp, data, fit);
  return fit;
}

}  // namespace

FitResult row_solution(const ForwardProblem& fp, Eigen::Index row, Norm normalization_norm) {
  const Eigen::VectorXd a = fp.A.row(row).transpose();
  const double scale = norm_of(a, normalization_norm);
  FitResult fit;
  fit.c_star = a / scale;
  fit.y_star = Eigen::VectorXd::Zero(fp.rows());
  fit.y_star[row] = 1.0 / scale;
  fit.active_row = row;
  return fit;
}

double adg_loss(const ForwardProblem& fp, const EnsembleData& data, const Eigen::VectorXd& c,
                const Eigen::VectorXd& y) {
  const double by = fp.b.dot(y);
  return (data.points * c - Eigen::VectorXd::Constant(data.size(), by)).cwiseAbs().sum();
}

FitResult solve_adg_feasible(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg) {
  return best_row(fp, data, cfg, 1.0, SolutionPath::FeasibleCentroid);
}

FitResult solve_adg_all_below(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg) {
  // Reversed problem: A' = -A, b' = -b, and the points are feasible for it.
  // Its centroid row solution (c', y) maps back to c = -c', y unchanged,
  // which is the same normalized row a_i of the original problem.
  return best_row(fp, data, cfg, -1.0, SolutionPath::ReversedCentroid);
}

FitResult mixed_point_construction(const ForwardProblem& fp, const Eigen::VectorXd& x_hat, Norm normalization_norm) {
  const Eigen::VectorXd r = fp.A * x_hat - fp.b;
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    if (r[i] <= kFeasTol) continue;
    for (Eigen::Index k = 0; k < fp.rows(); ++k) {
      if (r[k] >= -kFeasTol) continue;
      Eigen::VectorXd y = Eigen::VectorXd::Zero(fp.rows());
      y[i] = 1.0 / r[i];
      y[k] = 1.0 / -r[k];
      const Eigen::VectorXd c = fp.A.transpose() * y;
      const double scale = norm_of(c, normalization_norm);
      if (scale <= 1e-9) continue;
      FitResult fit;
      fit.c_star = c / scale;
      fit.y_star = y / scale;
      fit.eps = Eigen::VectorXd::Zero(1);
      fit.z_star = 0.0;
      fit.path = SolutionPath::MixedConstruction;
      fit.diagnostics.branch = "pair=" + std::to_string(i) + "," + std::to_string(k);
      return fit;
    }
  }
  throw Error(ErrorCode::DegeneratePair, "no violated/slack row pair yields a nonzero cost vector");
}

FitResult solve_adg_general(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg) {
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  const Eigen::Index Q = data.size();
  const auto branches = normalization_branches(n, cfg);

  // Variables: y (m) >= 0, c (n), t (Q) >= 0.
  LpProblem base(m + n + Q);
  base.objective().tail(Q).setOnes();
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(m + n + Q);
    row.head(m) = fp.A.col(j);
    row[m + j] = -1.0;
    base.add_row(row, Relation::Equal, 0.0);
  }
  for (Eigen::Index q = 0; q < Q; ++q) {
    Eigen::VectorXd gap = Eigen::VectorXd::Zero(m + n + Q);
    gap.head(m) = -fp.b;
    gap.segment(m, n) = data.points.row(q).transpose();
    Eigen::VectorXd up = -gap;
    up[m + n + q] = 1.0;
    base.add_row(up, Relation::GreaterEqual, 0.0);
    Eigen::VectorXd down = gap;
    down[m + n + q] = 1.0;
    base.add_row(down, Relation::GreaterEqual, 0.0);
  }

  FitResult best;
  double best_value = kInf;
  std::size_t calls = 0;
  for (const auto& branch : branches) {
    LpProblem lp = base;
    apply_branch(lp, branch, m);
    const LpSolution sol = solve_lp(lp);
    ++calls;
    if (!sol.optimal()) continue;
    if (sol.objective < best_value - 1e-9) {
      best_value = sol.objective;
      best = FitResult{};
      best.y_star = sol.x.head(m);
      best.c_star = sol.x.segment(m, n);
      best.diagnostics.branch = branch.label;
    }
  }
  if (!std::isfinite(best_value)) {
    throw Error(ErrorCode::NoFiniteSolution, "every decomposition branch is infeasible");
  }
  const double scale = norm_of(best.c_star, cfg.normalization_norm);
  best.c_star /= scale;
  best.y_star = (best.y_star / scale).cwiseMax(0.0);
  best.path = branches.size() == 1 && cfg.nonneg_cost && cfg.normalization_norm == Norm::L1
                  ? SolutionPath::NonnegSingleLp
                  : SolutionPath::Decomposition;
  best.diagnostics.lp_calls = calls;
  fill_adg_eps(fp, data, best);
  return best;
}

FitResult solve_adg(const ForwardProblem& fp_in, const EnsembleData& data, const AdgConfig& cfg) {
  require_valid(fp_in, data);
  if (data.points_are_objectives) {
    throw Error(ErrorCode::InvalidArgument, "objective-value data requires the structured solver");
  }
  const ForwardProblem fp = with_explicit_sign_rows(fp_in);
  FitResult fit;
  if (restricted(cfg)) {
    fit = solve_adg_general(fp, data, cfg);
  } else {
    const auto cls = classify(fp, data);
    if (cls.tag == FeasibilityTag::AllFeasible) {
      fit = solve_adg_feasible(fp, data, cfg);
    } else if (cls.tag == FeasibilityTag::AllBelow) {
      fit = solve_adg_all_below(fp, data, cfg);
    } else if (data.size() == 1) {
      fit = mixed_point_construction(fp, data.point(0), cfg.normalization_norm);
    } else {
      fit = solve_adg_general(fp, data, cfg);
    }
  }
  fit.variant = Variant::ADG;
  return fit;
}

}  // namespace invlp

#include "rdg.hpp"

#include "adg.hpp"
#include "branches.hpp"
#include "lp.hpp"

#include <cmath>

namespace invlp {

const char* to_string(RdgKind kind) {
  switch (kind) {
    case RdgKind::Plus: return "plus";
    case RdgKind::Minus: return "minus";
    case RdgKind::Zero: return "zero";
  }
  return "?";
}

Eigen::VectorXd rdg_eps(const ForwardProblem& fp, const EnsembleData& data, const Eigen::VectorXd& c,
                        const Eigen::VectorXd& y) {
  const double by = fp.b.dot(y);
  const Eigen::VectorXd cx = data.points * c;
  if (std::abs(by) > 1e-12) return cx / by;
  if (cx.cwiseAbs().maxCoeff() > 1e-7 * (1.0 + c.lpNorm<1>())) {
    throw Error(ErrorCode::NumericFailure, "relative gap undefined: b'y = 0 but c'x != 0");
  }
  return Eigen::VectorXd::Ones(data.size());
}

double rdg_loss(const ForwardProblem& fp, const EnsembleData& data, const Eigen::VectorXd& c,
                const Eigen::VectorXd& y) {
  return (rdg_eps(fp, data, c, y).array() - 1.0).abs().sum();
}

std::vector<std::optional<double>> rdg_row_scores(const ForwardProblem& fp, const EnsembleData& data) {
  std::vector<std::optional<double>> out(static_cast<std::size_t>(fp.rows()));
  const Eigen::MatrixXd ax = data.points * fp.A.transpose();  // Q x m
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    auto& slot = out[static_cast<std::size_t>(i)];
    if (std::abs(fp.b[i]) > 1e-12) {
      slot = (ax.col(i).array() / fp.b[i] - 1.0).abs().sum();
    } else if (ax.col(i).cwiseAbs().maxCoeff() <= kFeasTol) {
      slot = 0.0;
    }
  }
  return out;
}

namespace {

// Variables: y (m) >= 0, c (n), t (Q) >= 0.
LpProblem kind_lp(const ForwardProblem& fp, const EnsembleData& data, RdgKind kind) {
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  const Eigen::Index Q = data.size();
  const Eigen::Index nv = m + n + Q;
  LpProblem lp(nv);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
    row.head(m) = fp.A.col(j);
    row[m + j] = -1.0;
    lp.add_row(row, Relation::Equal, 0.0);
  }
  Eigen::VectorXd by = Eigen::VectorXd::Zero(nv);
  by.head(m) = fp.b;
  if (kind == RdgKind::Zero) {
    lp.add_row(by, Relation::Equal, 0.0);
    Eigen::VectorXd ones = Eigen::VectorXd::Zero(nv);
    ones.head(m).setOnes();
    lp.add_row(ones, Relation::Equal, 1.0);
    for (Eigen::Index q = 0; q < Q; ++q) {
      Eigen::VectorXd cx = Eigen::VectorXd::Zero(nv);
      cx.segment(m, n) = data.points.row(q).transpose();
      lp.add_row(cx, Relation::Equal, 0.0);
      lp.fix(m + n + q, 0.0);
    }
    return lp;
  }
  // eps_q = s * c'x_q with s = b'y in {+1, -1}; t_q >= |eps_q - 1|.
  const double s = kind == RdgKind::Plus ? 1.0 : -1.0;
  lp.add_row(by, Relation::Equal, s);
  lp.objective().tail(Q).setOnes();
  for (Eigen::Index q = 0; q < Q; ++q) {
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(nv);
    eps.segment(m, n) = s * data.points.row(q).transpose();
    Eigen::VectorXd up = -eps;
    up[m + n + q] = 1.0;
    lp.add_row(up, Relation::GreaterEqual, -1.0);
    Eigen::VectorXd down = eps;
    down[m + n + q] = 1.0;
    lp.add_row(down, Relation::GreaterEqual, 1.0);
  }
  return lp;
}

constexpr RdgKind kKinds[] = {RdgKind::Plus, RdgKind::Minus, RdgKind::Zero};

FitResult finish(const ForwardProblem& fp, const EnsembleData& data, Eigen::VectorXd c, Eigen::VectorXd y,
                 Norm norm) {
  const double scale = norm_of(c, norm);
  FitResult fit;
  fit.variant = Variant::RDG;
  fit.c_star = c / scale;
  fit.y_star = (y / scale).cwiseMax(0.0);
  fit.eps = rdg_eps(fp, data, fit.c_star, fit.y_star);
  fit.z_star = (fit.eps.array() - 1.0).abs().sum();
  return fit;
}

FitResult row_fit(const ForwardProblem& fp, const EnsembleData& data, Eigen::Index row, Norm norm,
                  SolutionPath path) {
  FitResult fit = row_solution(fp, row, norm);
  fit.variant = Variant::RDG;
  fit.path = path;
  fit.eps = rdg_eps(fp, data, fit.c_star, fit.y_star);
  fit.z_star = (fit.eps.array() - 1.0).abs().sum();
  return fit;
}

}  // namespace

RelaxationResult solve_rdg_relaxations(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg) {
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  RelaxationResult out;
  out.value = kInf;
  for (RdgKind kind : kKinds) {
    LpProblem lp = kind_lp(fp, data, kind);
    apply_cost_restrictions(lp, cfg, m, n);
    const LpSolution sol = solve_lp(lp);
    ++out.lp_calls;
    if (!sol.optimal()) continue;
    if (sol.objective < out.value - 1e-9) {
      out.value = sol.objective;
      out.winner = kind;
      out.y = sol.x.head(m);
      out.c = sol.x.segment(m, n);
    }
  }
  if (!std::isfinite(out.value)) {
    throw Error(ErrorCode::AllBranchesInfeasible, "all three relative-gap relaxations are infeasible");
  }
  return out;
}

AuxResult solve_aux_K(const ForwardProblem& fp, const SolverConfig& cfg) {
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  const auto branches = normalization_branches(n, cfg);
  AuxResult out;
  double best = -kInf;
  // Variables: y (m) >= 0, c (n) on the branch; maximise by minimising -obj.
  for (int objective = 0; objective < 3; ++objective) {
    Eigen::VectorXd weights = objective == 0 ? Eigen::VectorXd(fp.b)
                              : objective == 1 ? Eigen::VectorXd(-fp.b)
                                               : Eigen::VectorXd(Eigen::VectorXd::Ones(m));
    for (const auto& branch : branches) {
      LpProblem lp(m + n);
      lp.objective().head(m) = -weights;
      for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(m + n);
        row.head(m) = fp.A.col(j);
        row[m + j] = -1.0;
        lp.add_row(row, Relation::Equal, 0.0);
      }
      apply_branch(lp, branch, m);
      const LpSolution sol = solve_lp(lp);
      ++out.lp_calls;
      if (sol.status == LpStatus::Unbounded) {
        out.unbounded = true;
      } else if (sol.optimal()) {
        best = std::max(best, -sol.objective);
      }
    }
  }
  if (!out.unbounded) {
    if (!(best > 0.0)) throw Error(ErrorCode::NoFiniteSolution, "auxiliary problem has no positive optimum");
    out.k_star = 1.0 / best;
  }
  return out;
}

FitResult solve_rdg_subproblems(const ForwardProblem& fp, const EnsembleData& data, double K,
                                const SolverConfig& cfg) {
  if (!(K > 0.0)) throw Error(ErrorCode::InvalidArgument, "K must be positive");
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  const auto branches = normalization_branches(n, cfg, K);
  double best = kInf;
  Eigen::VectorXd best_c;
  Eigen::VectorXd best_y;
  std::string label;
  std::size_t calls = 0;
  for (RdgKind kind : kKinds) {
    const LpProblem base = kind_lp(fp, data, kind);
    for (const auto& branch : branches) {
      LpProblem lp = base;
      apply_branch(lp, branch, m);
      const LpSolution sol = solve_lp(lp);
      ++calls;
      if (!sol.optimal()) continue;
      if (sol.objective < best - 1e-9) {
        best = sol.objective;
        best_y = sol.x.head(m);
        best_c = sol.x.segment(m, n);
        label = std::string(to_string(kind)) + ":" + branch.label;
      }
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::NoFiniteSolution, "every K-bounded sub-problem is infeasible");
  FitResult fit = finish(fp, data, best_c, best_y, cfg.normalization_norm);
  fit.path = SolutionPath::RdgKDecomposition;
  fit.diagnostics.branch = label;
  fit.diagnostics.decomposition_lp_calls = calls;
  fit.diagnostics.lp_calls = calls;
  return fit;
}

FitResult solve_rdg_general(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg) {
  const RelaxationResult rel = solve_rdg_relaxations(fp, data, cfg);
  if (norm_of(rel.c, cfg.normalization_norm) > 1e-9) {
    FitResult fit = finish(fp, data, rel.c, rel.y, cfg.normalization_norm);
    fit.path = SolutionPath::RdgRelaxation;
    fit.diagnostics.branch = to_string(rel.winner);
    fit.diagnostics.lp_calls = rel.lp_calls;
    return fit;
  }
  const AuxResult aux = solve_aux_K(fp, cfg);
  FitResult fit;
  if (aux.unbounded) {
    fit = solve_rdg_subproblems(fp, data, kHeuristicDelta, cfg);
    fit.path = SolutionPath::HeuristicDelta;
    fit.diagnostics.notes.push_back("auxiliary problem unbounded; sub-problems solved with |c_j| >= 1e-6");
  } else {
    fit = solve_rdg_subproblems(fp, data, aux.k_star, cfg);
    fit.diagnostics.k_star = aux.k_star;
  }
  fit.diagnostics.decomposition_lp_calls += aux.lp_calls;
  fit.diagnostics.lp_calls = rel.lp_calls + fit.diagnostics.decomposition_lp_calls;
  return fit;
}

FitResult solve_rdg(const ForwardProblem& fp_in, const EnsembleData& data, const SolverConfig& cfg) {
  require_valid(fp_in, data);
  if (data.points_are_objectives) {
    throw Error(ErrorCode::InvalidArgument, "objective-value data requires the structured solver");
  }
  if (fp_in.b.cwiseAbs().maxCoeff() <= 1e-12) {
    throw Error(ErrorCode::BIsZero, "relative duality gap needs b != 0");
  }
  const ForwardProblem fp = with_explicit_sign_rows(fp_in);
  if (!cfg.nonneg_cost && !cfg.support_mask) {
    const auto cls = classify(fp, data);
    if (cls.tag == FeasibilityTag::AllFeasible || cls.tag == FeasibilityTag::AllBelow) {
      const auto scores = rdg_row_scores(fp, data);
      Eigen::Index best = -1;
      for (Eigen::Index i = 0; i < fp.rows(); ++i) {
        const auto& s = scores[static_cast<std::size_t>(i)];
        if (s && (best < 0 || *s < *scores[static_cast<std::size_t>(best)])) best = i;
      }
      if (best >= 0) {
        return row_fit(fp, data, best, cfg.normalization_norm,
                       cls.tag == FeasibilityTag::AllFeasible ? SolutionPath::FeasibleCentroid
                                                              : SolutionPath::ReversedCentroid);
      }
    } else if (data.size() == 1) {
      FitResult fit = mixed_point_construction(fp, data.point(0), cfg.normalization_norm);
      fit.variant = Variant::RDG;
      fit.eps = Eigen::VectorXd::Ones(1);
      fit.z_star = 0.0;
      return fit;
    }
  }
  return solve_rdg_general(fp, data, cfg);
}

}  // namespace invlp

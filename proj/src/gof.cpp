#include "gof.hpp"

#include "adg.hpp"
#include "dsp.hpp"
#include "lp.hpp"
#include "rdg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace invlp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FitResult fit_variant(const ForwardProblem& fp, const EnsembleData& data, Variant variant, const SolverConfig& cfg) {
  switch (variant) {
    case Variant::ADG: return solve_adg(fp, data, cfg);
    case Variant::RDG: return solve_rdg(fp, data, cfg);
    case Variant::DSP: return solve_dsp(fp, data, cfg);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown variant");
}

}  // namespace

std::vector<double> baselines(const ForwardProblem& fp, const EnsembleData& data, Variant variant,
                              const SolverConfig& cfg) {
  require_valid(fp, data);
  const Eigen::Index m = fp.rows();
  std::vector<double> out(static_cast<std::size_t>(m), kNaN);
  const Eigen::MatrixXd r = residuals(fp, data);
  switch (variant) {
    case Variant::ADG:
      for (Eigen::Index i = 0; i < m; ++i) {
        out[static_cast<std::size_t>(i)] =
            r.col(i).cwiseAbs().sum() / norm_of(fp.A.row(i).transpose(), cfg.normalization_norm);
      }
      break;
    case Variant::RDG:
      for (Eigen::Index i = 0; i < m; ++i) {
        if (std::abs(fp.b[i]) <= 1e-12) {
          if (!cfg.skip_zero_rhs) {
            throw Error(ErrorCode::BaselineUndefined,
                        "row " + std::to_string(i) + " has b_i = 0; relative baseline undefined");
          }
          continue;
        }
        const Eigen::VectorXd ax = data.points * fp.A.row(i).transpose();
        out[static_cast<std::size_t>(i)] = (ax.array() / fp.b[i] - 1.0).abs().sum();
      }
      break;
    case Variant::DSP: {
      const auto v = dsp_row_values(fp, data, cfg.ds_p);
      for (Eigen::Index i = 0; i < m; ++i) {
        const double vi = v[static_cast<std::size_t>(i)];
        if (std::isfinite(vi)) out[static_cast<std::size_t>(i)] = vi;
      }
      break;
    }
  }
  return out;
}

GofReport rho_from(const std::vector<double>& row_baselines, double numerator, Variant variant) {
  GofReport report;
  report.variant = variant;
  report.baselines = row_baselines;
  report.numerator = numerator;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < row_baselines.size(); ++i) {
    if (std::isnan(row_baselines[i])) {
      report.excluded_rows.push_back(static_cast<Eigen::Index>(i));
    } else {
      sum += row_baselines[i];
      ++count;
    }
  }
  report.denominator = count == 0 ? 0.0 : sum / static_cast<double>(count);
  if (!(report.denominator > 1e-12)) {
    throw Error(ErrorCode::DegenerateBaseline, "mean baseline loss is zero; rho undefined");
  }
  report.rho_raw = 1.0 - numerator / report.denominator;
  report.rho = std::clamp(report.rho_raw, 0.0, 1.0);
  return report;
}

GofReport rho(const ForwardProblem& fp, const EnsembleData& data, Variant variant, const SolverConfig& cfg) {
  auto rows = baselines(fp, data, variant, cfg);
  FitResult fit = fit_variant(fp, data, variant, cfg);
  GofReport report = rho_from(rows, fit.z_star, variant);
  report.fit = std::move(fit);
  return report;
}

Eigen::MatrixXd rho_sweep(const ForwardProblem& fp, const EnsembleData& fixed_points, const GridSpec& grid,
                          Variant variant, const SolverConfig& cfg) {
  if (!std::isfinite(grid.lo1) || !std::isfinite(grid.hi1) || !std::isfinite(grid.lo2) ||
      !std::isfinite(grid.hi2) || grid.n1 < 1 || grid.n2 < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite and counts positive");
  }
  if (fixed_points.dim() != 2 || fp.cols() != 2) {
    throw Error(ErrorCode::InvalidArgument, "rho sweep needs a two-dimensional problem");
  }
  const Eigen::Index Q = fixed_points.size();
  EnsembleData data(Eigen::MatrixXd(Q + 1, 2));
  data.points.topRows(Q) = fixed_points.points;
  Eigen::MatrixXd out(grid.n1, grid.n2);
  for (int k1 = 0; k1 < grid.n1; ++k1) {
    for (int k2 = 0; k2 < grid.n2; ++k2) {
      data.points(Q, 0) = grid.gamma1(k1);
      data.points(Q, 1) = grid.gamma2(k2);
      try {
        out(k1, k2) = rho(fp, data, variant, cfg).rho;
      } catch (const Error&) {
        out(k1, k2) = kNaN;
      }
    }
  }
  return out;
}

DominanceReport check_dominance(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg) {
  SolverConfig l1 = cfg;
  l1.normalization_norm = Norm::L1;
  l1.support_mask.reset();
  l1.nonneg_cost = false;

  DominanceReport rep;
  const FitResult fa = solve_adg(fp, data, l1);
  const FitResult fr = solve_rdg(fp, data, l1);
  const ForwardProblem rows = with_explicit_sign_rows(fp);
  rep.z_adg = fa.z_star;
  rep.z_rdg = fr.z_star;
  rep.by_adg = rows.b.dot(fa.y_star);
  rep.by_rdg = rows.b.dot(fr.y_star);

  auto forward_value = [&fp](const Eigen::VectorXd& c) {
    const auto sol = solve_forward(fp, c);
    if (!sol.optimal()) throw Error(ErrorCode::InfeasibleForward, "forward problem has no finite optimum");
    return sol.objective;
  };
  rep.f_adg = forward_value(fa.c_star);
  rep.f_rdg = forward_value(fr.c_star);

  constexpr double kSlack = 1e-7;
  rep.upper_holds = std::abs(rep.f_rdg) * rep.z_rdg >= rep.z_adg - kSlack;
  rep.lower_holds = rep.z_adg >= std::abs(rep.f_adg) * rep.z_rdg - kSlack;
  rep.upper_holds_dual = std::abs(rep.by_rdg) * rep.z_rdg >= rep.z_adg - kSlack;
  rep.lower_holds_dual = rep.z_adg >= std::abs(rep.by_adg) * rep.z_rdg - kSlack;

  rep.data_feasible = classify(fp, data).tag == FeasibilityTag::AllFeasible;
  if (rep.data_feasible) {
    rep.z_dsp = solve_dsp(fp, data, cfg).z_star;
    rep.dsp_dominates = rep.z_dsp >= rep.z_adg - 1e-8;
  }
  return rep;
}

}  // namespace invlp

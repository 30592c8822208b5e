#include "dsp.hpp"

#include "adg.hpp"
#include "geometry.hpp"
#include "lp.hpp"

#include <cmath>

namespace invlp {

std::vector<double> dsp_row_values(const ForwardProblem& fp, const EnsembleData& data, Norm p) {
  std::vector<double> values(static_cast<std::size_t>(fp.rows()), 0.0);
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    double& v = values[static_cast<std::size_t>(i)];
    for (Eigen::Index q = 0; q < data.size(); ++q) {
      try {
        v += feasible_project(fp, data.point(q), i, p).distance;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyFace) throw;
        v = kInf;
        break;
      }
    }
  }
  return values;
}

FitResult solve_dsp(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg) {
  require_valid(fp, data);
  if (data.points_are_objectives) {
    throw Error(ErrorCode::InvalidArgument, "objective-value data requires the structured solver");
  }
  if (solve_forward(fp, Eigen::VectorXd::Zero(fp.cols())).status == LpStatus::Infeasible) {
    throw Error(ErrorCode::InfeasibleForward, "the feasible region of the forward problem is empty");
  }
  const auto values = dsp_row_values(fp, data, cfg.ds_p);
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    if (std::isfinite(v) && (best < 0 || v < values[static_cast<std::size_t>(best)])) best = i;
  }
  if (best < 0) throw Error(ErrorCode::NoFiniteSolution, "every face of P is empty");

  FitResult fit = row_solution(fp, best, cfg.normalization_norm);
  fit.variant = Variant::DSP;
  fit.path = SolutionPath::DspRowBattery;
  fit.eps.resize(data.size());
  for (Eigen::Index q = 0; q < data.size(); ++q) {
    const auto proj = feasible_project(fp, data.point(q), best, cfg.ds_p);
    fit.eps_vectors.push_back(proj.eps);
    fit.eps[q] = proj.distance;
  }
  fit.z_star = fit.eps.sum();
  fit.diagnostics.branch = "row=" + std::to_string(best);
  return fit;
}

}  // namespace invlp

#pragma once

// Coefficient of complementarity: rho = 1 - z* / mean_i(baseline_i), where
// baseline_i is the loss of taking constraint row i as the cost vector.

#include "model.hpp"

#include <optional>
#include <vector>

namespace invlp {

struct GofReport {
  Variant variant = Variant::ADG;
  double rho = 0.0;      // clamped into [0, 1]
  double rho_raw = 0.0;  // 1 - numerator / denominator
  double numerator = 0.0;
  double denominator = 0.0;
  std::vector<double> baselines;  // NaN for excluded rows
  std::vector<Eigen::Index> excluded_rows;
  FitResult fit;
};

/// Per-row baseline losses; rows that cannot serve (b_i = 0 under RDG with
/// skip_zero_rhs, empty DSP faces) are NaN.
std::vector<double> baselines(const ForwardProblem& fp, const EnsembleData& data, Variant variant,
                              const SolverConfig& cfg = {});

/// Fit `variant` and compare its loss with the row baselines.
GofReport rho(const ForwardProblem& fp, const EnsembleData& data, Variant variant, const SolverConfig& cfg = {});

/// rho from a given numerator, reusing baselines.
GofReport rho_from(const std::vector<double>& row_baselines, double numerator, Variant variant);

struct GridSpec {
  double lo1 = 0.0, hi1 = 0.0;
  double lo2 = 0.0, hi2 = 0.0;
  int n1 = 1, n2 = 1;

  double gamma1(int k) const { return n1 == 1 ? lo1 : lo1 + (hi1 - lo1) * k / (n1 - 1); }
  double gamma2(int k) const { return n2 == 1 ? lo2 : lo2 + (hi2 - lo2) * k / (n2 - 1); }
};

/// rho of fixed_points plus one extra point at every grid node, row-major
/// with gamma1 as the outer index. Cells whose solve fails hold NaN.
Eigen::MatrixXd rho_sweep(const ForwardProblem& fp, const EnsembleData& fixed_points, const GridSpec& grid,
                          Variant variant, const SolverConfig& cfg = {});

struct DominanceReport {
  double z_adg = 0.0;
  double z_rdg = 0.0;
  double z_dsp = 0.0;
  double f_adg = 0.0;  // min c_A'x over P
  double f_rdg = 0.0;  // min c_R'x over P
  double by_adg = 0.0; // b'y_A
  double by_rdg = 0.0; // b'y_R
  bool data_feasible = false;
  std::optional<bool> dsp_dominates;  // z_dsp >= z_adg, feasible data only
  bool upper_holds = false;           // |f_R| z_R >= z_A
  bool lower_holds = false;           // z_A >= |f_A| z_R
  bool upper_holds_dual = false;      // same bounds with b'y in place of f
  bool lower_holds_dual = false;
};

/// Compares the three optimal losses. z_A uses the 1-norm normalization and
/// z_dsp the p in cfg.ds_p. Tolerance 1e-7 on the bounds, 1e-8 on z_dsp.
DominanceReport check_dominance(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg = {});

}  // namespace invlp

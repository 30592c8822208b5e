#pragma once

// Brute-force reference values for the inverse problems. Nothing here calls
// the simplex engine: dual ranges come from enumerating basic solutions and
// extreme rays, directions from an angular sweep (n = 2).

#include "model.hpp"

namespace invlp {

struct OracleResult {
  double value = 0.0;
  Eigen::VectorXd direction;        // best c found (normalized for ADG/RDG)
  double discretization_bound = 0.0;
};

/// Attainable range of b'y over {y >= 0 : A'y = c}. Empty when !feasible;
/// lo/hi may be infinite.
struct DualRange {
  bool feasible = false;
  double lo = 0.0;
  double hi = 0.0;
};
DualRange dual_range(const ForwardProblem& fp, const Eigen::VectorXd& c);

/// Row candidates for any n; plus an angular sweep with golden refinement
/// when n = 2.
OracleResult oracle_adg(const ForwardProblem& fp, const EnsembleData& data, Norm normalization_norm = Norm::L1,
                        double angular_step = 1e-3);

OracleResult oracle_rdg(const ForwardProblem& fp, const EnsembleData& data, double angular_step = 1e-3);

/// n = 2 only: every face of P is a segment or ray; nearest points are
/// found by a grid along it followed by golden-section refinement.
OracleResult oracle_dsp(const ForwardProblem& fp, const EnsembleData& data, Norm p, double grid_step = 1e-3);

}  // namespace invlp

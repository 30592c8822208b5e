#pragma once

// Absolute duality gap: min sum_q |c'x_q - b'y| over A'y = c, y >= 0,
// ||c||' = 1.

#include "model.hpp"

namespace invlp {

using AdgConfig = SolverConfig;

/// Dispatches to the centroid, reversed-centroid, single mixed point or
/// decomposition path. The fast paths are bypassed when the config carries a
/// support mask or a sign restriction on c.
FitResult solve_adg(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg = {});

/// Every point in P: best supporting constraint row for the centroid.
FitResult solve_adg_feasible(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg = {});

/// Every point has A x <= b: centroid path of the reversed problem
/// min -c'x s.t. A x <= b, mapped back.
FitResult solve_adg_all_below(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg = {});

/// Zero-gap dual built from one violated and one slack row of a single point.
FitResult mixed_point_construction(const ForwardProblem& fp, const Eigen::VectorXd& x_hat,
                                   Norm normalization_norm = Norm::L1);

/// One LP per linear piece of the normalization constraint.
FitResult solve_adg_general(const ForwardProblem& fp, const EnsembleData& data, const AdgConfig& cfg = {});

/// sum_q |c'x_q - b'y| for an arbitrary (c, y).
double adg_loss(const ForwardProblem& fp, const EnsembleData& data, const Eigen::VectorXd& c,
                const Eigen::VectorXd& y);

/// Row i as a dual solution: c = a_i/||a_i||', y = e_i/||a_i||'.
FitResult row_solution(const ForwardProblem& fp, Eigen::Index row, Norm normalization_norm);

}  // namespace invlp

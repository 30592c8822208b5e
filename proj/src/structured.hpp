#pragma once

// Cost vectors restricted to the cone c = C'alpha, alpha >= 0, for forward
// problems with x >= 0. Data may be decisions x_q or objective values z_q = C x_q.

#include "model.hpp"

#include <cstdint>

namespace invlp {

/// Single LP: C'alpha >= A'y, 1'C'alpha = 1, min sum_q |alpha'z_q - b'y|.
/// Requires C >= 0 (StructureNotNonneg).
FitResult solve_structured_adg(const ForwardProblem& fp, const EnsembleData& data);

/// LP relaxation: C'alpha >= A'y, b'y = 1, min sum_q |alpha'z_q - 1|. The
/// result is rescaled so that ||C'alpha||_1 = 1.
FitResult solve_structured_rdg(const ForwardProblem& fp, const EnsembleData& data);

/// Objective-value vectors z_q (Q x K) for the data.
Eigen::MatrixXd objective_values(const ForwardProblem& fp, const EnsembleData& data);

/// Forward optimum for c = C'alpha over {A x >= b, x >= 0}.
Eigen::VectorXd structured_forward(const ForwardProblem& fp, const Eigen::VectorXd& alpha);

/// Q forward optima for weights alpha_q = normalize_1(max(0, alpha + noise g_q)),
/// g_q standard normal from a seeded mt19937_64.
EnsembleData gen_ensemble(const ForwardProblem& fp, const Eigen::VectorXd& true_alpha, Eigen::Index Q, double noise,
                          std::uint64_t seed);

}  // namespace invlp

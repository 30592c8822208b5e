#pragma once

// Decision-space loss: the smallest total p-norm move that puts every point
// on one face of P. The optimum is always a constraint row.

#include "model.hpp"

#include <vector>

namespace invlp {

/// V_i = sum_q ||x_q - proj_i(x_q)||_p for every row; +inf when the face of
/// row i is empty.
std::vector<double> dsp_row_values(const ForwardProblem& fp, const EnsembleData& data, Norm p);

/// argmin_i V_i with c* = a_i/||a_i||'. Throws InfeasibleForward when P is
/// empty.
FitResult solve_dsp(const ForwardProblem& fp, const EnsembleData& data, const SolverConfig& cfg = {});

}  // namespace invlp

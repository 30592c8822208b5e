#pragma once

// JSON problem/report files and the sweep CSV.

#include "gof.hpp"
#include "model.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace invlp {

struct ProblemFile {
  ForwardProblem problem;
  EnsembleData data;
};

/// Parses the problem document. Throws Error(Format) on malformed JSON or
/// wrongly typed/ragged fields; semantic checks are left to validate_problem.
ProblemFile parse_problem(const std::string& text);

/// Reads and parses a problem file. Throws Error(Io) when unreadable.
ProblemFile load_problem(const std::string& path);

nlohmann::json problem_to_json(const ForwardProblem& fp, const EnsembleData& data);
nlohmann::json fit_to_json(const FitResult& fit);
nlohmann::json gof_to_json(const GofReport& report);
nlohmann::json dominance_to_json(const DominanceReport& report);

/// Header `gamma1,gamma2,rho`, one row per node, gamma1 outermost; NaN as `nan`.
std::string sweep_to_csv(const GridSpec& grid, const Eigen::MatrixXd& rho);

}  // namespace invlp

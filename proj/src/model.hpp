#pragma once

// Domain types shared by every inverse solver: the forward problem, the
// observed ensemble, hyperparameters, and the result records.

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invlp {

enum class ErrorCode {
  InvalidArgument,
  Validation,
  ZeroVector,
  EmptyFace,
  NumericFailure,
  DegeneratePair,
  NoFiniteSolution,
  DimensionTooLarge,
  BIsZero,
  AllBranchesInfeasible,
  InfeasibleForward,
  StructureNotNonneg,
  StructuredDegenerate,
  BaselineUndefined,
  DegenerateBaseline,
  Io,
  Format,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Absolute tolerance on constraint residuals a_i'x - b_i.
inline constexpr double kFeasTol = 1e-8;

enum class Norm { L1, L2, LInf };
enum class Variant { ADG, RDG, DSP };

const char* to_string(Norm norm);
const char* to_string(Variant variant);

/// Vector norm of the given kind.
double norm_of(const Eigen::VectorXd& v, Norm norm);

/// Multi-objective cost cone c = C'alpha, alpha >= 0.
struct CostStructure {
  Eigen::MatrixXd C;  // K objectives x n
  bool require_nonnegative_C = true;
};

/// FO(c): min c'x s.t. A x >= b (and x >= 0 when x_nonneg).
struct ForwardProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::optional<CostStructure> cost_structure;
  bool x_nonneg = false;
  std::vector<std::string> row_labels;

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }
};

/// Observed decisions, one per row of `points`. In structured mode the rows
/// may instead hold objective-value vectors z_q = C x_q (length K).
struct EnsembleData {
  Eigen::MatrixXd points;  // Q x n, or Q x K when points_are_objectives
  bool points_are_objectives = false;

  EnsembleData() = default;
  explicit EnsembleData(Eigen::MatrixXd pts) : points(std::move(pts)) {}
  EnsembleData(std::initializer_list<std::initializer_list<double>> pts);

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
  Eigen::VectorXd point(Eigen::Index q) const { return points.row(q).transpose(); }
};

struct NormSpec {
  Norm normalization_norm = Norm::L1;  // the ||.||' on c; L1 or LInf
  Norm ds_p = Norm::L2;                // decision-space p, consulted for DSP only
  Variant variant = Variant::ADG;
};

/// Options shared by the inverse solvers and the fit-quality report.
struct SolverConfig {
  Norm normalization_norm = Norm::L1;  // L1 or LInf
  Norm ds_p = Norm::L2;
  bool nonneg_cost = false;
  std::optional<std::vector<bool>> support_mask;  // c_j fixed to 0 where false
  bool skip_zero_rhs = false;
};

enum class FeasibilityTag { AllFeasible, AllBelow, Mixed };
const char* to_string(FeasibilityTag tag);

struct FeasibilityClass {
  FeasibilityTag tag = FeasibilityTag::Mixed;
  Eigen::MatrixXd residuals;  // Q x m, entry (q, i) = a_i'x_q - b_i
};

enum class SolutionPath {
  FeasibleCentroid,
  ReversedCentroid,
  MixedConstruction,
  Decomposition,
  NonnegSingleLp,
  RdgRelaxation,
  RdgKDecomposition,
  HeuristicDelta,
  DspRowBattery,
  StructuredLp,
};
const char* to_string(SolutionPath path);

struct Diagnostics {
  std::size_t lp_calls = 0;
  std::size_t decomposition_lp_calls = 0;  // auxiliary battery + K sub-problems
  std::optional<double> k_star;
  std::optional<std::string> branch;
  std::vector<std::string> notes;
};

struct FitResult {
  Variant variant = Variant::ADG;
  Eigen::VectorXd c_star;
  Eigen::VectorXd y_star;
  Eigen::VectorXd eps;                       // scalar error per point (DSP: ||eps_q||_p)
  std::vector<Eigen::VectorXd> eps_vectors;  // DSP only
  double z_star = 0.0;
  std::optional<Eigen::Index> active_row;
  SolutionPath path = SolutionPath::Decomposition;
  Diagnostics diagnostics;
  Eigen::VectorXd alpha;  // structured mode only
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
};

ValidationReport validate_problem(const ForwardProblem& fp, const EnsembleData& data);

/// Throws Error(Validation) carrying the first issue when the input is malformed.
void require_valid(const ForwardProblem& fp, const EnsembleData& data);

/// The same polyhedron with x >= 0 turned into explicit rows.
ForwardProblem with_explicit_sign_rows(const ForwardProblem& fp);

Eigen::VectorXd centroid(const EnsembleData& data);

Eigen::MatrixXd residuals(const ForwardProblem& fp, const EnsembleData& data);

FeasibilityClass classify(const ForwardProblem& fp, const EnsembleData& data, double tol = kFeasTol);

}  // namespace invlp

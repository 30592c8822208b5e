#include "model.hpp"

#include <cmath>
#include <sstream>

namespace invlp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptyFace: return "EmptyFace";
    case ErrorCode::NumericFailure: return "NumericFailure";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NoFiniteSolution: return "NoFiniteSolution";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::BIsZero: return "BIsZero";
    case ErrorCode::AllBranchesInfeasible: return "AllBranchesInfeasible";
    case ErrorCode::InfeasibleForward: return "InfeasibleForward";
    case ErrorCode::StructureNotNonneg: return "StructureNotNonneg";
    case ErrorCode::StructuredDegenerate: return "StructuredDegenerate";
    case ErrorCode::BaselineUndefined: return "BaselineUndefined";
    case ErrorCode::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Format: return "Format";
  }
  return "Unknown";
}

const char* to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::LInf: return "linf";
  }
  return "?";
}

const char* to_string(Variant variant) {
  switch (variant) {
    case Variant::ADG: return "adg";
    case Variant::RDG: return "rdg";
    case Variant::DSP: return "dsp";
  }
  return "?";
}

const char* to_string(FeasibilityTag tag) {
  switch (tag) {
    case FeasibilityTag::AllFeasible: return "AllFeasible";
    case FeasibilityTag::AllBelow: return "AllBelow";
    case FeasibilityTag::Mixed: return "Mixed";
  }
  return "?";
}

const char* to_string(SolutionPath path) {
  switch (path) {
    case SolutionPath::FeasibleCentroid: return "feasible_centroid";
    case SolutionPath::ReversedCentroid: return "reversed_centroid";
    case SolutionPath::MixedConstruction: return "mixed_construction";
    case SolutionPath::Decomposition: return "decomposition";
    case SolutionPath::NonnegSingleLp: return "nonneg_single_lp";
    case SolutionPath::RdgRelaxation: return "rdg_relaxation";
    case SolutionPath::RdgKDecomposition: return "rdg_k_decomposition";
    case SolutionPath::HeuristicDelta: return "heuristic_delta";
    case SolutionPath::DspRowBattery: return "dsp_row_battery";
    case SolutionPath::StructuredLp: return "structured_lp";
  }
  return "?";
}

double norm_of(const Eigen::VectorXd& v, Norm norm) {
  switch (norm) {
    case Norm::L1: return v.lpNorm<1>();
    case Norm::L2: return v.norm();
    case Norm::LInf: return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

EnsembleData::EnsembleData(std::initializer_list<std::initializer_list<double>> pts) {
  const auto q = static_cast<Eigen::Index>(pts.size());
  const auto n = q == 0 ? 0 : static_cast<Eigen::Index>(pts.begin()->size());
  points.resize(q, n);
  Eigen::Index r = 0;
  for (const auto& row : pts) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "ragged point list");
    }
    Eigen::Index c = 0;
    for (double v : row) points(r, c++) = v;
    ++r;
  }
}

ValidationReport validate_problem(const ForwardProblem& fp, const EnsembleData& data) {
  ValidationReport report;
  auto fail = [&report](const std::string& msg) {
    report.ok = false;
    report.issues.push_back(msg);
  };
  const Eigen::Index m = fp.A.rows();
  const Eigen::Index n = fp.A.cols();
  if (m < 1 || n < 1) fail("constraint matrix must have at least one row and one column");
  if (fp.b.size() != m) {
    std::ostringstream os;
    os << "dimension mismatch: b has length " << fp.b.size() << ", expected " << m;
    fail(os.str());
  }
  if (!fp.A.allFinite()) fail("non-finite entry in A");
  if (!fp.b.allFinite()) fail("non-finite entry in b");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (fp.A.row(i).norm() <= 1e-12) fail("zero row " + std::to_string(i));
  }
  if (!fp.row_labels.empty() && static_cast<Eigen::Index>(fp.row_labels.size()) != m) {
    fail("row_labels has " + std::to_string(fp.row_labels.size()) + " entries, expected " + std::to_string(m));
  }

  Eigen::Index expected_dim = n;
  if (fp.cost_structure) {
    const auto& C = fp.cost_structure->C;
    if (C.rows() < 1 || C.cols() != n) {
      fail("dimension mismatch: C must have " + std::to_string(n) + " columns");
    }
    if (!C.allFinite()) fail("non-finite entry in C");
    if (data.points_are_objectives) expected_dim = C.rows();
  } else if (data.points_are_objectives) {
    fail("points given as objective values but no cost structure C");
  }

  if (data.size() < 1) fail("ensemble must contain at least one point");
  if (data.size() >= 1 && data.dim() != expected_dim) {
    std::ostringstream os;
    os << "dimension mismatch: points have dimension " << data.dim() << ", expected " << expected_dim;
    fail(os.str());
  }
  if (!data.points.allFinite()) fail("non-finite entry in points");
  return report;
}

void require_valid(const ForwardProblem& fp, const EnsembleData& data) {
  auto report = validate_problem(fp, data);
  if (!report.ok) throw Error(ErrorCode::Validation, report.issues.front());
}

ForwardProblem with_explicit_sign_rows(const ForwardProblem& fp) {
  if (!fp.x_nonneg) return fp;
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  ForwardProblem out = fp;
  out.x_nonneg = false;
  out.A.resize(m + n, n);
  out.A << fp.A, Eigen::MatrixXd::Identity(n, n);
  out.b.resize(m + n);
  out.b << fp.b, Eigen::VectorXd::Zero(n);
  if (!fp.row_labels.empty()) {
    for (Eigen::Index j = 0; j < n; ++j) out.row_labels.push_back("x" + std::to_string(j) + " >= 0");
  }
  return out;
}

Eigen::VectorXd centroid(const EnsembleData& data) {
  if (data.size() < 1) throw Error(ErrorCode::InvalidArgument, "centroid of an empty ensemble");
  return data.points.colwise().mean().transpose();
}

Eigen::MatrixXd residuals(const ForwardProblem& fp, const EnsembleData& data) {
  return (data.points * fp.A.transpose()).rowwise() - fp.b.transpose();
}

FeasibilityClass classify(const ForwardProblem& fp, const EnsembleData& data, double tol) {
  FeasibilityClass out;
  out.residuals = residuals(fp, data);
  const auto& r = out.residuals;
  if ((r.array() >= -tol).all()) {
    out.tag = FeasibilityTag::AllFeasible;
  } else if ((r.array() <= tol).all()) {
    // every point has A x <= b, and at least one is strictly infeasible
    out.tag = FeasibilityTag::AllBelow;
  } else {
    out.tag = FeasibilityTag::Mixed;
  }
  return out;
}

}  // namespace invlp

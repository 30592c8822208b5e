#include "branches.hpp"

#include <cstdint>

namespace invlp {

void check_mask(const SolverConfig& cfg, Eigen::Index n) {
  if (!cfg.support_mask) return;
  const auto& mask = *cfg.support_mask;
  if (static_cast<Eigen::Index>(mask.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "support mask has length " + std::to_string(mask.size()) +
                                                ", expected " + std::to_string(n));
  }
  bool any = false;
  for (bool b : mask) any = any || b;
  if (!any) throw Error(ErrorCode::InvalidArgument, "support mask selects no coordinate");
}

std::vector<NormBranch> normalization_branches(Eigen::Index n, const SolverConfig& cfg,
                                               std::optional<double> at_least) {
  check_mask(cfg, n);
  std::vector<NormBranch> out;
  const double free_lo = cfg.nonneg_cost ? 0.0 : -kInf;

  if (cfg.normalization_norm == Norm::LInf) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (masked_out(cfg, j)) continue;
      for (int s : {1, -1}) {
        if (s < 0 && cfg.nonneg_cost) continue;
        NormBranch br;
        br.label = "j=" + std::to_string(j) + (s > 0 ? ",+" : ",-");
        if (at_least) {
          br.lower = Eigen::VectorXd::Constant(n, free_lo);
          br.upper = Eigen::VectorXd::Constant(n, kInf);
          if (s > 0) {
            br.lower[j] = *at_least;
          } else {
            br.upper[j] = -*at_least;
          }
        } else {
          br.lower = Eigen::VectorXd::Constant(n, cfg.nonneg_cost ? 0.0 : -1.0);
          br.upper = Eigen::VectorXd::Ones(n);
          br.lower[j] = br.upper[j] = s;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          if (masked_out(cfg, k)) br.lower[k] = br.upper[k] = 0.0;
        }
        out.push_back(std::move(br));
      }
    }
    return out;
  }

  if (cfg.normalization_norm != Norm::L1) {
    throw Error(ErrorCode::InvalidArgument, "normalization norm must be l1 or linf");
  }
  auto make = [&](const std::string& label, const Eigen::VectorXd& signs) {
    NormBranch br;
    br.label = label;
    br.lower.resize(n);
    br.upper.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (masked_out(cfg, k)) {
        br.lower[k] = br.upper[k] = 0.0;
      } else if (signs[k] > 0) {
        br.lower[k] = 0.0;
        br.upper[k] = kInf;
      } else {
        br.lower[k] = -kInf;
        br.upper[k] = 0.0;
      }
    }
    Eigen::VectorXd coeffs = signs;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (masked_out(cfg, k)) coeffs[k] = 0.0;
    }
    br.sum_coeffs = coeffs;
    br.sum_relation = at_least ? Relation::GreaterEqual : Relation::Equal;
    br.sum_rhs = at_least ? *at_least : 1.0;
    out.push_back(std::move(br));
  };

  if (cfg.nonneg_cost) {
    make("nonneg", Eigen::VectorXd::Ones(n));
    return out;
  }
  if (n > kMaxOrthantDim) {
    throw Error(ErrorCode::DimensionTooLarge, "1-norm decomposition needs 2^n LPs; n = " + std::to_string(n) +
                                                  " exceeds " + std::to_string(kMaxOrthantDim));
  }
  std::uint64_t free_bits = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!masked_out(cfg, k)) free_bits |= std::uint64_t{1} << k;
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t pattern = 0; pattern < count; ++pattern) {
    if ((pattern & ~free_bits) != 0) continue;  // masked coordinates carry no sign
    Eigen::VectorXd signs(n);
    for (Eigen::Index k = 0; k < n; ++k) signs[k] = (pattern >> k) & 1U ? -1.0 : 1.0;
    make("orthant=" + std::to_string(pattern), signs);
  }
  return out;
}

void apply_branch(LpProblem& lp, const NormBranch& branch, Eigen::Index offset) {
  const Eigen::Index n = branch.lower.size();
  for (Eigen::Index k = 0; k < n; ++k) lp.set_bounds(offset + k, branch.lower[k], branch.upper[k]);
  if (branch.sum_coeffs) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(lp.num_vars());
    row.segment(offset, n) = *branch.sum_coeffs;
    lp.add_row(row, branch.sum_relation, branch.sum_rhs);
  }
}

void apply_cost_restrictions(LpProblem& lp, const SolverConfig& cfg, Eigen::Index offset, Eigen::Index n) {
  check_mask(cfg, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (masked_out(cfg, k)) {
      lp.fix(offset + k, 0.0);
    } else {
      lp.set_bounds(offset + k, cfg.nonneg_cost ? 0.0 : -kInf, kInf);
    }
  }
}

}  // namespace invlp

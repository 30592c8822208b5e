#include "oracle.hpp"

#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace invlp {

namespace {

void for_each_subset(Eigen::Index m, Eigen::Index max_size, const std::function<void(const std::vector<Eigen::Index>&)>& fn) {
  std::vector<Eigen::Index> subset;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index start) {
    if (!subset.empty()) fn(subset);
    if (static_cast<Eigen::Index>(subset.size()) == max_size) return;
    for (Eigen::Index i = start; i < m; ++i) {
      subset.push_back(i);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
}

Eigen::MatrixXd columns_of(const Eigen::MatrixXd& At, const std::vector<Eigen::Index>& subset) {
  Eigen::MatrixXd M(At.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t k = 0; k < subset.size(); ++k) M.col(static_cast<Eigen::Index>(k)) = At.col(subset[k]);
  return M;
}

// Basic supports of {y >= 0 : A'y = c} and the direction of unboundedness
// of b'y, both independent of c.
class DualEnumerator {
 public:
  explicit DualEnumerator(const ForwardProblem& fp) : b_(fp.b) {
    const Eigen::MatrixXd At = fp.A.transpose();
    const Eigen::Index n = At.rows();
    const Eigen::Index m = At.cols();
    for_each_subset(m, std::min(m, n), [&](const std::vector<Eigen::Index>& s) {
      Eigen::MatrixXd M = columns_of(At, s);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      lu.setThreshold(1e-10);
      if (lu.rank() != M.cols()) return;
      Support sup;
      sup.rows = s;
      sup.M = M;
      sup.pinv = (M.transpose() * M).inverse() * M.transpose();
      supports_.push_back(std::move(sup));
    });
    for_each_subset(m, std::min(m, n + 1), [&](const std::vector<Eigen::Index>& s) {
      if (s.size() < 2 && At.col(s[0]).norm() > 1e-12) return;
      Eigen::MatrixXd M = columns_of(At, s);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      lu.setThreshold(1e-10);
      const Eigen::MatrixXd kernel = lu.kernel();
      if (kernel.cols() != 1 || lu.rank() + 1 != M.cols()) return;
      Eigen::VectorXd d = kernel.col(0);
      d /= d.cwiseAbs().maxCoeff();
      if ((d.array() < 0.0).all()) d = -d;
      if ((d.array() <= 1e-12).any()) return;  // not a nonnegative minimal ray
      double bd = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) bd += b_[s[k]] * d[static_cast<Eigen::Index>(k)];
      if (bd < -1e-10) lo_unbounded_ = true;
      if (bd > 1e-10) hi_unbounded_ = true;
    });
  }

  DualRange range(const Eigen::VectorXd& c) const {
    DualRange out;
    double lo = kInf;
    double hi = -kInf;
    const double tol = 1e-12 * (1.0 + c.lpNorm<Eigen::Infinity>());
    if (c.lpNorm<Eigen::Infinity>() <= tol) {
      lo = hi = 0.0;
    }
    for (const auto& sup : supports_) {
      const Eigen::VectorXd y = sup.pinv * c;
      if ((y.array() < -tol).any()) continue;
      if ((sup.M * y - c).lpNorm<Eigen::Infinity>() > tol) continue;
      double by = 0.0;
      for (std::size_t k = 0; k < sup.rows.size(); ++k) by += b_[sup.rows[k]] * y[static_cast<Eigen::Index>(k)];
      lo = std::min(lo, by);
      hi = std::max(hi, by);
    }
    if (lo > hi) return out;
    out.feasible = true;
    out.lo = lo_unbounded_ ? -kInf : lo;
    out.hi = hi_unbounded_ ? kInf : hi;
    return out;
  }

 private:
  struct Support {
    std::vector<Eigen::Index> rows;
    Eigen::MatrixXd M;
    Eigen::MatrixXd pinv;
  };
  Eigen::VectorXd b_;
  std::vector<Support> supports_;
  bool lo_unbounded_ = false;
  bool hi_unbounded_ = false;
};

// Minimum of sum_q |v_q / t - 1| over t in [lo, hi], t != 0 (t = 0 allowed
// only when every v_q vanishes, with loss 0). Piecewise linear and convex in
// s = 1/t, so breakpoints and interval ends suffice.
double min_relative_loss(const Eigen::VectorXd& v, double lo, double hi) {
  if (lo <= 0.0 && hi >= 0.0 && v.cwiseAbs().maxCoeff() <= 1e-9) return 0.0;
  auto f = [&v](double s) { return (v.array() * s - 1.0).abs().sum(); };
  double best = kInf;
  auto scan = [&](double s_lo, double s_hi) {
    if (s_lo > s_hi) return;
    if (std::isfinite(s_lo)) best = std::min(best, f(s_lo));
    if (std::isfinite(s_hi)) best = std::min(best, f(s_hi));
    for (Eigen::Index q = 0; q < v.size(); ++q) {
      if (v[q] == 0.0) continue;
      const double s = 1.0 / v[q];
      if (s >= s_lo && s <= s_hi) best = std::min(best, f(s));
    }
  };
  if (hi > 0.0) {
    const double s_lo = std::isinf(hi) ? 0.0 : 1.0 / hi;
    const double s_hi = lo > 0.0 ? 1.0 / lo : kInf;
    scan(s_lo, s_hi);
  }
  if (lo < 0.0) {
    const double s_lo = hi < 0.0 ? 1.0 / hi : -kInf;
    const double s_hi = std::isinf(lo) ? 0.0 : 1.0 / lo;
    scan(s_lo, s_hi);
  }
  return best;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double* arg, int iterations = 80) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations && b - a > 1e-13; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  const double fa = f(a);
  const double fb = f(b);
  double best = std::min({f1, f2, fa, fb});
  if (arg) *arg = best == fa ? a : best == fb ? b : best == f1 ? x1 : x2;
  return best;
}

Eigen::VectorXd direction(double theta, Norm norm) {
  Eigen::VectorXd u(2);
  u << std::cos(theta), std::sin(theta);
  return u / norm_of(u, norm);
}

// Minimises loss(c) over normalized row directions and, for n = 2, an
// angular sweep with golden refinement around every local minimum.
OracleResult direction_search(const ForwardProblem& fp, Norm norm, double step,
                              const std::function<double(const Eigen::VectorXd&)>& loss) {
  OracleResult out;
  out.value = kInf;
  auto consider = [&out](double v, const Eigen::VectorXd& c) {
    if (v < out.value) {
      out.value = v;
      out.direction = c;
    }
  };
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    const Eigen::VectorXd a = fp.A.row(i).transpose();
    const Eigen::VectorXd c = a / norm_of(a, norm);
    consider(loss(c), c);
  }
  if (fp.cols() != 2) return out;

  const auto count = static_cast<Eigen::Index>(std::ceil(2.0 * std::numbers::pi / step));
  const double h = 2.0 * std::numbers::pi / static_cast<double>(count);
  std::vector<double> f(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    const Eigen::VectorXd c = direction(h * static_cast<double>(k), norm);
    f[static_cast<std::size_t>(k)] = loss(c);
    consider(f[static_cast<std::size_t>(k)], c);
  }
  auto theta_loss = [&](double theta) { return loss(direction(theta, norm)); };
  for (Eigen::Index k = 0; k < count; ++k) {
    const double prev = f[static_cast<std::size_t>((k + count - 1) % count)];
    const double cur = f[static_cast<std::size_t>(k)];
    const double next = f[static_cast<std::size_t>((k + 1) % count)];
    if (std::isfinite(cur) && std::isfinite(next)) {
      out.discretization_bound = std::max(out.discretization_bound, std::abs(next - cur) / 2.0);
    }
    if (!std::isfinite(cur) || !std::isfinite(prev) || !std::isfinite(next) || cur > prev || cur > next) continue;
    const double theta = h * static_cast<double>(k);
    double arg = theta;
    const double v = golden_min(theta_loss, theta - h, theta + h, &arg);
    consider(v, direction(arg, norm));
  }
  return out;
}

}  // namespace

DualRange dual_range(const ForwardProblem& fp, const Eigen::VectorXd& c) { return DualEnumerator(fp).range(c); }

OracleResult oracle_adg(const ForwardProblem& fp, const EnsembleData& data, Norm normalization_norm,
                        double angular_step) {
  require_valid(fp, data);
  const DualEnumerator duals(fp);
  auto loss = [&](const Eigen::VectorXd& c) {
    const DualRange r = duals.range(c);
    if (!r.feasible) return kInf;
    const Eigen::VectorXd v = data.points * c;
    return min_abs_deviation(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), r.lo, r.hi)
        .loss;
  };
  return direction_search(fp, normalization_norm, angular_step, loss);
}

OracleResult oracle_rdg(const ForwardProblem& fp, const EnsembleData& data, double angular_step) {
  require_valid(fp, data);
  const DualEnumerator duals(fp);
  auto loss = [&](const Eigen::VectorXd& c) {
    const DualRange r = duals.range(c);
    if (!r.feasible) return kInf;
    return min_relative_loss(data.points * c, r.lo, r.hi);
  };
  return direction_search(fp, Norm::L1, angular_step, loss);
}

OracleResult oracle_dsp(const ForwardProblem& fp, const EnsembleData& data, Norm p, double grid_step) {
  require_valid(fp, data);
  if (fp.cols() != 2) throw Error(ErrorCode::InvalidArgument, "decision-space oracle supports n = 2 only");
  Eigen::MatrixXd G = fp.A;
  Eigen::VectorXd h = fp.b;
  if (fp.x_nonneg) {
    G.conservativeResize(fp.rows() + 2, 2);
    G.bottomRows(2) = Eigen::Matrix2d::Identity();
    h.conservativeResize(fp.rows() + 2);
    h.tail(2).setZero();
  }

  OracleResult out;
  out.value = kInf;
  for (Eigen::Index i = 0; i < fp.rows(); ++i) {
    const Eigen::VectorXd a = fp.A.row(i).transpose();
    const Eigen::VectorXd x0 = a * (fp.b[i] / a.squaredNorm());
    Eigen::VectorXd d(2);
    d << -a[1], a[0];
    d /= d.norm();
    double lo = -kInf;
    double hi = kInf;
    bool empty = false;
    for (Eigen::Index k = 0; k < G.rows() && !empty; ++k) {
      if (k == i) continue;
      const double g = G.row(k).dot(d);
      const double r = h[k] - G.row(k).dot(x0);
      if (std::abs(g) <= 1e-12) {
        empty = r > 1e-9;
      } else if (g > 0.0) {
        lo = std::max(lo, r / g);
      } else {
        hi = std::min(hi, r / g);
      }
    }
    if (empty || lo > hi + 1e-12) continue;

    double total = 0.0;
    double bound = 0.0;
    for (Eigen::Index q = 0; q < data.size(); ++q) {
      const Eigen::VectorXd x = data.point(q);
      auto dist = [&](double tau) { return norm_of(Eigen::VectorXd(x - x0 - tau * d), p); };
      const double centre = d.dot(x - x0);
      const double reach = 4.0 * (x - x0).norm() + 1.0;
      const double a_lo = std::isfinite(lo) ? lo : std::min(centre - reach, hi);
      const double a_hi = std::isfinite(hi) ? hi : std::max(centre + reach, a_lo);
      const auto cells = static_cast<Eigen::Index>(
          std::clamp(std::ceil((a_hi - a_lo) / grid_step), 1.0, 4000.0));
      const double w = (a_hi - a_lo) / static_cast<double>(cells);
      Eigen::Index best_k = 0;
      double best = kInf;
      for (Eigen::Index k = 0; k <= cells; ++k) {
        const double v = dist(a_lo + w * static_cast<double>(k));
        if (v < best) {
          best = v;
          best_k = k;
        }
      }
      const double left = a_lo + w * static_cast<double>(std::max<Eigen::Index>(best_k - 1, 0));
      const double right = a_lo + w * static_cast<double>(std::min(best_k + 1, cells));
      best = std::min(best, golden_min(dist, left, right, nullptr));
      total += best;
      bound += 1e-12 * (1.0 + reach);
    }
    if (total < out.value) {
      out.value = total;
      out.direction = a / a.lpNorm<1>();
      out.discretization_bound = bound;
    }
  }
  if (!std::isfinite(out.value)) throw Error(ErrorCode::NoFiniteSolution, "every face of P is empty");
  return out;
}

}  // namespace invlp

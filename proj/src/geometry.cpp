#include "geometry.hpp"

#include "lp.hpp"

#include <cmath>
#include <vector>

namespace invlp {

double dual_norm(Norm norm, const Eigen::VectorXd& v) {
  switch (norm) {
    case Norm::L1: return norm_of(v, Norm::LInf);
    case Norm::L2: return norm_of(v, Norm::L2);
    case Norm::LInf: return norm_of(v, Norm::L1);
  }
  return 0.0;
}

Eigen::VectorXd unit_maximizer(Norm norm, const Eigen::VectorXd& a) {
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() <= 1e-12) {
    throw Error(ErrorCode::ZeroVector, "unit maximizer of a zero vector");
  }
  Eigen::VectorXd u = Eigen::VectorXd::Zero(a.size());
  switch (norm) {
    case Norm::LInf:
      for (Eigen::Index j = 0; j < a.size(); ++j) u[j] = a[j] < 0.0 ? -1.0 : 1.0;
      break;
    case Norm::L1: {
      Eigen::Index best = 0;
      for (Eigen::Index j = 1; j < a.size(); ++j) {
        if (std::abs(a[j]) > std::abs(a[best])) best = j;
      }
      u[best] = a[best] < 0.0 ? -1.0 : 1.0;
      break;
    }
    case Norm::L2:
      u = a / a.norm();
      break;
  }
  return u;
}

ProjectionResult project_to_hyperplane(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& a, double b,
                                       Norm loss_norm) {
  Eigen::VectorXd u = unit_maximizer(loss_norm, a);
  // For the inf-norm any sign on a zero coordinate is a maximizer; leave
  // those coordinates untouched so the step is along the normal's support.
  if (loss_norm == Norm::LInf) u = (a.array() != 0.0).select(u, 0.0);
  ProjectionResult out;
  out.distance = (a.dot(x_hat) - b) / dual_norm(loss_norm, a);
  out.point = x_hat - out.distance * u;
  out.eps = x_hat - out.point;
  return out;
}

namespace {

// Constraint system G x >= h describing P, including x >= 0 when flagged.
struct Polyhedron {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
};

Polyhedron polyhedron_of(const ForwardProblem& fp) {
  const Eigen::Index m = fp.rows();
  const Eigen::Index n = fp.cols();
  Polyhedron poly;
  if (!fp.x_nonneg) {
    poly.G = fp.A;
    poly.h = fp.b;
    return poly;
  }
  poly.G.resize(m + n, n);
  poly.G << fp.A, Eigen::MatrixXd::Identity(n, n);
  poly.h.resize(m + n);
  poly.h << fp.b, Eigen::VectorXd::Zero(n);
  return poly;
}

// Minimise ||x - x_hat|| in l1 or linf over the face with an LP.
Eigen::VectorXd polyhedral_projection(const Polyhedron& poly, const Eigen::VectorXd& x_hat, const Eigen::VectorXd& a,
                                      double beta, Norm p) {
  const Eigen::Index n = x_hat.size();
  const Eigen::Index nt = p == Norm::L1 ? n : 1;
  LpProblem lp(n + nt);
  for (Eigen::Index j = 0; j < n; ++j) lp.set_free(j);
  lp.objective().tail(nt).setOnes();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index tj = n + (p == Norm::L1 ? j : 0);
    Eigen::VectorXd up = Eigen::VectorXd::Zero(n + nt);
    up[tj] = 1.0;
    up[j] = -1.0;
    lp.add_row(up, Relation::GreaterEqual, -x_hat[j]);
    Eigen::VectorXd down = Eigen::VectorXd::Zero(n + nt);
    down[tj] = 1.0;
    down[j] = 1.0;
    lp.add_row(down, Relation::GreaterEqual, x_hat[j]);
  }
  for (Eigen::Index k = 0; k < poly.G.rows(); ++k) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + nt);
    row.head(n) = poly.G.row(k).transpose();
    lp.add_row(row, Relation::GreaterEqual, poly.h[k]);
  }
  Eigen::VectorXd eq = Eigen::VectorXd::Zero(n + nt);
  eq.head(n) = a;
  lp.add_row(eq, Relation::Equal, beta);
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible) throw Error(ErrorCode::EmptyFace, "face of P is empty");
  if (!sol.optimal()) throw Error(ErrorCode::NumericFailure, "projection LP unbounded");
  return sol.x.head(n);
}

bool independent_of(const std::vector<Eigen::VectorXd>& rows, const Eigen::VectorXd& candidate) {
  Eigen::MatrixXd M(candidate.size(), static_cast<Eigen::Index>(rows.size()) + 1);
  for (std::size_t k = 0; k < rows.size(); ++k) M.col(static_cast<Eigen::Index>(k)) = rows[k];
  M.col(M.cols() - 1) = candidate;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(1e-10);
  return qr.rank() == M.cols();
}

// Primal active-set method for min 1/2 ||x - x_hat||^2 over the face,
// warm-started from a feasible point. Working-set entry -1 is the equality.
Eigen::VectorXd euclidean_projection(const Polyhedron& poly, const Eigen::VectorXd& x_hat, const Eigen::VectorXd& a,
                                     const Eigen::VectorXd& start) {
  constexpr int kMaxIterations = 100;
  constexpr double kActiveTol = 1e-9;
  const Eigen::Index n = x_hat.size();
  const Eigen::Index rows = poly.G.rows();
  Eigen::VectorXd x = start;

  std::vector<Eigen::Index> working{-1};
  std::vector<Eigen::VectorXd> normals{a};
  for (Eigen::Index k = 0; k < rows; ++k) {
    if (std::abs(poly.G.row(k).dot(x) - poly.h[k]) > kActiveTol) continue;
    Eigen::VectorXd g = poly.G.row(k).transpose();
    if (static_cast<Eigen::Index>(normals.size()) < n && independent_of(normals, g)) {
      working.push_back(k);
      normals.push_back(g);
    }
  }

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const auto w = static_cast<Eigen::Index>(working.size());
    Eigen::MatrixXd GW(n, w);
    for (Eigen::Index k = 0; k < w; ++k) GW.col(k) = normals[static_cast<std::size_t>(k)];
    const Eigen::VectorXd grad = x - x_hat;
    const Eigen::VectorXd lambda = GW.colPivHouseholderQr().solve(grad);
    const Eigen::VectorXd d = GW * lambda - grad;

    if (d.norm() <= 1e-12 * (1.0 + x.norm())) {
      Eigen::Index drop = -1;
      double most_negative = -1e-10;
      for (Eigen::Index k = 1; k < w; ++k) {
        if (lambda[k] < most_negative) {
          most_negative = lambda[k];
          drop = k;
        }
      }
      if (drop < 0) return x;
      working.erase(working.begin() + drop);
      normals.erase(normals.begin() + drop);
      continue;
    }

    double step = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index k = 0; k < rows; ++k) {
      bool in_working = false;
      for (Eigen::Index wk : working) in_working = in_working || wk == k;
      if (in_working) continue;
      const double slope = poly.G.row(k).dot(d);
      if (slope >= -1e-14) continue;
      const double room = std::max(0.0, poly.G.row(k).dot(x) - poly.h[k]);
      const double alpha = room / -slope;
      if (alpha < step) {
        step = alpha;
        blocking = k;
      }
    }
    x += step * d;
    if (blocking >= 0) {
      working.push_back(blocking);
      normals.push_back(poly.G.row(blocking).transpose());
    }
  }
  throw Error(ErrorCode::NumericFailure, "active-set projection did not converge");
}

}  // namespace

ProjectionResult project_onto_face(const ForwardProblem& fp, const Eigen::VectorXd& x_hat, const Eigen::VectorXd& a,
                                   double beta, Norm p) {
  if (x_hat.size() != fp.cols() || a.size() != fp.cols()) {
    throw Error(ErrorCode::InvalidArgument, "projection dimension mismatch");
  }
  const Polyhedron poly = polyhedron_of(fp);
  Eigen::VectorXd point = polyhedral_projection(poly, x_hat, a, beta, p == Norm::L1 ? Norm::L1 : Norm::LInf);
  if (p == Norm::L2) point = euclidean_projection(poly, x_hat, a, point);
  ProjectionResult out;
  out.point = point;
  out.eps = x_hat - point;
  out.distance = norm_of(out.eps, p);
  return out;
}

ProjectionResult feasible_project(const ForwardProblem& fp, const Eigen::VectorXd& x_hat, Eigen::Index row, Norm p) {
  if (row < 0 || row >= fp.rows()) throw Error(ErrorCode::InvalidArgument, "row index out of range");
  return project_onto_face(fp, x_hat, fp.A.row(row).transpose(), fp.b[row], p);
}

}  // namespace invlp

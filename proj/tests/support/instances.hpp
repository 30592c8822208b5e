#pragma once

// Fixed instances and seeded random generators shared by the unit and
// acceptance tests.

#include "model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

namespace invlp::testing {

inline ForwardProblem make_problem(std::initializer_list<std::initializer_list<double>> rows,
                                   std::initializer_list<double> rhs) {
  ForwardProblem fp;
  EnsembleData tmp(rows);
  fp.A = tmp.points;
  fp.b = Eigen::Map<const Eigen::VectorXd>(rhs.begin(), static_cast<Eigen::Index>(rhs.size()));
  return fp;
}

// 1 <= x1 <= 7, 1 <= x2 <= 7 written as >= rows.
inline ForwardProblem square() { return make_problem({{-1, 0}, {0, -1}, {1, 0}, {0, 1}}, {-7, -7, 1, 1}); }

inline EnsembleData square_x1() { return EnsembleData{{3.75, 2}, {4, 2.25}, {4.25, 2}}; }
inline EnsembleData square_x2() { return EnsembleData{{1.5, 2}, {4, 6.25}, {6.5, 2}}; }

// -0.71 x1 + 0.71 x2 >= -2.83, x1 <= 7, x2 <= v, x1 >= u, x2 >= 1.
inline ForwardProblem example1(double u, double v) {
  return make_problem({{-0.71, 0.71}, {-1, 0}, {0, -1}, {1, 0}, {0, 1}}, {-2.83, -7, -v, u, 1});
}
inline EnsembleData example1_points() { return EnsembleData{{5, 2.5}, {4.75, 3.75}, {5.5, 3}}; }

inline ForwardProblem example3() {
  return make_problem({{0.71, 0.71}, {0.71, -0.71}, {-1, 0}, {0, -1}, {0, 1}}, {4.24, -2.83, -7, -7, 1});
}
inline EnsembleData example3_points() { return EnsembleData{{2, 5}, {3, 6}, {5, 4}}; }

// x1 - x2 >= 0, -x1 - x2 >= 0.
inline ForwardProblem cone() { return make_problem({{1, -1}, {-1, -1}}, {0, 0}); }

// The cone shifted so that b != 0: x1 - x2 >= 0, -x1 - x2 >= -2.
inline ForwardProblem shifted_cone() { return make_problem({{1, -1}, {-1, -1}}, {0, -2}); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  Eigen::VectorXd unit(Eigen::Index n) {
    Eigen::VectorXd v(n);
    do {
      for (Eigen::Index k = 0; k < n; ++k) v[k] = normal();
    } while (v.norm() < 1e-3);
    return v / v.norm();
  }

 private:
  std::mt19937_64 gen_;
};

struct Instance {
  ForwardProblem fp;
  EnsembleData data;
};

// Bounded polytope around `centre`: a box of half-width 4 plus m - 2n random
// cuts whose offsets keep the centre interior.
inline ForwardProblem random_polytope(Rng& rng, Eigen::Index n, Eigen::Index m) {
  ForwardProblem fp;
  fp.A.resize(m, n);
  fp.b.resize(m);
  Eigen::VectorXd centre(n);
  for (Eigen::Index j = 0; j < n; ++j) centre[j] = rng.uniform(-2, 2);
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < n && r + 1 < m; ++j) {
    const double lo = centre[j] - rng.uniform(2, 4);
    const double hi = centre[j] + rng.uniform(2, 4);
    fp.A.row(r).setZero();
    fp.A(r, j) = 1.0;
    fp.b[r++] = lo;
    fp.A.row(r).setZero();
    fp.A(r, j) = -1.0;
    fp.b[r++] = -hi;
  }
  for (; r < m; ++r) {
    const Eigen::VectorXd a = rng.unit(n) * rng.uniform(0.5, 2.0);
    fp.A.row(r) = a.transpose();
    fp.b[r] = a.dot(centre) - rng.uniform(0.5, 2.5) * a.norm();
  }
  return fp;
}

inline bool inside(const ForwardProblem& fp, const Eigen::VectorXd& x, double tol = 0.0) {
  return ((fp.A * x - fp.b).array() >= -tol).all();
}

// Points drawn uniformly from a box and kept only when they lie in P.
inline EnsembleData random_feasible_points(Rng& rng, const ForwardProblem& fp, Eigen::Index Q) {
  const Eigen::Index n = fp.cols();
  EnsembleData data(Eigen::MatrixXd(Q, n));
  for (Eigen::Index q = 0; q < Q; ++q) {
    Eigen::VectorXd x(n);
    do {
      for (Eigen::Index j = 0; j < n; ++j) x[j] = rng.uniform(-6, 6);
    } while (!inside(fp, x, -1e-6));
    data.points.row(q) = x.transpose();
  }
  return data;
}

inline EnsembleData random_points(Rng& rng, Eigen::Index n, Eigen::Index Q, double half_width) {
  EnsembleData data(Eigen::MatrixXd(Q, n));
  for (Eigen::Index q = 0; q < Q; ++q) {
    for (Eigen::Index j = 0; j < n; ++j) data.points(q, j) = rng.uniform(-half_width, half_width);
  }
  return data;
}

inline Instance random_feasible_instance(Rng& rng, Eigen::Index n_lo = 2, Eigen::Index n_hi = 4) {
  Instance inst;
  const Eigen::Index n = rng.integer(static_cast<int>(n_lo), static_cast<int>(n_hi));
  const Eigen::Index m = rng.integer(static_cast<int>(std::max<Eigen::Index>(4, 2 * n)), 8);
  inst.fp = random_polytope(rng, n, std::max(m, 2 * n));
  inst.data = random_feasible_points(rng, inst.fp, rng.integer(1, 5));
  return inst;
}

// Pointed cone-like region {a_i'x >= b_i} with every a_i'w > 0, and points far
// along -w so that A x <= b holds for all of them.
inline Instance random_all_below_instance(Rng& rng, Eigen::Index n, Eigen::Index m, Eigen::Index Q) {
  Instance inst;
  const Eigen::VectorXd w = rng.unit(n);
  inst.fp.A.resize(m, n);
  inst.fp.b.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXd a;
    do {
      a = rng.unit(n);
    } while (a.dot(w) < 0.3);
    inst.fp.A.row(i) = a.transpose();
    inst.fp.b[i] = rng.uniform(-1, 1);
  }
  inst.data.points.resize(Q, n);
  for (Eigen::Index q = 0; q < Q; ++q) {
    Eigen::VectorXd x = -rng.uniform(4, 8) * w;
    for (Eigen::Index j = 0; j < n; ++j) x[j] += rng.uniform(-0.5, 0.5);
    while (((inst.fp.A * x - inst.fp.b).array() > 0.0).any()) x -= w;
    inst.data.points.row(q) = x.transpose();
  }
  return inst;
}

}  // namespace invlp::testing

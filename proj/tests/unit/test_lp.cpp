#include "instances.hpp"
#include "lp.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace invlp {
namespace {

using namespace invlp::testing;

LpProblem box_lp(const ForwardProblem& fp, const Eigen::VectorXd& c) {
  LpProblem lp(fp.cols());
  lp.objective() = c;
  for (Eigen::Index j = 0; j < fp.cols(); ++j) lp.set_free(j);
  for (Eigen::Index i = 0; i < fp.rows(); ++i) lp.add_row(fp.A.row(i).transpose(), Relation::GreaterEqual, fp.b[i]);
  return lp;
}

TEST(SolveLp, FacetOptimum) {
  const auto sol = solve_lp(box_lp(square(), Eigen::Vector2d(0, 1)));
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
  EXPECT_NEAR(sol.x[1], 1.0, 1e-12);
}

TEST(SolveLp, Unbounded) {
  LpProblem lp(1);
  lp.set_free(0);
  lp.objective()[0] = -1.0;
  lp.add_row(Eigen::VectorXd::Ones(1), Relation::GreaterEqual, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(SolveLp, Infeasible) {
  LpProblem lp(1);
  lp.set_free(0);
  lp.objective()[0] = 0.0;
  lp.add_row(Eigen::VectorXd::Ones(1), Relation::GreaterEqual, 1.0);
  lp.add_row(Eigen::VectorXd::Ones(1), Relation::LessEqual, 0.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(SolveLp, EqualityAndBounds) {
  // min x + 2y s.t. x + y = 3, 0 <= x <= 2, y free.
  LpProblem lp(2);
  lp.objective() << 1, 2;
  lp.set_bounds(0, 0, 2);
  lp.set_free(1);
  lp.add_row(Eigen::Vector2d(1, 1), Relation::Equal, 3.0);
  const auto sol = solve_lp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.x[0], 2.0, 1e-12);
  EXPECT_NEAR(sol.x[1], 1.0, 1e-12);
  EXPECT_NEAR(sol.objective, 4.0, 1e-12);
}

TEST(SolveLp, RejectsMalformedProblem) {
  LpProblem lp(2);
  EXPECT_THROW(lp.add_row(Eigen::VectorXd::Ones(3), Relation::Equal, 0.0), Error);
}

TEST(SolveLp, StrongDualitySpotCheck) {
  // Primal: min c'x s.t. A x >= b, x free. Dual: max b'y s.t. A'y = c, y >= 0.
  Rng rng(2024);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = rng.integer(2, 6);
    const Eigen::Index m = rng.integer(static_cast<int>(2 * n), std::max<int>(6, static_cast<int>(2 * n)));
    const auto fp = random_polytope(rng, n, m);
    const Eigen::VectorXd c = rng.unit(n);
    const auto primal = solve_lp(box_lp(fp, c));
    ASSERT_TRUE(primal.optimal());

    LpProblem dual(m);
    dual.objective() = -fp.b;
    for (Eigen::Index j = 0; j < n; ++j) dual.add_row(fp.A.col(j), Relation::Equal, c[j]);
    const auto d = solve_lp(dual);
    ASSERT_TRUE(d.optimal());
    EXPECT_NEAR(primal.objective, -d.objective, 1e-7);
    EXPECT_TRUE(((fp.A * primal.x - fp.b).array() >= -1e-8).all());
    EXPECT_NEAR(primal.objective, c.dot(primal.x), 1e-8);
    ++solved;
  }
  EXPECT_EQ(solved, 60);
}

TEST(SolveLp, Deterministic) {
  Rng rng(5);
  const auto fp = random_polytope(rng, 4, 8);
  const Eigen::VectorXd c = rng.unit(4);
  const auto a = solve_lp(box_lp(fp, c));
  const auto b = solve_lp(box_lp(fp, c));
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_TRUE(a.x == b.x);
}

TEST(SolveForward, SquareVertices) {
  EXPECT_NEAR(solve_forward(square(), Eigen::Vector2d(0, 1)).objective, 1.0, 1e-12);
  EXPECT_NEAR(solve_forward(square(), Eigen::Vector2d(0, -1)).objective, -7.0, 1e-12);
  const auto zero = solve_forward(square(), Eigen::Vector2d::Zero());
  ASSERT_TRUE(zero.optimal());
  EXPECT_EQ(zero.objective, 0.0);
  EXPECT_TRUE(inside(square(), zero.x, 1e-9));
}

TEST(SolveForward, NonnegVariables) {
  auto fp = make_problem({{1, 1}}, {2});
  fp.x_nonneg = true;
  const auto sol = solve_forward(fp, Eigen::Vector2d(1, 3));
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 2.0, 1e-12);
  EXPECT_NEAR(sol.x[0], 2.0, 1e-12);
}

TEST(MinAbsDeviation, MedianAndClamp) {
  const std::vector<double> v{1, 2, 9};
  auto r = min_abs_deviation(v, -kInf, kInf);
  EXPECT_EQ(r.t, 2.0);
  EXPECT_EQ(r.loss, 8.0);
  r = min_abs_deviation(v, -kInf, 1.0);
  EXPECT_EQ(r.t, 1.0);
  EXPECT_EQ(r.loss, 9.0);
  const std::vector<double> one{5};
  r = min_abs_deviation(one, 0.0, 3.0);
  EXPECT_EQ(r.t, 3.0);
  EXPECT_EQ(r.loss, 2.0);
}

}  // namespace
}  // namespace invlp

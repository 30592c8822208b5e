#include "adg.hpp"
#include "checks.hpp"
#include "instances.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace invlp {
namespace {

using namespace invlp::testing;

TEST(Adg, SquareFirstEnsemble) {
  const auto fit = solve_adg(square(), square_x1());
  EXPECT_EQ(fit.path, SolutionPath::FeasibleCentroid);
  ASSERT_TRUE(fit.active_row.has_value());
  EXPECT_EQ(*fit.active_row, 3);
  EXPECT_EQ(fit.c_star[0], 0.0);
  EXPECT_EQ(fit.c_star[1], 1.0);
  EXPECT_NEAR(fit.z_star, 3.25, 1e-12);
  expect_dual_feasible(square(), fit);
  expect_adg_identities(square(), square_x1(), fit);
}

TEST(Adg, SquareSecondEnsemble) {
  const auto fit = solve_adg(square(), square_x2());
  EXPECT_EQ(fit.c_star[0], 0.0);
  EXPECT_EQ(fit.c_star[1], 1.0);
  EXPECT_NEAR(fit.z_star, 7.25, 1e-12);
}

TEST(Adg, ExampleOneWideBox) {
  const auto fp = example1(-2, 10);
  const auto fit = solve_adg(fp, example1_points());
  EXPECT_NEAR(fit.c_star[0], -0.5, 1e-12);
  EXPECT_NEAR(fit.c_star[1], 0.5, 1e-12);
  // Row sums divided by ||a||_1 = 1.42.
  EXPECT_NEAR(fit.z_star, (1.055 + 2.12 + 1.055) / 1.42, 1e-9);
}

TEST(Adg, ExampleOneNarrowBoxPicksUpperRow) {
  const auto fp = example1(4, 4);
  const auto fit = solve_adg(fp, example1_points());
  ASSERT_TRUE(fit.active_row.has_value());
  EXPECT_EQ(*fit.active_row, 2);
  EXPECT_NEAR(fit.z_star, 2.75, 1e-12);
  EXPECT_NEAR(fit.c_star[1], -1.0, 1e-12);
}

TEST(Adg, SingletonOnFacetHasZeroLoss) {
  const auto fit = solve_adg(square(), EnsembleData{{3, 1}});
  EXPECT_EQ(fit.z_star, 0.0);
}

TEST(Adg, MixedPointConstruction) {
  const auto fit = solve_adg(cone(), EnsembleData{{3, 0}});
  EXPECT_EQ(fit.path, SolutionPath::MixedConstruction);
  EXPECT_NEAR(fit.c_star[0], 0.0, 1e-12);
  EXPECT_NEAR(fit.c_star[1], -1.0, 1e-12);
  EXPECT_NEAR(fit.y_star[0], 0.5, 1e-12);
  EXPECT_NEAR(fit.y_star[1], 0.5, 1e-12);
  EXPECT_EQ(fit.z_star, 0.0);
  EXPECT_EQ(fit.eps[0], 0.0);
  EXPECT_NEAR(fit.c_star.dot(Eigen::Vector2d(3, 0)) - cone().b.dot(fit.y_star), 0.0, 1e-9);
  expect_dual_feasible(cone(), fit);
}

TEST(Adg, MixedPointDegeneratePair) {
  // x1 >= 0 and -x1 >= 0: the point is equally far above one and below the
  // other, so the only pair cancels c.
  const auto fp = make_problem({{1, 0}, {-1, 0}}, {0, 0});
  try {
    mixed_point_construction(fp, Eigen::Vector2d(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePair);
  }
}

TEST(Adg, AllBelowSinglePoint) {
  const auto fit = solve_adg(cone(), EnsembleData{{1, 3}});
  EXPECT_EQ(fit.path, SolutionPath::ReversedCentroid);
  EXPECT_NEAR(fit.c_star[0], 0.5, 1e-12);
  EXPECT_NEAR(fit.c_star[1], -0.5, 1e-12);
  expect_dual_feasible(cone(), fit);
  expect_adg_identities(cone(), EnsembleData{{1, 3}}, fit);
}

TEST(Adg, AllBelowMatchesCentroidAndGeneral) {
  const EnsembleData two{{1, 3}, {3, 5}};
  const auto fit = solve_adg(cone(), two);
  const auto single = solve_adg(cone(), EnsembleData{{2, 4}});
  EXPECT_EQ(fit.active_row, single.active_row);
  EXPECT_NEAR(fit.z_star, 2.0 * single.z_star, 1e-9);
  const auto general = solve_adg_general(cone(), two);
  EXPECT_NEAR(general.z_star, fit.z_star, 1e-7);
}

TEST(Adg, OnReversedFacetIsZero) {
  const auto fit = solve_adg(cone(), EnsembleData{{2, 2}});
  EXPECT_NEAR(fit.z_star, 0.0, 1e-12);
}

TEST(Adg, GeneralMatchesFastPathOnSquare) {
  const auto general = solve_adg_general(square(), square_x1());
  EXPECT_NEAR(general.z_star, 3.25, 1e-9);
  EXPECT_NEAR(general.c_star[1], 1.0, 1e-9);
  expect_dual_feasible(square(), general);
  expect_adg_identities(square(), square_x1(), general);
}

TEST(Adg, NonnegCostUsesSingleLp) {
  SolverConfig cfg;
  cfg.nonneg_cost = true;
  const auto fit = solve_adg(square(), square_x1(), cfg);
  EXPECT_EQ(fit.path, SolutionPath::NonnegSingleLp);
  EXPECT_EQ(fit.diagnostics.lp_calls, 1u);
  EXPECT_NEAR(fit.c_star[0], 0.0, 1e-9);
  EXPECT_NEAR(fit.c_star[1], 1.0, 1e-9);
  EXPECT_NEAR(fit.z_star, 3.25, 1e-9);
}

TEST(Adg, InfNormalization) {
  SolverConfig cfg;
  cfg.normalization_norm = Norm::LInf;
  const auto fit = solve_adg(square(), square_x1(), cfg);
  EXPECT_NEAR(fit.z_star, 3.25, 1e-9);
  expect_dual_feasible(square(), fit, Norm::LInf);
  const auto general = solve_adg_general(square(), square_x1(), cfg);
  EXPECT_NEAR(general.z_star, 3.25, 1e-9);
  EXPECT_EQ(general.diagnostics.lp_calls, 4u);
}

TEST(Adg, MixedPairOnCone) {
  const EnsembleData data{{3, 0}, {6, 0}};
  const auto fit = solve_adg(cone(), data);
  EXPECT_EQ(fit.path, SolutionPath::Decomposition);
  EXPECT_NEAR(fit.z_star, 0.0, 1e-9);
  expect_dual_feasible(cone(), fit);
  expect_adg_identities(cone(), data, fit);
}

TEST(Adg, SupportMaskForcesZeros) {
  SolverConfig cfg;
  cfg.support_mask = std::vector<bool>{true, false};
  const auto fit = solve_adg(square(), square_x1(), cfg);
  EXPECT_EQ(fit.c_star[1], 0.0);
  EXPECT_NEAR(std::abs(fit.c_star[0]), 1.0, 1e-9);
  EXPECT_NEAR(fit.z_star, 9.0, 1e-9);
}

TEST(Adg, DimensionTooLarge) {
  const Eigen::Index n = 17;
  ForwardProblem fp;
  fp.A = Eigen::MatrixXd::Identity(n, n);
  fp.b = Eigen::VectorXd::Zero(n);
  EnsembleData data(Eigen::MatrixXd::Ones(1, n));
  SolverConfig cfg;
  cfg.support_mask = std::vector<bool>(n, true);
  try {
    solve_adg(fp, data, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooLarge);
  }
}

TEST(Adg, RejectsInvalidInput) {
  try {
    solve_adg(square(), EnsembleData{{1, 2, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Validation);
  }
}

TEST(Adg, RandomIdentitiesAndPathEquivalence) {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = random_feasible_instance(rng);
    const auto fast = solve_adg(inst.fp, inst.data);
    const auto general = solve_adg_general(inst.fp, inst.data);
    EXPECT_NEAR(fast.z_star, general.z_star, 1e-7);
    expect_dual_feasible(inst.fp, fast);
    expect_adg_identities(inst.fp, inst.data, fast);
    expect_dual_feasible(inst.fp, general);
    expect_adg_identities(inst.fp, inst.data, general);
  }
}

TEST(Adg, MixedRandomIdentities) {
  Rng rng(102);
  for (int trial = 0; trial < 40; ++trial) {
    const auto fp = random_polytope(rng, 2, 5);
    const auto data = random_points(rng, 2, 3, 8.0);
    const auto fit = solve_adg(fp, data);
    expect_dual_feasible(fp, fit);
    expect_adg_identities(fp, data, fit);
  }
}

TEST(Adg, PermutationInvariance) {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto fp = random_polytope(rng, 3, 6);
    const auto data = random_points(rng, 3, 4, 8.0);
    const EnsembleData rev(data.points.colwise().reverse());
    EXPECT_NEAR(solve_adg(fp, data).z_star, solve_adg(fp, rev).z_star, 1e-7);
  }
}

TEST(Adg, ObjectiveDataRejected) {
  EnsembleData data{{1, 2}};
  data.points_are_objectives = true;
  EXPECT_THROW(solve_adg(square(), data), Error);
}

}  // namespace
}  // namespace invlp

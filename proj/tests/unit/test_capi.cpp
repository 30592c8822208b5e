// Exercises the shared library through its C header only.

#include "invlp/invlp.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

namespace {

const double kA[] = {-1, 0, 0, -1, 1, 0, 0, 1};
const double kB[] = {-7, -7, 1, 1};
const double kPoints[] = {3.75, 2, 4, 2.25, 4.25, 2};

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(invlp_problem_create(4, 2, kA, kB, &p_), INVLP_OK);
    ASSERT_EQ(invlp_problem_set_points(p_, 3, 2, kPoints, 0), INVLP_OK);
  }
  void TearDown() override { invlp_problem_free(p_); }
  invlp_problem* p_ = nullptr;
};

TEST_F(CApi, Shape) {
  EXPECT_EQ(invlp_problem_rows(p_), 4u);
  EXPECT_EQ(invlp_problem_cols(p_), 2u);
  EXPECT_EQ(invlp_problem_num_points(p_), 3u);
  EXPECT_EQ(invlp_problem_validate(p_), INVLP_OK);
}

TEST_F(CApi, FitAdg) {
  invlp_options o;
  invlp_options_init(&o);
  invlp_fit* f = nullptr;
  ASSERT_EQ(invlp_fit_run(p_, &o, &f), INVLP_OK);
  EXPECT_NEAR(invlp_fit_z(f), 3.25, 1e-12);
  ASSERT_EQ(invlp_fit_dim(f), 2u);
  double c[2];
  ASSERT_EQ(invlp_fit_c(f, c, 2), INVLP_OK);
  EXPECT_EQ(c[0], 0.0);
  EXPECT_EQ(c[1], 1.0);
  std::vector<double> y(invlp_fit_dual_dim(f));
  EXPECT_EQ(invlp_fit_y(f, y.data(), y.size()), INVLP_OK);
  double small[1];
  EXPECT_EQ(invlp_fit_c(f, small, 1), INVLP_ERR_INVALID_ARGUMENT);
  EXPECT_STREQ(invlp_fit_path(f), "feasible_centroid");
  char* text = nullptr;
  ASSERT_EQ(invlp_fit_to_json(f, &text), INVLP_OK);
  EXPECT_NE(std::string(text).find("\"z_star\""), std::string::npos);
  invlp_string_free(text);
  invlp_fit_free(f);
}

TEST_F(CApi, GofRho) {
  invlp_options o;
  invlp_options_init(&o);
  invlp_gof* g = nullptr;
  ASSERT_EQ(invlp_gof_run(p_, &o, &g), INVLP_OK);
  EXPECT_NEAR(invlp_gof_rho(g), 0.638889, 1e-6);
  EXPECT_EQ(invlp_gof_num_rows(g), 4u);
  double rows[4];
  ASSERT_EQ(invlp_gof_baselines(g, rows, 4), INVLP_OK);
  EXPECT_NEAR(rows[1], 14.75, 1e-12);
  invlp_gof_free(g);
}

TEST_F(CApi, ForwardAndSweep) {
  const double c[] = {0, -1};
  double x[2];
  double value = 0;
  ASSERT_EQ(invlp_forward(p_, c, 2, x, &value), INVLP_OK);
  EXPECT_NEAR(value, -7.0, 1e-12);
  invlp_options o;
  invlp_options_init(&o);
  invlp_grid grid{1, 7, 1, 7, 3, 2};
  double out[6];
  ASSERT_EQ(invlp_sweep(p_, &o, &grid, out), INVLP_OK);
  for (double v : out) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
}

TEST_F(CApi, Dominance) {
  invlp_options o;
  invlp_options_init(&o);
  invlp_dominance d{};
  ASSERT_EQ(invlp_check_dominance(p_, &o, &d), INVLP_OK);
  EXPECT_NEAR(d.z_adg, 3.25, 1e-9);
  EXPECT_EQ(d.dsp_dominates, 1);
  EXPECT_EQ(d.upper_holds, 1);
  EXPECT_EQ(d.lower_holds, 1);
}

TEST_F(CApi, Oracle) {
  invlp_options o;
  invlp_options_init(&o);
  double value = 0, bound = 0, dir[2];
  ASSERT_EQ(invlp_oracle(p_, &o, 1e-3, &value, &bound, dir), INVLP_OK);
  EXPECT_NEAR(value, 3.25, 1e-6 + bound);
}

TEST(CApiErrors, ZeroRhsRdgIsInputError) {
  const double A[] = {1, -1, -1, -1};
  const double b[] = {0, 0};
  const double pt[] = {3, 0};
  invlp_problem* p = nullptr;
  ASSERT_EQ(invlp_problem_create(2, 2, A, b, &p), INVLP_OK);
  ASSERT_EQ(invlp_problem_set_points(p, 1, 2, pt, 0), INVLP_OK);
  invlp_options o;
  invlp_options_init(&o);
  o.variant = INVLP_RDG;
  invlp_fit* f = nullptr;
  const invlp_status st = invlp_fit_run(p, &o, &f);
  EXPECT_EQ(st, INVLP_ERR_B_IS_ZERO);
  EXPECT_EQ(f, nullptr);
  EXPECT_EQ(invlp_exit_code(st), 2);
  EXPECT_GT(std::string(invlp_last_error()).size(), 0u);
  invlp_problem_free(p);
}

TEST(CApiErrors, LoadFailures) {
  invlp_problem* p = nullptr;
  const invlp_status io = invlp_problem_load_file("/nonexistent.json", &p);
  EXPECT_EQ(io, INVLP_ERR_IO);
  EXPECT_EQ(invlp_exit_code(io), 4);
  const invlp_status fmt = invlp_problem_load_json("{not json", &p);
  EXPECT_EQ(fmt, INVLP_ERR_FORMAT);
  EXPECT_EQ(invlp_exit_code(fmt), 4);
  EXPECT_EQ(invlp_problem_create(1, 2, nullptr, nullptr, &p), INVLP_ERR_INVALID_ARGUMENT);
}

TEST(CApiErrors, ValidationAndCodes) {
  const double A[] = {0, 0, 1, 0};
  const double b[] = {1, 1};
  const double pt[] = {1, 1};
  invlp_problem* p = nullptr;
  ASSERT_EQ(invlp_problem_create(2, 2, A, b, &p), INVLP_OK);
  ASSERT_EQ(invlp_problem_set_points(p, 1, 2, pt, 0), INVLP_OK);
  EXPECT_EQ(invlp_problem_validate(p), INVLP_ERR_VALIDATION);
  EXPECT_NE(std::string(invlp_last_error()).find("zero row 0"), std::string::npos);
  invlp_problem_free(p);
  EXPECT_EQ(invlp_exit_code(INVLP_OK), 0);
  EXPECT_EQ(invlp_exit_code(INVLP_ERR_NO_FINITE_SOLUTION), 3);
  EXPECT_STREQ(invlp_status_name(INVLP_ERR_IO), "Io");
}

TEST(CApiStructured, IdentityFixture) {
  const double A[] = {1, 1, -1, 0, 0, -1};
  const double b[] = {2, -3, -3};
  const double C[] = {1, 0, 0, 1};
  const double pts[] = {2, 0, 0, 2};
  invlp_problem* p = nullptr;
  ASSERT_EQ(invlp_problem_create(3, 2, A, b, &p), INVLP_OK);
  ASSERT_EQ(invlp_problem_set_cost_structure(p, 2, C), INVLP_OK);
  ASSERT_EQ(invlp_problem_set_x_nonneg(p, 1), INVLP_OK);
  ASSERT_EQ(invlp_problem_set_points(p, 2, 2, pts, 0), INVLP_OK);
  invlp_options o;
  invlp_options_init(&o);
  o.structured = 1;
  invlp_fit* f = nullptr;
  ASSERT_EQ(invlp_fit_run(p, &o, &f), INVLP_OK);
  ASSERT_EQ(invlp_fit_alpha_dim(f), 2u);
  double alpha[2];
  ASSERT_EQ(invlp_fit_alpha(f, alpha, 2), INVLP_OK);
  EXPECT_NEAR(alpha[0], 0.5, 1e-6);
  EXPECT_LE(invlp_fit_z(f), 1e-8);
  invlp_fit_free(f);

  const double true_alpha[] = {0.5, 0.5};
  ASSERT_EQ(invlp_gen_ensemble(p, true_alpha, 2, 4, 0.0, 7), INVLP_OK);
  EXPECT_EQ(invlp_problem_num_points(p), 4u);
  invlp_problem_free(p);
}

}  // namespace

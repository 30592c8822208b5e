#include "adg.hpp"
#include "dsp.hpp"
#include "gof.hpp"
#include "instances.hpp"
#include "io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>

#ifndef INVLP_TEST_DATA
#error "INVLP_TEST_DATA must point at tests/data"
#endif

namespace invlp {
namespace {

using namespace invlp::testing;
using nlohmann::json;

const std::string kExample2 = std::string(INVLP_TEST_DATA) + "/example2.json";

TEST(Io, LoadsExampleFile) {
  const auto pf = load_problem(kExample2);
  EXPECT_TRUE(pf.problem.A.isApprox(square().A));
  EXPECT_TRUE(pf.problem.b.isApprox(square().b));
  EXPECT_TRUE(pf.data.points.isApprox(square_x1().points));
  ASSERT_EQ(pf.problem.row_labels.size(), 4u);
  EXPECT_EQ(pf.problem.row_labels[3], "x2 >= 1");
  EXPECT_FALSE(pf.problem.x_nonneg);
}

TEST(Io, RoundTripIsIdentity) {
  const auto pf = load_problem(kExample2);
  const std::string once = problem_to_json(pf.problem, pf.data).dump();
  const auto again = parse_problem(once);
  EXPECT_TRUE(again.problem.A == pf.problem.A);
  EXPECT_TRUE(again.problem.b == pf.problem.b);
  EXPECT_TRUE(again.data.points == pf.data.points);
  EXPECT_EQ(problem_to_json(again.problem, again.data).dump(), once);
}

TEST(Io, RoundTripStructured) {
  const std::string text = R"({"A": [[1, 1], [-1, 0]], "b": [2, -3], "C": [[1, 0], [0, 1]],
                               "points": [[2, 0]], "points_are_objectives": true, "x_nonneg": true})";
  const auto pf = parse_problem(text);
  ASSERT_TRUE(pf.problem.cost_structure.has_value());
  EXPECT_TRUE(pf.data.points_are_objectives);
  EXPECT_TRUE(pf.problem.x_nonneg);
  const auto again = parse_problem(problem_to_json(pf.problem, pf.data).dump());
  EXPECT_TRUE(again.problem.cost_structure->C == pf.problem.cost_structure->C);
  EXPECT_TRUE(again.data.points_are_objectives);
}

TEST(Io, MissingFileIsIo) {
  try {
    load_problem("/nonexistent/problem.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(Io, MalformedInputIsFormat) {
  for (const char* text : {"{", "[1, 2]", R"({"A": [[1, 0]], "b": [1]})", R"({"A": [[1, "x"]], "b": [1], "points": [[0, 0]]})",
                           R"({"A": [[1, 0], [1]], "b": [1, 1], "points": [[0, 0]]})",
                           R"({"A": [[1, 0]], "b": [1], "points": [[0, 0]], "x_nonneg": 1})"}) {
    try {
      parse_problem(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Format) << text;
    }
  }
}

TEST(Io, FitReportKeys) {
  const auto doc = fit_to_json(solve_adg(square(), square_x1()));
  for (const char* key : {"variant", "c_star", "y_star", "eps", "z_star", "path", "diagnostics"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_FALSE(doc.contains("rho"));
  EXPECT_EQ(doc["variant"], "adg");
  EXPECT_EQ(doc["c_star"], json::array({0.0, 1.0}));
  EXPECT_DOUBLE_EQ(doc["z_star"].get<double>(), 3.25);
}

TEST(Io, DspReportCarriesVectors) {
  const auto doc = fit_to_json(solve_dsp(square(), square_x1()));
  ASSERT_TRUE(doc["eps"].is_array());
  EXPECT_TRUE(doc["eps"][0].is_array());
  EXPECT_TRUE(doc.contains("eps_norms"));
}

TEST(Io, GofReportKeys) {
  const auto doc = gof_to_json(rho(square(), square_x1(), Variant::ADG));
  EXPECT_NEAR(doc["rho"].get<double>(), 0.638889, 1e-6);
  EXPECT_EQ(doc["baselines"].size(), 4u);
  EXPECT_TRUE(doc["excluded_rows"].is_array());
}

TEST(Io, SweepCsv) {
  const GridSpec grid{0, 1, 0, 2, 2, 3};
  Eigen::MatrixXd values(2, 3);
  values << 0.5, 0.25, std::numeric_limits<double>::quiet_NaN(), 1, 0, 0.125;
  const std::string csv = sweep_to_csv(grid, values);
  EXPECT_EQ(csv,
            "gamma1,gamma2,rho\n"
            "0,0,0.5\n0,1,0.25\n0,2,nan\n"
            "1,0,1\n1,1,0\n1,2,0.125\n");
}

}  // namespace
}  // namespace invlp

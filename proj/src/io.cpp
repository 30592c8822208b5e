#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace invlp {

using nlohmann::json;

namespace {

Eigen::MatrixXd matrix_field(const json& doc, const char* key, bool allow_empty = false) {
  const json& v = doc.at(key);
  if (!v.is_array()) throw Error(ErrorCode::Format, std::string("`") + key + "` must be an array of arrays");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (rows == 0) {
    if (allow_empty) return {};
    throw Error(ErrorCode::Format, std::string("`") + key + "` is empty");
  }
  if (!v[0].is_array()) throw Error(ErrorCode::Format, std::string("`") + key + "` must be an array of arrays");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::Format, std::string("`") + key + "` row " + std::to_string(r) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw Error(ErrorCode::Format, std::string("non-numeric entry in `") + key + "`");
      M(r, c) = x.get<double>();
    }
  }
  return M;
}

Eigen::VectorXd vector_field(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_array()) throw Error(ErrorCode::Format, std::string("`") + key + "` must be an array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) throw Error(ErrorCode::Format, std::string("non-numeric entry in `") + key + "`");
    out[static_cast<Eigen::Index>(k)] = v[k].get<double>();
  }
  return out;
}

bool bool_field(const json& doc, const char* key) {
  if (!doc.contains(key)) return false;
  if (!doc[key].is_boolean()) throw Error(ErrorCode::Format, std::string("`") + key + "` must be a boolean");
  return doc[key].get<bool>();
}

json to_array(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json to_array(const Eigen::MatrixXd& M) {
  json out = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) out.push_back(to_array(Eigen::VectorXd(M.row(r).transpose())));
  return out;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Format, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Format, "problem file must hold a JSON object");
  for (const char* key : {"A", "b", "points"}) {
    if (!doc.contains(key)) throw Error(ErrorCode::Format, std::string("missing key `") + key + "`");
  }
  ProblemFile out;
  out.problem.A = matrix_field(doc, "A");
  out.problem.b = vector_field(doc, "b");
  if (doc.contains("C")) out.problem.cost_structure = CostStructure{matrix_field(doc, "C"), true};
  out.problem.x_nonneg = bool_field(doc, "x_nonneg");
  if (doc.contains("row_labels")) {
    const json& labels = doc["row_labels"];
    if (!labels.is_array()) throw Error(ErrorCode::Format, "`row_labels` must be an array of strings");
    for (const auto& l : labels) {
      if (!l.is_string()) throw Error(ErrorCode::Format, "`row_labels` must be an array of strings");
      out.problem.row_labels.push_back(l.get<std::string>());
    }
  }
  out.data.points = matrix_field(doc, "points", true);
  out.data.points_are_objectives = bool_field(doc, "points_are_objectives");
  return out;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

json problem_to_json(const ForwardProblem& fp, const EnsembleData& data) {
  json doc;
  doc["A"] = to_array(fp.A);
  doc["b"] = to_array(fp.b);
  if (fp.cost_structure) doc["C"] = to_array(fp.cost_structure->C);
  doc["points"] = to_array(data.points);
  if (data.points_are_objectives) doc["points_are_objectives"] = true;
  if (fp.x_nonneg) doc["x_nonneg"] = true;
  if (!fp.row_labels.empty()) doc["row_labels"] = fp.row_labels;
  return doc;
}

json fit_to_json(const FitResult& fit) {
  json doc;
  doc["variant"] = to_string(fit.variant);
  doc["c_star"] = to_array(fit.c_star);
  doc["y_star"] = to_array(fit.y_star);
  if (fit.eps_vectors.empty()) {
    doc["eps"] = to_array(fit.eps);
  } else {
    json eps = json::array();
    for (const auto& e : fit.eps_vectors) eps.push_back(to_array(e));
    doc["eps"] = eps;
    doc["eps_norms"] = to_array(fit.eps);
  }
  doc["z_star"] = fit.z_star;
  doc["path"] = to_string(fit.path);
  if (fit.alpha.size() > 0) doc["alpha"] = to_array(fit.alpha);
  json diag;
  diag["lp_calls"] = fit.diagnostics.lp_calls;
  if (fit.diagnostics.decomposition_lp_calls > 0) {
    diag["decomposition_lp_calls"] = fit.diagnostics.decomposition_lp_calls;
  }
  if (fit.active_row) diag["active_row"] = *fit.active_row;
  if (fit.diagnostics.k_star) diag["k_star"] = *fit.diagnostics.k_star;
  if (fit.diagnostics.branch) diag["branch"] = *fit.diagnostics.branch;
  if (!fit.diagnostics.notes.empty()) diag["notes"] = fit.diagnostics.notes;
  doc["diagnostics"] = diag;
  return doc;
}

json gof_to_json(const GofReport& report) {
  json doc = fit_to_json(report.fit);
  doc["variant"] = to_string(report.variant);
  doc["rho"] = report.rho;
  doc["rho_raw"] = report.rho_raw;
  doc["numerator"] = report.numerator;
  doc["denominator"] = report.denominator;
  json rows = json::array();
  for (double v : report.baselines) rows.push_back(std::isnan(v) ? json(nullptr) : json(v));
  doc["baselines"] = rows;
  doc["excluded_rows"] = report.excluded_rows;
  return doc;
}

json dominance_to_json(const DominanceReport& r) {
  json doc;
  doc["z_adg"] = r.z_adg;
  doc["z_rdg"] = r.z_rdg;
  doc["f_adg"] = r.f_adg;
  doc["f_rdg"] = r.f_rdg;
  doc["by_adg"] = r.by_adg;
  doc["by_rdg"] = r.by_rdg;
  doc["data_feasible"] = r.data_feasible;
  if (r.dsp_dominates) {
    doc["z_dsp"] = r.z_dsp;
    doc["dsp_dominates"] = *r.dsp_dominates;
  }
  doc["upper_holds"] = r.upper_holds;
  doc["lower_holds"] = r.lower_holds;
  doc["upper_holds_dual"] = r.upper_holds_dual;
  doc["lower_holds_dual"] = r.lower_holds_dual;
  return doc;
}

std::string sweep_to_csv(const GridSpec& grid, const Eigen::MatrixXd& rho) {
  std::string out = "gamma1,gamma2,rho\n";
  char line[128];
  for (int k1 = 0; k1 < grid.n1; ++k1) {
    for (int k2 = 0; k2 < grid.n2; ++k2) {
      const double v = rho(k1, k2);
      if (std::isnan(v)) {
        std::snprintf(line, sizeof line, "%.10g,%.10g,nan\n", grid.gamma1(k1), grid.gamma2(k2));
      } else {
        std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g\n", grid.gamma1(k1), grid.gamma2(k2), v);
      }
      out += line;
    }
  }
  return out;
}

}  // namespace invlp

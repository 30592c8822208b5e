// invlp: command-line front end over the C interface.

#include "invlp/invlp.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Failure {
  int exit_code;
};

void check(invlp_status status) {
  if (status == INVLP_OK) return;
  std::cerr << "invlp: " << invlp_status_name(status) << ": " << invlp_last_error() << "\n";
  throw Failure{invlp_exit_code(status)};
}

void usage_error(const std::string& message) {
  std::cerr << "invlp: " << message << "\n";
  throw Failure{2};
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage_error(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) usage_error(std::string(what) + " is empty");
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + format_number(v[k]);
  return out + "]";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
  if (!out) {
    std::cerr << "invlp: Io: cannot write " << out_path << "\n";
    throw Failure{4};
  }
}

std::string take(char* s) {
  std::string out(s ? s : "");
  invlp_string_free(s);
  return out;
}

class Problem {
 public:
  explicit Problem(const std::string& path) { check(invlp_problem_load_file(path.c_str(), &p_)); }
  ~Problem() { invlp_problem_free(p_); }
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;
  invlp_problem* get() const { return p_; }

 private:
  invlp_problem* p_ = nullptr;
};

struct Settings {
  std::string file;
  std::string out;
  std::string variant;
  std::string norm = "l1";
  std::string p = "2";
  std::string mask;
  bool structured = false;
  bool nonneg_cost = false;
  bool skip_zero_rhs = false;
  std::vector<unsigned char> mask_flags;
};

invlp_options options_of(Settings& s, bool need_variant) {
  invlp_options o;
  invlp_options_init(&o);
  if (s.variant == "adg") {
    o.variant = INVLP_ADG;
  } else if (s.variant == "rdg") {
    o.variant = INVLP_RDG;
  } else if (s.variant == "dsp") {
    o.variant = INVLP_DSP;
  } else if (need_variant || !s.variant.empty()) {
    usage_error("--variant must be one of adg, rdg, dsp");
  }
  if (s.norm == "l1") {
    o.normalization = INVLP_NORM_L1;
  } else if (s.norm == "linf" || s.norm == "inf") {
    o.normalization = INVLP_NORM_LINF;
  } else {
    usage_error("--norm must be l1 or linf");
  }
  if (s.p == "1") {
    o.ds_p = INVLP_NORM_L1;
  } else if (s.p == "2") {
    o.ds_p = INVLP_NORM_L2;
  } else if (s.p == "inf") {
    o.ds_p = INVLP_NORM_LINF;
  } else {
    usage_error("--p must be 1, 2 or inf");
  }
  o.structured = s.structured;
  o.nonneg_cost = s.nonneg_cost;
  o.skip_zero_rhs = s.skip_zero_rhs;
  if (!s.mask.empty()) {
    for (double v : parse_list(s.mask, "--support-mask")) s.mask_flags.push_back(v != 0.0 ? 1 : 0);
    o.support_mask = s.mask_flags.data();
    o.support_mask_len = s.mask_flags.size();
  }
  return o;
}

void add_common(CLI::App* cmd, Settings& s, bool variant) {
  cmd->add_option("file", s.file, "problem file (JSON)")->required();
  cmd->add_option("-o,--out", s.out, "write the result here instead of stdout");
  if (variant) cmd->add_option("--variant", s.variant, "adg | rdg | dsp")->required();
  cmd->add_option("--norm", s.norm, "normalization norm on c: l1 | linf")->capture_default_str();
  cmd->add_option("--p", s.p, "decision-space norm: 1 | 2 | inf")->capture_default_str();
}

int run(int argc, char** argv) {
  CLI::App app{"Impute linear-program cost vectors from observed decisions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", invlp_version());
  Settings s;

  auto* fit = app.add_subcommand("fit", "fit a cost vector and print the report");
  add_common(fit, s, true);
  fit->add_flag("--structured", s.structured, "restrict c to C'alpha, alpha >= 0");
  fit->add_flag("--nonneg-cost", s.nonneg_cost, "require c >= 0");
  fit->add_option("--support-mask", s.mask, "comma-separated 0/1 flags; c_j = 0 where 0");

  auto* gof = app.add_subcommand("gof", "fit and report the coefficient of complementarity");
  add_common(gof, s, true);
  gof->add_flag("--skip-zero-rhs", s.skip_zero_rhs, "rdg: leave rows with b_i = 0 out of the baseline");
  gof->add_flag("--nonneg-cost", s.nonneg_cost, "require c >= 0");
  gof->add_option("--support-mask", s.mask, "comma-separated 0/1 flags; c_j = 0 where 0");

  std::string grid_text;
  auto* sweep = app.add_subcommand("sweep", "rho with one extra point moved over a 2-D grid (CSV)");
  add_common(sweep, s, true);
  sweep->add_option("--grid", grid_text, "lo1,hi1,n1,lo2,hi2,n2")->required();
  sweep->add_flag("--skip-zero-rhs", s.skip_zero_rhs, "rdg: leave rows with b_i = 0 out of the baseline");

  std::string cost_text;
  std::string alpha_text;
  auto* forward = app.add_subcommand("forward", "solve the forward LP for a given cost");
  forward->add_option("file", s.file, "problem file (JSON)")->required();
  forward->add_option("-o,--out", s.out, "write the result here instead of stdout");
  auto* cost_opt = forward->add_option("--cost", cost_text, "comma-separated cost vector");
  auto* alpha_opt = forward->add_option("--alpha", alpha_text, "comma-separated weights on the rows of C");
  cost_opt->excludes(alpha_opt);

  std::string true_alpha_text;
  std::size_t q = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "replace the points with forward optima under perturbed weights");
  gen->add_option("file", s.file, "problem file with C (JSON)")->required();
  gen->add_option("-o,--out", s.out, "write the problem here instead of stdout");
  gen->add_option("--true-alpha", true_alpha_text, "comma-separated weights")->required();
  gen->add_option("--q", q, "number of points")->required()->check(CLI::PositiveNumber);
  gen->add_option("--noise", noise, "perturbation scale")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "random seed");

  auto* chk = app.add_subcommand("check", "compare absolute, relative and decision-space optima");
  add_common(chk, s, false);

  double step = 1e-3;
  auto* orc = app.add_subcommand("oracle", "brute-force reference value");
  add_common(orc, s, true);
  orc->add_option("--step", step, "angular (adg, rdg) or grid (dsp) step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Problem problem(s.file);

  if (*fit) {
    const invlp_options o = options_of(s, true);
    invlp_fit* f = nullptr;
    check(invlp_fit_run(problem.get(), &o, &f));
    char* text = nullptr;
    const invlp_status st = invlp_fit_to_json(f, &text);
    invlp_fit_free(f);
    check(st);
    emit(take(text), s.out);
  } else if (*gof) {
    const invlp_options o = options_of(s, true);
    invlp_gof* g = nullptr;
    check(invlp_gof_run(problem.get(), &o, &g));
    char* text = nullptr;
    const invlp_status st = invlp_gof_to_json(g, &text);
    invlp_gof_free(g);
    check(st);
    emit(take(text), s.out);
  } else if (*sweep) {
    const invlp_options o = options_of(s, true);
    const auto g = parse_list(grid_text, "--grid");
    if (g.size() != 6) usage_error("--grid needs lo1,hi1,n1,lo2,hi2,n2");
    invlp_grid grid{g[0], g[1], g[3], g[4], static_cast<int>(g[2]), static_cast<int>(g[5])};
    char* text = nullptr;
    check(invlp_sweep_csv(problem.get(), &o, &grid, &text));
    emit(take(text), s.out);
  } else if (*forward) {
    if (cost_text.empty() == alpha_text.empty()) usage_error("forward needs exactly one of --cost or --alpha");
    std::vector<double> x(invlp_problem_cols(problem.get()));
    double value = 0.0;
    if (!cost_text.empty()) {
      const auto c = parse_list(cost_text, "--cost");
      check(invlp_forward(problem.get(), c.data(), c.size(), x.data(), &value));
    } else {
      const auto a = parse_list(alpha_text, "--alpha");
      check(invlp_forward_alpha(problem.get(), a.data(), a.size(), x.data(), &value));
    }
    emit("{\n  \"x\": " + json_array(x) + ",\n  \"value\": " + format_number(value) + "\n}", s.out);
  } else if (*gen) {
    const auto a = parse_list(true_alpha_text, "--true-alpha");
    check(invlp_gen_ensemble(problem.get(), a.data(), a.size(), q, noise, seed));
    char* text = nullptr;
    check(invlp_problem_to_json(problem.get(), &text));
    emit(take(text), s.out);
  } else if (*chk) {
    const invlp_options o = options_of(s, false);
    invlp_dominance d{};
    check(invlp_check_dominance(problem.get(), &o, &d));
    std::string text = "{\n";
    text += "  \"z_adg\": " + format_number(d.z_adg) + ",\n";
    text += "  \"z_rdg\": " + format_number(d.z_rdg) + ",\n";
    text += "  \"z_dsp\": " + format_number(d.z_dsp) + ",\n";
    text += "  \"f_adg\": " + format_number(d.f_adg) + ",\n";
    text += "  \"f_rdg\": " + format_number(d.f_rdg) + ",\n";
    text += "  \"data_feasible\": " + std::string(d.data_feasible ? "true" : "false") + ",\n";
    text += "  \"dsp_dominates\": " +
            std::string(d.dsp_dominates < 0 ? "null" : d.dsp_dominates ? "true" : "false") + ",\n";
    text += "  \"upper_holds\": " + std::string(d.upper_holds ? "true" : "false") + ",\n";
    text += "  \"lower_holds\": " + std::string(d.lower_holds ? "true" : "false") + "\n}";
    emit(text, s.out);
  } else if (*orc) {
    const invlp_options o = options_of(s, true);
    std::vector<double> dir(invlp_problem_cols(problem.get()));
    double value = 0.0;
    double bound = 0.0;
    check(invlp_oracle(problem.get(), &o, step, &value, &bound, dir.data()));
    emit("{\n  \"value\": " + format_number(value) + ",\n  \"discretization_bound\": " + format_number(bound) +
             ",\n  \"direction\": " + json_array(dir) + "\n}",
         s.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    return f.exit_code;
  }
}

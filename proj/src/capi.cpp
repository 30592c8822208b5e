#include "invlp/invlp.h"

#include "adg.hpp"
#include "dsp.hpp"
#include "gof.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "oracle.hpp"
#include "rdg.hpp"
#include "structured.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct invlp_problem {
  invlp::ForwardProblem fp;
  invlp::EnsembleData data;
};

struct invlp_fit {
  invlp::FitResult fit;
};

struct invlp_gof {
  invlp::GofReport report;
};

namespace {

thread_local std::string g_last_error;

invlp_status status_of(invlp::ErrorCode code) { return static_cast<invlp_status>(static_cast<int>(code) + 1); }

invlp_status fail(invlp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
invlp_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const invlp::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(INVLP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(INVLP_ERR_INTERNAL, e.what());
  }
}

invlp::Norm norm_of_enum(invlp_norm n) {
  switch (n) {
    case INVLP_NORM_L1: return invlp::Norm::L1;
    case INVLP_NORM_L2: return invlp::Norm::L2;
    case INVLP_NORM_LINF: return invlp::Norm::LInf;
  }
  throw invlp::Error(invlp::ErrorCode::InvalidArgument, "unknown norm");
}

invlp::Variant variant_of_enum(invlp_variant v) {
  switch (v) {
    case INVLP_ADG: return invlp::Variant::ADG;
    case INVLP_RDG: return invlp::Variant::RDG;
    case INVLP_DSP: return invlp::Variant::DSP;
  }
  throw invlp::Error(invlp::ErrorCode::InvalidArgument, "unknown variant");
}

invlp_options defaults() {
  invlp_options o;
  invlp_options_init(&o);
  return o;
}

invlp::SolverConfig config_of(const invlp_options& o) {
  invlp::SolverConfig cfg;
  cfg.normalization_norm = norm_of_enum(o.normalization);
  if (cfg.normalization_norm == invlp::Norm::L2) {
    throw invlp::Error(invlp::ErrorCode::InvalidArgument, "normalization norm must be l1 or linf");
  }
  cfg.ds_p = norm_of_enum(o.ds_p);
  cfg.nonneg_cost = o.nonneg_cost != 0;
  cfg.skip_zero_rhs = o.skip_zero_rhs != 0;
  if (o.support_mask) {
    std::vector<bool> mask(o.support_mask_len);
    for (std::size_t k = 0; k < o.support_mask_len; ++k) mask[k] = o.support_mask[k] != 0;
    cfg.support_mask = std::move(mask);
  }
  return cfg;
}

void require(bool cond, const char* what) {
  if (!cond) throw invlp::Error(invlp::ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

invlp_status copy_out(const Eigen::VectorXd& v, double* out, size_t len) {
  if (!out && len > 0) return fail(INVLP_ERR_INVALID_ARGUMENT, "null output buffer");
  if (len < static_cast<size_t>(v.size())) {
    return fail(INVLP_ERR_INVALID_ARGUMENT, "output buffer too small: need " + std::to_string(v.size()));
  }
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = v[k];
  return INVLP_OK;
}

invlp::FitResult run_fit(const invlp_problem& p, const invlp_options& o) {
  const auto cfg = config_of(o);
  const auto variant = variant_of_enum(o.variant);
  if (o.structured) {
    switch (variant) {
      case invlp::Variant::ADG: return invlp::solve_structured_adg(p.fp, p.data);
      case invlp::Variant::RDG: return invlp::solve_structured_rdg(p.fp, p.data);
      case invlp::Variant::DSP: break;
    }
    throw invlp::Error(invlp::ErrorCode::InvalidArgument, "structured mode supports adg and rdg only");
  }
  switch (variant) {
    case invlp::Variant::ADG: return invlp::solve_adg(p.fp, p.data, cfg);
    case invlp::Variant::RDG: return invlp::solve_rdg(p.fp, p.data, cfg);
    case invlp::Variant::DSP: return invlp::solve_dsp(p.fp, p.data, cfg);
  }
  throw invlp::Error(invlp::ErrorCode::InvalidArgument, "unknown variant");
}

invlp::GridSpec grid_of(const invlp_grid* g) {
  require(g != nullptr, "null grid");
  invlp::GridSpec spec;
  spec.lo1 = g->lo1;
  spec.hi1 = g->hi1;
  spec.lo2 = g->lo2;
  spec.hi2 = g->hi2;
  spec.n1 = g->n1;
  spec.n2 = g->n2;
  return spec;
}

Eigen::MatrixXd sweep_matrix(const invlp_problem& p, const invlp_options& o, const invlp::GridSpec& grid) {
  require(!o.structured, "rho is not defined in structured mode");
  return invlp::rho_sweep(p.fp, p.data, grid, variant_of_enum(o.variant), config_of(o));
}

}  // namespace

extern "C" {

void invlp_options_init(invlp_options* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof *opts);
  opts->variant = INVLP_ADG;
  opts->normalization = INVLP_NORM_L1;
  opts->ds_p = INVLP_NORM_L2;
}

const char* invlp_last_error(void) { return g_last_error.c_str(); }

const char* invlp_status_name(invlp_status status) {
  if (status == INVLP_OK) return "Ok";
  if (status == INVLP_ERR_INTERNAL) return "Internal";
  if (status > INVLP_OK && status < INVLP_ERR_INTERNAL) {
    return invlp::to_string(static_cast<invlp::ErrorCode>(static_cast<int>(status) - 1));
  }
  return "Unknown";
}

int invlp_exit_code(invlp_status status) {
  switch (status) {
    case INVLP_OK: return 0;
    case INVLP_ERR_INVALID_ARGUMENT:
    case INVLP_ERR_VALIDATION:
    case INVLP_ERR_ZERO_VECTOR:
    case INVLP_ERR_DIMENSION_TOO_LARGE:
    case INVLP_ERR_B_IS_ZERO:
    case INVLP_ERR_STRUCTURE_NOT_NONNEG:
    case INVLP_ERR_BASELINE_UNDEFINED:
      return 2;
    case INVLP_ERR_IO:
    case INVLP_ERR_FORMAT:
      return 4;
    default:
      return 3;
  }
}

const char* invlp_version(void) { return "0.1.0"; }

void invlp_string_free(char* s) { std::free(s); }

invlp_status invlp_problem_create(size_t m, size_t n, const double* A, const double* b, invlp_problem** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(m > 0 && n > 0, "problem needs m >= 1 and n >= 1");
    require(A != nullptr && b != nullptr, "null A or b");
    auto p = std::make_unique<invlp_problem>();
    p->fp.A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        A, static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    p->fp.b = Eigen::Map<const Eigen::VectorXd>(b, static_cast<Eigen::Index>(m));
    *out = p.release();
    return INVLP_OK;
  });
}

invlp_status invlp_problem_load_json(const char* text, invlp_problem** out) {
  return guarded([&] {
    require(out != nullptr && text != nullptr, "null argument");
    auto file = invlp::parse_problem(text);
    *out = new invlp_problem{std::move(file.problem), std::move(file.data)};
    return INVLP_OK;
  });
}

invlp_status invlp_problem_load_file(const char* path, invlp_problem** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    auto file = invlp::load_problem(path);
    *out = new invlp_problem{std::move(file.problem), std::move(file.data)};
    return INVLP_OK;
  });
}

void invlp_problem_free(invlp_problem* p) { delete p; }

invlp_status invlp_problem_set_points(invlp_problem* p, size_t q, size_t dim, const double* points,
                                      int are_objectives) {
  return guarded([&] {
    require(p != nullptr, "null problem");
    require(points != nullptr || q * dim == 0, "null points");
    p->data.points = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        points, static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(dim));
    p->data.points_are_objectives = are_objectives != 0;
    return INVLP_OK;
  });
}

invlp_status invlp_problem_set_cost_structure(invlp_problem* p, size_t k, const double* C) {
  return guarded([&] {
    require(p != nullptr && C != nullptr && k > 0, "invalid cost structure");
    invlp::CostStructure cs;
    cs.C = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        C, static_cast<Eigen::Index>(k), p->fp.cols());
    p->fp.cost_structure = std::move(cs);
    return INVLP_OK;
  });
}

invlp_status invlp_problem_set_x_nonneg(invlp_problem* p, int flag) {
  return guarded([&] {
    require(p != nullptr, "null problem");
    p->fp.x_nonneg = flag != 0;
    return INVLP_OK;
  });
}

size_t invlp_problem_rows(const invlp_problem* p) { return p ? static_cast<size_t>(p->fp.rows()) : 0; }
size_t invlp_problem_cols(const invlp_problem* p) { return p ? static_cast<size_t>(p->fp.cols()) : 0; }
size_t invlp_problem_num_points(const invlp_problem* p) { return p ? static_cast<size_t>(p->data.size()) : 0; }

invlp_status invlp_problem_validate(const invlp_problem* p) {
  return guarded([&] {
    require(p != nullptr, "null problem");
    invlp::require_valid(p->fp, p->data);
    return INVLP_OK;
  });
}

invlp_status invlp_problem_to_json(const invlp_problem* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    *out = dup_string(invlp::problem_to_json(p->fp, p->data).dump(2));
    return INVLP_OK;
  });
}

invlp_status invlp_fit_run(const invlp_problem* p, const invlp_options* opts, invlp_fit** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const invlp_options o = opts ? *opts : defaults();
    *out = new invlp_fit{run_fit(*p, o)};
    return INVLP_OK;
  });
}

void invlp_fit_free(invlp_fit* f) { delete f; }

double invlp_fit_z(const invlp_fit* f) { return f ? f->fit.z_star : std::nan(""); }
size_t invlp_fit_dim(const invlp_fit* f) { return f ? static_cast<size_t>(f->fit.c_star.size()) : 0; }
size_t invlp_fit_dual_dim(const invlp_fit* f) { return f ? static_cast<size_t>(f->fit.y_star.size()) : 0; }
size_t invlp_fit_num_points(const invlp_fit* f) { return f ? static_cast<size_t>(f->fit.eps.size()) : 0; }
size_t invlp_fit_alpha_dim(const invlp_fit* f) { return f ? static_cast<size_t>(f->fit.alpha.size()) : 0; }

invlp_status invlp_fit_c(const invlp_fit* f, double* out, size_t len) {
  if (!f) return fail(INVLP_ERR_INVALID_ARGUMENT, "null fit");
  return copy_out(f->fit.c_star, out, len);
}

invlp_status invlp_fit_y(const invlp_fit* f, double* out, size_t len) {
  if (!f) return fail(INVLP_ERR_INVALID_ARGUMENT, "null fit");
  return copy_out(f->fit.y_star, out, len);
}

invlp_status invlp_fit_eps(const invlp_fit* f, double* out, size_t len) {
  if (!f) return fail(INVLP_ERR_INVALID_ARGUMENT, "null fit");
  return copy_out(f->fit.eps, out, len);
}

invlp_status invlp_fit_alpha(const invlp_fit* f, double* out, size_t len) {
  if (!f) return fail(INVLP_ERR_INVALID_ARGUMENT, "null fit");
  return copy_out(f->fit.alpha, out, len);
}

const char* invlp_fit_path(const invlp_fit* f) { return f ? invlp::to_string(f->fit.path) : ""; }
size_t invlp_fit_lp_calls(const invlp_fit* f) { return f ? f->fit.diagnostics.lp_calls : 0; }

invlp_status invlp_fit_to_json(const invlp_fit* f, char** out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = dup_string(invlp::fit_to_json(f->fit).dump(2));
    return INVLP_OK;
  });
}

invlp_status invlp_gof_run(const invlp_problem* p, const invlp_options* opts, invlp_gof** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const invlp_options o = opts ? *opts : defaults();
    require(!o.structured, "rho is not defined in structured mode");
    *out = new invlp_gof{invlp::rho(p->fp, p->data, variant_of_enum(o.variant), config_of(o))};
    return INVLP_OK;
  });
}

void invlp_gof_free(invlp_gof* g) { delete g; }

double invlp_gof_rho(const invlp_gof* g) { return g ? g->report.rho : std::nan(""); }
double invlp_gof_rho_raw(const invlp_gof* g) { return g ? g->report.rho_raw : std::nan(""); }
double invlp_gof_numerator(const invlp_gof* g) { return g ? g->report.numerator : std::nan(""); }
double invlp_gof_denominator(const invlp_gof* g) { return g ? g->report.denominator : std::nan(""); }
size_t invlp_gof_num_rows(const invlp_gof* g) { return g ? g->report.baselines.size() : 0; }

invlp_status invlp_gof_baselines(const invlp_gof* g, double* out, size_t len) {
  if (!g) return fail(INVLP_ERR_INVALID_ARGUMENT, "null report");
  const auto& rows = g->report.baselines;
  return copy_out(Eigen::Map<const Eigen::VectorXd>(rows.data(), static_cast<Eigen::Index>(rows.size())), out, len);
}

invlp_status invlp_gof_to_json(const invlp_gof* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = dup_string(invlp::gof_to_json(g->report).dump(2));
    return INVLP_OK;
  });
}

invlp_status invlp_sweep(const invlp_problem* p, const invlp_options* opts, const invlp_grid* grid, double* out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto spec = grid_of(grid);
    const Eigen::MatrixXd rho = sweep_matrix(*p, opts ? *opts : defaults(), spec);
    for (int k1 = 0; k1 < spec.n1; ++k1) {
      for (int k2 = 0; k2 < spec.n2; ++k2) out[k1 * spec.n2 + k2] = rho(k1, k2);
    }
    return INVLP_OK;
  });
}

invlp_status invlp_sweep_csv(const invlp_problem* p, const invlp_options* opts, const invlp_grid* grid, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto spec = grid_of(grid);
    *out = dup_string(invlp::sweep_to_csv(spec, sweep_matrix(*p, opts ? *opts : defaults(), spec)));
    return INVLP_OK;
  });
}

invlp_status invlp_check_dominance(const invlp_problem* p, const invlp_options* opts, invlp_dominance* out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto r = invlp::check_dominance(p->fp, p->data, config_of(opts ? *opts : defaults()));
    out->z_adg = r.z_adg;
    out->z_rdg = r.z_rdg;
    out->z_dsp = r.dsp_dominates ? r.z_dsp : std::nan("");
    out->f_adg = r.f_adg;
    out->f_rdg = r.f_rdg;
    out->by_adg = r.by_adg;
    out->by_rdg = r.by_rdg;
    out->data_feasible = r.data_feasible;
    out->dsp_dominates = r.dsp_dominates ? static_cast<int>(*r.dsp_dominates) : -1;
    out->upper_holds = r.upper_holds;
    out->lower_holds = r.lower_holds;
    out->upper_holds_dual = r.upper_holds_dual;
    out->lower_holds_dual = r.lower_holds_dual;
    return INVLP_OK;
  });
}

invlp_status invlp_forward(const invlp_problem* p, const double* c, size_t n, double* x_out, double* value_out) {
  return guarded([&] {
    require(p != nullptr && c != nullptr, "null argument");
    require(n == static_cast<size_t>(p->fp.cols()), "cost vector length does not match the problem");
    const auto sol = invlp::solve_forward(p->fp, Eigen::Map<const Eigen::VectorXd>(c, static_cast<Eigen::Index>(n)));
    if (sol.status == invlp::LpStatus::Infeasible) return fail(INVLP_ERR_INFEASIBLE_FORWARD, "forward problem is infeasible");
    if (!sol.optimal()) return fail(INVLP_ERR_NO_FINITE_SOLUTION, "forward problem is unbounded");
    if (x_out) copy_out(sol.x, x_out, n);
    if (value_out) *value_out = sol.objective;
    return INVLP_OK;
  });
}

invlp_status invlp_forward_alpha(const invlp_problem* p, const double* alpha, size_t k, double* x_out,
                                 double* value_out) {
  return guarded([&] {
    require(p != nullptr && alpha != nullptr, "null argument");
    const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(alpha, static_cast<Eigen::Index>(k));
    const Eigen::VectorXd x = invlp::structured_forward(p->fp, a);
    if (x_out) copy_out(x, x_out, static_cast<size_t>(x.size()));
    if (value_out) *value_out = (p->fp.cost_structure->C.transpose() * a).dot(x);
    return INVLP_OK;
  });
}

invlp_status invlp_gen_ensemble(invlp_problem* p, const double* true_alpha, size_t k, size_t q, double noise,
                                uint64_t seed) {
  return guarded([&] {
    require(p != nullptr && true_alpha != nullptr, "null argument");
    const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(true_alpha, static_cast<Eigen::Index>(k));
    p->data = invlp::gen_ensemble(p->fp, a, static_cast<Eigen::Index>(q), noise, seed);
    return INVLP_OK;
  });
}

invlp_status invlp_oracle(const invlp_problem* p, const invlp_options* opts, double step, double* value_out,
                          double* bound_out, double* direction_out) {
  return guarded([&] {
    require(p != nullptr, "null problem");
    require(step > 0.0 && std::isfinite(step), "step must be positive");
    const invlp_options o = opts ? *opts : defaults();
    const auto cfg = config_of(o);
    invlp::OracleResult r;
    switch (variant_of_enum(o.variant)) {
      case invlp::Variant::ADG: r = invlp::oracle_adg(p->fp, p->data, cfg.normalization_norm, step); break;
      case invlp::Variant::RDG: r = invlp::oracle_rdg(p->fp, p->data, step); break;
      case invlp::Variant::DSP: r = invlp::oracle_dsp(p->fp, p->data, cfg.ds_p, step); break;
    }
    if (value_out) *value_out = r.value;
    if (bound_out) *bound_out = r.discretization_bound;
    if (direction_out) copy_out(r.direction, direction_out, static_cast<size_t>(r.direction.size()));
    return INVLP_OK;
  });
}

}  // extern "C"

#include "cbiem/cbiem.h"

#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "cbiem/contour.hpp"
#include "cbiem/error.hpp"
#include "cbiem/interior.hpp"
#include "cbiem/quadrature.hpp"
#include "cbiem/solver.hpp"
#include "cbiem/study.hpp"

struct cbiem_contour {
  cbiem::Contour contour;
};

struct cbiem_solution {
  cbiem::BoundarySolution solution;
};

struct cbiem_study {
  cbiem::StudyResult result;
  std::string csv, svg, fits, metadata;
};

namespace {

thread_local std::string last_error;
thread_local std::string selftest_report;

cbiem_status status_of(cbiem::ErrorKind kind) {
  switch (kind) {
    case cbiem::ErrorKind::InvalidArgument: return CBIEM_INVALID_ARGUMENT;
    case cbiem::ErrorKind::NumericalFailure: return CBIEM_NUMERICAL_FAILURE;
    case cbiem::ErrorKind::GeometryDegenerate: return CBIEM_GEOMETRY_DEGENERATE;
    case cbiem::ErrorKind::LocationDegenerate: return CBIEM_LOCATION_DEGENERATE;
  }
  return CBIEM_INTERNAL_ERROR;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
cbiem_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return CBIEM_OK;
  } catch (const cbiem::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return CBIEM_INTERNAL_ERROR;
}

void need(const void* p, const char* what) {
  cbiem::require(p != nullptr, std::string(what) + " must not be null");
}

cbiem::ContourKind to_kind(cbiem_contour_kind k) {
  switch (k) {
    case CBIEM_CONTOUR_CIRCLE: return cbiem::ContourKind::UnitCircle;
    case CBIEM_CONTOUR_TEARDROP: return cbiem::ContourKind::Teardrop;
    case CBIEM_CONTOUR_CARDIOID: return cbiem::ContourKind::Cardioid;
    case CBIEM_CONTOUR_WIDE_TEARDROP: return cbiem::ContourKind::WideTeardrop;
  }
  cbiem::fail(cbiem::ErrorKind::InvalidArgument, "unknown contour kind");
}

cbiem::NormKind to_norm(cbiem_norm n) {
  switch (n) {
    case CBIEM_NORM_WEIGHTED2: return cbiem::NormKind::Weighted2;
    case CBIEM_NORM_UNWEIGHTED2: return cbiem::NormKind::Unweighted2;
    case CBIEM_NORM_INF: return cbiem::NormKind::Inf;
  }
  cbiem::fail(cbiem::ErrorKind::InvalidArgument, "unknown norm kind");
}

cbiem::ContourOptions to_options(const cbiem_contour_options* o) {
  cbiem::ContourOptions out;
  if (o) {
    out.orientation = o->reference_orientation ? cbiem::Orientation::Reference
                                               : cbiem::Orientation::Stated;
    out.circle_corners = o->circle_corners;
    out.wide_angle_deg = o->wide_angle_deg;
  }
  return out;
}

cbiem::SolveOptions to_options(const cbiem_solve_options* o) {
  cbiem::SolveOptions out;
  if (!o) return out;
  out.depth = o->depth;
  out.sigma = o->sigma;
  out.order = o->order;
  out.split = o->split_imag ? cbiem::RealSplit::ImagPart : cbiem::RealSplit::RealPart;
  if (o->has_normalization) out.normalization = o->normalization;
  if (o->graded_orders && o->graded_count > 0) {
    out.graded_orders.assign(o->graded_orders, o->graded_orders + o->graded_count);
  }
  out.condition_warning = o->condition_warning;
  return out;
}

void copy_rule(const cbiem::QuadratureRule& r, double* nodes, double* weights) {
  for (int i = 0; i < r.n; ++i) {
    if (nodes) nodes[i] = r.nodes[i];
    if (weights) weights[i] = r.weights[i];
  }
}

cbiem_status solve_with(const cbiem_contour* contour, const cbiem_solve_options* options,
                        const cbiem::BoundaryData& data, cbiem_solution** out) {
  return guarded([&] {
    need(contour, "contour");
    need(out, "output handle");
    *out = nullptr;
    auto s = std::make_unique<cbiem_solution>();
    s->solution = cbiem::solve_boundary(contour->contour, to_options(options), data);
    *out = s.release();
  });
}

cbiem_status wrap_study(cbiem::StudyResult result, cbiem_study** out) {
  auto s = std::make_unique<cbiem_study>();
  s->csv = cbiem::to_csv(result);
  s->svg = cbiem::to_svg(result);
  s->fits = cbiem::describe_fits(result);
  std::ostringstream md;
  md << "study=" << result.name << '\n';
  for (const auto& [k, v] : result.metadata) md << k << '=' << v << '\n';
  s->metadata = md.str();
  s->result = std::move(result);
  *out = s.release();
  return CBIEM_OK;
}

}  // namespace

extern "C" {

const char* cbiem_last_error(void) { return last_error.c_str(); }

const char* cbiem_version(void) { return "1.0.0"; }

cbiem_status cbiem_gauss_lobatto(int n, double a, double b, double* nodes, double* weights) {
  return guarded([&] { copy_rule(cbiem::gauss_lobatto(n, a, b), nodes, weights); });
}

cbiem_status cbiem_newton_cotes(int n, double* nodes, double* weights) {
  return guarded([&] { copy_rule(cbiem::newton_cotes_closed(n), nodes, weights); });
}

cbiem_status cbiem_error_constant(int p, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = cbiem::error_constant(p);
  });
}

cbiem_status cbiem_quad_selftest(const char** report, int* failures) {
  return guarded([&] {
    need(report, "report");
    int bad = 0;
    std::ostringstream os;
    for (const auto& line : cbiem::quadrature_selftest()) {
      if (!line.passed) ++bad;
      os << (line.passed ? "PASS " : "FAIL ") << line.label;
      if (!line.detail.empty()) os << "  (" << line.detail << ')';
      os << '\n';
    }
    selftest_report = os.str();
    *report = selftest_report.c_str();
    if (failures) *failures = bad;
  });
}

void cbiem_contour_options_init(cbiem_contour_options* options) {
  if (!options) return;
  const cbiem::ContourOptions d;
  options->reference_orientation = d.orientation == cbiem::Orientation::Reference;
  options->circle_corners = d.circle_corners;
  options->wide_angle_deg = d.wide_angle_deg;
}

cbiem_status cbiem_contour_create(cbiem_contour_kind kind, const cbiem_contour_options* options,
                                  cbiem_contour** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = nullptr;
    *out = new cbiem_contour{cbiem::make_contour(to_kind(kind), to_options(options))};
  });
}

void cbiem_contour_destroy(cbiem_contour* contour) { delete contour; }

cbiem_status cbiem_contour_point(const cbiem_contour* contour, double t, double* re,
                                 double* im) {
  return guarded([&] {
    need(contour, "contour");
    const cbiem::cplx z = contour->contour.point(t);
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

cbiem_status cbiem_contour_info(const cbiem_contour* contour, int* corner_count, int* winding) {
  return guarded([&] {
    need(contour, "contour");
    if (corner_count) *corner_count = contour->contour.corner_count();
    if (winding) *winding = contour->contour.winding();
  });
}

void cbiem_solve_options_init(cbiem_solve_options* options) {
  if (!options) return;
  const cbiem::SolveOptions d;
  options->depth = d.depth;
  options->sigma = d.sigma;
  options->order = d.order;
  options->split_imag = 0;
  options->has_normalization = 0;
  options->normalization = 0.0;
  options->graded_orders = nullptr;
  options->graded_count = 0;
  options->condition_warning = d.condition_warning;
}

cbiem_status cbiem_solve_power(const cbiem_contour* contour, const cbiem_solve_options* options,
                               double alpha, cbiem_solution** out) {
  return solve_with(contour, options, cbiem::BoundaryData::power(alpha), out);
}

cbiem_status cbiem_solve_constant(const cbiem_contour* contour,
                                  const cbiem_solve_options* options, double value,
                                  cbiem_solution** out) {
  return solve_with(contour, options, cbiem::BoundaryData::constant(value), out);
}

cbiem_status cbiem_solve_function(const cbiem_contour* contour,
                                  const cbiem_solve_options* options, cbiem_boundary_fn u,
                                  void* user, cbiem_solution** out) {
  if (!u) {
    last_error = "boundary function must not be null";
    return CBIEM_INVALID_ARGUMENT;
  }
  cbiem::BoundaryData data;
  data.u = [u, user](double t, cbiem::cplx z) { return u(t, z.real(), z.imag(), user); };
  return solve_with(contour, options, data, out);
}

void cbiem_solution_destroy(cbiem_solution* solution) { delete solution; }

cbiem_status cbiem_solution_size(const cbiem_solution* s, int* n) {
  return guarded([&] {
    need(s, "solution");
    need(n, "output");
    *n = s->solution.size();
  });
}

cbiem_status cbiem_solution_nodes(const cbiem_solution* s, double* t, double* re, double* im) {
  return guarded([&] {
    need(s, "solution");
    const auto& d = s->solution.disc;
    for (int k = 0; k < d.size(); ++k) {
      if (t) t[k] = d.t_nodes[k];
      if (re) re[k] = d.nodes[k].real();
      if (im) im[k] = d.nodes[k].imag();
    }
  });
}

cbiem_status cbiem_solution_values(const cbiem_solution* s, double* u, double* v_hat,
                                   double* v_exact) {
  return guarded([&] {
    need(s, "solution");
    const auto& sol = s->solution;
    cbiem::require(!v_exact || !sol.v_true.empty(), "exact V is not known for this problem");
    for (int k = 0; k < sol.size(); ++k) {
      if (u) u[k] = sol.u[k];
      if (v_hat) v_hat[k] = sol.v_hat[k];
      if (v_exact) v_exact[k] = sol.v_true[k];
    }
  });
}

cbiem_status cbiem_solution_error(const cbiem_solution* s, cbiem_norm norm, double* out) {
  return guarded([&] {
    need(s, "solution");
    need(out, "output");
    *out = s->solution.error(to_norm(norm));
  });
}

cbiem_status cbiem_solution_condition(const cbiem_solution* s, double* condition,
                                      int* ill_conditioned) {
  return guarded([&] {
    need(s, "solution");
    if (condition) *condition = s->solution.condition;
    if (ill_conditioned) *ill_conditioned = s->solution.ill_conditioned ? 1 : 0;
  });
}

cbiem_status cbiem_solution_eval(const cbiem_solution* s, double re, double im, int subtracted,
                                 double* out_re, double* out_im) {
  return guarded([&] {
    need(s, "solution");
    const auto& sol = s->solution;
    const cbiem::cplx z(re, im);
    const cbiem::cplx w = subtracted ? cbiem::evaluate_subtracted(sol.w_hat, sol.disc, z)
                                     : cbiem::evaluate_naive(sol.w_hat, sol.disc, z);
    if (out_re) *out_re = w.real();
    if (out_im) *out_im = w.imag();
  });
}

void cbiem_table_spec_init(cbiem_table_spec* spec) {
  if (!spec) return;
  const cbiem::TableSpec d;
  spec->contour = CBIEM_CONTOUR_TEARDROP;
  cbiem_contour_options_init(&spec->contour_options);
  spec->alpha = d.alpha;
  spec->sigma = d.sigma;
  spec->d_min = d.d_min;
  spec->d_max = d.d_max;
  spec->o_min = d.o_min;
  spec->o_max = d.o_max;
  spec->norm = CBIEM_NORM_UNWEIGHTED2;
  spec->threads = 0;
}

cbiem_status cbiem_study_h(const double* gammas, int count, int points, int d_max,
                           cbiem_study** out) {
  return guarded([&] {
    need(gammas, "gamma list");
    need(out, "output handle");
    cbiem::require(count > 0, "gamma list is empty");
    wrap_study(cbiem::run_h_study(std::span(gammas, count), points, d_max), out);
  });
}

cbiem_status cbiem_study_hp(double sigma, int d_max, cbiem_study** out) {
  return guarded([&] {
    need(out, "output handle");
    wrap_study(cbiem::run_hp_study(sigma, d_max), out);
  });
}

cbiem_status cbiem_study_contour(double sigma, int d_min, int d_max, cbiem_study** out) {
  return guarded([&] {
    need(out, "output handle");
    wrap_study(cbiem::run_contour_study(sigma, d_min, d_max), out);
  });
}

cbiem_status cbiem_study_table(const cbiem_table_spec* spec, cbiem_study** out) {
  return guarded([&] {
    need(spec, "table spec");
    need(out, "output handle");
    cbiem::TableSpec t;
    t.contour = to_kind(spec->contour);
    t.contour_options = to_options(&spec->contour_options);
    t.alpha = spec->alpha;
    t.sigma = spec->sigma;
    t.d_min = spec->d_min;
    t.d_max = spec->d_max;
    t.o_min = spec->o_min;
    t.o_max = spec->o_max;
    t.norm = to_norm(spec->norm);
    t.threads = spec->threads;
    wrap_study(cbiem::run_cbiem_table(t), out);
  });
}

void cbiem_study_destroy(cbiem_study* study) { delete study; }

cbiem_status cbiem_study_row_count(const cbiem_study* s, int* count) {
  return guarded([&] {
    need(s, "study");
    need(count, "output");
    *count = static_cast<int>(s->result.rows.size());
  });
}

cbiem_status cbiem_study_row(const cbiem_study* s, int row, int* n, double* error,
                             cbiem_row_status* status, double* params, int max_params,
                             int* param_count) {
  return guarded([&] {
    need(s, "study");
    cbiem::require(row >= 0 && row < static_cast<int>(s->result.rows.size()),
                   "row index out of range");
    const cbiem::StudyRow& r = s->result.rows[row];
    if (n) *n = r.n;
    if (error) *error = r.error;
    if (status) *status = static_cast<cbiem_row_status>(r.status);
    const int np = static_cast<int>(r.params.size());
    if (param_count) *param_count = np;
    if (params) {
      for (int i = 0; i < np && i < max_params; ++i) params[i] = r.params[i];
    }
  });
}

cbiem_status cbiem_study_fit_count(const cbiem_study* s, int* count) {
  return guarded([&] {
    need(s, "study");
    need(count, "output");
    *count = static_cast<int>(s->result.fits.size());
  });
}

cbiem_status cbiem_study_fit(const cbiem_study* s, int fit, double* tail_slope,
                             double* tail_r2, double* all_slope, double* all_r2,
                             double* predicted_slope) {
  return guarded([&] {
    need(s, "study");
    cbiem::require(fit >= 0 && fit < static_cast<int>(s->result.fits.size()),
                   "fit index out of range");
    const cbiem::SeriesFit& f = s->result.fits[fit];
    if (tail_slope) *tail_slope = f.tail.slope;
    if (tail_r2) *tail_r2 = f.tail.r2;
    if (all_slope) *all_slope = f.all.slope;
    if (all_r2) *all_r2 = f.all.r2;
    if (predicted_slope) *predicted_slope = f.predicted_slope;
  });
}

#define CBIEM_TEXT_ACCESSOR(name, field)                             \
  cbiem_status name(const cbiem_study* s, const char** text) {     \
    return guarded([&] {                                           \
      need(s, "study");                                            \
      need(text, "output");                                        \
      *text = s->field.c_str();                                    \
    });                                                            \
  }

CBIEM_TEXT_ACCESSOR(cbiem_study_csv, csv)
CBIEM_TEXT_ACCESSOR(cbiem_study_svg, svg)
CBIEM_TEXT_ACCESSOR(cbiem_study_fits_text, fits)
CBIEM_TEXT_ACCESSOR(cbiem_study_metadata_text, metadata)

#undef CBIEM_TEXT_ACCESSOR

}  // extern "C"

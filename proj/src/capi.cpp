#include "gifsdim.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <span>
#include <string>
#include <vector>

#include "gifsdim/bowen.hpp"
#include "gifsdim/parallel.hpp"
#include "gifsdim/demo.hpp"
#include "gifsdim/oracle.hpp"
#include "gifsdim/perturbation.hpp"
#include "gifsdim/pressure.hpp"
#include "gifsdim/spec_io.hpp"

struct gifs_spec {
  gifs::SpecFile file;
};

namespace {

thread_local std::string g_last_error;

gifs_status set_error(const gifs::Error& err) {
  g_last_error = err.what();
  switch (err.kind()) {
    case gifs::Error::Kind::input:
      return GIFS_ERR_INPUT;
    case gifs::Error::Kind::domain:
      return GIFS_ERR_DOMAIN;
    case gifs::Error::Kind::numeric:
      return GIFS_ERR_NUMERIC;
  }
  return GIFS_ERR_INPUT;
}

gifs_status set_error(const std::exception& err) {
  g_last_error = err.what();
  return GIFS_ERR_NUMERIC;
}

template <typename Fn>
gifs_status guarded(Fn&& fn) {
  try {
    fn();
    return GIFS_OK;
  } catch (const gifs::Error& err) {
    return set_error(err);
  } catch (const std::exception& err) {
    return set_error(err);
  }
}

gifs_status require(bool ok, const char* what) {
  if (ok) return GIFS_OK;
  g_last_error = what;
  return GIFS_ERR_INPUT;
}

gifs::EdgePotential make_potential(const gifs::AffineSystem& sys, gifs_potential pot) {
  switch (pot) {
    case GIFS_POT_UPPER:
      return gifs::EdgePotential::upper(sys);
    case GIFS_POT_LOWER:
      return gifs::EdgePotential::lower(sys);
    case GIFS_POT_DET:
      return gifs::EdgePotential::log_det(sys);
  }
  throw gifs::Error(gifs::Error::Kind::input, "unknown potential selector");
}

void copy_string(char* buf, size_t len, const std::string& s) {
  if (buf == nullptr || len == 0) return;
  const size_t n = std::min(len - 1, s.size());
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

}  // namespace

extern "C" {

const char* gifs_last_error(void) { return g_last_error.c_str(); }

gifs_status gifs_spec_load(const char* path, gifs_spec** out) {
  if (auto rc = require(path && out, "null argument")) return rc;
  return guarded([&] { *out = new gifs_spec{gifs::load_spec(path)}; });
}

gifs_status gifs_spec_parse(const char* text, const char* name, gifs_spec** out) {
  if (auto rc = require(text && out, "null argument")) return rc;
  return guarded(
      [&] { *out = new gifs_spec{gifs::parse_spec(text, name ? name : "<string>")}; });
}

void gifs_spec_free(gifs_spec* spec) { delete spec; }

int gifs_spec_dim(const gifs_spec* spec) { return spec ? spec->file.family.base.dim : 0; }

int gifs_spec_order(const gifs_spec* spec) { return spec ? spec->file.family.order : 0; }

int gifs_spec_edge_count(const gifs_spec* spec) {
  return spec ? spec->file.family.base.graph.edge_count() : 0;
}

int gifs_spec_vertex_count(const gifs_spec* spec) {
  return spec ? spec->file.family.base.graph.vertex_count() : 0;
}

int gifs_spec_has_tail(const gifs_spec* spec) {
  return spec && spec->file.family.tail && spec->file.family.tail->scale > 0 ? 1 : 0;
}

double gifs_spec_eps_max(const gifs_spec* spec) {
  return spec ? spec->file.family.eps_max : 0.0;
}

gifs_status gifs_spec_edge_name(const gifs_spec* spec, int edge, char* buf, size_t len) {
  if (auto rc = require(spec && buf && len > 0, "null argument")) return rc;
  return guarded([&] { copy_string(buf, len, spec->file.family.base.graph.edge_name(edge)); });
}

gifs_status gifs_validate(const gifs_spec* spec, int depth, gifs_validation* out) {
  if (auto rc = require(spec && out, "null argument")) return rc;
  return guarded([&] {
    const gifs::ValidationReport rep = gifs::validate(spec->file.family.base, depth);
    *out = gifs_validation{};
    out->contraction_ratio = rep.contraction_ratio;
    out->contraction_ok = rep.contraction_ok;
    out->invertible_ok = rep.invertible_ok;
    out->seeds_ok = rep.seeds_ok;
    out->inclusion_ok = rep.inclusion_ok;
    out->hard_pass = rep.hard_pass();
    out->ssc = rep.ssc;
    out->osc = rep.osc;
    out->min_separation = rep.min_delta;
    out->depth = rep.depth;
    std::string msg;
    for (const auto& f : rep.failures) {
      if (!msg.empty()) msg += "; ";
      msg += f;
    }
    copy_string(out->message, sizeof out->message, msg);
  });
}

gifs_status gifs_separation_table(const gifs_spec* spec, int depth, double* delta) {
  if (auto rc = require(spec && delta, "null argument")) return rc;
  return guarded([&] {
    const gifs::ValidationReport rep = gifs::validate(spec->file.family.base, depth);
    const size_t n = rep.delta.size();
    for (size_t i = 0; i < n; ++i) delta[i] = rep.delta[i];
  });
}

gifs_status gifs_pressure_spectral(const gifs_spec* spec, gifs_potential pot, double s,
                                   double* value, int* finite) {
  if (auto rc = require(spec && value && finite, "null argument")) return rc;
  return guarded([&] {
    const auto& sys = spec->file.family.base;
    const gifs::PressureValue p =
        gifs::pressure_spectral(sys.graph, make_potential(sys, pot).scaled(s));
    *value = p.value;
    *finite = p.finite() ? 1 : 0;
  });
}

gifs_status gifs_pressure_cylinder(const gifs_spec* spec, gifs_potential pot, double s,
                                   int depth, double* value, int* finite) {
  if (auto rc = require(spec && value && finite, "null argument")) return rc;
  return guarded([&] {
    const auto& sys = spec->file.family.base;
    const double p = gifs::pressure_cylinder(sys.graph, make_potential(sys, pot).scaled(s), depth);
    *finite = std::isfinite(p) ? 1 : 0;
    *value = p;
  });
}

gifs_status gifs_pressure_truncated(const gifs_spec* spec, double s, const double* log2_sizes,
                                    size_t n, double* pressures, int* verdict) {
  if (auto rc = require(spec && log2_sizes && pressures && verdict && n > 0, "null argument"))
    return rc;
  return guarded([&] {
    const gifs::TailSystem ts = gifs::TailSystem::from(spec->file.family);
    const gifs::TruncationResult res =
        gifs::pressure_truncated(ts, s, std::span<const double>(log2_sizes, n));
    for (size_t i = 0; i < n; ++i)
      pressures[i] = i < res.sequence.size() ? res.sequence[i].pressure
                                             : res.sequence.back().pressure;
    *verdict = static_cast<int>(res.verdict);
  });
}

gifs_status gifs_finiteness_threshold(const gifs_spec* spec, double tol, double* out) {
  if (auto rc = require(spec && out, "null argument")) return rc;
  return guarded([&] {
    const gifs::TailSystem ts = gifs::TailSystem::from(spec->file.family);
    *out = gifs::finiteness_threshold(ts, tol);
  });
}

gifs_status gifs_bowen_root(const gifs_spec* spec, gifs_potential pot, double tol,
                            double* out) {
  if (auto rc = require(spec && out, "null argument")) return rc;
  return guarded([&] {
    const auto& sys = spec->file.family.base;
    *out = gifs::bowen_root(sys.graph, make_potential(sys, pot), tol);
  });
}

gifs_status gifs_dim_bounds(const gifs_spec* spec, double tol, int depth,
                            double conformality_tol, gifs_dim_report* out) {
  if (auto rc = require(spec && out, "null argument")) return rc;
  return guarded([&] {
    const gifs::DimensionReport rep = gifs::dim_bounds_affine(
        spec->file.family.base, tol, depth,
        conformality_tol > 0 ? conformality_tol : 1e-9);
    *out = gifs_dim_report{};
    out->s_lower = rep.lower;
    out->s_upper = rep.upper;
    out->det_lower = rep.det_lower;
    out->det_upper = rep.det_upper;
    out->quasiregularity = rep.K;
    out->conformal = rep.conformal;
    out->ssc = rep.ssc;
    out->osc = rep.osc;
    out->lower_is_heuristic = rep.lower_is_heuristic;
  });
}

gifs_status gifs_perturb_sweep(const gifs_spec* spec, const double* eps, size_t n, double tol,
                               int workers, gifs_perturb_row* rows) {
  if (auto rc = require(spec && eps && rows && n > 0, "null argument")) return rc;
  return guarded([&] {
    const auto& fam = spec->file.family;
    std::vector<std::string> errors(n);
    gifs::parallel_for(n, workers, [&](size_t i) {
      try {
        const gifs::AffineSystem sys = fam.at(eps[i]);
        rows[i].eps = eps[i];
        rows[i].s_upper = gifs::bowen_root(sys.graph, gifs::EdgePotential::upper(sys), tol);
        rows[i].s_lower = gifs::bowen_root(sys.graph, gifs::EdgePotential::lower(sys), tol);
        rows[i].K = gifs::system_quasiregular_K(sys);
      } catch (const gifs::Error& err) {
        errors[i] = err.what();
      }
    });
    for (const auto& e : errors)
      if (!e.empty()) throw gifs::Error(gifs::Error::Kind::domain, e);
  });
}

gifs_status gifs_fit_expansion(const gifs_spec* spec, int order, const double* eps, size_t n,
                               int method, double tol, int workers, gifs_expansion_fit* out) {
  if (auto rc = require(spec && eps && out && n > 0, "null argument")) return rc;
  if (auto rc = require(order >= 0 && order <= 8, "order must be in [0, 8]")) return rc;
  return guarded([&] {
    const gifs::ExpansionFit fit = gifs::fit_expansion(
        spec->file.family, order, std::span<const double>(eps, n),
        method == 1 ? gifs::FitMethod::polyfit : gifs::FitMethod::richardson, tol, workers);
    *out = gifs_expansion_fit{};
    out->order = fit.order;
    for (int k = 0; k <= fit.order; ++k) {
      out->coeff[k] = fit.coeff[static_cast<size_t>(k)];
      out->remainder_scale[k] = fit.remainder_scale[static_cast<size_t>(k)];
    }
    out->remainder_slope = fit.remainder_slope;
    out->width_slope = fit.width_slope;
    out->reliable = fit.reliable ? 1 : 0;
    copy_string(out->note, sizeof out->note, fit.note);
  });
}

gifs_status gifs_affine_condition_check(const gifs_spec* spec, double t, double dim_lower,
                                        double dim_upper, gifs_condition_report* out) {
  if (auto rc = require(spec && out, "null argument")) return rc;
  return guarded([&] {
    const gifs::ConditionReport rep =
        gifs::affine_condition_check(spec->file.family, t, {dim_lower, dim_upper});
    *out = gifs_condition_report{};
    out->t_exponent = t;
    out->p_low = rep.p_low;
    out->p_n = rep.p_n;
    out->coeff_ratio = rep.coeff_ratio;
    out->offset_bound = rep.offset_bound;
    out->coeff_finite = rep.coeff_finite ? 1 : 0;
    out->offsets_finite = rep.offsets_finite ? 1 : 0;
    out->dim_check = rep.dim_check ? 1 : 0;
    out->pass = rep.pass() ? 1 : 0;
  });
}

gifs_status gifs_k_order_check(const gifs_spec* spec, int order, const double* eps, size_t n,
                               gifs_k_order* out) {
  if (auto rc = require(spec && eps && out && n > 0, "null argument")) return rc;
  return guarded([&] {
    const gifs::KOrderVerdict v =
        gifs::k_order_check(spec->file.family, order, std::span<const double>(eps, n));
    out->slope = v.slope;
    out->slope_stderr = v.slope_stderr;
    out->pass = v.pass ? 1 : 0;
    out->exactly_conformal = v.exactly_conformal ? 1 : 0;
  });
}

gifs_status gifs_chaos_game(const gifs_spec* spec, size_t n_points, int burn_in,
                            uint64_t seed, int chains, int workers, double* coords,
                            int32_t* vertices) {
  if (auto rc = require(spec && coords && vertices, "null argument")) return rc;
  return guarded([&] {
    const gifs::PointCloud cloud =
        gifs::chaos_game(spec->file.family.base, n_points, burn_in, seed, chains, workers);
    std::memcpy(coords, cloud.coords.data(), cloud.coords.size() * sizeof(double));
    std::memcpy(vertices, cloud.vertex.data(), cloud.vertex.size() * sizeof(int32_t));
  });
}

gifs_status gifs_box_count(const gifs_spec* spec, size_t n_points, int burn_in, uint64_t seed,
                           int chains, int workers, int n_scales, double* scales,
                           uint64_t* counts, gifs_boxcount_report* out) {
  if (auto rc = require(spec && scales && counts && out && n_scales > 0, "null argument"))
    return rc;
  return guarded([&] {
    const auto& sys = spec->file.family.base;
    const gifs::PointCloud cloud =
        gifs::chaos_game(sys, n_points, burn_in, seed, chains, workers);
    const gifs::Box anchor = gifs::seeds_bbox(sys);
    const std::vector<double> sc = gifs::dyadic_scales(anchor, n_scales);
    const gifs::BoxCountReport rep = gifs::box_count_dim(cloud, anchor, sc);
    for (int i = 0; i < n_scales; ++i) {
      scales[i] = rep.scales[static_cast<size_t>(i)];
      counts[i] = rep.counts[static_cast<size_t>(i)];
    }
    out->slope = rep.slope;
    out->slope_stderr = rep.slope_stderr;
    out->degenerate = rep.degenerate ? 1 : 0;
  });
}

gifs_status gifs_example_r3_spec(double r, char* buf, size_t len) {
  if (auto rc = require(buf && len > 0, "null argument")) return rc;
  return guarded([&] {
    const std::string text = gifs::example_r3_spec_text(r);
    if (text.size() + 1 > len)
      throw gifs::Error(gifs::Error::Kind::input, "buffer too small for demo spec");
    copy_string(buf, len, text);
  });
}

double gifs_example_r3_closed_K(double eps) { return gifs::example_r3_closed_K(eps); }

}  // extern "C"

/* C API for the gifsdim shared library.
 *
 * All functions return gifs_status; on failure gifs_last_error() carries a
 * thread-local message valid until the next failing call on the same thread.
 * Handles created by gifs_spec_load / gifs_spec_parse must be released with
 * gifs_spec_free. Loaded specs are immutable and safe to share across
 * threads.
 */
#ifndef GIFSDIM_H
#define GIFSDIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef GIFSDIM_API
#if defined(_WIN32)
#define GIFSDIM_API __declspec(dllexport)
#else
#define GIFSDIM_API __attribute__((visibility("default")))
#endif
#endif

typedef enum gifs_status {
  GIFS_OK = 0,
  GIFS_ERR_DOMAIN = 1,  /* validation or mathematical domain failure */
  GIFS_ERR_INPUT = 2,   /* parse failure or bad arguments */
  GIFS_ERR_NUMERIC = 3  /* numerical non-convergence */
} gifs_status;

typedef struct gifs_spec gifs_spec; /* opaque: loaded system or family */

GIFSDIM_API const char* gifs_last_error(void);

GIFSDIM_API gifs_status gifs_spec_load(const char* path, gifs_spec** out);
GIFSDIM_API gifs_status gifs_spec_parse(const char* text, const char* name, gifs_spec** out);
GIFSDIM_API void gifs_spec_free(gifs_spec* spec);

GIFSDIM_API int gifs_spec_dim(const gifs_spec* spec);
GIFSDIM_API int gifs_spec_order(const gifs_spec* spec);
GIFSDIM_API int gifs_spec_edge_count(const gifs_spec* spec);
GIFSDIM_API int gifs_spec_vertex_count(const gifs_spec* spec);
GIFSDIM_API int gifs_spec_has_tail(const gifs_spec* spec);
GIFSDIM_API double gifs_spec_eps_max(const gifs_spec* spec);
GIFSDIM_API gifs_status gifs_spec_edge_name(const gifs_spec* spec, int edge, char* buf,
                                            size_t len);

typedef struct gifs_validation {
  double contraction_ratio;
  int contraction_ok;
  int invertible_ok;
  int seeds_ok;
  int inclusion_ok;
  int hard_pass; /* all four structural checks */
  int ssc;       /* positive pairwise separation at this depth */
  int osc;       /* open image boxes disjoint at this depth */
  double min_separation;
  int depth;
  char message[1024]; /* empty when everything passes */
} gifs_validation;

GIFSDIM_API gifs_status gifs_validate(const gifs_spec* spec, int depth, gifs_validation* out);

/* delta must hold edge_count * edge_count doubles (row-major pairwise
 * separation lower bounds; the diagonal is zero). */
GIFSDIM_API gifs_status gifs_separation_table(const gifs_spec* spec, int depth, double* delta);

typedef enum gifs_potential {
  GIFS_POT_UPPER = 0, /* log op_norm(M_e) */
  GIFS_POT_LOWER = 1, /* log inf_norm(M_e) */
  GIFS_POT_DET = 2    /* log |det M_e| */
} gifs_potential;

/* Pressure of s * potential for the base system. finite = 0 flags the
 * -infinity marker (no admissible cycle). */
GIFSDIM_API gifs_status gifs_pressure_spectral(const gifs_spec* spec, gifs_potential pot,
                                               double s, double* value, int* finite);
GIFSDIM_API gifs_status gifs_pressure_cylinder(const gifs_spec* spec, gifs_potential pot,
                                               double s, int depth, double* value,
                                               int* finite);

/* Truncated pressures of s * log(norm) for one-vertex systems with a tail
 * rule; sizes are log2 of the tail truncation length. verdict: 0 converged,
 * 1 divergent, 2 undetermined. */
GIFSDIM_API gifs_status gifs_pressure_truncated(const gifs_spec* spec, double s,
                                                const double* log2_sizes, size_t n,
                                                double* pressures, int* verdict);

/* inf { s >= 0 : P(s log norm) finite }, reported before dividing by the
 * ambient dimension. */
GIFSDIM_API gifs_status gifs_finiteness_threshold(const gifs_spec* spec, double tol,
                                                  double* out);

GIFSDIM_API gifs_status gifs_bowen_root(const gifs_spec* spec, gifs_potential pot, double tol,
                                        double* out);

typedef struct gifs_dim_report {
  double s_lower;
  double s_upper;
  double det_lower;
  double det_upper;
  double quasiregularity; /* K: max over edges of the minimal constant */
  int conformal;
  int ssc;
  int osc;
  int lower_is_heuristic; /* separation failed, lower bound is advisory */
} gifs_dim_report;

/* conformality_tol controls when a system counts as conformal; pass 0 for
 * the default of 1e-9 relative. */
GIFSDIM_API gifs_status gifs_dim_bounds(const gifs_spec* spec, double tol, int depth,
                                        double conformality_tol, gifs_dim_report* out);

typedef struct gifs_perturb_row {
  double eps;
  double s_lower;
  double s_upper;
  double K;
} gifs_perturb_row;

GIFSDIM_API gifs_status gifs_perturb_sweep(const gifs_spec* spec, const double* eps, size_t n,
                                           double tol, int workers, gifs_perturb_row* rows);

typedef struct gifs_expansion_fit {
  int order;
  double coeff[9];
  double remainder_scale[9];
  double remainder_slope; /* large when the residual sits at solver tolerance */
  double width_slope;     /* large when brackets are degenerate */
  int reliable;
  char note[256];
} gifs_expansion_fit;

/* method: 0 Richardson-style extrapolation, 1 least-squares polynomial. */
GIFSDIM_API gifs_status gifs_fit_expansion(const gifs_spec* spec, int order,
                                           const double* eps, size_t n, int method,
                                           double tol, int workers, gifs_expansion_fit* out);

typedef struct gifs_condition_report {
  double t_exponent;
  double p_low;        /* finiteness threshold divided by the dimension */
  double p_n;          /* admissibility exponent at t */
  double coeff_ratio;  /* max_k sup_e |M_{e,k}| / |M_e|^t */
  double offset_bound; /* max_k sup_e |a_{e,k}| */
  int coeff_finite;
  int offsets_finite;
  int dim_check; /* p_n below the lower end of the dimension bracket */
  int pass;
} gifs_condition_report;

/* Admissibility clauses for an order-n expansion of the loaded family,
 * evaluated at exponent t in (0, 1] against the bracket [dim_lower,
 * dim_upper]. */
GIFSDIM_API gifs_status gifs_affine_condition_check(const gifs_spec* spec, double t,
                                                    double dim_lower, double dim_upper,
                                                    gifs_condition_report* out);

typedef struct gifs_k_order {
  double slope;
  double slope_stderr;
  int pass;
  int exactly_conformal;
} gifs_k_order;

GIFSDIM_API gifs_status gifs_k_order_check(const gifs_spec* spec, int order,
                                           const double* eps, size_t n, gifs_k_order* out);

/* coords must hold n_points * dim doubles, vertices n_points int32. */
GIFSDIM_API gifs_status gifs_chaos_game(const gifs_spec* spec, size_t n_points, int burn_in,
                                        uint64_t seed, int chains, int workers,
                                        double* coords, int32_t* vertices);

typedef struct gifs_boxcount_report {
  double slope;
  double slope_stderr;
  int degenerate;
} gifs_boxcount_report;

/* scales and counts must hold n_scales entries. */
GIFSDIM_API gifs_status gifs_box_count(const gifs_spec* spec, size_t n_points, int burn_in,
                                       uint64_t seed, int chains, int workers, int n_scales,
                                       double* scales, uint64_t* counts,
                                       gifs_boxcount_report* out);

/* Built-in 3-D demo family (CLI command `example-r3`). */
GIFSDIM_API gifs_status gifs_example_r3_spec(double r, char* buf, size_t len);
GIFSDIM_API double gifs_example_r3_closed_K(double eps);

#ifdef __cplusplus
}
#endif

#endif /* GIFSDIM_H */

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gifsdim/system.hpp"

namespace gifs {

// Exponent table t(l, k) for l = 0..order and k = 1..order-l+1, all values
// in (0, 1]. Entry t(l, k) bounds the k-th derivative of the order-l
// coefficient map against op_norm^t(l,k).
struct TTable {
  int order = 0;
  std::vector<std::vector<double>> rows;  // rows[l][k-1]

  static TTable uniform(int order, double t);
  double at(int l, int k) const;  // throws Error(input) outside the domain
  bool in_domain(int l, int k) const;
};

// Minimum over D-tuples (i_1..i_D), (j_1..j_D) of nonnegative integers with
// sum(i) = i, sum(j) = j subject to (i = k, j = 0) or (0 <= i < k and
// 1 <= j <= k - i), of the average (1/D) sum_p t(i_p, j_p + 1). Tuples whose
// lookups fall outside the table are infeasible.
double compute_tk(const TTable& table, int dim, int k);

// min{ t_order, t0, t0/D + (D-1)/D * t(l,1) for l = 1..order }; reduces to
// t0 when order = 0.
double compute_ttilde(const TTable& table, int dim, double t0);

// Admissibility exponent for an order-n expansion:
//   n = 0: p_low / t_tilde
//   n >= 1: max over { p_low + (n/k)(1 - t_k), p_low / t_k,
//                      p_low + 1 - t_tilde, p_low / t_tilde }.
double compute_pn(double p_low, std::span<const double> tks, double t_tilde, int n);

struct ConditionReport {
  TTable t_table;
  std::vector<double> t_k;
  double t_tilde = 1.0;
  double p_low = 0.0;     // finiteness threshold divided by the ambient dimension
  double p_n = 0.0;       // max(s_under + D*n*(1-t), s_under/t), s_under = D*p_low
  double coeff_ratio = 0.0;   // max over k, e of op_norm(M_{e,k}) / op_norm(M_e)^t
  double offset_bound = 0.0;  // max over k, e of |a_{e,k}|
  bool coeff_finite = false;
  bool offsets_finite = false;
  bool dim_check = false;  // p_n below the lower end of the dimension bracket
  std::vector<std::string> failing;
  bool pass() const { return coeff_finite && offsets_finite && dim_check; }
};

// Checks the affine perturbation admissibility clauses at exponent t:
// coefficient growth, offset bounds, and p_n(t) against a dimension bracket.
ConditionReport affine_condition_check(const PerturbedFamily& fam, double t,
                                       std::pair<double, double> dim_bracket);

enum class FitMethod { richardson, polyfit };

struct ExpansionFit {
  int order = 0;
  std::vector<double> coeff;            // s_0 .. s_n
  std::vector<double> remainder_scale;  // reported uncertainty per coefficient
  double remainder_slope = 0.0;  // log-log order of the residual, large when the
                                 // residual sits at solver tolerance
  double width_slope = 0.0;      // log-log order of the per-eps bracket width
  std::vector<double> grid;
  std::vector<double> lower;  // per-eps bracket
  std::vector<double> upper;
  bool reliable = true;
  std::string note;
};

// Fits dim(eps) = s_0 + s_1 eps + ... + s_n eps^n to per-eps dimension
// values (bracket midpoints; for conformal families the brackets are
// degenerate and the midpoint is the Bowen root). Richardson peels the
// coefficients by repeated extrapolation to eps = 0 with tableau depth
// capped at n+2; polyfit is a least-squares degree-n polynomial. Grids must
// be strictly decreasing with at least n+3 points. A fit is flagged
// unreliable when the bracket width exceeds half the fitted coefficient
// scale (nonconformality dominates).
ExpansionFit fit_expansion(const PerturbedFamily& fam, int n, std::span<const double> grid,
                           FitMethod method = FitMethod::richardson, double tol = 1e-10,
                           int workers = 1);

struct KOrderVerdict {
  bool pass = false;
  bool exactly_conformal = false;
  double slope = 0.0;
  double slope_stderr = 0.0;
};

// Verifies K(eps) = 1 + o(eps^n) empirically: fits the log-log slope of
// K(eps) - 1 and passes iff the slope exceeds n at the 5% one-sided level
// (or the family is exactly conformal on the grid).
KOrderVerdict k_order_check(const PerturbedFamily& fam, int n, std::span<const double> grid);

// eps0 * 2^-j for j = 0..levels-1.
std::vector<double> dyadic_grid(double eps0, int levels);

}  // namespace gifs

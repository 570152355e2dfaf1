#pragma once

#include <utility>

#include "gifsdim/pressure.hpp"
#include "gifsdim/system.hpp"

namespace gifs {

// Unique s >= 0 with pressure(s * phi) = 0 for a strictly negative potential
// phi, found by bisection over [0, P(0)/(-max phi)]. The returned root s
// satisfies P((s - tol) phi) > 0 > P((s + tol) phi). Throws Error(domain,
// "no positive root") when P(0) <= 0.
double bowen_root(const Graph& g, const EdgePotential& phi, double tol = 1e-10);

struct DimensionReport {
  double lower = 0.0;  // root for the infimum-norm potential
  double upper = 0.0;  // root for the operator-norm potential
  double det_lower = 0.0;
  double det_upper = 0.0;
  double K = 1.0;  // max over edges of the minimal quasiregularity constant
  bool conformal = false;
  bool ssc = false;
  bool osc = false;
  bool lower_is_heuristic = false;  // set when SSC fails; only the upper bound keeps
                                    // its guarantee under OSC alone
  double root_tol = 0.0;
  int separation_depth = 1;
  double residual_lower = 0.0;  // pressure left at the returned lower root
  double residual_upper = 0.0;
};

// Dimension bracket for an affine system: Bowen roots of the operator-norm
// and infimum-norm potentials plus the determinant-pressure interval at the
// system's own quasiregularity constant. Requires a validated system with a
// finitely irreducible graph.
DimensionReport dim_bounds_affine(const AffineSystem& sys, double tol = 1e-10,
                                  int separation_depth = 1,
                                  double conformality_tol = 1e-9);

// Interval [s-, s+] where s- solves P((s/D) log|det|) = +(s/D) log K and
// s+ solves the same with -(s/D) log K. Requires K >= 1 and log|det M_e| < 0
// for every edge.
std::pair<double, double> det_bracket(const AffineSystem& sys, double K,
                                      double tol = 1e-10);

}  // namespace gifs

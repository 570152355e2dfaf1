#include "gifsdim/bowen.hpp"

#include <cmath>
#include <functional>

namespace gifs {

namespace {

void require_negative(const EdgePotential& phi) {
  for (double v : phi.values)
    if (!(v < 0))
      throw Error(Error::Kind::input, "potential must be strictly negative on every edge");
}

// Root of the strictly decreasing map s -> P(s*phi) - target(s) on [0, hi].
double bisect_root(const std::function<double(double)>& h, double hi, double tol) {
  double lo = 0.0;
  int iters = 0;
  while (hi - lo > 0.5 * tol && iters < 300) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0)
      lo = mid;
    else
      hi = mid;
    ++iters;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double bowen_root(const Graph& g, const EdgePotential& phi, double tol) {
  if (tol <= 0) throw Error(Error::Kind::input, "tolerance must be positive");
  require_negative(phi);

  const PressureValue p0 = pressure_spectral(g, phi.scaled(0.0));
  if (!p0.finite() || p0.value <= 0)
    throw Error(Error::Kind::domain, "no positive root: pressure at s=0 is not positive");

  // P(s*phi) <= P(0) + s*max(phi), so the root lies below P(0)/(-max phi).
  const double s_hi = p0.value / (-phi.max_value()) * (1.0 + 1e-9) + 1e-12;
  const auto h = [&](double s) {
    const PressureValue p = pressure_spectral(g, phi.scaled(s));
    return p.finite() ? p.value : -1.0;
  };
  return bisect_root(h, s_hi, tol);
}

DimensionReport dim_bounds_affine(const AffineSystem& sys, double tol, int separation_depth,
                                  double conformality_tol) {
  const ValidationReport v = validate(sys, separation_depth);
  if (!v.hard_pass()) {
    std::string msg = "system fails validation:";
    for (const auto& f : v.failures) msg += " " + f + ";";
    throw Error(Error::Kind::domain, msg);
  }
  const IrreducibilityReport irr =
      finitely_irreducible(sys.graph, sys.graph.vertex_count() + 1);
  if (!irr.irreducible)
    throw Error(Error::Kind::domain, "graph is not finitely irreducible");

  DimensionReport rep;
  rep.root_tol = tol;
  rep.separation_depth = separation_depth;
  rep.ssc = v.ssc;
  rep.osc = v.osc;
  rep.lower_is_heuristic = !v.ssc;

  const EdgePotential phi_upper = EdgePotential::upper(sys);
  const EdgePotential phi_lower = EdgePotential::lower(sys);
  rep.upper = bowen_root(sys.graph, phi_upper, tol);
  rep.lower = bowen_root(sys.graph, phi_lower, tol);
  rep.residual_upper = pressure_spectral(sys.graph, phi_upper.scaled(rep.upper)).value;
  rep.residual_lower = pressure_spectral(sys.graph, phi_lower.scaled(rep.lower)).value;

  bool conformal = true;
  for (const auto& m : sys.maps)
    if (!is_conformal(m.linear, conformality_tol)) conformal = false;
  rep.conformal = conformal;

  rep.K = system_quasiregular_K(sys);
  const auto dets = det_bracket(sys, rep.K, tol);
  rep.det_lower = dets.first;
  rep.det_upper = dets.second;
  return rep;
}

std::pair<double, double> det_bracket(const AffineSystem& sys, double K, double tol) {
  if (K < 1.0) throw Error(Error::Kind::input, "K must be >= 1");
  if (tol <= 0) throw Error(Error::Kind::input, "tolerance must be positive");
  const EdgePotential phi = EdgePotential::log_det(sys);
  require_negative(phi);

  const double d = static_cast<double>(sys.dim);
  const double lk = std::log(K);
  const PressureValue p0 = pressure_spectral(sys.graph, phi.scaled(0.0));
  if (!p0.finite() || p0.value <= 0)
    throw Error(Error::Kind::domain, "degenerate bracket: pressure at s=0 is not positive");

  const double max_phi = phi.max_value();
  if (!(max_phi / d + lk / d < 0))
    throw Error(Error::Kind::domain, "degenerate bracket: K too large for this system");

  const auto solve = [&](double sign) {
    // h(s) = P((s/D) phi) - sign*(s/D) log K, strictly decreasing; the
    // Lipschitz bound h(s) <= P(0) + (s/D)(max phi - sign log K) locates an
    // upper bracket endpoint
    const double hi = p0.value * d / (-max_phi + sign * lk) * (1.0 + 1e-9) + 1e-12;
    const auto h = [&](double s) {
      const PressureValue p = pressure_spectral(sys.graph, phi.scaled(s / d));
      return (p.finite() ? p.value : -1.0) - sign * (s / d) * lk;
    };
    return bisect_root(h, hi, tol);
  };

  const double s_minus = solve(+1.0);
  const double s_plus = solve(-1.0);
  return {s_minus, s_plus};
}

}  // namespace gifs

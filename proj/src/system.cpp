#include "gifsdim/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gifsdim/stats.hpp"

namespace gifs {

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  return AffineMap{f.linear * g.linear, f.linear * g.offset + f.offset};
}

bool Box::valid() const {
  if (low.dim() == 0 || low.dim() != high.dim()) return false;
  if (!low.finite() || !high.finite()) return false;
  for (int i = 0; i < low.dim(); ++i)
    if (!(low[i] < high[i])) return false;
  return true;
}

Vec Box::center() const {
  Vec c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (low[i] + high[i]);
  return c;
}

Vec Box::halfwidth() const {
  Vec h(dim());
  for (int i = 0; i < dim(); ++i) h[i] = 0.5 * (high[i] - low[i]);
  return h;
}

bool Box::contains(const Vec& p, double tol) const {
  for (int i = 0; i < dim(); ++i)
    if (p[i] < low[i] - tol || p[i] > high[i] + tol) return false;
  return true;
}

bool Box::contains(const Box& other, double tol) const {
  for (int i = 0; i < dim(); ++i)
    if (other.low[i] < low[i] - tol || other.high[i] > high[i] + tol) return false;
  return true;
}

bool Box::interior_intersects(const Box& other) const {
  for (int i = 0; i < dim(); ++i)
    if (!(low[i] < other.high[i] && high[i] > other.low[i])) return false;
  return true;
}

double Box::dist(const Box& a, const Box& b) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i) {
    const double gap = std::max({0.0, a.low[i] - b.high[i], b.low[i] - a.high[i]});
    s += gap * gap;
  }
  return std::sqrt(s);
}

Box bounding_box(const AffineMap& map, const Box& box) {
  const Vec c = map(box.center());
  const Vec h = box.halfwidth();
  const int d = box.dim();
  Box out{Vec(d), Vec(d)};
  for (int i = 0; i < d; ++i) {
    double spread = 0;
    for (int j = 0; j < d; ++j) spread += std::abs(map.linear.at(i, j)) * h[j];
    out.low[i] = c[i] - spread;
    out.high[i] = c[i] + spread;
  }
  return out;
}

double AffineSystem::contraction_ratio() const {
  double r = 0;
  for (const auto& m : maps) r = std::max(r, op_norm(m.linear));
  return r;
}

const AffineMap& AffineSystem::map_of(int edge) const {
  if (edge < 0 || edge >= static_cast<int>(maps.size()))
    throw Error(Error::Kind::input, "unknown edge id " + std::to_string(edge));
  return maps[static_cast<std::size_t>(edge)];
}

double TailRule::norm(double k) const {
  if (scale == 0.0) return 0.0;
  switch (kind) {
    case Kind::geometric:
      return scale * std::pow(rate, k);
    case Kind::polynomial:
      return scale * std::pow(k, -rate);
  }
  return 0.0;
}

AffineSystem PerturbedFamily::at(double eps) const {
  if (!(eps >= 0) || !std::isfinite(eps))
    throw Error(Error::Kind::input, "eps must be finite and >= 0");
  if (eps == 0.0) return base;

  AffineSystem sys = base;
  for (std::size_t e = 0; e < sys.maps.size(); ++e) {
    AffineMap m = base.maps[e];
    double ek = 1.0;
    for (int k = 1; k <= order; ++k) {
      ek *= eps;
      const AffineMap& c = coeffs[e][static_cast<std::size_t>(k - 1)];
      m.linear = m.linear + ek * c.linear;
      m.offset = m.offset + ek * c.offset;
    }
    if (op_norm(m.linear) >= 1.0)
      throw Error(Error::Kind::domain,
                  "map for edge '" + sys.graph.edge_name(static_cast<int>(e)) +
                      "' is not a contraction at eps=" + std::to_string(eps));
    if (std::abs(det(m.linear)) < 1e-300)
      throw Error(Error::Kind::domain,
                  "map for edge '" + sys.graph.edge_name(static_cast<int>(e)) +
                      "' is singular at eps=" + std::to_string(eps));
    sys.maps[e] = m;
  }
  return sys;
}

void PerturbedFamily::compute_validity(double hi) {
  const int steps = 256;
  eps_max = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double eps = hi * static_cast<double>(i) / steps;
    try {
      (void)at(eps);
    } catch (const Error&) {
      return;
    }
    eps_max = eps;
  }
}

ValidationReport validate(const AffineSystem& sys, int depth) {
  if (depth < 1) throw Error(Error::Kind::input, "depth must be >= 1");
  ValidationReport rep;
  rep.depth = depth;

  const int ne = sys.graph.edge_count();
  const int nv = sys.graph.vertex_count();

  rep.seeds_ok = true;
  for (int v = 0; v < nv; ++v) {
    const Box& j = sys.seed[static_cast<std::size_t>(v)];
    const Box& o = sys.domain[static_cast<std::size_t>(v)];
    if (!j.valid() || !o.valid()) {
      rep.seeds_ok = false;
      rep.failures.push_back("vertex '" + sys.graph.vertex_name(v) +
                             "': box bounds must satisfy low < high");
      continue;
    }
    if (!o.contains(j)) {
      rep.seeds_ok = false;
      rep.failures.push_back("vertex '" + sys.graph.vertex_name(v) +
                             "': seed box is not inside the domain box");
    }
  }

  rep.contraction_ok = true;
  rep.invertible_ok = true;
  double r = 0;
  for (int e = 0; e < ne; ++e) {
    const AffineMap& m = sys.maps[static_cast<std::size_t>(e)];
    const double norm = op_norm(m.linear);
    r = std::max(r, norm);
    if (norm >= 1.0) {
      rep.contraction_ok = false;
      rep.failures.push_back("edge '" + sys.graph.edge_name(e) +
                             "': not a contraction (op norm " + std::to_string(norm) + ")");
    }
    if (std::abs(det(m.linear)) < 1e-300) {
      rep.invertible_ok = false;
      rep.failures.push_back("edge '" + sys.graph.edge_name(e) + "': singular linear part");
    }
  }
  rep.contraction_ratio = r;

  // Image corners are the extreme points of T_e(J), so corner membership
  // decides inclusion exactly for box seeds.
  rep.inclusion_ok = rep.seeds_ok;
  if (rep.seeds_ok) {
    for (int e = 0; e < ne; ++e) {
      const Box& src = sys.seed[static_cast<std::size_t>(sys.graph.terminal(e))];
      const Box& dst = sys.seed[static_cast<std::size_t>(sys.graph.initial(e))];
      const AffineMap& m = sys.maps[static_cast<std::size_t>(e)];
      const int d = sys.dim;
      bool ok = true;
      for (int mask = 0; mask < (1 << d) && ok; ++mask) {
        Vec corner(d);
        for (int i = 0; i < d; ++i)
          corner[i] = (mask >> i) & 1 ? src.high[i] : src.low[i];
        if (!dst.contains(m(corner), 1e-12)) ok = false;
      }
      if (!ok) {
        rep.inclusion_ok = false;
        rep.failures.push_back("edge '" + sys.graph.edge_name(e) +
                               "': image of the seed box leaves the target seed box");
      }
    }
  }

  // Depth-k separation: collect bounding boxes of word images grouped by
  // first edge, then take pairwise distances (a lower bound for the true
  // separation because bounding boxes are supersets).
  if (rep.hard_pass() && ne > 0) {
    std::vector<std::vector<Box>> pieces(static_cast<std::size_t>(ne));
    std::vector<int> word;
    struct Walker {
      const AffineSystem& sys;
      int depth;
      std::vector<std::vector<Box>>& pieces;
      void walk(int first, int last_edge, const AffineMap& acc, int len) {
        if (len == depth) {
          const Box& j = sys.seed[static_cast<std::size_t>(sys.graph.terminal(last_edge))];
          pieces[static_cast<std::size_t>(first)].push_back(bounding_box(acc, j));
          return;
        }
        for (int f : sys.graph.successors(last_edge))
          walk(first, f, compose(acc, sys.map_of(f)), len + 1);
      }
    } walker{sys, depth, pieces};
    for (int e = 0; e < ne; ++e) walker.walk(e, e, sys.map_of(e), 1);

    rep.delta.assign(static_cast<std::size_t>(ne) * static_cast<std::size_t>(ne), 0.0);
    rep.ssc = true;
    rep.osc = true;
    rep.min_delta = std::numeric_limits<double>::infinity();
    bool any_pair = false;
    for (int e = 0; e < ne; ++e)
      for (int f = 0; f < ne; ++f) {
        if (e == f) continue;
        double best = std::numeric_limits<double>::infinity();
        bool open_overlap = false;
        for (const Box& a : pieces[static_cast<std::size_t>(e)])
          for (const Box& b : pieces[static_cast<std::size_t>(f)]) {
            best = std::min(best, Box::dist(a, b));
            if (a.interior_intersects(b)) open_overlap = true;
          }
        if (!std::isfinite(best)) continue;  // one side has no admissible words
        any_pair = true;
        rep.delta[static_cast<std::size_t>(e) * static_cast<std::size_t>(ne) +
                  static_cast<std::size_t>(f)] = best;
        rep.min_delta = std::min(rep.min_delta, best);
        if (best <= 0.0) {
          rep.ssc = false;
          if (e < f)
            rep.failures.push_back("edges '" + sys.graph.edge_name(e) + "' and '" +
                                   sys.graph.edge_name(f) + "': images touch or overlap");
        }
        if (open_overlap) rep.osc = false;
      }
    if (!any_pair) {
      rep.min_delta = 0.0;
      rep.ssc = ne <= 1;
      rep.osc = true;
    }
  }

  return rep;
}

double system_quasiregular_K(const AffineSystem& sys) {
  double k = 1.0;
  for (const auto& m : sys.maps) k = std::max(k, min_quasiregular_K(m.linear));
  return k;
}

QuasiregularityReport quasiregularity_report(const PerturbedFamily& fam,
                                             std::span<const double> grid) {
  QuasiregularityReport rep;
  for (double e : grid) {
    if (!(e > 0)) throw Error(Error::Kind::input, "grid entries must be positive");
    rep.eps.push_back(e);
    rep.K.push_back(system_quasiregular_K(fam.at(e)));
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.K.size(); ++i) {
    const double excess = rep.K[i] - 1.0;
    if (excess > 1e-14) {
      lx.push_back(std::log(rep.eps[i]));
      ly.push_back(std::log(excess));
    }
  }
  if (lx.empty()) {
    rep.exactly_conformal = true;
  } else {
    const LineFit fit = least_squares_line(lx, ly);
    rep.slope = fit.slope;
    rep.slope_stderr = fit.slope_stderr;
  }
  return rep;
}

}  // namespace gifs

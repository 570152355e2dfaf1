#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gifsdim/graph.hpp"
#include "gifsdim/linalg.hpp"

namespace gifs {

// T(x) = M x + a with invertible contraction M.
struct AffineMap {
  Matrix linear;
  Vec offset;
  Vec operator()(const Vec& x) const { return linear * x + offset; }
  bool operator==(const AffineMap&) const = default;
};

// f(g(x)): linear = f.linear * g.linear, offset = f(g.offset).
AffineMap compose(const AffineMap& f, const AffineMap& g);

// Axis-aligned box with non-empty interior.
struct Box {
  Vec low;
  Vec high;

  int dim() const { return low.dim(); }
  bool valid() const;
  Vec center() const;
  Vec halfwidth() const;
  bool contains(const Vec& p, double tol = 0.0) const;
  bool contains(const Box& other, double tol = 0.0) const;
  bool interior_intersects(const Box& other) const;
  static double dist(const Box& a, const Box& b);
  bool operator==(const Box&) const = default;
};

// Exact axis-aligned bounding box of map(box) (the image is a parallelotope;
// its bounds are center +- |M| * halfwidth).
Box bounding_box(const AffineMap& map, const Box& box);

struct AffineSystem {
  int dim = 0;
  Graph graph;
  std::vector<AffineMap> maps;  // per edge
  std::vector<Box> seed;        // per vertex, the compact piece J_v
  std::vector<Box> domain;      // per vertex, open working set O_v containing J_v

  double contraction_ratio() const;  // max over edges of op_norm(M_e)
  const AffineMap& map_of(int edge) const;
};

// Closed-form norms for the countable edge tail attached to a one-vertex
// system: geometric norm(k) = c*q^k or polynomial norm(k) = c*k^-rate.
struct TailRule {
  enum class Kind { geometric, polynomial };
  Kind kind = Kind::geometric;
  double scale = 0.0;  // c >= 0; 0 means an empty (padding) tail
  double rate = 0.0;   // q in (0,1) for geometric, exponent p > 0 for polynomial
  double norm(double k) const;
};

// Polynomial family eps -> system: M_e(eps) = M_e + sum_k M_{e,k} eps^k,
// same for offsets. Order 0 represents an unperturbed system.
struct PerturbedFamily {
  int order = 0;
  AffineSystem base;
  std::vector<std::vector<AffineMap>> coeffs;  // [edge][k-1], k = 1..order
  std::optional<TailRule> tail;
  double eps_max = 0.0;  // scanned validity bound, see compute_validity()

  // Evaluates the family; eps = 0 returns the base system bit-for-bit.
  // Throws Error(domain) if a map stops being an invertible contraction.
  AffineSystem at(double eps) const;

  // Largest grid prefix of a 256-point scan of (0, hi] on which every
  // evaluated map stays an invertible contraction; sets eps_max.
  void compute_validity(double hi = 1.0);
};

struct ValidationReport {
  double contraction_ratio = 0.0;
  bool contraction_ok = false;  // sup_e op_norm < 1
  bool invertible_ok = false;   // det(M_e) != 0 for all edges
  bool seeds_ok = false;        // boxes well-formed, J_v inside O_v
  bool inclusion_ok = false;    // T_e(J_t(e)) inside J_i(e)
  int depth = 1;
  std::vector<double> delta;  // E x E pairwise separation lower bounds, row-major
  double min_delta = 0.0;
  bool ssc = false;  // all pairwise separations strictly positive at this depth
  bool osc = false;  // no pair of open image boxes overlaps at this depth
  std::vector<std::string> failures;

  bool hard_pass() const {
    return contraction_ok && invertible_ok && seeds_ok && inclusion_ok;
  }
};

// Structural checks plus finite-depth separation diagnostics. Separation
// between edges e != e' is the distance between depth-k image boxes, a
// conservative lower bound that grows toward the true value with depth.
ValidationReport validate(const AffineSystem& sys, int depth = 1);

double system_quasiregular_K(const AffineSystem& sys);  // max over edges

struct QuasiregularityReport {
  std::vector<double> eps;
  std::vector<double> K;
  bool exactly_conformal = false;
  double slope = 0.0;  // log-log slope of K(eps)-1 against eps
  double slope_stderr = 0.0;
};

QuasiregularityReport quasiregularity_report(const PerturbedFamily& fam,
                                             std::span<const double> grid);

}  // namespace gifs

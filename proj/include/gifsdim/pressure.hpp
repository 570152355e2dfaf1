#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gifsdim/system.hpp"

namespace gifs {

// A locally constant potential: one real value per edge.
struct EdgePotential {
  std::vector<double> values;

  static EdgePotential upper(const AffineSystem& sys);    // log op_norm(M_e)
  static EdgePotential lower(const AffineSystem& sys);    // log inf_norm(M_e)
  static EdgePotential log_det(const AffineSystem& sys);  // log |det M_e|

  EdgePotential scaled(double s) const;
  EdgePotential shifted(double c) const;
  double max_value() const;
  double min_value() const;
};

struct PressureValue {
  enum class Kind { finite, neg_inf, pos_inf };
  double value = 0.0;
  Kind kind = Kind::finite;
  int iterations = 0;
  double bracket = 0.0;  // width of the final enclosure of log(spectral radius)

  bool finite() const { return kind == Kind::finite; }
};

// Pressure of a locally constant potential as the log spectral radius of the
// weighted transition matrix B(e,e') = A(e,e') * exp(f(e')). Computed by
// bisection on the M-matrix test for lambda*I - B, which brackets the Perron
// root of any nonnegative matrix (periodic and reducible included) to near
// machine precision. Returns a neg_inf marker when no admissible cycle
// exists (growth rate zero).
PressureValue pressure_spectral(const Graph& g, const EdgePotential& f);

// Finite-depth truncation of the defining limit: (1/n) log sum over
// admissible words w of length n of exp(f(w_1) + ... + f(w_n)). The sum is
// streamed in max-shifted linear space with compensated accumulation, so the
// enumeration order does not matter beyond round-off. Returns -infinity when
// no admissible words of length n exist.
double pressure_cylinder(const Graph& g, const EdgePotential& f, int n);

// One-vertex system with countably many edges: explicit norms plus an
// optional closed-form tail. Potentials are s * log(norm).
struct TailSystem {
  std::vector<double> explicit_norms;
  std::optional<TailRule> tail;

  static TailSystem from(const PerturbedFamily& fam);  // requires one vertex
};

struct TruncationPoint {
  double log2_size = 0.0;  // log2 of the tail truncation length
  double pressure = 0.0;
};

enum class TruncationVerdict { converged, divergent, undetermined };

struct TruncationResult {
  std::vector<TruncationPoint> sequence;  // non-decreasing pressures
  TruncationVerdict verdict = TruncationVerdict::undetermined;
};

// Pressures of the finite subsystems keeping the first 2^log2_size tail
// edges. Sizes are carried in log2 so the sequence can probe far beyond
// enumerable subsystems; tail partial sums use the closed form of the rule.
// Converged: successive differences fall below tol. Divergent: the sequence
// exceeds `ceiling` (pressure is +infinity in the limit).
TruncationResult pressure_truncated(const TailSystem& ts, double s,
                                    std::span<const double> log2_sizes,
                                    double tol = 1e-9, double ceiling = 50.0);

// Same with an internally doubled level schedule until a verdict is reached.
TruncationResult pressure_truncated_auto(const TailSystem& ts, double s,
                                         double tol = 1e-9, double ceiling = 50.0);

// inf { s >= 0 : P(s * log norm) < +infinity }, located by bisection on the
// convergence/divergence verdict of pressure_truncated_auto. Returns 0 for
// systems without a tail (finite sums are always finite).
double finiteness_threshold(const TailSystem& ts, double tol = 1e-3);

}  // namespace gifs

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gifsdim/system.hpp"

namespace gifs {

struct PointCloud {
  int dim = 0;
  std::size_t count = 0;
  std::vector<double> coords;    // count * dim, row per point
  std::vector<std::int32_t> vertex;  // owning vertex per point
  std::uint64_t seed = 0;
  int chains = 1;
};

// Samples the limit set by a Markov walk on edges: from the current vertex v
// pick uniformly among edges with terminal(e) = v, apply T_e, move to
// initial(e). The first burn_in iterates are discarded. Chains draw from
// independent counter-based streams derived from (seed, chain), so the cloud
// is bit-identical for any worker count.
PointCloud chaos_game(const AffineSystem& sys, std::size_t n_points, int burn_in = 64,
                      std::uint64_t seed = 1, int chains = 1, int workers = 1);

// Image of the seed-box center under the composed word map, the word being
// applied `reps` times for cyclic words (terminal of the last edge equals
// initial of the first). For cyclic words and large reps this converges to
// the periodic point at rate op_norm^(reps * |word|).
Vec coding_point(const AffineSystem& sys, std::span<const int> word, int reps = 1);

struct BoxCountReport {
  std::vector<double> scales;          // decreasing box sizes
  std::vector<std::uint64_t> counts;   // occupied boxes per scale
  double slope = 0.0;                  // least-squares dimension estimate
  double slope_stderr = 0.0;
  bool degenerate = false;  // all points inside one box at every scale
};

// Occupied-box counts on grids anchored at anchor.low, with the dimension
// estimate as the least-squares slope of log count against log(1/scale).
// Needs >= 1e4 points and >= 4 scales spanning at least two octaves.
BoxCountReport box_count_dim(const PointCloud& cloud, const Box& anchor,
                             std::span<const double> scales);

// Union bounding box of the seed boxes.
Box seeds_bbox(const AffineSystem& sys);

// base_extent * 2^-j for j = 1..levels where base_extent is the largest
// side of the box.
std::vector<double> dyadic_scales(const Box& box, int levels);

struct CodingPerturbReport {
  std::vector<double> eps;
  std::vector<double> max_deviation;  // max over words of |pi_eps(w) - pi_0(w)|
  double slope = 0.0;                 // log-log order of the deviation
  bool all_zero = false;
};

// Compares coding points of the perturbed and base systems over a word
// sample. Words should be long enough that the truncation error is
// negligible against the deviations of interest.
CodingPerturbReport coding_perturbation_check(const PerturbedFamily& fam,
                                              std::span<const double> grid,
                                              std::span<const std::vector<int>> words);

// Deterministic sample of admissible words: random walks of the given
// length from stream (seed, index).
std::vector<std::vector<int>> sample_words(const Graph& g, int count, int length,
                                           std::uint64_t seed);

}  // namespace gifs

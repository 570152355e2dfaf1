#pragma once

#include <cstdint>

#include "gifsdim/linalg.hpp"

namespace gifs {

// Counter-based generator: value i of stream (seed, stream) is a pure
// function of (seed, stream, i), so chains can run in parallel and replay
// identically. The word function is the splitmix64 finalizer applied to
// key + i * golden-gamma, with key derived from (seed, stream).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1), 53 bits
  std::uint64_t next_below(std::uint64_t m);
  double next_gaussian();  // Box-Muller, consumes two uniforms

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Uniform direction on the unit sphere in R^dim.
Vec random_unit_vector(CounterRng& rng, int dim);

}  // namespace gifs

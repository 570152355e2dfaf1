#include "gifsdim/rng.hpp"

#include <cmath>
#include <numbers>

namespace gifs {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed + kGamma) ^ mix64(stream * kGamma + 0x632BE59BD9B4E019ULL)) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t m) {
  return m == 0 ? 0 : next_u64() % m;
}

double CounterRng::next_gaussian() {
  // avoid log(0)
  double u1 = 0;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec random_unit_vector(CounterRng& rng, int dim) {
  while (true) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
    const double n = v.norm();
    if (n > 1e-8) return (1.0 / n) * v;
  }
}

}  // namespace gifs

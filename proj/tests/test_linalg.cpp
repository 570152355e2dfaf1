#include <cmath>

#include "doctest.h"
#include "gifsdim/demo.hpp"
#include "gifsdim/linalg.hpp"
#include "gifsdim/rng.hpp"
#include "test_helpers.hpp"

using namespace gifs;

namespace {

// The demo block matrix divided by its overall ratio: a scalar stretch in x
// and a rotation-scaling block in yz, plus an axis-aligned stretch of size
// eps.
Matrix demo_block(double eps) {
  const double s = std::sqrt(3.0) / 4.0;
  Matrix m = Matrix::from_rows(3, {0.5, 0, 0, 0, 0.25, -s, 0, s, 0.25});
  m.at(0, 0) += eps / 4.0;
  m.at(1, 1) += eps / 2.0;
  m.at(2, 2) += eps / 2.0;
  return m;
}

}  // namespace

TEST_CASE("operator norm on diagonal and rank-deficient matrices") {
  CHECK(std::abs(op_norm(Matrix::from_rows(2, {0.5, 0, 0, 0.25})) - 0.5) < 1e-12);
  // eigenvalues of M^T M are 25 and 0
  CHECK(std::abs(op_norm(Matrix::from_rows(2, {3, 4, 0, 0})) - 5.0) < 1e-12);
  CHECK(std::abs(op_norm(demo_block(0.0)) - 0.5) < 1e-12);
}

TEST_CASE("infimum norm basics") {
  for (int d = 1; d <= kMaxDim; ++d)
    CHECK(std::abs(inf_norm(Matrix::identity(d)) - 1.0) < 1e-12);
  CHECK(std::abs(inf_norm(Matrix::from_rows(2, {2, 0, 0, 3})) - 2.0) < 1e-12);
  // closed form (eps + 2) / 4 for the demo block
  CHECK(std::abs(inf_norm(demo_block(0.1)) - 0.525) < 1e-12);
}

TEST_CASE("demo block singular values match their closed forms") {
  for (double eps : {0.0, 0.05, 0.1, 0.2, 0.35, 0.5}) {
    const SingularSpectrum sp = singular_values(demo_block(eps));
    const double top = 0.5 * std::sqrt(eps * eps + eps + 1.0);
    const double bottom = (eps + 2.0) / 4.0;
    CHECK(std::abs(sp.max() - top) < 1e-12);
    CHECK(std::abs(sp.min() - bottom) < 1e-12);
    CHECK(std::abs(sp.sigma[1] - top) < 1e-12);  // double singular value
  }
}

TEST_CASE("minimal quasiregularity constant") {
  CHECK(std::abs(min_quasiregular_K(0.7 * Matrix::identity(3)) - 1.0) < 1e-12);
  // max(0.25/0.125, 0.125/0.0625) = 2
  CHECK(std::abs(min_quasiregular_K(Matrix::from_rows(2, {0.5, 0, 0, 0.25})) - 2.0) < 1e-12);

  // sigma ratio rho = sigma_1/sigma_3 gives max(rho, rho^2) = rho^2
  const double rho = 0.5 * std::sqrt(1.11) / 0.525;
  CHECK(std::abs(min_quasiregular_K(demo_block(0.1)) - rho * rho) < 1e-9 * rho * rho);

  CHECK_THROWS_AS((void)min_quasiregular_K(Matrix::from_rows(2, {3, 4, 0, 0})), Error);
}

TEST_CASE("minimal constant dominates the demo closed form") {
  // the demo closed form is the 3/2 power of the singular value ratio; the
  // minimal admissible constant is its square, so it is never smaller
  for (double eps : {0.01, 0.05, 0.1, 0.2, 0.4}) {
    const double closed = example_r3_closed_K(eps);
    const double minimal = min_quasiregular_K(demo_block(eps));
    CHECK(minimal >= closed - 1e-12);
    const SingularSpectrum sp = singular_values(demo_block(eps));
    CHECK(std::abs(closed - std::pow(sp.max() / sp.min(), 1.5)) < 1e-12);
  }
  CHECK(std::abs(example_r3_closed_K(0.0) - 1.0) < 1e-14);
  CHECK(std::abs(example_r3_closed_K(0.1) - 1.0050977146) < 1e-9);
}

TEST_CASE("conformality detection") {
  CHECK(is_conformal(Matrix::from_rows(2, {0.3, -0.4, 0.4, 0.3}), 1e-9));
  CHECK_FALSE(is_conformal(Matrix::from_rows(2, {0.5, 0, 0, 0.25}), 1e-9));
  CHECK(is_conformal(demo_block(0.0), 1e-9));
  CHECK_FALSE(is_conformal(demo_block(0.1), 1e-9));
}

TEST_CASE("norm properties on random invertible matrices") {
  for (int dim = 1; dim <= 4; ++dim) {
    CounterRng rng(2024, static_cast<std::uint64_t>(dim));
    for (int it = 0; it < 500; ++it) {
      const Matrix m = testutil::random_invertible(rng, dim);
      const Matrix l = testutil::random_invertible(rng, dim);

      // |ML|_i >= |M|_i |L|_i
      CHECK(inf_norm(m * l) >= inf_norm(m) * inf_norm(l) - 1e-9 * inf_norm(m * l));
      // |L|_i * |L^-1| = 1
      CHECK(std::abs(inf_norm(l) * op_norm(inverse(l)) - 1.0) < 1e-9);
      // |ML| <= |M| |L|
      CHECK(op_norm(m * l) <= op_norm(m) * op_norm(l) + 1e-9 * op_norm(m) * op_norm(l));
      // product of singular values equals |det|
      const SingularSpectrum sp = singular_values(m);
      double prod = 1;
      for (int i = 0; i < dim; ++i) prod *= sp.sigma[static_cast<std::size_t>(i)];
      CHECK(std::abs(prod - std::abs(det(m))) < 1e-9 * std::max(1.0, prod));
    }
  }
}

TEST_CASE("infimum norm lower-bounds the action on vectors of norm >= 1") {
  CounterRng rng(77, 0);
  for (int it = 0; it < 100; ++it) {
    const int dim = 1 + static_cast<int>(rng.next_below(4));
    const Matrix m = testutil::random_invertible(rng, dim);
    const double lo = inf_norm(m);
    const double hi = op_norm(m);
    for (int s = 0; s < 50; ++s) {
      const Vec u = random_unit_vector(rng, dim);
      const double stretch = 1.0 + 3.0 * rng.next_double();
      CHECK((m * u).norm() >= lo - 1e-9);
      CHECK((m * u).norm() <= hi + 1e-9);
      CHECK((m * (stretch * u)).norm() >= lo - 1e-9);
    }
  }
}

TEST_CASE("quasiregularity inequality holds with the minimal constant") {
  CounterRng rng(99, 0);
  for (int it = 0; it < 200; ++it) {
    const int dim = 1 + static_cast<int>(rng.next_below(4));
    const Matrix m = testutil::random_invertible(rng, dim);
    const double k = min_quasiregular_K(m);
    const double ad = std::abs(det(m));
    const double up = std::pow(op_norm(m), dim);
    const double dn = std::pow(inf_norm(m), dim);
    CHECK(up / k <= ad * (1 + 1e-12) + 1e-15);
    CHECK(ad <= k * dn * (1 + 1e-12) + 1e-15);
    // sampled unit vectors sit between the two norms, so the chain holds
    // pointwise as well
    for (int s = 0; s < 20; ++s) {
      const Vec u = random_unit_vector(rng, dim);
      const double a = std::pow((m * u).norm(), dim);
      CHECK(a / k <= ad * (1 + 1e-9) + 1e-15);
      CHECK(ad <= k * a * (1 + 1e-9) + 1e-15);
    }
  }
}

TEST_CASE("determinant and inverse agree with elimination") {
  CHECK(std::abs(det(Matrix::from_rows(2, {1, 2, 3, 4})) - (-2.0)) < 1e-12);
  CHECK_THROWS_AS((void)inverse(Matrix::from_rows(2, {1, 2, 2, 4})), Error);
  CounterRng rng(5, 5);
  for (int it = 0; it < 100; ++it) {
    const int dim = 1 + static_cast<int>(rng.next_below(4));
    const Matrix m = testutil::random_invertible(rng, dim);
    const Matrix id = m * inverse(m);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        CHECK(std::abs(id.at(r, c) - (r == c ? 1.0 : 0.0)) < 1e-9);
  }
}

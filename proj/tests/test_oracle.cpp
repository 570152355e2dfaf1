#include <cmath>

#include "doctest.h"
#include "gifsdim/bowen.hpp"
#include "gifsdim/demo.hpp"
#include "gifsdim/oracle.hpp"
#include "gifsdim/perturbation.hpp"
#include "test_helpers.hpp"

using namespace gifs;

namespace {

const char* kSingleHalfSpec =
    "gifs 1 dim=1\n"
    "vertex v J=0|1 O=-0.1|1.1\n"
    "edge a v v\n"
    "map a k=0 M=0.5 a=0\n";

}  // namespace

TEST_CASE("single contraction collapses the cloud to its fixed point") {
  const SpecFile s = testutil::parse(kSingleHalfSpec);
  const PointCloud cloud = chaos_game(s.family.base, 1000, 64, 42);
  for (std::size_t i = 0; i < cloud.count; ++i)
    CHECK(std::abs(cloud.coords[i]) < std::pow(2.0, -60));
}

TEST_CASE("sierpinski cloud stays inside the corner hull") {
  const SpecFile s = testutil::parse(testutil::kSierpinskiSpec);
  const PointCloud cloud = chaos_game(s.family.base, 20000, 64, 7, 4);
  for (std::size_t i = 0; i < cloud.count; ++i) {
    const double x = cloud.coords[2 * i];
    const double y = cloud.coords[2 * i + 1];
    CHECK(x >= -1e-12);
    CHECK(y >= -1e-12);
    CHECK(x + y <= 1.0 + 1e-12);
  }
}

TEST_CASE("chaos game is deterministic in the seed and worker count") {
  const SpecFile s = testutil::parse(testutil::kTwoScaleSpec);
  const PointCloud a = chaos_game(s.family.base, 5000, 64, 99, 4, 1);
  const PointCloud b = chaos_game(s.family.base, 5000, 64, 99, 4, 4);
  CHECK(a.coords == b.coords);
  CHECK(a.vertex == b.vertex);
  const PointCloud c = chaos_game(s.family.base, 5000, 64, 100, 4, 1);
  CHECK(a.coords != c.coords);
}

TEST_CASE("walks need a continuation at every vertex") {
  const SpecFile s = testutil::parse(
      "gifs 1 dim=1\n"
      "vertex u J=0|1 O=-0.2|1.2\n"
      "vertex w J=2|3 O=1.8|3.2\n"
      "edge a u u\n"
      "edge b w u\n"  // nothing terminates at w
      "map a k=0 M=0.5 a=0\n"
      "map b k=0 M=0.3 a=2.2\n");
  CHECK_THROWS_WITH_AS((void)chaos_game(s.family.base, 100, 8, 1),
                       doctest::Contains("not right-resolving"), Error);
}

TEST_CASE("coding points of loops converge to fixed points") {
  const SpecFile s = testutil::parse(kSingleHalfSpec);
  const std::vector<int> loop = {0};
  CHECK(std::abs(coding_point(s.family.base, loop, 50)[0]) <= std::pow(2.0, -50));

  const SpecFile shifted = testutil::parse(
      "gifs 1 dim=1\n"
      "vertex v J=0|1 O=-0.1|1.1\n"
      "edge a v v\n"
      "map a k=0 M=0.5 a=0.5\n");
  CHECK(std::abs(coding_point(shifted.family.base, loop, 50)[0] - 1.0) <=
        std::pow(2.0, -50));
}

TEST_CASE("coding point of a mixed cycle matches direct composition") {
  const SpecFile s = testutil::parse(testutil::kTwoVertexSpec);
  const std::vector<int> cycle = {0, 1};  // a then b
  const Vec via_oracle = [&] {
    const AffineMap once = compose(s.family.base.map_of(0), s.family.base.map_of(1));
    Vec x = s.family.base.seed[0].center();  // terminal of b is u
    for (int r = 0; r < 12; ++r) x = once(x);
    return x;
  }();
  const Vec via_coding = coding_point(s.family.base, cycle, 12);
  CHECK(std::abs(via_oracle[0] - via_coding[0]) < 1e-12);

  const std::vector<int> not_cyclic = {0};  // a alone: w -> u, not a loop
  CHECK_THROWS_AS((void)coding_point(s.family.base, not_cyclic, 2), Error);
}

TEST_CASE("box counting recovers the sierpinski slope window") {
  const SpecFile s = testutil::parse(testutil::kSierpinskiSpec);
  const PointCloud cloud = chaos_game(s.family.base, 100000, 64, 2024, 8, 4);
  const Box anchor = seeds_bbox(s.family.base);
  const BoxCountReport rep = box_count_dim(cloud, anchor, dyadic_scales(anchor, 8));
  CHECK(rep.slope >= 1.45);
  CHECK(rep.slope <= 1.70);
  // counts weakly increase as boxes shrink
  for (std::size_t i = 1; i < rep.counts.size(); ++i)
    CHECK(rep.counts[i] >= rep.counts[i - 1]);
}

TEST_CASE("two-scale slope lands inside the widened bracket") {
  const SpecFile s = testutil::parse(testutil::kTwoScaleSpec);
  const PointCloud cloud = chaos_game(s.family.base, 100000, 64, 5, 8, 4);
  const Box anchor = seeds_bbox(s.family.base);
  const BoxCountReport rep = box_count_dim(cloud, anchor, dyadic_scales(anchor, 8));
  CHECK(rep.slope >= 0.45);
  CHECK(rep.slope <= 1.05);

  // doubling the sample may only move the estimate within its noise
  const PointCloud big = chaos_game(s.family.base, 200000, 64, 5, 8, 4);
  const BoxCountReport rep2 = box_count_dim(big, anchor, dyadic_scales(anchor, 8));
  CHECK(rep2.slope >= rep.slope - 2 * rep.slope_stderr - 0.05);
}

TEST_CASE("box-count estimates land inside the widened dimension bracket") {
  // bundled strongly separated systems: the desk-scale estimate must sit
  // within 0.1 of the bracket ends
  const char* thirds =
      "gifs 1 dim=1\n"
      "vertex v J=0|1 O=-0.1|1.1\n"
      "edge a v v\n"
      "edge b v v\n"
      "map a k=0 M=0.33333333333333331 a=0\n"
      "map b k=0 M=0.33333333333333331 a=0.66666666666666663\n";
  for (const char* text : {thirds, testutil::kTwoScaleSpec}) {
    const SpecFile s = testutil::parse(text);
    const DimensionReport rep = dim_bounds_affine(s.family.base, 1e-10);
    const PointCloud cloud = chaos_game(s.family.base, 100000, 64, 31, 8, 4);
    const Box anchor = seeds_bbox(s.family.base);
    const BoxCountReport box = box_count_dim(cloud, anchor, dyadic_scales(anchor, 8));
    CHECK(box.slope >= rep.lower - 0.1);
    CHECK(box.slope <= rep.upper + 0.1);
  }
}

TEST_CASE("degenerate clouds report slope zero") {
  const SpecFile s = testutil::parse(kSingleHalfSpec);
  const PointCloud cloud = chaos_game(s.family.base, 20000, 64, 3);
  Box anchor{Vec::of({-1.0}), Vec::of({1.0})};
  const BoxCountReport rep = box_count_dim(cloud, anchor, dyadic_scales(anchor, 6));
  CHECK(rep.degenerate);
  CHECK(rep.slope == 0.0);
}

TEST_CASE("cloud is invariant under the edge maps") {
  const SpecFile s = testutil::parse(testutil::kTwoVertexSpec);
  const AffineSystem& sys = s.family.base;
  const PointCloud cloud = chaos_game(sys, 20000, 64, 11, 2);
  for (std::size_t i = 0; i < cloud.count; ++i) {
    const int v = cloud.vertex[i];
    Vec x(1);
    x[0] = cloud.coords[i];
    CHECK(sys.seed[static_cast<std::size_t>(v)].contains(x, 1e-12));
    for (int e = 0; e < sys.graph.edge_count(); ++e) {
      if (sys.graph.terminal(e) != v) continue;
      const Vec image = sys.map_of(e)(x);
      CHECK(sys.seed[static_cast<std::size_t>(sys.graph.initial(e))].contains(image, 1e-12));
    }
  }
}

TEST_CASE("translation-only perturbation moves coding points by the geometric series") {
  const SpecFile s = testutil::parse(testutil::kTranslationFamilySpec);
  const std::vector<std::vector<int>> words = {std::vector<int>(50, 0)};
  const auto grid = dyadic_grid(0.1, 8);
  const CodingPerturbReport rep = coding_perturbation_check(s.family, grid, words);
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    CHECK(std::abs(rep.max_deviation[i] - 2.0 * 0.25 * rep.eps[i]) < 1e-10);
  CHECK(std::abs(rep.slope - 1.0) < 1e-6);
}

TEST_CASE("constant families do not move coding points") {
  const SpecFile s = testutil::parse(
      "gifs 1 dim=1 order=1\n"
      "vertex v J=0|1 O=-0.1|1.1\n"
      "edge a v v\n"
      "edge b v v\n"
      "map a k=0 M=0.4 a=0\n"
      "map b k=0 M=0.4 a=0.6\n");
  const auto words = sample_words(s.family.base.graph, 8, 40, 17);
  const auto grid = dyadic_grid(0.1, 6);
  const CodingPerturbReport rep = coding_perturbation_check(s.family, grid, words);
  CHECK(rep.all_zero);
  for (double dev : rep.max_deviation) CHECK(dev == 0.0);
}

TEST_CASE("demo family deviations scale at least linearly") {
  const SpecFile s = parse_spec(example_r3_spec_text(0.4), "demo");
  const auto words = sample_words(s.family.base.graph, 12, 60, 23);
  const auto grid = dyadic_grid(0.1, 8);
  const CodingPerturbReport rep = coding_perturbation_check(s.family, grid, words);
  CHECK_FALSE(rep.all_zero);
  CHECK(rep.slope >= 0.9);
}

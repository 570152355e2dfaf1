#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "gifsdim.h"

namespace {

const char* kTwoScale =
    "gifs 1 dim=2\n"
    "vertex v J=0,0|1,1 O=-0.1,-0.1|1.1,1.1\n"
    "edge a v v\n"
    "edge b v v\n"
    "map a k=0 M=0.5,0,0,0.25 a=0,0\n"
    "map b k=0 M=0.5,0,0,0.25 a=0.5,0.75\n";

const char* kTailPoly =
    "gifs 1 dim=1\n"
    "vertex v J=0|1 O=-0.1|1.1\n"
    "edge a v v\n"
    "map a k=0 M=0.5 a=0\n"
    "tail polynomial 0.9 2.0\n";

struct SpecHandle {
  gifs_spec* spec = nullptr;
  explicit SpecHandle(const char* text, const char* name = "test") {
    REQUIRE(gifs_spec_parse(text, name, &spec) == GIFS_OK);
  }
  ~SpecHandle() { gifs_spec_free(spec); }
};

}  // namespace

TEST_CASE("load failures set an error message and input status") {
  gifs_spec* spec = nullptr;
  CHECK(gifs_spec_load("/nonexistent/path.gifs", &spec) == GIFS_ERR_INPUT);
  CHECK(std::strlen(gifs_last_error()) > 0);

  const char* bad =
      "gifs 1 dim=1\n"
      "vertex v J=0|1 O=-0.1|1.1\n"
      "edge a v v\n"
      "map a k=0 M=1.5 a=0\n";
  CHECK(gifs_spec_parse(bad, "bad", &spec) == GIFS_ERR_DOMAIN);
  CHECK(std::string(gifs_last_error()).find("not a contraction") != std::string::npos);
}

TEST_CASE("queries and validation through the C surface") {
  SpecHandle h(kTwoScale);
  CHECK(gifs_spec_dim(h.spec) == 2);
  CHECK(gifs_spec_order(h.spec) == 0);
  CHECK(gifs_spec_edge_count(h.spec) == 2);
  CHECK(gifs_spec_vertex_count(h.spec) == 1);
  CHECK(gifs_spec_has_tail(h.spec) == 0);

  char name[16];
  REQUIRE(gifs_spec_edge_name(h.spec, 1, name, sizeof name) == GIFS_OK);
  CHECK(std::string(name) == "b");

  gifs_validation v{};
  REQUIRE(gifs_validate(h.spec, 1, &v) == GIFS_OK);
  CHECK(v.hard_pass == 1);
  CHECK(v.ssc == 1);
  CHECK(v.osc == 1);
  CHECK(std::abs(v.contraction_ratio - 0.5) < 1e-12);
  CHECK(v.message[0] == '\0');

  std::vector<double> delta(4, -1.0);
  REQUIRE(gifs_separation_table(h.spec, 1, delta.data()) == GIFS_OK);
  CHECK(delta[1] > 0.0);
  CHECK(delta[1] == delta[2]);
}

TEST_CASE("dimension report and roots through the C surface") {
  SpecHandle h(kTwoScale);
  gifs_dim_report rep{};
  REQUIRE(gifs_dim_bounds(h.spec, 1e-10, 1, 1e-9, &rep) == GIFS_OK);
  CHECK(std::abs(rep.s_lower - 0.5) < 1e-9);
  CHECK(std::abs(rep.s_upper - 1.0) < 1e-9);
  CHECK(std::abs(rep.quasiregularity - 2.0) < 1e-12);
  CHECK(rep.conformal == 0);
  CHECK(rep.ssc == 1);

  double root = 0;
  REQUIRE(gifs_bowen_root(h.spec, GIFS_POT_UPPER, 1e-10, &root) == GIFS_OK);
  CHECK(std::abs(root - 1.0) < 1e-9);

  double value = 0;
  int finite = 0;
  REQUIRE(gifs_pressure_spectral(h.spec, GIFS_POT_UPPER, 1.0, &value, &finite) == GIFS_OK);
  CHECK(finite == 1);
  CHECK(std::abs(value) < 1e-10);
  REQUIRE(gifs_pressure_cylinder(h.spec, GIFS_POT_UPPER, 1.0, 6, &value, &finite) == GIFS_OK);
  CHECK(finite == 1);
  CHECK(std::abs(value) < 1e-10);
}

TEST_CASE("tail machinery through the C surface") {
  SpecHandle h(kTailPoly);
  CHECK(gifs_spec_has_tail(h.spec) == 1);

  const double levels[] = {4, 8, 12, 16, 20};
  double pressures[5];
  int verdict = -1;
  REQUIRE(gifs_pressure_truncated(h.spec, 0.6, levels, 5, pressures, &verdict) == GIFS_OK);
  for (int i = 1; i < 5; ++i) CHECK(pressures[i] >= pressures[i - 1] - 1e-12);

  double threshold = 0;
  REQUIRE(gifs_finiteness_threshold(h.spec, 1e-3, &threshold) == GIFS_OK);
  CHECK(std::abs(threshold - 0.5) <= 1.5e-3);
}

TEST_CASE("perturbation sweep and fit through the C surface") {
  char buf[2048];
  REQUIRE(gifs_example_r3_spec(0.4, buf, sizeof buf) == GIFS_OK);
  SpecHandle h(buf, "demo");
  CHECK(gifs_spec_order(h.spec) == 1);
  CHECK(gifs_spec_eps_max(h.spec) > 0.3);

  std::vector<double> eps;
  double e = 0.1;
  for (int i = 0; i < 6; ++i, e *= 0.5) eps.push_back(e);

  std::vector<gifs_perturb_row> rows(eps.size());
  REQUIRE(gifs_perturb_sweep(h.spec, eps.data(), eps.size(), 1e-10, 2, rows.data()) ==
          GIFS_OK);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].s_lower <= rows[i].s_upper + 1e-12);
    CHECK(rows[i].K >= 1.0);
  }

  gifs_k_order ko{};
  REQUIRE(gifs_k_order_check(h.spec, 1, eps.data(), eps.size(), &ko) == GIFS_OK);
  CHECK(ko.pass == 1);

  gifs_condition_report cond{};
  REQUIRE(gifs_affine_condition_check(h.spec, 1.0, 0.99, 1.01, &cond) == GIFS_OK);
  CHECK(cond.pass == 1);
  CHECK(cond.p_n == 0.0);
  CHECK(cond.coeff_ratio > 0.0);

  std::vector<double> grid;
  e = 0.1;
  for (int i = 0; i < 9; ++i, e *= 0.5) grid.push_back(e);
  gifs_expansion_fit fit{};
  REQUIRE(gifs_fit_expansion(h.spec, 1, grid.data(), grid.size(), 0, 1e-11, 2, &fit) ==
          GIFS_OK);
  CHECK(std::abs(fit.coeff[0] - 1.0) < 1e-6);
  CHECK(fit.reliable == 1);
}

TEST_CASE("sampling through the C surface is deterministic") {
  SpecHandle h(kTwoScale);
  const std::size_t n = 20000;
  std::vector<double> a(2 * n), b(2 * n);
  std::vector<int32_t> va(n), vb(n);
  REQUIRE(gifs_chaos_game(h.spec, n, 64, 9, 4, 1, a.data(), va.data()) == GIFS_OK);
  REQUIRE(gifs_chaos_game(h.spec, n, 64, 9, 4, 4, b.data(), vb.data()) == GIFS_OK);
  CHECK(a == b);
  CHECK(va == vb);

  double scales[8];
  uint64_t counts[8];
  gifs_boxcount_report rep{};
  REQUIRE(gifs_box_count(h.spec, 100000, 64, 5, 8, 4, 8, scales, counts, &rep) == GIFS_OK);
  CHECK(rep.slope > 0.45);
  CHECK(rep.slope < 1.05);
  CHECK(rep.degenerate == 0);
}

TEST_CASE("demo closed form evaluates to one at zero") {
  CHECK(std::abs(gifs_example_r3_closed_K(0.0) - 1.0) < 1e-14);
  CHECK(gifs_example_r3_closed_K(0.1) > 1.0);
}

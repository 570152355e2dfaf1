// Command-line front end for the gifsdim shared library. Talks to the core
// exclusively through the C API in gifsdim.h.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gifsdim.h"

namespace {

// exit codes: 0 success, 1 domain failure, 2 input failure, 3 non-convergence
int exit_code(gifs_status rc) { return static_cast<int>(rc); }

struct SpecHandle {
  gifs_spec* spec = nullptr;
  ~SpecHandle() { gifs_spec_free(spec); }
};

int load(const std::string& path, SpecHandle& handle) {
  const gifs_status rc = gifs_spec_load(path.c_str(), &handle.spec);
  if (rc != GIFS_OK) std::cerr << "error: " << gifs_last_error() << "\n";
  return exit_code(rc);
}

std::vector<double> make_grid(double eps_start, int levels) {
  std::vector<double> grid;
  double e = eps_start;
  for (int j = 0; j < levels; ++j) {
    grid.push_back(e);
    e *= 0.5;
  }
  return grid;
}

int env_workers() {
  if (const char* env = std::getenv("GIFS_DIM_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// CSV goes to --out when given, otherwise to stdout ahead of the summary.
struct CsvSink {
  std::ofstream file;
  bool to_file = false;

  int open(const std::string& path) {
    if (path.empty()) return 0;
    file.open(path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file '" << path << "'\n";
      return 2;
    }
    to_file = true;
    return 0;
  }
  std::ostream& stream() { return to_file ? static_cast<std::ostream&>(file) : std::cout; }
};

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string edge_name(const gifs_spec* spec, int e) {
  char buf[128];
  if (gifs_spec_edge_name(spec, e, buf, sizeof buf) != GIFS_OK) return "?";
  return buf;
}

int cmd_validate(const std::string& spec_path, int depth, const std::string& out_path) {
  SpecHandle h;
  if (int rc = load(spec_path, h)) return rc;

  gifs_validation v{};
  if (gifs_status rc = gifs_validate(h.spec, depth, &v)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  CsvSink csv;
  if (int rc = csv.open(out_path)) return rc;
  auto& os = csv.stream();
  os << "check,value,verdict\n";
  os << "contraction_ratio," << fmt(v.contraction_ratio) << ","
     << (v.contraction_ok ? "pass" : "fail") << "\n";
  os << "invertible,," << (v.invertible_ok ? "pass" : "fail") << "\n";
  os << "seed_boxes,," << (v.seeds_ok ? "pass" : "fail") << "\n";
  os << "seed_inclusion,," << (v.inclusion_ok ? "pass" : "fail") << "\n";
  os << "ssc," << fmt(v.min_separation) << "," << (v.ssc ? "pass" : "fail") << "\n";
  os << "osc,," << (v.osc ? "pass" : "fail") << "\n";

  const int ne = gifs_spec_edge_count(h.spec);
  std::vector<double> delta(static_cast<std::size_t>(ne) * static_cast<std::size_t>(ne));
  if (gifs_separation_table(h.spec, depth, delta.data()) == GIFS_OK) {
    for (int e = 0; e < ne; ++e)
      for (int f = 0; f < ne; ++f) {
        if (e == f) continue;
        os << "separation_" << edge_name(h.spec, e) << "_" << edge_name(h.spec, f) << ","
           << fmt(delta[static_cast<std::size_t>(e) * static_cast<std::size_t>(ne) +
                        static_cast<std::size_t>(f)])
           << ",\n";
      }
  }

  std::cout << "validate: " << (v.hard_pass ? "VALID" : "INVALID") << " (separation depth "
            << v.depth << ", SSC " << (v.ssc ? "pass" : "fail") << ", OSC "
            << (v.osc ? "pass" : "fail") << ")\n";
  if (v.message[0] != '\0') std::cout << "details: " << v.message << "\n";
  return v.hard_pass ? 0 : 1;
}

int cmd_pressure(const std::string& spec_path, double s, int cyl_depth,
                 const std::string& out_path) {
  SpecHandle h;
  if (int rc = load(spec_path, h)) return rc;

  CsvSink csv;
  if (int rc = csv.open(out_path)) return rc;
  auto& os = csv.stream();
  os << "potential,method,s,value,finite\n";
  const char* names[] = {"upper", "lower", "det"};
  const gifs_potential pots[] = {GIFS_POT_UPPER, GIFS_POT_LOWER, GIFS_POT_DET};
  for (int i = 0; i < 3; ++i) {
    double value = 0;
    int finite = 0;
    if (gifs_status rc = gifs_pressure_spectral(h.spec, pots[i], s, &value, &finite)) {
      std::cerr << "error: " << gifs_last_error() << "\n";
      return exit_code(rc);
    }
    os << names[i] << ",spectral," << fmt(s) << "," << fmt(value) << "," << finite << "\n";
    if (gifs_status rc =
            gifs_pressure_cylinder(h.spec, pots[i], s, cyl_depth, &value, &finite)) {
      std::cerr << "error: " << gifs_last_error() << "\n";
      return exit_code(rc);
    }
    os << names[i] << ",cylinder_" << cyl_depth << "," << fmt(s) << "," << fmt(value) << ","
       << finite << "\n";
  }

  if (gifs_spec_has_tail(h.spec)) {
    std::vector<double> levels;
    for (double l = 4; l <= 64; l *= 2) levels.push_back(l);
    std::vector<double> pressures(levels.size());
    int verdict = 2;
    if (gifs_pressure_truncated(h.spec, s, levels.data(), levels.size(), pressures.data(),
                                &verdict) == GIFS_OK) {
      os << "truncation_log2_size,pressure,,,\n";
      for (std::size_t i = 0; i < levels.size(); ++i)
        os << fmt(levels[i]) << "," << fmt(pressures[i]) << ",,,\n";
      const char* verdicts[] = {"converged", "divergent", "undetermined"};
      std::cout << "truncation: " << verdicts[verdict] << " at s=" << fmt(s) << "\n";
    }
    double threshold = 0;
    if (gifs_finiteness_threshold(h.spec, 1e-3, &threshold) == GIFS_OK)
      std::cout << "finiteness threshold: " << fmt(threshold)
                << " (divide by dim for the normalized exponent)\n";
  }

  std::cout << "pressure: done (s=" << fmt(s) << ", cylinder depth " << cyl_depth << ")\n";
  return 0;
}

int cmd_dim_bounds(const std::string& spec_path, double tol, int depth, double conf_tol,
                   const std::string& out_path) {
  SpecHandle h;
  if (int rc = load(spec_path, h)) return rc;

  gifs_dim_report rep{};
  if (gifs_status rc = gifs_dim_bounds(h.spec, tol, depth, conf_tol, &rep)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  std::string id = spec_path;
  const std::size_t slash = id.find_last_of('/');
  if (slash != std::string::npos) id = id.substr(slash + 1);

  std::string flags;
  const auto add_flag = [&](const char* f) {
    if (!flags.empty()) flags += ';';
    flags += f;
  };
  if (rep.conformal) add_flag("conformal");
  if (rep.ssc) add_flag("ssc");
  if (!rep.ssc && rep.osc) add_flag("osc-only");
  if (rep.lower_is_heuristic) add_flag("lower-heuristic");

  CsvSink csv;
  if (int rc = csv.open(out_path)) return rc;
  csv.stream() << "id,s_lower,s_upper,det_lower,det_upper,K,flags\n"
               << id << "," << fmt(rep.s_lower) << "," << fmt(rep.s_upper) << ","
               << fmt(rep.det_lower) << "," << fmt(rep.det_upper) << ","
               << fmt(rep.quasiregularity) << "," << flags << "\n";

  std::cout << "dimension bracket: [" << fmt(rep.s_lower) << ", " << fmt(rep.s_upper)
            << "], determinant interval [" << fmt(rep.det_lower) << ", "
            << fmt(rep.det_upper) << "] at K=" << fmt(rep.quasiregularity) << "\n";
  if (rep.lower_is_heuristic)
    std::cout << "note: strong separation fails at this depth; the lower bound is"
                 " advisory\n";
  return 0;
}

int cmd_perturb(const std::string& spec_path, int order, double eps_start, int eps_levels,
                double tol, int method, double t_exponent, int workers,
                const std::string& out_path) {
  SpecHandle h;
  if (int rc = load(spec_path, h)) return rc;

  const int n = order >= 0 ? order : gifs_spec_order(h.spec);
  std::vector<double> grid = make_grid(eps_start, eps_levels);
  const double eps_max = gifs_spec_eps_max(h.spec);
  while (!grid.empty() && grid.front() > eps_max) grid.erase(grid.begin());
  if (grid.size() < static_cast<std::size_t>(n + 3)) {
    std::cerr << "error: grid has " << grid.size() << " usable points inside the validity"
              << " range (eps <= " << fmt(eps_max) << "); need at least " << n + 3 << "\n";
    return 2;
  }

  std::vector<gifs_perturb_row> rows(grid.size());
  if (gifs_status rc =
          gifs_perturb_sweep(h.spec, grid.data(), grid.size(), tol, workers, rows.data())) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  CsvSink csv;
  if (int rc = csv.open(out_path)) return rc;
  auto& os = csv.stream();
  os << "eps,s_lower,s_upper,K\n";
  for (const auto& row : rows)
    os << fmt(row.eps) << "," << fmt(row.s_lower) << "," << fmt(row.s_upper) << ","
       << fmt(row.K) << "\n";

  gifs_expansion_fit fit{};
  if (gifs_status rc = gifs_fit_expansion(h.spec, n, grid.data(), grid.size(), method, tol,
                                          workers, &fit)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }
  gifs_k_order ko{};
  if (gifs_status rc = gifs_k_order_check(h.spec, n, grid.data(), grid.size(), &ko)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  std::cout << "fit (order " << n << ", " << (method == 1 ? "polyfit" : "richardson")
            << "):\n";
  for (int k = 0; k <= n; ++k)
    std::cout << "  s" << k << " = " << fmt(fit.coeff[k]) << "  (scale "
              << fmt(fit.remainder_scale[k]) << ")\n";
  std::cout << "  remainder slope = " << fmt(fit.remainder_slope) << "\n";
  std::cout << "  bracket width slope = " << fmt(fit.width_slope) << "\n";
  if (!fit.reliable) std::cout << "  warning: " << fit.note << "\n";
  if (ko.exactly_conformal)
    std::cout << "quasiregularity: exactly conformal across the grid\n";
  else
    std::cout << "quasiregularity: K-1 slope " << fmt(ko.slope) << " (stderr "
              << fmt(ko.slope_stderr) << "), order-" << n << " check "
              << (ko.pass ? "pass" : "fail") << "\n";

  double base_upper = 0, base_lower = 0;
  if (gifs_bowen_root(h.spec, GIFS_POT_UPPER, tol, &base_upper) == GIFS_OK &&
      gifs_bowen_root(h.spec, GIFS_POT_LOWER, tol, &base_lower) == GIFS_OK) {
    gifs_condition_report cond{};
    if (gifs_affine_condition_check(h.spec, t_exponent, base_lower, base_upper, &cond) ==
        GIFS_OK)
      std::cout << "admissibility at t=" << fmt(t_exponent) << ": p_n=" << fmt(cond.p_n)
                << " against bracket [" << fmt(base_lower) << ", " << fmt(base_upper)
                << "], " << (cond.pass ? "pass" : "fail") << "\n";
  }
  return 0;
}

int cmd_boxcount(const std::string& spec_path, std::size_t points, int burn_in,
                 std::uint64_t seed, int chains, int scales, int workers,
                 const std::string& dump_path, const std::string& out_path) {
  SpecHandle h;
  if (int rc = load(spec_path, h)) return rc;

  std::vector<double> scale_values(static_cast<std::size_t>(scales));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(scales));
  gifs_boxcount_report rep{};
  if (gifs_status rc = gifs_box_count(h.spec, points, burn_in, seed, chains, workers, scales,
                                      scale_values.data(), counts.data(), &rep)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  CsvSink csv;
  if (int rc = csv.open(out_path)) return rc;
  auto& os = csv.stream();
  os << "scale,count\n";
  for (int i = 0; i < scales; ++i)
    os << fmt(scale_values[static_cast<std::size_t>(i)]) << ","
       << counts[static_cast<std::size_t>(i)] << "\n";

  if (!dump_path.empty()) {
    const int dim = gifs_spec_dim(h.spec);
    std::vector<double> coords(points * static_cast<std::size_t>(dim));
    std::vector<int32_t> vertices(points);
    if (gifs_status rc = gifs_chaos_game(h.spec, points, burn_in, seed, chains, workers,
                                         coords.data(), vertices.data())) {
      std::cerr << "error: " << gifs_last_error() << "\n";
      return exit_code(rc);
    }
    std::ofstream dump(dump_path, std::ios::binary);
    if (!dump) {
      std::cerr << "error: cannot open dump file '" << dump_path << "'\n";
      return 2;
    }
    for (int d = 0; d < dim; ++d) dump << "x" << (d + 1) << ",";
    dump << "vertex\n";
    for (std::size_t p = 0; p < points; ++p) {
      for (int d = 0; d < dim; ++d)
        dump << fmt(coords[p * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d)])
             << ",";
      dump << vertices[p] << "\n";
    }
  }

  std::cout << "box-count dimension estimate: " << fmt(rep.slope) << " (stderr "
            << fmt(rep.slope_stderr) << ", " << points << " points, " << scales
            << " scales)\n";
  if (rep.degenerate) std::cout << "warning: degenerate cloud, slope set to zero\n";
  return 0;
}

int cmd_example_r3(double r, double eps_start, int eps_levels, double tol, int workers,
                   const std::string& spec_out, const std::string& out_path) {
  char text[2048];
  if (gifs_status rc = gifs_example_r3_spec(r, text, sizeof text)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }
  if (!spec_out.empty()) {
    std::ofstream f(spec_out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open spec output file '" << spec_out << "'\n";
      return 2;
    }
    f << text;
  }
  SpecHandle h;
  if (gifs_status rc = gifs_spec_parse(text, "example-r3", &h.spec)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  const std::vector<double> grid = make_grid(eps_start, eps_levels);
  std::vector<gifs_perturb_row> rows(grid.size());
  if (gifs_status rc =
          gifs_perturb_sweep(h.spec, grid.data(), grid.size(), tol, workers, rows.data())) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }

  CsvSink csv;
  if (int rc = csv.open(out_path)) return rc;
  auto& os = csv.stream();
  os << "eps,K_closed_form,K_minimal,s_lower,s_upper\n";
  for (const auto& row : rows)
    os << fmt(row.eps) << "," << fmt(gifs_example_r3_closed_K(row.eps)) << ","
       << fmt(row.K) << "," << fmt(row.s_lower) << "," << fmt(row.s_upper) << "\n";

  std::cout << "closed form at eps=0: " << fmt(gifs_example_r3_closed_K(0.0)) << "\n";
  for (double step : {1e-2, 5e-3}) {
    const double second = (gifs_example_r3_closed_K(step) -
                           2.0 * gifs_example_r3_closed_K(0.0) +
                           gifs_example_r3_closed_K(-step)) /
                          (step * step) / 2.0;
    std::cout << "second-order coefficient (h=" << fmt(step) << "): " << fmt(second) << "\n";
  }

  gifs_expansion_fit fit{};
  if (gifs_status rc = gifs_fit_expansion(h.spec, 1, grid.data(), grid.size(), 0, tol,
                                          workers, &fit)) {
    std::cerr << "error: " << gifs_last_error() << "\n";
    return exit_code(rc);
  }
  std::cout << "dimension at eps=0: " << fmt(fit.coeff[0]) << "\n";
  std::cout << "fitted first-order coefficient s1: " << fmt(fit.coeff[1]) << " (scale "
            << fmt(fit.remainder_scale[1]) << ")\n";
  std::cout << "note: the minimal quasiregularity constant is the square of the"
               " singular-value ratio, the closed form its 3/2 power, so the K_minimal"
               " column dominates K_closed_form\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension estimates for graph-directed iterated function systems"};
  app.require_subcommand(1);

  std::string spec_path, out_path, dump_path, spec_out_path;
  double tol = 1e-10;
  double conf_tol = 1e-9;
  double s_param = 1.0;
  double t_exponent = 1.0;
  double eps_start = 0.1;
  double r_param = 0.4;
  int depth = 1, cyl_depth = 12, eps_levels = 11, order = -1;
  int workers = env_workers();
  int method = 0;
  int scales = 8, burn_in = 64, chains = 8;
  std::size_t points = 100000;
  std::uint64_t seed = 1;

  const auto add_common = [&](CLI::App* cmd, bool needs_spec) {
    if (needs_spec)
      cmd->add_option("--spec", spec_path, "system description file")->required();
    cmd->add_option("--out", out_path, "write the CSV block to this file");
    cmd->add_option("--workers", workers, "worker threads (default GIFS_DIM_WORKERS or 1)");
    cmd->add_option("--tol", tol, "root tolerance");
  };

  CLI::App* validate = app.add_subcommand("validate", "structural and separation checks");
  add_common(validate, true);
  validate->add_option("--depth", depth, "separation depth");

  CLI::App* pressure = app.add_subcommand("pressure", "pressures of the three potentials");
  add_common(pressure, true);
  pressure->add_option("--s", s_param, "potential scale parameter");
  pressure->add_option("--cyl-depth", cyl_depth, "cylinder truncation depth");

  CLI::App* dim =
      app.add_subcommand("dim-bounds", "dimension bracket and determinant interval");
  add_common(dim, true);
  dim->add_option("--depth", depth, "separation depth");
  dim->add_option("--conf-tol", conf_tol, "relative tolerance for conformality");

  CLI::App* perturb = app.add_subcommand("perturb", "dimension sweep and expansion fit");
  add_common(perturb, true);
  perturb->add_option("--order", order, "expansion order (default: the spec's order)");
  perturb->add_option("--eps-start", eps_start, "largest eps of the dyadic grid");
  perturb->add_option("--eps-levels", eps_levels, "number of dyadic grid levels");
  perturb->add_option("--method", method, "0 richardson, 1 polyfit");
  perturb->add_option("--t-exponent", t_exponent,
                      "admissibility exponent t in (0, 1] for the condition check");

  CLI::App* boxcount = app.add_subcommand("boxcount", "chaos-game sampling and box counting");
  add_common(boxcount, true);
  boxcount->add_option("--points", points, "number of sample points");
  boxcount->add_option("--seed", seed, "random seed");
  boxcount->add_option("--burn-in", burn_in, "discarded leading iterates per chain");
  boxcount->add_option("--chains", chains, "independent sampling chains");
  boxcount->add_option("--scales", scales, "number of dyadic box scales");
  boxcount->add_option("--dump-points", dump_path, "also write the point cloud as CSV");

  CLI::App* demo = app.add_subcommand("example-r3", "built-in 3-D demo family");
  add_common(demo, false);
  demo->add_option("--r", r_param, "overall contraction ratio in (0, 0.42]");
  demo->add_option("--spec-out", spec_out_path, "write the generated system file here");
  demo->add_option("--eps-start", eps_start, "largest eps of the dyadic grid");
  demo->add_option("--eps-levels", eps_levels, "number of dyadic grid levels");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(spec_path, depth, out_path);
  if (pressure->parsed()) return cmd_pressure(spec_path, s_param, cyl_depth, out_path);
  if (dim->parsed()) return cmd_dim_bounds(spec_path, tol, depth, conf_tol, out_path);
  if (perturb->parsed())
    return cmd_perturb(spec_path, order, eps_start, eps_levels, tol, method, t_exponent,
                       workers, out_path);
  if (boxcount->parsed())
    return cmd_boxcount(spec_path, points, burn_in, seed, chains, scales, workers, dump_path,
                        out_path);
  if (demo->parsed())
    return cmd_example_r3(r_param, eps_start, eps_levels, tol, workers, spec_out_path,
                          out_path);
  return 2;
}

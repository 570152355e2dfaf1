#include "gifsdim/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gifsdim/bowen.hpp"
#include "gifsdim/parallel.hpp"
#include "gifsdim/pressure.hpp"
#include "gifsdim/stats.hpp"

namespace gifs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TTable TTable::uniform(int order, double t) {
  if (order < 0) throw Error(Error::Kind::input, "order must be >= 0");
  if (!(t > 0 && t <= 1)) throw Error(Error::Kind::input, "exponents must lie in (0, 1]");
  TTable table;
  table.order = order;
  table.rows.resize(static_cast<std::size_t>(order) + 1);
  for (int l = 0; l <= order; ++l)
    table.rows[static_cast<std::size_t>(l)].assign(
        static_cast<std::size_t>(order - l + 1), t);
  return table;
}

bool TTable::in_domain(int l, int k) const {
  return l >= 0 && l <= order && k >= 1 && k <= order - l + 1;
}

double TTable::at(int l, int k) const {
  if (!in_domain(l, k))
    throw Error(Error::Kind::input, "t-table entry (" + std::to_string(l) + ", " +
                                        std::to_string(k) + ") is missing");
  return rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(k - 1)];
}

double compute_tk(const TTable& table, int dim, int k) {
  if (dim < 1 || dim > kMaxDim) throw Error(Error::Kind::input, "dim must be in [1, 8]");
  if (k < 1 || k > table.order)
    throw Error(Error::Kind::input, "k must be in [1, order]");

  // dp over slots: cost[a][b] = min total of t(i_q, j_q + 1) over the slots
  // placed so far with sum(i) = a, sum(j) = b.
  const int imax = k;
  const int jmax = k;
  std::vector<std::vector<double>> cost(
      static_cast<std::size_t>(imax) + 1,
      std::vector<double>(static_cast<std::size_t>(jmax) + 1, kInf));
  cost[0][0] = 0.0;
  for (int slot = 0; slot < dim; ++slot) {
    std::vector<std::vector<double>> next(
        static_cast<std::size_t>(imax) + 1,
        std::vector<double>(static_cast<std::size_t>(jmax) + 1, kInf));
    for (int a = 0; a <= imax; ++a)
      for (int b = 0; b <= jmax; ++b) {
        const double base = cost[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (base == kInf) continue;
        for (int iq = 0; a + iq <= imax; ++iq)
          for (int jq = 0; b + jq <= jmax; ++jq) {
            if (!table.in_domain(iq, jq + 1)) continue;
            const double c = base + table.at(iq, jq + 1);
            auto& slot_cost = next[static_cast<std::size_t>(a + iq)]
                                  [static_cast<std::size_t>(b + jq)];
            slot_cost = std::min(slot_cost, c);
          }
      }
    cost.swap(next);
  }

  double best = kInf;
  const auto feasible = [&](int i, int j) {
    return (i == k && j == 0) || (0 <= i && i < k && 1 <= j && j <= k - i);
  };
  for (int i = 0; i <= imax; ++i)
    for (int j = 0; j <= jmax; ++j)
      if (feasible(i, j))
        best = std::min(best, cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  if (best == kInf)
    throw Error(Error::Kind::input, "t-table entry missing for every feasible tuple");
  return best / static_cast<double>(dim);
}

double compute_ttilde(const TTable& table, int dim, double t0) {
  if (!(t0 > 0 && t0 <= 1)) throw Error(Error::Kind::input, "exponents must lie in (0, 1]");
  double best = t0;
  if (table.order >= 1) best = std::min(best, compute_tk(table, dim, table.order));
  const double d = static_cast<double>(dim);
  for (int l = 1; l <= table.order; ++l)
    best = std::min(best, t0 / d + (d - 1.0) / d * table.at(l, 1));
  return best;
}

double compute_pn(double p_low, std::span<const double> tks, double t_tilde, int n) {
  if (!(t_tilde > 0 && t_tilde <= 1))
    throw Error(Error::Kind::input, "exponents must lie in (0, 1]");
  if (n == 0) return p_low / t_tilde;
  if (static_cast<int>(tks.size()) < n)
    throw Error(Error::Kind::input, "need t_k for k = 1..n");
  double best = std::max(p_low + 1.0 - t_tilde, p_low / t_tilde);
  for (int k = 1; k <= n; ++k) {
    const double tk = tks[static_cast<std::size_t>(k - 1)];
    if (!(tk > 0 && tk <= 1))
      throw Error(Error::Kind::input, "exponents must lie in (0, 1]");
    best = std::max(best, p_low + (static_cast<double>(n) / k) * (1.0 - tk));
    best = std::max(best, p_low / tk);
  }
  return best;
}

ConditionReport affine_condition_check(const PerturbedFamily& fam, double t,
                                       std::pair<double, double> dim_bracket) {
  if (!(t > 0 && t <= 1)) throw Error(Error::Kind::input, "t must lie in (0, 1]");
  const int n = fam.order;
  const double d = static_cast<double>(fam.base.dim);

  ConditionReport rep;
  rep.t_table = TTable::uniform(n, t);
  for (int k = 1; k <= n; ++k) rep.t_k.push_back(compute_tk(rep.t_table, fam.base.dim, k));
  rep.t_tilde = compute_ttilde(rep.t_table, fam.base.dim, t);

  // Finite edge sets always have finite pressure, so the threshold is zero
  // unless a countable tail is attached.
  double s_under = 0.0;
  if (fam.tail && fam.tail->scale > 0)
    s_under = finiteness_threshold(TailSystem::from(fam));
  rep.p_low = s_under / d;
  rep.p_n = std::max(s_under + d * n * (1.0 - t), s_under / t);

  rep.coeff_finite = true;
  rep.offsets_finite = true;
  for (std::size_t e = 0; e < fam.coeffs.size(); ++e) {
    const double base_norm = op_norm(fam.base.maps[e].linear);
    for (const auto& c : fam.coeffs[e]) {
      const double ratio = op_norm(c.linear) / std::pow(base_norm, t);
      rep.coeff_ratio = std::max(rep.coeff_ratio, ratio);
      rep.offset_bound = std::max(rep.offset_bound, c.offset.norm());
      if (!std::isfinite(ratio)) rep.coeff_finite = false;
      if (!std::isfinite(c.offset.norm())) rep.offsets_finite = false;
    }
  }

  rep.dim_check = rep.p_n < dim_bracket.first;
  if (!rep.coeff_finite) rep.failing.push_back("coefficient ratio unbounded");
  if (!rep.offsets_finite) rep.failing.push_back("offset coefficients unbounded");
  if (!rep.dim_check) rep.failing.push_back("p_n(t) is not below the dimension bracket");
  return rep;
}

std::vector<double> dyadic_grid(double eps0, int levels) {
  if (!(eps0 > 0) || levels < 1)
    throw Error(Error::Kind::input, "grid needs eps0 > 0 and levels >= 1");
  std::vector<double> grid;
  double e = eps0;
  for (int j = 0; j < levels; ++j) {
    grid.push_back(e);
    e *= 0.5;
  }
  return grid;
}

namespace {

// Polynomial extrapolation of (x_j, y_j), j = j0..j0+depth, to x = 0
// (Neville). Returns the value and the last correction as an error cue.
std::pair<double, double> extrapolate_to_zero(std::span<const double> x,
                                              std::span<const double> y, std::size_t j0,
                                              int depth) {
  std::vector<double> t(static_cast<std::size_t>(depth) + 1);
  for (int i = 0; i <= depth; ++i) t[static_cast<std::size_t>(i)] = y[j0 + static_cast<std::size_t>(i)];
  double prev = t[0];
  for (int m = 1; m <= depth; ++m) {
    for (int i = 0; i + m <= depth; ++i) {
      const double xi = x[j0 + static_cast<std::size_t>(i)];
      const double xim = x[j0 + static_cast<std::size_t>(i + m)];
      t[static_cast<std::size_t>(i)] =
          (xi * t[static_cast<std::size_t>(i + 1)] - xim * t[static_cast<std::size_t>(i)]) /
          (xi - xim);
    }
    if (m == depth - 1) prev = t[0];
  }
  return {t[0], std::abs(t[0] - prev)};
}

struct PeeledCoefficient {
  double value = 0.0;
  double scale = 0.0;
};

// Coefficient k of the remainder r(x) = s_k x^k + s_{k+1} x^{k+1} + ...,
// choosing the extrapolation window that minimizes tableau disagreement plus
// amplified solver noise.
PeeledCoefficient peel_coefficient(std::span<const double> x, std::vector<double>& rem,
                                   int k, int depth, double tol) {
  const std::size_t count = x.size();
  std::vector<double> q(count);
  for (std::size_t j = 0; j < count; ++j)
    q[j] = rem[j] / std::pow(x[j], k);

  PeeledCoefficient best;
  double best_score = kInf;
  for (std::size_t j0 = 0; j0 + static_cast<std::size_t>(depth) < count; ++j0) {
    const auto [value, disagreement] = extrapolate_to_zero(x, q, j0, depth);
    const double noise = tol / std::pow(x[j0 + static_cast<std::size_t>(depth)], k);
    const double score = disagreement + noise;
    if (score < best_score) {
      best_score = score;
      best.value = value;
      best.scale = score;
    }
  }
  for (std::size_t j = 0; j < count; ++j) rem[j] -= best.value * std::pow(x[j], k);
  return best;
}

std::vector<double> fit_polynomial(std::span<const double> x, std::span<const double> y,
                                   int degree) {
  const int m = degree + 1;
  std::vector<long double> a(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0L);
  std::vector<long double> b(static_cast<std::size_t>(m), 0.0L);
  for (std::size_t j = 0; j < x.size(); ++j) {
    long double xp = 1.0L;
    std::vector<long double> powers(static_cast<std::size_t>(2 * degree) + 1);
    for (int p = 0; p <= 2 * degree; ++p) {
      powers[static_cast<std::size_t>(p)] = xp;
      xp *= static_cast<long double>(x[j]);
    }
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c)
        a[static_cast<std::size_t>(r * m + c)] += powers[static_cast<std::size_t>(r + c)];
      b[static_cast<std::size_t>(r)] +=
          powers[static_cast<std::size_t>(r)] * static_cast<long double>(y[j]);
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(static_cast<double>(a[static_cast<std::size_t>(r * m + col)])) >
          std::abs(static_cast<double>(a[static_cast<std::size_t>(piv * m + col)])))
        piv = r;
    if (a[static_cast<std::size_t>(piv * m + col)] == 0.0L)
      throw Error(Error::Kind::numeric, "degenerate polynomial fit");
    if (piv != col) {
      for (int c = 0; c < m; ++c)
        std::swap(a[static_cast<std::size_t>(piv * m + c)],
                  a[static_cast<std::size_t>(col * m + c)]);
      std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const long double f =
          a[static_cast<std::size_t>(r * m + col)] / a[static_cast<std::size_t>(col * m + col)];
      if (f == 0.0L) continue;
      for (int c = 0; c < m; ++c)
        a[static_cast<std::size_t>(r * m + c)] -= f * a[static_cast<std::size_t>(col * m + c)];
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> coeff(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r)
    coeff[static_cast<std::size_t>(r)] = static_cast<double>(
        b[static_cast<std::size_t>(r)] / a[static_cast<std::size_t>(r * m + r)]);
  return coeff;
}

}  // namespace

ExpansionFit fit_expansion(const PerturbedFamily& fam, int n, std::span<const double> grid,
                           FitMethod method, double tol, int workers) {
  if (n < 0 || n > kMaxDim) throw Error(Error::Kind::input, "order must be in [0, 8]");
  if (static_cast<int>(grid.size()) < n + 3)
    throw Error(Error::Kind::input, "grid needs at least order+3 points");
  for (std::size_t j = 0; j + 1 < grid.size(); ++j)
    if (!(grid[j] > grid[j + 1]) || !(grid[j + 1] > 0))
      throw Error(Error::Kind::input, "grid must be strictly decreasing and positive");

  ExpansionFit fit;
  fit.order = n;
  fit.grid.assign(grid.begin(), grid.end());
  fit.lower.resize(grid.size());
  fit.upper.resize(grid.size());

  std::vector<std::string> errors(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t j) {
    try {
      const AffineSystem sys = fam.at(grid[j]);
      fit.upper[j] = bowen_root(sys.graph, EdgePotential::upper(sys), tol);
      fit.lower[j] = bowen_root(sys.graph, EdgePotential::lower(sys), tol);
    } catch (const Error& err) {
      errors[j] = err.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw Error(Error::Kind::domain, e);

  std::vector<double> mid(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    mid[j] = 0.5 * (fit.lower[j] + fit.upper[j]);

  if (method == FitMethod::polyfit) {
    fit.coeff = fit_polynomial(grid, mid, n);
    fit.remainder_scale.assign(static_cast<std::size_t>(n) + 1, tol);
  } else {
    const int depth = std::min(n + 2, static_cast<int>(grid.size()) - 1);
    std::vector<double> rem = mid;
    for (int k = 0; k <= n; ++k) {
      const PeeledCoefficient c = peel_coefficient(grid, rem, k, depth, tol);
      fit.coeff.push_back(c.value);
      fit.remainder_scale.push_back(c.scale);
    }
  }

  // Residual order on the finer half of the grid.
  {
    std::vector<double> lx, ly;
    for (std::size_t j = grid.size() / 2; j < grid.size(); ++j) {
      double poly = 0.0;
      for (int k = n; k >= 0; --k) poly = poly * grid[j] + fit.coeff[static_cast<std::size_t>(k)];
      const double r = std::abs(mid[j] - poly);
      if (r > std::max(1e-13, 10 * tol)) {
        lx.push_back(std::log(grid[j]));
        ly.push_back(std::log(r));
      }
    }
    if (lx.size() >= 2)
      fit.remainder_slope = least_squares_line(lx, ly).slope;
    else
      fit.remainder_slope = kInf;  // residual at solver tolerance everywhere
  }

  // Bracket width order.
  {
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double w = fit.upper[j] - fit.lower[j];
      if (w > std::max(1e-12, 100 * tol)) {
        lx.push_back(std::log(grid[j]));
        ly.push_back(std::log(w));
      }
    }
    if (lx.size() >= 2)
      fit.width_slope = least_squares_line(lx, ly).slope;
    else
      fit.width_slope = kInf;  // bracket degenerate (conformal family)
  }

  // Nonconformality check: widths must stay below half the coefficient scale.
  double coeff_scale = 0.0;
  for (int k = 1; k <= n; ++k)
    coeff_scale = std::max(coeff_scale,
                           std::abs(fit.coeff[static_cast<std::size_t>(k)]) *
                               std::pow(grid[0], k));
  double max_width = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    max_width = std::max(max_width, fit.upper[j] - fit.lower[j]);
  if (coeff_scale > 100 * tol && max_width > 0.5 * coeff_scale) {
    fit.reliable = false;
    fit.note = "nonconformality dominates, expansion unreliable";
  }

  return fit;
}

KOrderVerdict k_order_check(const PerturbedFamily& fam, int n, std::span<const double> grid) {
  if (n < 0) throw Error(Error::Kind::input, "order must be >= 0");
  const QuasiregularityReport q = quasiregularity_report(fam, grid);
  KOrderVerdict v;
  if (q.exactly_conformal) {
    v.exactly_conformal = true;
    v.pass = true;
    return v;
  }
  v.slope = q.slope;
  v.slope_stderr = q.slope_stderr;
  if (q.slope_stderr < 1e-12)
    v.pass = q.slope > static_cast<double>(n) + 1e-9;
  else
    v.pass = (q.slope - static_cast<double>(n)) / q.slope_stderr > 1.645;
  return v;
}

}  // namespace gifs

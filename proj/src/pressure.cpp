#include "gifsdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace gifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_potential(const Graph& g, const EdgePotential& f) {
  if (static_cast<int>(f.values.size()) != g.edge_count())
    throw Error(Error::Kind::input, "potential needs one value per edge");
  for (double v : f.values)
    if (!std::isfinite(v))
      throw Error(Error::Kind::input, "potential values must be finite");
}

// True iff the support of the admissibility relation carries no cycle, in
// which case the weighted matrix is nilpotent and the pressure is -infinity.
bool admissibility_acyclic(const Graph& g) {
  const int m = g.edge_count();
  std::vector<int> state(static_cast<std::size_t>(m), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<int, int>> stack;                  // (edge, successor index)
  for (int start = 0; start < m; ++start) {
    if (state[static_cast<std::size_t>(start)] != 0) continue;
    stack.emplace_back(start, 0);
    state[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      auto& [e, idx] = stack.back();
      const auto succ = g.successors(e);
      if (idx >= static_cast<int>(succ.size())) {
        state[static_cast<std::size_t>(e)] = 2;
        stack.pop_back();
        continue;
      }
      const int f = succ[static_cast<std::size_t>(idx++)];
      if (state[static_cast<std::size_t>(f)] == 1) return false;
      if (state[static_cast<std::size_t>(f)] == 0) {
        state[static_cast<std::size_t>(f)] = 1;
        stack.emplace_back(f, 0);
      }
    }
  }
  return true;
}

// Geometric mean of weights along some admissible cycle (a lower bound for
// the spectral radius). Assumes a cycle exists.
double cycle_lower_bound(const Graph& g, std::span<const double> logw) {
  const int m = g.edge_count();
  std::vector<int> state(static_cast<std::size_t>(m), 0);
  std::vector<int> path;
  std::vector<std::pair<int, int>> stack;
  for (int start = 0; start < m; ++start) {
    if (state[static_cast<std::size_t>(start)] != 0) continue;
    stack.emplace_back(start, 0);
    state[static_cast<std::size_t>(start)] = 1;
    path.push_back(start);
    while (!stack.empty()) {
      auto& [e, idx] = stack.back();
      const auto succ = g.successors(e);
      if (idx >= static_cast<int>(succ.size())) {
        state[static_cast<std::size_t>(e)] = 2;
        stack.pop_back();
        path.pop_back();
        continue;
      }
      const int f = succ[static_cast<std::size_t>(idx++)];
      if (state[static_cast<std::size_t>(f)] == 1) {
        // cycle: suffix of `path` from f to e
        double acc = 0;
        int len = 0;
        for (std::size_t i = path.size(); i-- > 0;) {
          acc += logw[static_cast<std::size_t>(path[i])];
          ++len;
          if (path[i] == f) break;
        }
        return acc / len;
      }
      if (state[static_cast<std::size_t>(f)] == 0) {
        state[static_cast<std::size_t>(f)] = 1;
        stack.emplace_back(f, 0);
        path.push_back(f);
      }
    }
  }
  throw Error(Error::Kind::numeric, "no admissible cycle found");
}

// Z-matrix M-matrix test: lambda I - B admits an LU factorization with all
// pivots positive iff rho(B) < lambda. Elimination on M-matrices is stable
// without pivoting and preserves the sign pattern.
bool rho_below(const std::vector<double>& b, int m, double lambda) {
  std::vector<double> a(b.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
        static_cast<std::size_t>(j)] =
          (i == j ? lambda : 0.0) -
          b[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
            static_cast<std::size_t>(j)];
  for (int k = 0; k < m; ++k) {
    const double piv =
        a[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
          static_cast<std::size_t>(k)];
    if (!(piv > 0)) return false;
    for (int i = k + 1; i < m; ++i) {
      const double f = a[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                         static_cast<std::size_t>(k)] /
                       piv;
      if (f == 0.0) continue;
      for (int j = k + 1; j < m; ++j)
        a[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
          static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
                  static_cast<std::size_t>(j)];
    }
  }
  return true;
}

}  // namespace

EdgePotential EdgePotential::upper(const AffineSystem& sys) {
  EdgePotential f;
  for (const auto& m : sys.maps) f.values.push_back(std::log(op_norm(m.linear)));
  return f;
}

EdgePotential EdgePotential::lower(const AffineSystem& sys) {
  EdgePotential f;
  for (const auto& m : sys.maps) f.values.push_back(std::log(inf_norm(m.linear)));
  return f;
}

EdgePotential EdgePotential::log_det(const AffineSystem& sys) {
  EdgePotential f;
  for (const auto& m : sys.maps) f.values.push_back(std::log(std::abs(det(m.linear))));
  return f;
}

EdgePotential EdgePotential::scaled(double s) const {
  EdgePotential out = *this;
  for (double& v : out.values) v *= s;
  return out;
}

EdgePotential EdgePotential::shifted(double c) const {
  EdgePotential out = *this;
  for (double& v : out.values) v += c;
  return out;
}

double EdgePotential::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double EdgePotential::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

PressureValue pressure_spectral(const Graph& g, const EdgePotential& f) {
  check_potential(g, f);
  const int m = g.edge_count();

  PressureValue out;
  if (admissibility_acyclic(g)) {
    out.kind = PressureValue::Kind::neg_inf;
    out.value = -kInf;
    return out;
  }

  // Normalize weights so the matrix has max entry 1; the log scale is
  // restored at the end.
  const double fmax = f.max_value();
  std::vector<double> b(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  std::vector<double> logw(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e)
    logw[static_cast<std::size_t>(e)] = f.values[static_cast<std::size_t>(e)] - fmax;
  for (int e = 0; e < m; ++e)
    for (int ep : g.successors(e))
      b[static_cast<std::size_t>(e) * static_cast<std::size_t>(m) +
        static_cast<std::size_t>(ep)] = std::exp(logw[static_cast<std::size_t>(ep)]);

  double lo = cycle_lower_bound(g, logw);  // log scale, <= log rho
  double hi = -kInf;                       // log of max row sum, >= log rho
  for (int e = 0; e < m; ++e) {
    double row = 0;
    for (int ep = 0; ep < m; ++ep)
      row += b[static_cast<std::size_t>(e) * static_cast<std::size_t>(m) +
               static_cast<std::size_t>(ep)];
    if (row > 0) hi = std::max(hi, std::log(row));
  }
  lo = std::min(lo, hi);

  int iters = 0;
  while (hi - lo > 1e-13 && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (rho_below(b, m, std::exp(mid)))
      hi = mid;
    else
      lo = mid;
    ++iters;
  }

  out.value = fmax + 0.5 * (lo + hi);
  out.iterations = iters;
  out.bracket = hi - lo;
  return out;
}

double pressure_cylinder(const Graph& g, const EdgePotential& f, int n) {
  check_potential(g, f);
  if (n < 1) throw Error(Error::Kind::input, "cylinder depth must be >= 1");
  const int m = g.edge_count();
  const double fmax = f.max_value();

  std::vector<double> w(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e)
    w[static_cast<std::size_t>(e)] = std::exp(f.values[static_cast<std::size_t>(e)] - fmax);

  // Streamed, compensated accumulation of the max-shifted terms; partitioned
  // by leading edge so partial sums merge in a fixed order.
  struct Walker {
    const Graph& g;
    std::span<const double> w;
    int n;
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    void walk(int e, double partial, int len) {
      partial *= w[static_cast<std::size_t>(e)];
      if (len == n) {
        add(partial);
        return;
      }
      for (int f : g.successors(e)) walk(f, partial, len + 1);
    }
  };

  double sum = 0.0, comp = 0.0;
  for (int e = 0; e < m; ++e) {
    Walker walker{g, w, n};
    walker.walk(e, 1.0, 1);
    const double y = walker.sum - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  if (sum <= 0.0) return -kInf;
  return (std::log(sum) + static_cast<double>(n) * fmax) / static_cast<double>(n);
}

TailSystem TailSystem::from(const PerturbedFamily& fam) {
  if (fam.base.graph.vertex_count() != 1)
    throw Error(Error::Kind::domain, "tail truncation requires a single-vertex system");
  TailSystem ts;
  for (const auto& m : fam.base.maps) ts.explicit_norms.push_back(op_norm(m.linear));
  ts.tail = fam.tail;
  return ts;
}

namespace {

// Partial sums of tail norms at a fixed parameter s; the direct prefix for
// the polynomial rule is summed once and reused across truncation levels.
class TailEvaluator {
 public:
  TailEvaluator(const TailSystem& ts, double s) : ts_(ts), s_(s) {
    for (double norm : ts.explicit_norms) {
      if (norm <= 0)
        throw Error(Error::Kind::domain, "explicit edge norms must be positive");
      explicit_sum_ += std::pow(norm, s);
    }
  }

  // Pressure of the subsystem keeping the first 2^log2_size tail edges:
  // log(sum of explicit norms^s + tail partial sum). +infinity on overflow.
  double pressure_at(double log2_size) {
    const double lt = log_tail_sum(log2_size);
    if (lt == kInf) return kInf;
    if (lt == -kInf) return explicit_sum_ > 0 ? std::log(explicit_sum_) : -kInf;
    if (explicit_sum_ == 0.0) return lt;
    const double la = std::log(explicit_sum_);
    const double hiv = std::max(la, lt), lov = std::min(la, lt);
    return hiv + std::log1p(std::exp(lov - hiv));
  }

 private:
  // log of sum_{k=1..L} norm(k)^s with L = 2^log2_size, via the closed form
  // of the rule. Polynomial sums are split into a direct prefix of at most
  // 2^16 terms plus a midpoint-rule integral whose absolute error is
  // O(prefix^-(q+1)); geometric sums are exact.
  double log_tail_sum(double log2_size) {
    if (!ts_.tail || ts_.tail->scale <= 0.0) return -kInf;
    const TailRule& rule = *ts_.tail;
    const double ln2 = std::numbers::ln2;
    const double logc = std::log(rule.scale);

    if (rule.kind == TailRule::Kind::geometric) {
      // sum (c q^k)^s = c^s q^s (1 - q^{sL}) / (1 - q^s)
      if (s_ == 0.0) return log2_size * ln2;  // L terms of 1
      const double lq = std::log(rule.rate) * s_;
      const double lL = log2_size * ln2;
      const double tail_exponent = lq * std::exp(std::min(700.0, lL));
      const double log_one_minus =
          tail_exponent > -0.5 ? std::log(-std::expm1(std::max(-700.0, tail_exponent)))
                               : std::log1p(-std::exp(std::max(-700.0, tail_exponent)));
      return s_ * logc + lq + log_one_minus - std::log1p(-std::exp(lq));
    }

    // polynomial: sum_{k<=L} (c k^-p)^s = c^s H_L(q) with q = p*s
    const double q = rule.rate * s_;
    const double lnL = log2_size * ln2;
    if (lnL <= kPrefixLog + 1e-12) {
      const double size = std::floor(std::exp(lnL) + 0.5);
      return s_ * logc + std::log(harmonic_prefix(q, size));
    }
    const double direct = harmonic_prefix(q, kPrefixSize);
    double rest;
    if (std::abs(q - 1.0) < 1e-12) {
      rest = lnL - std::log(kPrefixSize + 0.5);
    } else {
      const double at_prefix = (1.0 - q) * std::log(kPrefixSize + 0.5);
      const double at_top = (1.0 - q) * lnL;
      if (at_top > 700.0) return kInf;
      rest = (std::exp(at_top) - std::exp(at_prefix)) / (1.0 - q);
    }
    const double total = direct + rest;
    if (!std::isfinite(total) || total > 1e290) return kInf;
    return s_ * logc + std::log(total);
  }

  double harmonic_prefix(double q, double size) {
    if (size == kPrefixSize && have_prefix_) return prefix_sum_;
    double sum = 0.0, comp = 0.0;
    for (double k = 1; k <= size; ++k) {
      const double term = std::pow(k, -q);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    if (size == kPrefixSize) {
      prefix_sum_ = sum;
      have_prefix_ = true;
    }
    return sum;
  }

  static constexpr double kPrefixSize = 65536.0;  // 2^16
  static constexpr double kPrefixLog = 16.0 * std::numbers::ln2;

  const TailSystem& ts_;
  double s_;
  double explicit_sum_ = 0.0;
  double prefix_sum_ = 0.0;
  bool have_prefix_ = false;
};

}  // namespace

TruncationResult pressure_truncated(const TailSystem& ts, double s,
                                    std::span<const double> log2_sizes, double tol,
                                    double ceiling) {
  if (s < 0) throw Error(Error::Kind::input, "parameter s must be >= 0");
  TruncationResult res;
  TailEvaluator eval(ts, s);
  double prev = -kInf;
  for (double lvl : log2_sizes) {
    const double p = eval.pressure_at(lvl);
    if (p == kInf || p > ceiling) {
      res.verdict = TruncationVerdict::divergent;
      res.sequence.push_back({lvl, p == kInf ? ceiling : p});
      return res;
    }
    res.sequence.push_back({lvl, p});
    if (prev != -kInf && std::abs(p - prev) < tol) {
      res.verdict = TruncationVerdict::converged;
      return res;
    }
    prev = p;
  }
  if (!ts.tail || ts.tail->scale == 0.0)
    res.verdict = TruncationVerdict::converged;  // nothing grows
  return res;
}

TruncationResult pressure_truncated_auto(const TailSystem& ts, double s, double tol,
                                         double ceiling) {
  std::vector<double> levels;
  double lvl = 4.0;
  for (int i = 0; i < 64; ++i) {
    levels.push_back(lvl);
    lvl *= 2.0;
  }
  return pressure_truncated(ts, s, levels, tol, ceiling);
}

double finiteness_threshold(const TailSystem& ts, double tol) {
  if (tol <= 0) throw Error(Error::Kind::input, "tolerance must be positive");
  if (!ts.tail || ts.tail->scale == 0.0) return 0.0;

  const auto divergent = [&](double s) {
    return pressure_truncated_auto(ts, s).verdict != TruncationVerdict::converged;
  };

  double hi = 1.0;
  int guard = 0;
  while (divergent(hi)) {
    hi *= 2.0;
    if (++guard > 64)
      throw Error(Error::Kind::numeric, "pressure stays infinite for all probed s");
  }
  if (!divergent(0.0)) return 0.0;

  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (divergent(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gifs

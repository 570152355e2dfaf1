#include "gifsdim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gifsdim/parallel.hpp"
#include "gifsdim/rng.hpp"
#include "gifsdim/stats.hpp"

namespace gifs {

PointCloud chaos_game(const AffineSystem& sys, std::size_t n_points, int burn_in,
                      std::uint64_t seed, int chains, int workers) {
  if (n_points == 0) throw Error(Error::Kind::input, "need at least one point");
  if (burn_in < 0) throw Error(Error::Kind::input, "burn_in must be >= 0");
  if (chains < 1) throw Error(Error::Kind::input, "need at least one chain");

  for (int v = 0; v < sys.graph.vertex_count(); ++v)
    if (sys.graph.edges_into(v).empty())
      throw Error(Error::Kind::domain,
                  "not right-resolving: vertex '" + sys.graph.vertex_name(v) +
                      "' has no admissible continuation");

  PointCloud cloud;
  cloud.dim = sys.dim;
  cloud.count = n_points;
  cloud.seed = seed;
  cloud.chains = chains;
  cloud.coords.assign(n_points * static_cast<std::size_t>(sys.dim), 0.0);
  cloud.vertex.assign(n_points, 0);

  const std::size_t quota =
      (n_points + static_cast<std::size_t>(chains) - 1) / static_cast<std::size_t>(chains);

  parallel_for(static_cast<std::size_t>(chains), workers, [&](std::size_t chain) {
    const std::size_t begin = chain * quota;
    if (begin >= n_points) return;
    const std::size_t end = std::min(n_points, begin + quota);

    CounterRng rng(seed, chain);
    int v = static_cast<int>(chain % static_cast<std::size_t>(sys.graph.vertex_count()));
    Vec x = sys.seed[static_cast<std::size_t>(v)].center();

    const auto step = [&] {
      const auto options = sys.graph.edges_into(v);
      const int e = options[static_cast<std::size_t>(
          rng.next_below(static_cast<std::uint64_t>(options.size())))];
      x = sys.map_of(e)(x);
      v = sys.graph.initial(e);
    };

    for (int i = 0; i < burn_in; ++i) step();
    for (std::size_t i = begin; i < end; ++i) {
      step();
      for (int d = 0; d < sys.dim; ++d)
        cloud.coords[i * static_cast<std::size_t>(sys.dim) + static_cast<std::size_t>(d)] =
            x[d];
      cloud.vertex[i] = v;
    }
  });

  return cloud;
}

Vec coding_point(const AffineSystem& sys, std::span<const int> word, int reps) {
  if (word.empty()) throw Error(Error::Kind::input, "word must be non-empty");
  if (reps < 1) throw Error(Error::Kind::input, "reps must be >= 1");
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (!sys.graph.admissible(word[i], word[i + 1]))
      throw Error(Error::Kind::input, "word is not admissible");
  const bool cyclic = sys.graph.admissible(word.back(), word.front());
  if (reps > 1 && !cyclic)
    throw Error(Error::Kind::input, "only cyclic words can be repeated");

  const int entry = sys.graph.terminal(word.back());
  Vec x = sys.seed[static_cast<std::size_t>(entry)].center();
  for (int r = 0; r < reps; ++r)
    for (std::size_t i = word.size(); i-- > 0;) x = sys.map_of(word[i])(x);
  return x;
}

Box seeds_bbox(const AffineSystem& sys) {
  Box out = sys.seed.at(0);
  for (const Box& b : sys.seed)
    for (int i = 0; i < out.dim(); ++i) {
      out.low[i] = std::min(out.low[i], b.low[i]);
      out.high[i] = std::max(out.high[i], b.high[i]);
    }
  return out;
}

std::vector<double> dyadic_scales(const Box& box, int levels) {
  if (levels < 1) throw Error(Error::Kind::input, "need at least one scale");
  double extent = 0;
  for (int i = 0; i < box.dim(); ++i) extent = std::max(extent, box.high[i] - box.low[i]);
  std::vector<double> scales;
  double s = extent;
  for (int j = 0; j < levels; ++j) {
    s *= 0.5;
    scales.push_back(s);
  }
  return scales;
}

namespace {

struct CellHash {
  std::size_t operator()(const std::array<std::int32_t, kMaxDim>& cell) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::int32_t c : cell) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9E3779B97F4A7C15ULL +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

BoxCountReport box_count_dim(const PointCloud& cloud, const Box& anchor,
                             std::span<const double> scales) {
  if (cloud.count < 10000)
    throw Error(Error::Kind::input, "box counting needs at least 1e4 points");
  if (scales.size() < 4) throw Error(Error::Kind::input, "box counting needs >= 4 scales");
  for (std::size_t i = 0; i + 1 < scales.size(); ++i)
    if (!(scales[i] > scales[i + 1]) || !(scales[i + 1] > 0))
      throw Error(Error::Kind::input, "scales must be decreasing and positive");
  if (!(scales.front() / scales.back() >= 4.0))
    throw Error(Error::Kind::input, "scales must span at least two octaves");

  BoxCountReport rep;
  rep.scales.assign(scales.begin(), scales.end());
  for (double scale : scales) {
    std::unordered_set<std::array<std::int32_t, kMaxDim>, CellHash> cells;
    cells.reserve(cloud.count / 4);
    std::array<std::int32_t, kMaxDim> cell{};
    for (std::size_t p = 0; p < cloud.count; ++p) {
      for (int d = 0; d < cloud.dim; ++d) {
        const double rel =
            (cloud.coords[p * static_cast<std::size_t>(cloud.dim) +
                          static_cast<std::size_t>(d)] -
             anchor.low[d]) /
            scale;
        cell[static_cast<std::size_t>(d)] = static_cast<std::int32_t>(std::floor(rel));
      }
      cells.insert(cell);
    }
    rep.counts.push_back(cells.size());
  }

  bool all_single = true;
  for (std::uint64_t c : rep.counts)
    if (c > 1) all_single = false;
  if (all_single) {
    rep.degenerate = true;
    rep.slope = 0.0;
    return rep;
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.scales.size(); ++i) {
    lx.push_back(std::log(1.0 / rep.scales[i]));
    ly.push_back(std::log(static_cast<double>(rep.counts[i])));
  }
  const LineFit fit = least_squares_line(lx, ly);
  rep.slope = fit.slope;
  rep.slope_stderr = fit.slope_stderr;
  return rep;
}

CodingPerturbReport coding_perturbation_check(const PerturbedFamily& fam,
                                              std::span<const double> grid,
                                              std::span<const std::vector<int>> words) {
  if (words.empty()) throw Error(Error::Kind::input, "need at least one word");
  CodingPerturbReport rep;
  std::vector<Vec> base_points;
  for (const auto& w : words) base_points.push_back(coding_point(fam.base, w, 1));

  for (double eps : grid) {
    if (!(eps > 0)) throw Error(Error::Kind::input, "grid entries must be positive");
    const AffineSystem sys = fam.at(eps);
    double dev = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i)
      dev = std::max(dev, (coding_point(sys, words[i], 1) - base_points[i]).norm());
    rep.eps.push_back(eps);
    rep.max_deviation.push_back(dev);
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    if (rep.max_deviation[i] > 1e-15) {
      lx.push_back(std::log(rep.eps[i]));
      ly.push_back(std::log(rep.max_deviation[i]));
    }
  if (lx.size() < 2)
    rep.all_zero = true;
  else
    rep.slope = least_squares_line(lx, ly).slope;
  return rep;
}

std::vector<std::vector<int>> sample_words(const Graph& g, int count, int length,
                                           std::uint64_t seed) {
  if (count < 1 || length < 1)
    throw Error(Error::Kind::input, "need count >= 1 and length >= 1");
  std::vector<std::vector<int>> words;
  for (int i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i) + 0x57EDULL);
    std::vector<int> w;
    int e = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.edge_count())));
    w.push_back(e);
    while (static_cast<int>(w.size()) < length) {
      const auto succ = g.successors(w.back());
      if (succ.empty()) break;
      w.push_back(succ[static_cast<std::size_t>(
          rng.next_below(static_cast<std::uint64_t>(succ.size())))]);
    }
    if (static_cast<int>(w.size()) == length) words.push_back(std::move(w));
  }
  if (words.empty())
    throw Error(Error::Kind::domain, "no admissible words of the requested length");
  return words;
}

}  // namespace gifs

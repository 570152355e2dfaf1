#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gifsdim/rng.hpp"
#include "gifsdim/spec_io.hpp"
#include "gifsdim/system.hpp"

namespace testutil {

// Full shift: one vertex, m self-loop edges named e0..e{m-1}.
inline gifs::Graph full_shift(int m) {
  gifs::Graph g;
  const int v = g.add_vertex("v");
  for (int i = 0; i < m; ++i) g.add_edge("e" + std::to_string(i), v, v);
  return g;
}

// Independent word-count oracle: 1^T A^(n-1) 1 by dense matrix powering.
inline std::uint64_t word_count_by_matrix_power(const gifs::Graph& g, int n) {
  const int m = g.edge_count();
  std::vector<std::vector<std::uint64_t>> a(
      static_cast<std::size_t>(m), std::vector<std::uint64_t>(static_cast<std::size_t>(m), 0));
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f)
      if (g.admissible(e, f)) a[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = 1;

  std::vector<std::vector<std::uint64_t>> acc(
      static_cast<std::size_t>(m), std::vector<std::uint64_t>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i) acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

  for (int p = 0; p < n - 1; ++p) {
    std::vector<std::vector<std::uint64_t>> next(
        static_cast<std::size_t>(m),
        std::vector<std::uint64_t>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) {
        if (acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] == 0) continue;
        for (int j = 0; j < m; ++j)
          next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
              a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      }
    acc.swap(next);
  }
  std::uint64_t total = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      total += acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return total;
}

// Random graph with every vertex having in- and out-edges (so enumeration
// and walks cannot die). Deterministic in (seed).
inline gifs::Graph random_graph(std::uint64_t seed, int max_vertices = 3, int max_edges = 6) {
  gifs::CounterRng rng(seed, 17);
  const int nv = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_vertices)));
  gifs::Graph g;
  for (int v = 0; v < nv; ++v) g.add_vertex("v" + std::to_string(v));
  int id = 0;
  // a spanning cycle keeps the graph strongly connected
  for (int v = 0; v < nv; ++v)
    g.add_edge("e" + std::to_string(id++), v, (v + 1) % nv);
  const int extra = static_cast<int>(
      rng.next_below(static_cast<std::uint64_t>(std::max(1, max_edges - nv + 1))));
  for (int i = 0; i < extra; ++i)
    g.add_edge("e" + std::to_string(id++),
               static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nv))),
               static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nv))));
  return g;
}

inline gifs::Matrix random_invertible(gifs::CounterRng& rng, int dim) {
  while (true) {
    gifs::Matrix m(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m.at(r, c) = 2.0 * rng.next_double() - 1.0;
    if (std::abs(gifs::det(m)) > 0.05) return m;
  }
}

inline const char* kSierpinskiSpec =
    "gifs 1 dim=2\n"
    "vertex v J=0,0|1,1 O=-0.1,-0.1|1.1,1.1\n"
    "edge a v v\n"
    "edge b v v\n"
    "edge c v v\n"
    "map a k=0 M=0.5,0,0,0.5 a=0,0\n"
    "map b k=0 M=0.5,0,0,0.5 a=0.5,0\n"
    "map c k=0 M=0.5,0,0,0.5 a=0,0.5\n";

inline const char* kTwoScaleSpec =
    "gifs 1 dim=2\n"
    "vertex v J=0,0|1,1 O=-0.1,-0.1|1.1,1.1\n"
    "edge a v v\n"
    "edge b v v\n"
    "map a k=0 M=0.5,0,0,0.25 a=0,0\n"
    "map b k=0 M=0.5,0,0,0.25 a=0.5,0.75\n";

inline const char* kTwoVertexSpec =
    "gifs 1 dim=1\n"
    "vertex u J=0|1 O=-0.2|1.2\n"
    "vertex w J=2|3 O=1.8|3.2\n"
    "edge a u w\n"
    "edge b w u\n"
    "map a k=0 M=0.4 a=-0.8\n"    // maps J_w = [2,3] to [0, 0.4]
    "map b k=0 M=0.3 a=2.5\n";    // maps J_u = [0,1] to [2.5, 2.8]

inline const char* kTailPolySpec =
    "gifs 1 dim=1\n"
    "vertex v J=0|1 O=-0.1|1.1\n"
    "edge a v v\n"
    "map a k=0 M=0.5 a=0\n"
    "tail polynomial 0.9 2.0\n";

// One-map translation family: T(eps, x) = x/2 + 0.25 eps.
inline const char* kTranslationFamilySpec =
    "gifs 1 dim=1 order=1\n"
    "vertex v J=0|1 O=-0.3|1.3\n"
    "edge a v v\n"
    "map a k=0 M=0.5 a=0\n"
    "map a k=1 M=0 a=0.25\n";

// Stretch family with first-order conformality defect: diag(1/2 + eps, 1/2).
inline const char* kLinearStretchFamilySpec =
    "gifs 1 dim=2 order=1\n"
    "vertex v J=0,0|1,1 O=-0.1,-0.1|1.1,1.1\n"
    "edge a v v\n"
    "map a k=0 M=0.5,0,0,0.5 a=0,0\n"
    "map a k=1 M=1,0,0,0 a=0,0\n";

// Conformal family of two maps with ratio r(eps) = 1/2 + eps/10 on the line.
inline const char* kConformalRatioFamilySpec =
    "gifs 1 dim=1 order=1\n"
    "vertex v J=0|1 O=-0.2|1.2\n"
    "edge a v v\n"
    "edge b v v\n"
    "map a k=0 M=0.5 a=0\n"
    "map a k=1 M=0.1 a=0\n"
    "map b k=0 M=0.5 a=0.5\n"
    "map b k=1 M=0.1 a=-0.1\n";  // keeps the image right edge at 1

inline gifs::SpecFile parse(const char* text) { return gifs::parse_spec(text, "<test>"); }

}  // namespace testutil

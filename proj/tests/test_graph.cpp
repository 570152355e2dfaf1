#include <set>
#include <vector>

#include "doctest.h"
#include "gifsdim/graph.hpp"
#include "test_helpers.hpp"

using namespace gifs;

TEST_CASE("admissibility follows terminal-initial matching") {
  const Graph full = testutil::full_shift(3);
  for (int e = 0; e < 3; ++e)
    for (int f = 0; f < 3; ++f) CHECK(full.admissible(e, f));

  Graph g;
  const int a = g.add_vertex("a");
  const int b = g.add_vertex("b");
  const int e1 = g.add_edge("e1", a, b);
  const int e2 = g.add_edge("e2", a, b);
  const int e3 = g.add_edge("e3", b, a);
  CHECK_FALSE(g.admissible(e1, e2));  // t(e1)=b, i(e2)=a
  CHECK(g.admissible(e1, e3));
  CHECK(g.admissible(e3, e2));
  CHECK_THROWS_AS((void)g.admissible(0, 99), Error);
}

TEST_CASE("word enumeration counts and order") {
  const Graph full = testutil::full_shift(3);
  std::vector<std::vector<int>> words;
  for_each_word(full, 2, [&](std::span<const int> w) {
    words.emplace_back(w.begin(), w.end());
  });
  CHECK(words.size() == 9);
  // lexicographic, no duplicates
  for (std::size_t i = 0; i + 1 < words.size(); ++i) CHECK(words[i] < words[i + 1]);

  Graph cyc;
  const int u = cyc.add_vertex("u");
  const int v = cyc.add_vertex("v");
  cyc.add_edge("a", u, v);
  cyc.add_edge("b", v, u);
  CHECK(count_words(cyc, 3) == 2);  // the two alternations

  Graph dead;
  const int x = dead.add_vertex("x");
  const int y = dead.add_vertex("y");
  dead.add_edge("a", x, y);
  dead.add_edge("b", x, y);
  std::size_t seen = 0;
  for_each_word(dead, 2, [&](std::span<const int>) { ++seen; });
  CHECK(seen == 0);
}

TEST_CASE("enumeration count equals matrix powering on random graphs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = testutil::random_graph(seed);
    for (int n = 1; n <= 8; ++n) {
      std::uint64_t streamed = 0;
      for_each_word(g, n, [&](std::span<const int> w) {
        ++streamed;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
          REQUIRE(g.admissible(w[i], w[i + 1]));
      });
      CHECK(streamed == testutil::word_count_by_matrix_power(g, n));
      CHECK(streamed == count_words(g, n));
    }
  }
}

TEST_CASE("finite irreducibility on the full shift uses no middle word") {
  const Graph full = testutil::full_shift(4);
  const IrreducibilityReport rep = finitely_irreducible(full, 3);
  CHECK(rep.irreducible);
  for (const auto& w : rep.witnesses) CHECK(w.word.empty());
  CHECK(rep.witness_words().empty());
}

TEST_CASE("two disjoint components are not finitely irreducible") {
  Graph g;
  const int a = g.add_vertex("a");
  const int b = g.add_vertex("b");
  g.add_edge("e1", a, a);
  g.add_edge("e2", b, b);
  const IrreducibilityReport rep = finitely_irreducible(g, 5);
  CHECK_FALSE(rep.irreducible);
  CHECK_FALSE(rep.failing.empty());
}

TEST_CASE("two-cycle witness set is the two edges") {
  Graph g;
  const int u = g.add_vertex("u");
  const int v = g.add_vertex("v");
  const int a = g.add_edge("a", u, v);
  const int b = g.add_edge("b", v, u);
  const IrreducibilityReport rep = finitely_irreducible(g, 4);
  CHECK(rep.irreducible);
  const auto words = rep.witness_words();
  REQUIRE(words.size() == 2);
  CHECK(words[0] == std::vector<int>{a});
  CHECK(words[1] == std::vector<int>{b});
}

TEST_CASE("irreducibility verdict is monotone in the length cap") {
  for (std::uint64_t seed = 30; seed < 50; ++seed) {
    const Graph g = testutil::random_graph(seed);
    bool prev = false;
    for (int cap = 1; cap <= 6; ++cap) {
      const bool now = finitely_irreducible(g, cap).irreducible;
      if (prev) CHECK(now);
      prev = now;
    }
  }
}

TEST_CASE("graph rejects duplicate names and unknown ids") {
  Graph g;
  g.add_vertex("v");
  CHECK_THROWS_AS((void)g.add_vertex("v"), Error);
  CHECK_THROWS_AS((void)g.add_edge("e", 0, 7), Error);
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gifs {

// Directed multigraph with named vertices and edges. A pair (e, e') is
// admissible when terminal(e) == initial(e'), so admissible edge sequences
// are exactly the paths of the graph. Immutable once populated.
class Graph {
 public:
  int add_vertex(std::string name);
  int add_edge(std::string name, int from, int to);

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edge_from_.size()); }

  int initial(int e) const;
  int terminal(int e) const;
  const std::string& vertex_name(int v) const;
  const std::string& edge_name(int e) const;
  std::optional<int> find_vertex(std::string_view name) const;
  std::optional<int> find_edge(std::string_view name) const;

  bool admissible(int e, int ep) const;
  // Edges f with admissible(e, f), in increasing id order.
  std::span<const int> successors(int e) const;
  // Edges leaving / entering a vertex, in increasing id order.
  std::span<const int> edges_from(int v) const;
  std::span<const int> edges_into(int v) const;

 private:
  void check_vertex(int v) const;
  void check_edge(int e) const;

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<int> edge_from_;
  std::vector<int> edge_to_;
  std::vector<std::vector<int>> out_edges_;  // by initial vertex
  std::vector<std::vector<int>> in_edges_;   // by terminal vertex
};

// Visits every admissible word of length n exactly once, in lexicographic
// edge order. Words are streamed; the span is only valid during the call.
void for_each_word(const Graph& g, int n,
                   const std::function<void(std::span<const int>)>& visit);

std::uint64_t count_words(const Graph& g, int n);

struct PairWitness {
  int e = 0;
  int ep = 0;
  std::vector<int> word;  // shortest w with e w e' admissible; may be empty
};

struct IrreducibilityReport {
  bool irreducible = false;
  int max_len = 0;
  std::vector<PairWitness> witnesses;
  std::vector<std::pair<int, int>> failing;
  // Deduplicated non-empty witness words.
  std::vector<std::vector<int>> witness_words() const;
};

// Checks that every ordered edge pair (e, e') can be joined into a path
// e w e' by some word of length <= max_len (length 0 when the pair is
// directly admissible). Witness words are shortest; ties follow the search
// order, which explores edges by increasing id.
IrreducibilityReport finitely_irreducible(const Graph& g, int max_len);

}  // namespace gifs

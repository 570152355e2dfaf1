#include "gifsdim/graph.hpp"

#include <algorithm>
#include <queue>

#include "gifsdim/linalg.hpp"

namespace gifs {

int Graph::add_vertex(std::string name) {
  if (find_vertex(name))
    throw Error(Error::Kind::input, "duplicate vertex name '" + name + "'");
  vertex_names_.push_back(std::move(name));
  out_edges_.emplace_back();
  in_edges_.emplace_back();
  return vertex_count() - 1;
}

int Graph::add_edge(std::string name, int from, int to) {
  check_vertex(from);
  check_vertex(to);
  if (find_edge(name))
    throw Error(Error::Kind::input, "duplicate edge name '" + name + "'");
  edge_names_.push_back(std::move(name));
  edge_from_.push_back(from);
  edge_to_.push_back(to);
  const int id = edge_count() - 1;
  out_edges_[static_cast<std::size_t>(from)].push_back(id);
  in_edges_[static_cast<std::size_t>(to)].push_back(id);
  return id;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(Error::Kind::input, "unknown vertex id " + std::to_string(v));
}

void Graph::check_edge(int e) const {
  if (e < 0 || e >= edge_count())
    throw Error(Error::Kind::input, "unknown edge id " + std::to_string(e));
}

int Graph::initial(int e) const {
  check_edge(e);
  return edge_from_[static_cast<std::size_t>(e)];
}

int Graph::terminal(int e) const {
  check_edge(e);
  return edge_to_[static_cast<std::size_t>(e)];
}

const std::string& Graph::vertex_name(int v) const {
  check_vertex(v);
  return vertex_names_[static_cast<std::size_t>(v)];
}

const std::string& Graph::edge_name(int e) const {
  check_edge(e);
  return edge_names_[static_cast<std::size_t>(e)];
}

std::optional<int> Graph::find_vertex(std::string_view name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_names_[static_cast<std::size_t>(v)] == name) return v;
  return std::nullopt;
}

std::optional<int> Graph::find_edge(std::string_view name) const {
  for (int e = 0; e < edge_count(); ++e)
    if (edge_names_[static_cast<std::size_t>(e)] == name) return e;
  return std::nullopt;
}

bool Graph::admissible(int e, int ep) const {
  check_edge(e);
  check_edge(ep);
  return terminal(e) == initial(ep);
}

std::span<const int> Graph::successors(int e) const {
  check_edge(e);
  return edges_from(terminal(e));
}

std::span<const int> Graph::edges_from(int v) const {
  check_vertex(v);
  return out_edges_[static_cast<std::size_t>(v)];
}

std::span<const int> Graph::edges_into(int v) const {
  check_vertex(v);
  return in_edges_[static_cast<std::size_t>(v)];
}

namespace {

void visit_words(const Graph& g, int n, std::vector<int>& stack,
                 const std::function<void(std::span<const int>)>& visit) {
  if (static_cast<int>(stack.size()) == n) {
    visit(stack);
    return;
  }
  const auto next = stack.empty() ? std::span<const int>() : g.successors(stack.back());
  if (stack.empty()) {
    for (int e = 0; e < g.edge_count(); ++e) {
      stack.push_back(e);
      visit_words(g, n, stack, visit);
      stack.pop_back();
    }
  } else {
    for (int e : next) {
      stack.push_back(e);
      visit_words(g, n, stack, visit);
      stack.pop_back();
    }
  }
}

}  // namespace

void for_each_word(const Graph& g, int n,
                   const std::function<void(std::span<const int>)>& visit) {
  if (n < 1) throw Error(Error::Kind::input, "word length must be >= 1");
  std::vector<int> stack;
  stack.reserve(static_cast<std::size_t>(n));
  visit_words(g, n, stack, visit);
}

std::uint64_t count_words(const Graph& g, int n) {
  if (n < 1) throw Error(Error::Kind::input, "word length must be >= 1");
  // counts[e] = number of admissible words of length k starting with e
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(g.edge_count()), 1);
  for (int k = 1; k < n; ++k) {
    std::vector<std::uint64_t> next(counts.size(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
      std::uint64_t acc = 0;
      for (int f : g.successors(e)) acc += counts[static_cast<std::size_t>(f)];
      next[static_cast<std::size_t>(e)] = acc;
    }
    counts.swap(next);
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return total;
}

IrreducibilityReport finitely_irreducible(const Graph& g, int max_len) {
  if (max_len < 1) throw Error(Error::Kind::input, "max_len must be >= 1");
  const int nv = g.vertex_count();

  // BFS over vertices from every source, exploring edges in id order.
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(nv),
                                     std::vector<int>(static_cast<std::size_t>(nv), -1));
  std::vector<std::vector<int>> via(static_cast<std::size_t>(nv),
                                    std::vector<int>(static_cast<std::size_t>(nv), -1));
  for (int s = 0; s < nv; ++s) {
    auto& d = dist[static_cast<std::size_t>(s)];
    auto& p = via[static_cast<std::size_t>(s)];
    std::queue<int> q;
    d[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e : g.edges_from(u)) {
        const int w = g.terminal(e);
        if (d[static_cast<std::size_t>(w)] < 0) {
          d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(u)] + 1;
          p[static_cast<std::size_t>(w)] = e;
          q.push(w);
        }
      }
    }
  }

  auto path_word = [&](int s, int t) {
    std::vector<int> word;
    int cur = t;
    while (cur != s) {
      const int e = via[static_cast<std::size_t>(s)][static_cast<std::size_t>(cur)];
      word.push_back(e);
      cur = g.initial(e);
    }
    std::reverse(word.begin(), word.end());
    return word;
  };

  IrreducibilityReport rep;
  rep.max_len = max_len;
  rep.irreducible = true;
  for (int e = 0; e < g.edge_count(); ++e)
    for (int ep = 0; ep < g.edge_count(); ++ep) {
      const int s = g.terminal(e);
      const int t = g.initial(ep);
      const int d = dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
      if (d < 0 || d > max_len) {
        rep.irreducible = false;
        rep.failing.emplace_back(e, ep);
      } else {
        rep.witnesses.push_back({e, ep, path_word(s, t)});
      }
    }
  return rep;
}

std::vector<std::vector<int>> IrreducibilityReport::witness_words() const {
  std::vector<std::vector<int>> words;
  for (const auto& w : witnesses)
    if (!w.word.empty()) words.push_back(w.word);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace gifs

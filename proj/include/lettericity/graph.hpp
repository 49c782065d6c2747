// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lettericity/errors.hpp"

namespace lettericity {

using VertexId = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

inline bool is_token(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace detail

/// Simple undirected graph over named vertices. Vertex ids are dense,
/// 0..n-1, in declaration order. Immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Edgeless graph with the given labels.
  explicit Graph(std::vector<std::string> labels) : Graph(std::move(labels), {}) {}

  /// Throws InputError on empty/whitespace labels, duplicate labels,
  /// self-loops, out-of-range endpoints or duplicate edges.
  Graph(std::vector<std::string> labels, std::span<const Edge> edges)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    index_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
      if (!detail::is_token(labels_[v]))
        throw InputError("vertex label must be a non-empty whitespace-free token: '" +
                         labels_[v] + "'");
      if (!index_.emplace(labels_[v], v).second)
        throw InputError("duplicate vertex label '" + labels_[v] + "'");
    }
    adjacency_.assign(n * n, 0);
    neighbors_.resize(n);
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
      if (e.u == e.v) throw InputError("self-loop on vertex '" + labels_[e.u] + "'");
      if (adjacency_[e.u * n + e.v])
        throw InputError("duplicate edge {" + labels_[e.u] + "," + labels_[e.v] + "}");
      adjacency_[e.u * n + e.v] = adjacency_[e.v * n + e.u] = 1;
      neighbors_[e.u].push_back(e.v);
      neighbors_[e.v].push_back(e.u);
      ++edge_count_;
    }
    for (auto& list : neighbors_) std::sort(list.begin(), list.end());
  }

  /// Graph on vertices labelled "1".."n".
  static Graph numbered(std::size_t n, std::span<const Edge> edges = {}) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return Graph(std::move(labels), edges);
  }

  /// Build from labelled endpoints. Unknown labels are input errors.
  static Graph from_labels(std::vector<std::string> labels,
                           std::span<const std::pair<std::string, std::string>> edges) {
    Graph shell(labels);
    std::vector<Edge> ids;
    ids.reserve(edges.size());
    for (const auto& [a, b] : edges) ids.emplace_back(shell.id(a), shell.id(b));
    return Graph(std::move(labels), ids);
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t edge_count() const { return edge_count_; }

  bool adjacent(VertexId u, VertexId v) const { return adjacency_[u * size() + v] != 0; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return neighbors_[v]; }
  std::size_t degree(VertexId v) const { return neighbors_[v].size(); }

  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<VertexId> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId id(const std::string& label) const {
    if (auto v = find(label)) return *v;
    throw InputError("unknown vertex '" + label + "'");
  }

  /// All edges, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < size(); ++u)
      for (VertexId v : neighbors_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::size_t edge_count_ = 0;
};

namespace detail {

inline void check_vertex(const Graph& g, VertexId v) {
  if (v >= g.size()) throw InputError("unknown vertex id " + std::to_string(v));
}

}  // namespace detail

/// N(u)\{v} == N(v)\{u}. Holds exactly for true and false twins.
inline bool are_generalized_twins(const Graph& g, VertexId u, VertexId v) {
  detail::check_vertex(g, u);
  detail::check_vertex(g, v);
  if (u == v) throw InputError("generalized twin test needs two distinct vertices");
  for (VertexId x = 0; x < g.size(); ++x) {
    if (x == u || x == v) continue;
    if (g.adjacent(u, x) != g.adjacent(v, x)) return false;
  }
  return true;
}

/// Subgraph on `keep` (in ascending id order) containing the edges for which
/// `keep_edge(u, v)` holds, with u, v ids of the original graph.
template <class EdgePredicate>
  requires std::predicate<EdgePredicate&, VertexId, VertexId>
Graph filtered_subgraph(const Graph& g, std::span<const VertexId> keep,
                        EdgePredicate keep_edge) {
  std::vector<VertexId> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("vertex listed twice in subset");
  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  for (VertexId v : sorted) {
    detail::check_vertex(g, v);
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      if (g.adjacent(sorted[i], sorted[j]) && keep_edge(sorted[i], sorted[j]))
        edges.emplace_back(i, j);
  return Graph(std::move(labels), edges);
}

/// G[S].
inline Graph induced_subgraph(const Graph& g, std::span<const VertexId> subset) {
  return filtered_subgraph(g, subset, [](VertexId, VertexId) { return true; });
}

/// E(A, B) for disjoint A and B.
inline std::vector<Edge> bipartite_edges(const Graph& g, std::span<const VertexId> a,
                                         std::span<const VertexId> b) {
  std::vector<std::uint8_t> side(g.size(), 0);
  for (VertexId v : a) {
    detail::check_vertex(g, v);
    side[v] = 1;
  }
  for (VertexId v : b) {
    detail::check_vertex(g, v);
    if (side[v] == 1) throw InputError("vertex sets of E(A,B) overlap at '" + g.label(v) + "'");
    side[v] = 2;
  }
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (side[e.u] != 0 && side[e.v] != 0 && side[e.u] != side[e.v]) out.push_back(e);
  return out;
}

/// Letters are any copyable, totally ordered tokens. The CLI uses strings,
/// the oracles use small integers.
template <class T>
concept LetterToken = std::copyable<T> && std::totally_ordered<T>;

/// Ordered set of distinct letters, kept in declaration order.
template <LetterToken Letter>
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (std::size_t i = 0; i < letters_.size(); ++i)
      if (!index_.emplace(letters_[i], i).second)
        throw InputError("duplicate letter in alphabet");
  }

  Alphabet(std::initializer_list<Letter> letters) : Alphabet(std::vector<Letter>(letters)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool contains(const Letter& a) const { return index_.contains(a); }

  std::optional<std::size_t> find(const Letter& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const Letter& a) const {
    if (auto i = find(a)) return *i;
    throw InputError("letter not in alphabet");
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<Letter> letters_;
  std::map<Letter, std::size_t> index_;
};

/// Total vertex -> letter assignment together with its alphabet.
template <LetterToken Letter>
class Coloring {
 public:
  Coloring() = default;

  /// Alphabet derived from the assignment in first-occurrence order.
  explicit Coloring(const std::vector<Letter>& assignment) {
    std::vector<Letter> seen;
    std::map<Letter, std::size_t> idx;
    for (const Letter& a : assignment)
      if (idx.emplace(a, seen.size()).second) seen.push_back(a);
    *this = Coloring(assignment, Alphabet<Letter>(std::move(seen)));
  }

  /// Every assigned letter must belong to `alphabet`; unused letters are allowed.
  Coloring(const std::vector<Letter>& assignment, Alphabet<Letter> alphabet)
      : alphabet_(std::move(alphabet)), groups_(alphabet_.size()) {
    letter_of_.reserve(assignment.size());
    for (VertexId v = 0; v < assignment.size(); ++v) {
      auto i = alphabet_.find(assignment[v]);
      if (!i) throw InputError("coloring uses a letter outside its alphabet");
      letter_of_.push_back(*i);
      groups_[*i].push_back(v);
    }
  }

  std::size_t size() const { return letter_of_.size(); }
  const Alphabet<Letter>& alphabet() const { return alphabet_; }

  const Letter& operator()(VertexId v) const { return alphabet_[letter_of_[v]]; }
  std::size_t letter_index(VertexId v) const { return letter_of_[v]; }
  const std::vector<std::size_t>& letter_indices() const { return letter_of_; }

  /// V_a, ascending.
  const std::vector<VertexId>& group(std::size_t letter_index) const { return groups_[letter_index]; }
  const std::vector<VertexId>& group(const Letter& a) const { return groups_[alphabet_.index(a)]; }
  const std::vector<std::vector<VertexId>>& groups() const { return groups_; }

  std::vector<Letter> assignment() const {
    std::vector<Letter> out;
    out.reserve(size());
    for (std::size_t i : letter_of_) out.push_back(alphabet_[i]);
    return out;
  }

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.alphabet_ == b.alphabet_ && a.letter_of_ == b.letter_of_;
  }

 private:
  Alphabet<Letter> alphabet_;
  std::vector<std::size_t> letter_of_;
  std::vector<std::vector<VertexId>> groups_;
};

/// Bijection f: V(G) -> V(H), stored as forward[v] = f(v).
struct IsomorphismMapping {
  std::vector<VertexId> forward;

  friend bool operator==(const IsomorphismMapping&, const IsomorphismMapping&) = default;
};

/// f is a bijection and {u,v} in E(G) <=> {f(u),f(v)} in E(H).
inline bool is_isomorphism(const Graph& g, const Graph& h, const IsomorphismMapping& f) {
  const std::size_t n = g.size();
  if (h.size() != n || f.forward.size() != n || g.edge_count() != h.edge_count()) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (VertexId x : f.forward) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (g.adjacent(u, v) != h.adjacent(f.forward[u], f.forward[v])) return false;
  return true;
}

}  // namespace lettericity

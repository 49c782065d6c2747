// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"

namespace lettericity {

/// Auxiliary ordering digraph H = (V, A). An arc (u, v) means that u must
/// precede v in every generalized solution.
class OrderDigraph {
 public:
  OrderDigraph() = default;
  explicit OrderDigraph(std::size_t n) : n_(n), arc_(n * n, 0), out_(n) {}

  void add_arc(VertexId u, VertexId v) {
    if (u == v) throw InternalError("self-arc in order digraph");
    if (arc_[u * n_ + v]) return;
    arc_[u * n_ + v] = 1;
    out_[u].push_back(v);
    ++arc_count_;
  }

  std::size_t size() const { return n_; }
  std::size_t arc_count() const { return arc_count_; }
  bool has_arc(VertexId u, VertexId v) const { return arc_[u * n_ + v] != 0; }
  const std::vector<VertexId>& successors(VertexId u) const { return out_[u]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> arc_;
  std::vector<std::vector<VertexId>> out_;
  std::size_t arc_count_ = 0;
};

/// Vertex permutation pi together with the word chi(pi(1))...chi(pi(n)).
template <LetterToken Letter>
struct GeneralizedSolution {
  std::vector<VertexId> permutation;
  Word<Letter> word;
};

namespace detail {

template <LetterToken Letter>
void check_total(const Graph& g, const Coloring<Letter>& chi) {
  if (chi.size() != g.size())
    throw InputError("coloring covers " + std::to_string(chi.size()) + " vertices, graph has " +
                     std::to_string(g.size()));
}

}  // namespace detail

/// Arc (u,v) iff ({u,v} in E and chi(v)chi(u) not in D) or ({u,v} not in E and chi(v)chi(u) in D).
template <LetterToken Letter>
OrderDigraph build_order_digraph(const Graph& g, const Coloring<Letter>& chi,
                                 const Decoder<Letter>& d) {
  detail::check_total(g, chi);
  const std::size_t n = g.size();
  const std::size_t k = chi.alphabet().size();
  const auto table = detail::decoder_table(d, chi.alphabet());
  OrderDigraph h(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v) {
      if (u == v) continue;
      const bool reversed_in_d = table[chi.letter_index(v) * k + chi.letter_index(u)] != 0;
      if (g.adjacent(u, v) != reversed_in_d) h.add_arc(u, v);
    }
  return h;
}

/// Kahn's algorithm; ties go to the smallest vertex id. nullopt iff H has a cycle.
inline std::optional<std::vector<VertexId>> topological_order(const OrderDigraph& h) {
  const std::size_t n = h.size();
  std::vector<std::size_t> indegree(n, 0);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : h.successors(u)) ++indegree[v];

  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> sources;
  for (VertexId v = 0; v < n; ++v)
    if (indegree[v] == 0) sources.push(v);

  std::vector<VertexId> order;
  order.reserve(n);
  while (!sources.empty()) {
    const VertexId u = sources.top();
    sources.pop();
    order.push_back(u);
    for (VertexId v : h.successors(u))
      if (--indegree[v] == 0) sources.push(v);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

/// A word w with G isomorphic to G(D, w) respecting chi, or nullopt when none exists.
/// The returned permutation maps position i (0-based) to vertex permutation[i].
template <LetterToken Letter>
std::optional<GeneralizedSolution<Letter>> retrieve_word(const Graph& g, const Coloring<Letter>& chi,
                                                         const Decoder<Letter>& d) {
  auto order = topological_order(build_order_digraph(g, chi, d));
  if (!order) return std::nullopt;
  GeneralizedSolution<Letter> out;
  out.word.reserve(order->size());
  for (VertexId v : *order) out.word.push_back(chi(v));
  out.permutation = std::move(*order);
  return out;
}

/// Does decoding chi(pi(1))...chi(pi(n)) reproduce G position by position?
template <LetterToken Letter>
bool is_generalized_solution(const Graph& g, const Coloring<Letter>& chi, const Decoder<Letter>& d,
                             const std::vector<VertexId>& permutation) {
  const std::size_t n = g.size();
  if (permutation.size() != n) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (VertexId v : permutation) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.adjacent(permutation[i], permutation[j]) !=
          d.contains(chi(permutation[i]), chi(permutation[j])))
        return false;
  return true;
}

}  // namespace lettericity

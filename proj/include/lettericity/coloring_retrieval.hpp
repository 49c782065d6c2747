// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"

namespace lettericity {

/// Ordered partition produced by iterated neighbourhood-signature refinement.
struct RefinementPartition {
  std::vector<std::vector<VertexId>> blocks;
  bool stable = false;
};

namespace detail {

/// Colour refinement on a disjoint union of graphs given as adjacency lists.
/// Colours are renumbered by sorted signature, so equal colours mean the same
/// thing on both sides of the union.
class Refiner {
 public:
  explicit Refiner(std::vector<const std::vector<VertexId>*> adjacency) : adj_(std::move(adjacency)) {}

  /// Refines `colors` in place to the coarsest equitable partition below it.
  /// Returns the number of colours.
  std::size_t refine(std::vector<std::size_t>& colors) const {
    std::size_t count = renumber(colors, [&](std::size_t x) { return Signature{colors[x], {}}; });
    while (true) {
      std::vector<std::size_t> previous = colors;
      const std::size_t next = renumber(colors, [&](std::size_t x) {
        Signature s{previous[x], {}};
        s.neighbors.reserve(adj_[x]->size());
        for (VertexId y : *adj_[x]) s.neighbors.push_back(previous[y]);
        std::sort(s.neighbors.begin(), s.neighbors.end());
        return s;
      });
      if (next == count) return count;
      count = next;
    }
  }

 private:
  struct Signature {
    std::size_t color;
    std::vector<std::size_t> neighbors;
    friend auto operator<=>(const Signature&, const Signature&) = default;
  };

  template <class SignatureOf>
  std::size_t renumber(std::vector<std::size_t>& colors, SignatureOf signature_of) const {
    std::vector<Signature> sigs;
    sigs.reserve(colors.size());
    for (std::size_t x = 0; x < colors.size(); ++x) sigs.push_back(signature_of(x));
    std::vector<Signature> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t x = 0; x < colors.size(); ++x)
      colors[x] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sigs[x]) - sorted.begin());
    return sorted.size();
  }

  std::vector<const std::vector<VertexId>*> adj_;
};

class IsomorphismSearch {
 public:
  IsomorphismSearch(const Graph& g, const Graph& h) : g_(g), h_(h), n_(g.size()), refiner_(union_lists(g, h)) {}

  std::optional<IsomorphismMapping> run() {
    std::vector<std::size_t> colors(2 * n_, 0);
    return search(std::move(colors));
  }

 private:
  // Stores shifted copies of H's lists; keeps pointers valid for the refiner.
  std::vector<const std::vector<VertexId>*> union_lists(const Graph& g, const Graph& h) {
    shifted_.resize(h.size());
    for (VertexId v = 0; v < h.size(); ++v)
      for (VertexId u : h.neighbors(v)) shifted_[v].push_back(u + g.size());
    std::vector<const std::vector<VertexId>*> out;
    for (VertexId v = 0; v < g.size(); ++v) out.push_back(&g.neighbors(v));
    for (VertexId v = 0; v < h.size(); ++v) out.push_back(&shifted_[v]);
    return out;
  }

  std::optional<IsomorphismMapping> search(std::vector<std::size_t> colors) {
    const std::size_t count = refiner_.refine(colors);
    std::vector<std::vector<VertexId>> left(count), right(count);
    for (VertexId v = 0; v < n_; ++v) left[colors[v]].push_back(v);
    for (VertexId v = 0; v < n_; ++v) right[colors[n_ + v]].push_back(v);
    std::optional<std::size_t> target;
    for (std::size_t c = 0; c < count; ++c) {
      if (left[c].size() != right[c].size()) return std::nullopt;
      if (left[c].size() > 1 && (!target || left[c].size() < left[*target].size())) target = c;
    }
    if (!target) {
      IsomorphismMapping f{std::vector<VertexId>(n_)};
      for (std::size_t c = 0; c < count; ++c) f.forward[left[c].front()] = right[c].front();
      if (is_isomorphism(g_, h_, f)) return f;
      return std::nullopt;
    }
    const VertexId x = left[*target].front();
    for (VertexId y : right[*target]) {
      std::vector<std::size_t> branch = colors;
      branch[x] = branch[n_ + y] = count;
      if (auto f = search(std::move(branch))) return f;
    }
    return std::nullopt;
  }

  const Graph& g_;
  const Graph& h_;
  std::size_t n_;
  std::vector<std::vector<VertexId>> shifted_;
  Refiner refiner_;
};

}  // namespace detail

/// Stable refinement of a single graph, blocks ordered by colour rank.
inline RefinementPartition refine_partition(const Graph& g) {
  std::vector<const std::vector<VertexId>*> lists;
  for (VertexId v = 0; v < g.size(); ++v) lists.push_back(&g.neighbors(v));
  std::vector<std::size_t> colors(g.size(), 0);
  const std::size_t count = detail::Refiner(std::move(lists)).refine(colors);
  RefinementPartition out{std::vector<std::vector<VertexId>>(count), true};
  for (VertexId v = 0; v < g.size(); ++v) out.blocks[colors[v]].push_back(v);
  return out;
}

/// Exact isomorphism search: refinement plus individualisation, deterministic order.
inline std::optional<IsomorphismMapping> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  return detail::IsomorphismSearch(g, h).run();
}

template <LetterToken Letter>
struct ColoringRetrieval {
  Coloring<Letter> coloring;
  IsomorphismMapping mapping;  // vertex of G -> 0-based position of w
};

/// chi(v) = w_{f(v)} for the first isomorphism f: G -> G(D, w) found, or nullopt.
template <LetterToken Letter>
std::optional<ColoringRetrieval<Letter>> retrieve_coloring(const Graph& g, const Alphabet<Letter>& sigma,
                                                           const Decoder<Letter>& d, const Word<Letter>& w) {
  if (g.size() != w.size())
    throw InputError("word has length " + std::to_string(w.size()) + ", graph has " +
                     std::to_string(g.size()) + " vertices");
  const ColoredGraph<Letter> target = decode(d, w, sigma);
  auto f = find_isomorphism(g, target.graph);
  if (!f) return std::nullopt;
  std::vector<Letter> assignment;
  assignment.reserve(g.size());
  for (VertexId v = 0; v < g.size(); ++v) assignment.push_back(w[f->forward[v]]);
  return ColoringRetrieval<Letter>{Coloring<Letter>(assignment, sigma), std::move(*f)};
}

/// Coloring-retrieval instance (G, Sigma, D, w) with w a permutation of Sigma.
template <LetterToken Letter>
struct ColoringInstance {
  Graph graph;
  Alphabet<Letter> alphabet;
  Decoder<Letter> decoder;
  Word<Letter> word;
};

/// Graph isomorphism (G1, G2) as coloring retrieval: the letters are G2's
/// vertex labels, D = {uv, vu : {u,v} in E(G2)} and w lists V(G2) in
/// declaration order, so G(D, w) is G2 itself.
inline ColoringInstance<std::string> gi_to_coloring_instance(const Graph& g1, const Graph& g2) {
  ColoringInstance<std::string> out{g1, Alphabet<std::string>(g2.labels()), {}, g2.labels()};
  for (const Edge& e : g2.edges()) {
    out.decoder.insert({g2.label(e.u), g2.label(e.v)});
    out.decoder.insert({g2.label(e.v), g2.label(e.u)});
  }
  return out;
}

}  // namespace lettericity

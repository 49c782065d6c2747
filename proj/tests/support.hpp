// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fixtures and deliberately naive reference computations for the test suite.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lettericity/lettericity.hpp"

namespace testing_support {

using namespace lettericity;
using Str = std::string;
using SWord = Word<Str>;
using SDecoder = Decoder<Str>;
using SColoring = Coloring<Str>;

inline Graph labelled(std::vector<Str> vertices, std::vector<std::pair<Str, Str>> edges) {
  return Graph::from_labels(std::move(vertices), edges);
}

inline SColoring coloring_for(const Graph& g, const std::vector<std::pair<Str, Str>>& entries,
                              const Alphabet<Str>& sigma) {
  std::vector<Str> assignment(g.size());
  for (const auto& [v, a] : entries) assignment[g.id(v)] = a;
  return SColoring(assignment, sigma);
}

inline SWord word_of(const Str& s) {
  SWord w;
  for (char c : s) w.emplace_back(1, c);
  return w;
}

inline SDecoder decoder_of(std::initializer_list<const char*> pairs) {
  SDecoder d;
  for (const char* p : pairs) d.insert({Str(1, p[0]), Str(1, p[1])});
  return d;
}

struct Instance {
  Graph graph;
  SColoring coloring;
  SWord word;
  SDecoder decoder;
};

// A 6-cycle with one chord, realised by the word banane.
inline Instance banane_instance() {
  Graph g = labelled({"n1", "e1", "a1", "n2", "b1", "a2"}, {{"b1", "a1"},
                                                             {"a1", "n1"},
                                                             {"n1", "e1"},
                                                             {"e1", "n2"},
                                                             {"n2", "a2"},
                                                             {"a2", "b1"},
                                                             {"a1", "n2"}});
  Alphabet<Str> sigma{"b", "a", "n", "e"};
  auto chi = coloring_for(g, {{"n1", "n"}, {"e1", "e"}, {"a1", "a"}, {"n2", "n"}, {"b1", "b"}, {"a2", "a"}}, sigma);
  return {g, chi, word_of("banane"), decoder_of({"ba", "an", "ne"})};
}

// Only ab decodes abbaba onto this bipartite graph.
inline Instance forced_ab_instance() {
  Graph g = labelled({"a1", "a2", "a3", "b1", "b2", "b3"},
                     {{"a1", "b1"}, {"a1", "b2"}, {"a1", "b3"}, {"a2", "b3"}});
  Alphabet<Str> sigma{"a", "b"};
  auto chi = coloring_for(
      g, {{"a1", "a"}, {"a2", "a"}, {"a3", "a"}, {"b1", "b"}, {"b2", "b"}, {"b3", "b"}}, sigma);
  return {g, chi, word_of("abbaba"), decoder_of({"ab"})};
}

// Word bcbacb with solution {ba, bc}.
inline Instance bcbacb_instance() {
  Graph g = labelled({"a1", "b1", "b2", "b3", "c1", "c2"},
                     {{"a1", "b1"}, {"a1", "b2"}, {"b1", "c1"}, {"b1", "c2"}, {"b2", "c2"}});
  Alphabet<Str> sigma{"a", "b", "c"};
  auto chi = coloring_for(
      g, {{"a1", "a"}, {"b1", "b"}, {"b2", "b"}, {"b3", "b"}, {"c1", "c"}, {"c2", "c"}}, sigma);
  return {g, chi, word_of("bcbacb"), decoder_of({"ba", "bc"})};
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return Graph::numbered(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::numbered(n, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::numbered(leaves + 1, e);
}

inline Graph from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> e;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1U) e.emplace_back(i, j);
  return Graph::numbered(n, e);
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph::numbered(n, e);
}

inline Graph relabel(const Graph& g, const std::vector<VertexId>& image) {
  std::vector<Edge> e;
  for (const Edge& x : g.edges()) e.emplace_back(image[x.u], image[x.v]);
  return Graph::numbered(g.size(), e);
}

inline std::vector<VertexId> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<VertexId> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Str letter(std::size_t i) { return Str(1, static_cast<char>('a' + i)); }

/// Random (D, w) over k letters, every letter used; decoded graph with
/// shuffled vertex order. The hidden permutation is returned alongside.
struct Planted {
  Instance instance;
  std::vector<VertexId> vertex_at;  // position -> vertex
};

inline Planted planted(std::mt19937_64& rng, std::size_t n, std::size_t k, double density = 0.5) {
  k = std::min(k, n);
  std::vector<Str> letters;
  for (std::size_t i = 0; i < k; ++i) letters.push_back(letter(i));
  const Alphabet<Str> sigma(letters);
  SWord w;
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (std::size_t i = 0; i < n; ++i) w.push_back(i < k ? letters[i] : letters[pick(rng)]);
  std::shuffle(w.begin(), w.end(), rng);
  std::bernoulli_distribution coin(density);
  SDecoder d;
  for (const auto& a : letters)
    for (const auto& b : letters)
      if (coin(rng)) d.insert({a, b});
  const Graph positions = decode(d, w, sigma).graph;
  const auto vertex_at = random_permutation(rng, n);
  std::vector<Str> assignment(n);
  for (std::size_t i = 0; i < n; ++i) assignment[vertex_at[i]] = w[i];
  Graph g = relabel(positions, vertex_at);
  return {{g, SColoring(assignment, sigma), w, d}, vertex_at};
}

inline Graph flip_random_edge(std::mt19937_64& rng, const Graph& g) {
  const std::size_t n = g.size();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t u = pick(rng), v = pick(rng);
  while (v == u) v = pick(rng);
  const Edge flip(u, v);
  std::vector<Edge> e;
  for (const Edge& x : g.edges())
    if (!(x == flip)) e.push_back(x);
  if (!g.adjacent(u, v)) e.push_back(flip);
  return Graph(g.labels(), e);
}

// ---- naive references -------------------------------------------------

/// Does some ordering of all vertices (every n! of them) realise G with
/// letters chi(v) under D?
inline bool naive_word_exists(const Graph& g, const SColoring& chi, const SDecoder& d) {
  std::vector<VertexId> p(g.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_generalized_solution(g, chi, d, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// verify_decoder by the definition: some bijection f with chi(v) = w_f(v)
/// and edges matching D, over all n! permutations.
inline bool naive_decoder_valid(const Graph& g, const SColoring& chi, const SWord& w, const SDecoder& d) {
  std::vector<VertexId> p(g.size());  // position -> vertex
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) ok = chi(p[i]) == w[i];
    if (ok && is_generalized_solution(g, chi, d, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Every decoder over sigma (all 2^{k^2}) that passes naive_decoder_valid.
inline std::vector<SDecoder> naive_all_decoders(const Graph& g, const SColoring& chi, const SWord& w) {
  const auto& sigma = chi.alphabet();
  const std::size_t k = sigma.size();
  std::vector<SDecoder> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k * k)); ++mask) {
    SDecoder d;
    for (std::size_t bit = 0; bit < k * k; ++bit)
      if ((mask >> bit) & 1U) d.insert({sigma[bit / k], sigma[bit % k]});
    if (naive_decoder_valid(g, chi, w, d)) out.push_back(d);
  }
  return out;
}

/// Minimum number of classes in a partition of V into sets of pairwise
/// generalized twins, by trying every set partition.
inline std::size_t naive_nd(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  auto twins = [&](VertexId u, VertexId v) {
    for (VertexId x = 0; x < n; ++x)
      if (x != u && x != v && g.adjacent(u, x) != g.adjacent(v, x)) return false;
    return true;
  };
  std::size_t best = n;
  std::vector<std::size_t> block(n, 0);
  auto rec = [&](auto&& self, std::size_t v, std::size_t used) -> void {
    if (used >= best) return;
    if (v == n) {
      best = used;
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      bool ok = true;
      for (VertexId u = 0; u < v && ok; ++u)
        if (block[u] == b) ok = twins(u, v);
      if (!ok) continue;
      block[v] = b;
      self(self, v + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return best;
}

/// Truth-table satisfiability.
inline bool naive_satisfiable(std::size_t vars, const std::vector<Clause>& clauses) {
  std::vector<bool> a(vars);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << vars); ++m) {
    for (std::size_t i = 0; i < vars; ++i) a[i] = (m >> i) & 1U;
    if (std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) { return c.satisfied_by(a); }))
      return true;
  }
  return false;
}

inline bool naive_isomorphic(const Graph& g, const Graph& h) {
  if (g.size() != h.size()) return false;
  IsomorphismMapping f{std::vector<VertexId>(g.size())};
  std::iota(f.forward.begin(), f.forward.end(), 0);
  do {
    if (is_isomorphism(g, h, f)) return true;
  } while (std::next_permutation(f.forward.begin(), f.forward.end()));
  return false;
}

}  // namespace testing_support

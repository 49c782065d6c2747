// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"

namespace lettericity {

enum class BlockKind { Clique, Independent };

/// Partition of V(G) into maximal groups of pairwise generalized twins.
struct TwinPartition {
  std::vector<std::vector<VertexId>> blocks;  // ordered by smallest member
  std::vector<BlockKind> kinds;               // singletons count as independent
  std::vector<std::vector<bool>> full;        // full[i][j]: every V_i-V_j edge present (i != j)
  std::vector<std::size_t> block_of;          // vertex -> block index

  std::size_t size() const { return blocks.size(); }
};

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Groups vertices whose open or closed neighbourhoods coincide, then checks
/// every pair inside each block. A failed check is an internal error.
inline TwinPartition twin_partition(const Graph& g) {
  const std::size_t n = g.size();
  detail::DisjointSets sets(n);
  std::map<std::vector<VertexId>, VertexId> open_key, closed_key;
  for (VertexId v = 0; v < n; ++v) {
    const std::vector<VertexId>& open = g.neighbors(v);
    std::vector<VertexId> closed = open;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    if (auto [it, fresh] = open_key.emplace(open, v); !fresh) sets.unite(it->second, v);
    if (auto [it, fresh] = closed_key.emplace(std::move(closed), v); !fresh) sets.unite(it->second, v);
  }

  TwinPartition out;
  out.block_of.assign(n, 0);
  std::map<std::size_t, std::size_t> block_of_root;
  for (VertexId v = 0; v < n; ++v) {
    auto [it, fresh] = block_of_root.emplace(sets.find(v), out.blocks.size());
    if (fresh) out.blocks.emplace_back();
    out.blocks[it->second].push_back(v);
    out.block_of[v] = it->second;
  }

  const std::size_t p = out.blocks.size();
  for (const auto& block : out.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        if (!are_generalized_twins(g, block[i], block[j]))
          throw InternalError("twin block contains vertices that are not generalized twins");
    const bool clique = block.size() >= 2 && g.adjacent(block[0], block[1]);
    out.kinds.push_back(clique ? BlockKind::Clique : BlockKind::Independent);
  }
  out.full.assign(p, std::vector<bool>(p, false));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (i != j) out.full[i][j] = g.adjacent(out.blocks[i].front(), out.blocks[j].front());
  return out;
}

/// nd(G); 0 for the empty graph.
inline std::size_t neighborhood_diversity(const Graph& g) { return twin_partition(g).size(); }

/// Symmetric realisation of G over the letters 1..nd(G).
struct SymmetricWitness {
  Alphabet<int> alphabet;
  Word<int> word;             // 1^{|V_1|} 2^{|V_2|} ... p^{|V_p|}
  Decoder<int> decoder;
  Coloring<int> coloring;     // block i -> letter i
  std::vector<std::size_t> position;  // vertex -> 0-based position in word
};

inline SymmetricWitness symmetric_witness(const Graph& g) {
  const TwinPartition parts = twin_partition(g);
  const std::size_t p = parts.size();
  SymmetricWitness out;
  std::vector<int> letters(p);
  std::iota(letters.begin(), letters.end(), 1);
  out.alphabet = Alphabet<int>(letters);
  out.position.assign(g.size(), 0);
  for (std::size_t i = 0; i < p; ++i)
    for (VertexId v : parts.blocks[i]) {
      out.position[v] = out.word.size();
      out.word.push_back(letters[i]);
    }
  for (std::size_t i = 0; i < p; ++i) {
    if (parts.kinds[i] == BlockKind::Clique) out.decoder.insert({letters[i], letters[i]});
    for (std::size_t j = 0; j < p; ++j)
      if (i != j && parts.full[i][j]) out.decoder.insert({letters[i], letters[j]});
  }
  std::vector<int> assignment(g.size());
  for (VertexId v = 0; v < g.size(); ++v) assignment[v] = letters[parts.block_of[v]];
  out.coloring = Coloring<int>(assignment, out.alphabet);
  return out;
}

}  // namespace lettericity

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exponential reference implementations. Every function here has a hard size
// guard and throws SizeLimitError beyond it.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lettericity/decoder_retrieval.hpp"
#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"
#include "lettericity/word_retrieval.hpp"

namespace lettericity::oracle {

inline constexpr std::size_t kMaxBruteVertices = 8;        // permutation searches
inline constexpr std::size_t kMaxLettericityVertices = 10;  // coloring enumeration
inline constexpr std::size_t kMaxEnumerationAlphabet = 4;   // 2^16 decoders
inline constexpr std::uint64_t kMaxLevelCandidates = std::uint64_t{1} << 32;

/// Realisation of G as G(D, w) over the letters 1..k.
struct LettericityWitness {
  std::size_t k = 0;
  Alphabet<int> alphabet;
  Decoder<int> decoder;
  Word<int> word;
  std::vector<std::size_t> position;  // vertex -> 0-based position in word
};

namespace detail {

/// Smallest index in [0, total) accepted by `accept`, searched by `jobs`
/// workers over interleaved chunks. The answer does not depend on `jobs`.
template <class Accept>
std::optional<std::uint64_t> first_accepted(std::uint64_t total, unsigned jobs, const Accept& accept) {
  constexpr std::uint64_t chunk = 512;
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};
  auto worker = [&](unsigned id) {
    for (std::uint64_t start = id * chunk; start < total; start += std::uint64_t{jobs} * chunk) {
      if (start >= best.load(std::memory_order_relaxed)) return;
      const std::uint64_t stop = std::min(total, start + chunk);
      for (std::uint64_t i = start; i < stop; ++i) {
        if (i >= best.load(std::memory_order_relaxed)) return;
        if (accept(i)) {
          std::uint64_t current = best.load();
          while (i < current && !best.compare_exchange_weak(current, i)) {
          }
          return;
        }
      }
    }
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
  }
  if (best.load() == none) return std::nullopt;
  return best.load();
}

/// Restricted growth strings of length n using exactly k letters: one
/// coloring per class of letter renamings, lexicographic order.
inline std::vector<std::vector<int>> canonical_colorings(std::size_t n, std::size_t k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int used) -> void {
    const auto remaining = static_cast<int>(n - pos);
    if (static_cast<int>(k) - used > remaining) return;
    if (pos == n) {
      if (used == static_cast<int>(k)) out.push_back(current);
      return;
    }
    for (int c = 1; c <= std::min<int>(used + 1, static_cast<int>(k)); ++c) {
      current[pos] = c;
      self(self, pos + 1, std::max(used, c));
    }
  };
  if (k == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, 0);
  return out;
}

inline std::vector<DirectedPair<int>> all_pairs(std::size_t k, bool symmetric) {
  std::vector<DirectedPair<int>> out;
  for (int i = 1; i <= static_cast<int>(k); ++i)
    for (int j = symmetric ? i : 1; j <= static_cast<int>(k); ++j) out.push_back({i, j});
  return out;
}

inline Decoder<int> decoder_from_mask(const std::vector<DirectedPair<int>>& pairs, std::uint64_t mask,
                                      bool symmetric) {
  std::vector<DirectedPair<int>> chosen;
  for (std::size_t bit = 0; bit < pairs.size(); ++bit) {
    if (!((mask >> bit) & 1U)) continue;
    chosen.push_back(pairs[bit]);
    if (symmetric && pairs[bit].first != pairs[bit].second) chosen.push_back(pairs[bit].reversed());
  }
  return Decoder<int>(std::move(chosen));
}

inline std::uint64_t checked_level_size(std::size_t colorings, std::size_t bits) {
  if (bits >= 32) throw SizeLimitError("decoder space 2^" + std::to_string(bits) + " is beyond the oracle limit");
  const std::uint64_t total = static_cast<std::uint64_t>(colorings) << bits;
  if (total > kMaxLevelCandidates)
    throw SizeLimitError("lettericity search level exceeds " + std::to_string(kMaxLevelCandidates) + " candidates");
  return total;
}

inline std::optional<LettericityWitness> brute_search(const Graph& g, std::size_t k_max, bool symmetric,
                                                      unsigned jobs) {
  const std::size_t n = g.size();
  if (n > kMaxLettericityVertices)
    throw SizeLimitError("brute-force lettericity is limited to " + std::to_string(kMaxLettericityVertices) +
                         " vertices");
  if (n == 0) return LettericityWitness{};
  for (std::size_t k = 1; k <= std::min(k_max, n); ++k) {
    std::vector<int> letters(k);
    std::iota(letters.begin(), letters.end(), 1);
    const Alphabet<int> sigma(letters);
    const auto pairs = all_pairs(k, symmetric);
    std::vector<Coloring<int>> colorings;
    for (auto& c : canonical_colorings(n, k)) colorings.emplace_back(c, sigma);
    const std::uint64_t per_coloring = std::uint64_t{1} << pairs.size();
    const std::uint64_t total = checked_level_size(colorings.size(), pairs.size());

    auto found = first_accepted(total, jobs, [&](std::uint64_t index) {
      const Decoder<int> d = decoder_from_mask(pairs, index % per_coloring, symmetric);
      return retrieve_word(g, colorings[index / per_coloring], d).has_value();
    });
    if (!found) continue;

    const Coloring<int>& chi = colorings[*found / per_coloring];
    LettericityWitness out;
    out.k = k;
    out.alphabet = sigma;
    out.decoder = decoder_from_mask(pairs, *found % per_coloring, symmetric);
    auto solution = retrieve_word(g, chi, out.decoder);
    out.word = solution->word;
    out.position.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) out.position[solution->permutation[i]] = i;
    return out;
  }
  return std::nullopt;
}

}  // namespace detail

/// Minimal k <= k_max with G isomorphic to a k-letter graph, found by
/// enumerating colorings (up to renaming) and decoders and deferring each
/// (chi, D) to word retrieval. nullopt when l(G) > k_max. The empty graph
/// gets the empty witness with k = 0.
inline std::optional<LettericityWitness> brute_lettericity(const Graph& g, std::size_t k_max, unsigned jobs = 1) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
  return detail::brute_search(g, k_max, false, jobs);
}

/// As brute_lettericity, restricted to symmetric decoders.
inline std::optional<LettericityWitness> brute_symmetric_lettericity(const Graph& g, std::size_t k_max,
                                                                     unsigned jobs = 1) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
  return detail::brute_search(g, k_max, true, jobs);
}

/// Every D over the alphabet that solves (G, chi, w), by increasing bitmask
/// (bit i*k + j stands for the pair sigma[i] sigma[j]).
template <LetterToken Letter>
std::vector<Decoder<Letter>> enumerate_decoders(const Graph& g, const Coloring<Letter>& chi,
                                                const Word<Letter>& w) {
  const auto& sigma = chi.alphabet();
  const std::size_t k = sigma.size();
  if (k > kMaxEnumerationAlphabet)
    throw SizeLimitError("decoder enumeration is limited to alphabets of " +
                         std::to_string(kMaxEnumerationAlphabet) + " letters");
  const auto inst = lettericity::detail::make_dense(g, chi, w);
  std::vector<Decoder<Letter>> out;
  const std::uint64_t masks = std::uint64_t{1} << (k * k);
  std::vector<std::uint8_t> table(k * k);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    for (std::size_t bit = 0; bit < k * k; ++bit) table[bit] = (mask >> bit) & 1U;
    if (!lettericity::detail::verify(inst, table)) continue;
    Decoder<Letter> d;
    for (std::size_t bit = 0; bit < k * k; ++bit)
      if (table[bit]) d.insert({sigma[bit / k], sigma[bit % k]});
    out.push_back(std::move(d));
  }
  return out;
}

/// True iff D meets all three conditions: every within-color subinstance,
/// every pair subinstance of a pair that is not one-sided, and every block
/// subinstance I_a. Requires each one-sided pair to have two or more runs of
/// one of its letters.
template <LetterToken Letter>
bool characterization_check(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w,
                            const Decoder<Letter>& d) {
  namespace ld = lettericity::detail;
  const auto inst = ld::make_dense(g, chi, w);
  const auto table = ld::checked_table(d, chi.alphabet());
  const std::size_t k = inst.k;
  const ld::PairFacts facts(inst);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (facts.one_sided(a, b) && facts.runs(a, b, a) < 2 && facts.runs(a, b, b) < 2)
        throw InputError("characterization needs two runs of some letter in every one-sided pair");

  auto restricted_table = [&](const std::vector<ld::Dir>& allowed) {
    std::vector<std::uint8_t> t(k * k, 0);
    for (const ld::Dir& p : allowed) t[p.from * k + p.to] = table[p.from * k + p.to];
    return t;
  };

  for (std::size_t a = 0; a < k; ++a) {
    ld::PairMask pairs(k * k, 0);
    ld::mark_pair(pairs, k, a, a);
    const auto sub = ld::restrict(inst, ld::letter_mask(k, {a}), pairs);
    if (!ld::verify(sub, restricted_table({{a, a}}))) return false;
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      if (facts.one_sided(a, b)) continue;
      if (!ld::verify(ld::pair_subinstance(inst, a, b), restricted_table({{a, b}, {b, a}}))) return false;
    }
  for (std::size_t a = 0; a < k; ++a) {
    const auto partners = ld::partners(facts, k, a);
    std::vector<ld::Dir> allowed;
    for (std::size_t b : partners) {
      allowed.push_back({a, b});
      allowed.push_back({b, a});
    }
    if (!ld::verify(ld::block_subinstance(inst, a, partners), restricted_table(allowed))) return false;
  }
  return true;
}

/// All n! bijections in lexicographic order; the first isomorphism found.
inline std::optional<IsomorphismMapping> brute_isomorphism(const Graph& g, const Graph& h) {
  if (g.size() > kMaxBruteVertices || h.size() > kMaxBruteVertices)
    throw SizeLimitError("brute-force isomorphism is limited to " + std::to_string(kMaxBruteVertices) +
                         " vertices");
  if (g.size() != h.size()) return std::nullopt;
  IsomorphismMapping f{std::vector<VertexId>(g.size())};
  std::iota(f.forward.begin(), f.forward.end(), 0);
  do {
    if (is_isomorphism(g, h, f)) return f;
  } while (std::next_permutation(f.forward.begin(), f.forward.end()));
  return std::nullopt;
}

/// Exhaustive placement search: is there a bijection V -> positions with
/// chi(v) = w_pos(v) under which G = G(D, w)? Positions are filled left to
/// right and a branch is cut as soon as an earlier pair disagrees.
template <LetterToken Letter>
bool brute_verify_decoder(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w,
                          const Decoder<Letter>& d) {
  const std::size_t n = g.size();
  if (n > kMaxBruteVertices)
    throw SizeLimitError("brute-force placement search is limited to " + std::to_string(kMaxBruteVertices) +
                         " vertices");
  if (chi.size() != n || w.size() != n) throw InputError("instance sizes disagree");
  std::vector<VertexId> at(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == n) return true;
    for (VertexId v = 0; v < n; ++v) {
      if (used[v] || !(chi(v) == w[pos])) continue;
      bool ok = true;
      for (std::size_t i = 0; i < pos && ok; ++i)
        ok = g.adjacent(at[i], v) == d.contains(w[i], w[pos]);
      if (!ok) continue;
      used[v] = true;
      at[pos] = v;
      if (self(self, pos + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Exhaustive search for a generalized solution of word retrieval: some
/// vertex order whose letter sequence decodes back to G position by position.
template <LetterToken Letter>
std::optional<std::vector<VertexId>> brute_generalized_solution(const Graph& g, const Coloring<Letter>& chi,
                                                                 const Decoder<Letter>& d) {
  const std::size_t n = g.size();
  if (n > kMaxBruteVertices)
    throw SizeLimitError("brute-force word search is limited to " + std::to_string(kMaxBruteVertices) +
                         " vertices");
  if (chi.size() != n) throw InputError("coloring does not cover the graph");
  std::vector<VertexId> order;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> bool {
    if (order.size() == n) return true;
    for (VertexId v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < order.size() && ok; ++i)
        ok = g.adjacent(order[i], v) == d.contains(chi(order[i]), chi(v));
      if (!ok) continue;
      used[v] = true;
      order.push_back(v);
      if (self(self)) return true;
      order.pop_back();
      used[v] = false;
    }
    return false;
  };
  if (!rec(rec)) return std::nullopt;
  return order;
}

}  // namespace lettericity::oracle

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "lettericity/graph.hpp"

namespace lettericity {

template <LetterToken Letter>
using Word = std::vector<Letter>;

/// An ordered two-letter word `first second`.
template <LetterToken Letter>
struct DirectedPair {
  Letter first{};
  Letter second{};

  DirectedPair reversed() const { return {second, first}; }

  friend bool operator==(const DirectedPair&, const DirectedPair&) = default;
  friend bool operator<(const DirectedPair& x, const DirectedPair& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  }
};

/// A set of ordered letter pairs. Stored sorted, so iteration is deterministic.
template <LetterToken Letter>
class Decoder {
 public:
  using Pair = DirectedPair<Letter>;

  Decoder() = default;

  explicit Decoder(std::vector<Pair> pairs) : pairs_(std::move(pairs)) { normalize(); }

  Decoder(std::initializer_list<std::pair<Letter, Letter>> pairs) {
    for (const auto& [a, b] : pairs) pairs_.push_back({a, b});
    normalize();
  }

  bool contains(const Letter& a, const Letter& b) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{a, b});
  }
  bool contains(const Pair& p) const { return contains(p.first, p.second); }

  void insert(const Pair& p) {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end() || *it != p) pairs_.insert(it, p);
  }

  void erase(const Pair& p) {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it != pairs_.end() && *it == p) pairs_.erase(it);
  }

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  /// ab in D <=> ba in D.
  bool is_symmetric() const {
    return std::all_of(pairs_.begin(), pairs_.end(),
                       [&](const Pair& p) { return contains(p.reversed()); });
  }

  friend bool operator==(const Decoder&, const Decoder&) = default;

 private:
  void normalize() {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }

  std::vector<Pair> pairs_;
};

/// A letter graph G(D, w) with its inherent coloring chi_w.
template <LetterToken Letter>
struct ColoredGraph {
  Graph graph;
  Coloring<Letter> coloring;
};

namespace detail {

/// k x k membership table of D over an alphabet; pairs with foreign letters drop out.
template <LetterToken Letter>
std::vector<std::uint8_t> decoder_table(const Decoder<Letter>& d, const Alphabet<Letter>& sigma) {
  const std::size_t k = sigma.size();
  std::vector<std::uint8_t> table(k * k, 0);
  for (const auto& p : d) {
    auto a = sigma.find(p.first);
    auto b = sigma.find(p.second);
    if (a && b) table[*a * k + *b] = 1;
  }
  return table;
}

}  // namespace detail

/// G(D, w): vertices are positions "1".."|w|", {i,j} with i<j is an edge iff w_i w_j in D.
/// The coloring's alphabet is `sigma`; letters of w outside it are input errors.
template <LetterToken Letter>
ColoredGraph<Letter> decode(const Decoder<Letter>& d, const Word<Letter>& w,
                            const Alphabet<Letter>& sigma) {
  Coloring<Letter> chi(w, sigma);
  const auto table = detail::decoder_table(d, sigma);
  const std::size_t k = sigma.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (table[chi.letter_index(i) * k + chi.letter_index(j)]) edges.emplace_back(i, j);
  return {Graph::numbered(w.size(), edges), std::move(chi)};
}

/// As above, with the alphabet taken from w in first-occurrence order.
template <LetterToken Letter>
ColoredGraph<Letter> decode(const Decoder<Letter>& d, const Word<Letter>& w) {
  Coloring<Letter> chi(w);
  return decode(d, w, chi.alphabet());
}

/// w[S]: the maximal subsequence of w over the letters in S.
template <LetterToken Letter>
Word<Letter> project_word(const Word<Letter>& w, const std::set<Letter>& letters) {
  Word<Letter> out;
  for (const Letter& c : w)
    if (letters.contains(c)) out.push_back(c);
  return out;
}

/// Number of maximal non-empty factors of w consisting only of c.
template <LetterToken Letter>
std::size_t count_runs(const Word<Letter>& w, const Letter& c) {
  std::size_t runs = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == c && (i == 0 || w[i - 1] != c)) ++runs;
  return runs;
}

/// Lengths of the c-runs of w, left to right.
template <LetterToken Letter>
std::vector<std::size_t> run_lengths(const Word<Letter>& w, const Letter& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != c) continue;
    if (i == 0 || w[i - 1] != c)
      out.push_back(1);
    else
      ++out.back();
  }
  return out;
}

template <LetterToken Letter>
bool is_palindrome(const Word<Letter>& w) {
  return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.rbegin());
}

template <LetterToken Letter>
std::size_t count_letter(const Word<Letter>& w, const Letter& c) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), c));
}

}  // namespace lettericity

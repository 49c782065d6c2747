// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"
#include "lettericity/two_sat.hpp"

namespace lettericity {

// ---------------------------------------------------------------------------
// Dense instance representation shared by the whole pipeline. Letters are
// indices into the coloring's alphabet; subinstances keep the full alphabet
// and only drop vertices, edges and word positions.
// ---------------------------------------------------------------------------
namespace detail {

struct DenseInstance {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint8_t> adj;     // n * n
  std::vector<std::size_t> letter;   // per vertex
  std::vector<std::size_t> word;     // letter per position

  bool adjacent(std::size_t u, std::size_t v) const { return adj[u * n + v] != 0; }
};

/// Ordered letter pair over alphabet indices.
struct Dir {
  std::size_t from = 0;
  std::size_t to = 0;
  friend auto operator<=>(const Dir&, const Dir&) = default;
};

using LetterMask = std::vector<std::uint8_t>;  // size k
using PairMask = std::vector<std::uint8_t>;    // size k * k, symmetric

/// Validates the decoder-retrieval preconditions and converts to dense form.
template <LetterToken Letter>
DenseInstance make_dense(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w) {
  if (chi.size() != g.size())
    throw InputError("coloring covers " + std::to_string(chi.size()) + " vertices, graph has " +
                     std::to_string(g.size()));
  if (w.size() != g.size())
    throw InputError("word has length " + std::to_string(w.size()) + ", graph has " +
                     std::to_string(g.size()) + " vertices");
  DenseInstance d;
  d.n = g.size();
  d.k = chi.alphabet().size();
  d.adj.assign(d.n * d.n, 0);
  for (std::size_t u = 0; u < d.n; ++u)
    for (std::size_t v : g.neighbors(u)) d.adj[u * d.n + v] = 1;
  d.letter = chi.letter_indices();
  std::vector<std::size_t> count(d.k, 0);
  d.word.reserve(w.size());
  for (const Letter& c : w) {
    auto i = chi.alphabet().find(c);
    if (!i) throw InputError("word uses a letter outside the alphabet");
    d.word.push_back(*i);
    ++count[*i];
  }
  for (std::size_t a = 0; a < d.k; ++a) {
    if (chi.group(a).empty())
      throw InputError("alphabet letter #" + std::to_string(a + 1) + " colors no vertex");
    if (count[a] != chi.group(a).size())
      throw InputError("letter #" + std::to_string(a + 1) + " occurs " + std::to_string(count[a]) +
                       " times in the word but colors " + std::to_string(chi.group(a).size()) +
                       " vertices");
  }
  return d;
}

/// Keep the vertices and positions of letters in `letters`, and the edges
/// whose color pair is marked in `pairs`.
inline DenseInstance restrict(const DenseInstance& in, const LetterMask& letters, const PairMask& pairs) {
  DenseInstance out;
  out.k = in.k;
  std::vector<std::size_t> kept;
  for (std::size_t v = 0; v < in.n; ++v)
    if (letters[in.letter[v]]) kept.push_back(v);
  out.n = kept.size();
  out.adj.assign(out.n * out.n, 0);
  out.letter.reserve(out.n);
  for (std::size_t v : kept) out.letter.push_back(in.letter[v]);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = i + 1; j < out.n; ++j)
      if (in.adjacent(kept[i], kept[j]) && pairs[out.letter[i] * in.k + out.letter[j]])
        out.adj[i * out.n + j] = out.adj[j * out.n + i] = 1;
  for (std::size_t c : in.word)
    if (letters[c]) out.word.push_back(c);
  return out;
}

/// Iterative form of the peeling verifier: the first letter a of the
/// remaining word must be realised by some remaining v in V_a whose remaining
/// neighbourhood is exactly the union of the V_b (b with ab in D), minus v.
/// Any such v works, since two candidates are generalized twins.
inline bool verify(const DenseInstance& inst, const std::vector<std::uint8_t>& table) {
  struct VerifyState {
    std::size_t next_position = 0;
    std::vector<std::uint8_t> remaining;
  } state{0, std::vector<std::uint8_t>(inst.n, 1)};

  std::vector<std::vector<std::size_t>> groups(inst.k);
  for (std::size_t v = 0; v < inst.n; ++v) groups[inst.letter[v]].push_back(v);

  for (; state.next_position < inst.word.size(); ++state.next_position) {
    const std::size_t a = inst.word[state.next_position];
    const std::uint8_t* row = &table[a * inst.k];
    std::optional<std::size_t> chosen;
    for (std::size_t v : groups[a]) {
      if (!state.remaining[v]) continue;
      bool matches = true;
      for (std::size_t u = 0; u < inst.n && matches; ++u)
        if (u != v && state.remaining[u] && inst.adjacent(v, u) != (row[inst.letter[u]] != 0))
          matches = false;
      if (matches) {
        chosen = v;
        break;
      }
    }
    if (!chosen) return false;
    state.remaining[*chosen] = 0;
  }
  return true;
}

inline std::vector<std::uint8_t> table_of(std::size_t k, std::initializer_list<Dir> words) {
  std::vector<std::uint8_t> t(k * k, 0);
  for (const Dir& d : words) t[d.from * k + d.to] = 1;
  return t;
}

inline std::vector<std::uint8_t> table_of(std::size_t k, const std::vector<Dir>& words) {
  std::vector<std::uint8_t> t(k * k, 0);
  for (const Dir& d : words) t[d.from * k + d.to] = 1;
  return t;
}

inline std::vector<std::size_t> project(const DenseInstance& inst, const LetterMask& letters) {
  std::vector<std::size_t> out;
  for (std::size_t c : inst.word)
    if (letters[c]) out.push_back(c);
  return out;
}

inline LetterMask letter_mask(std::size_t k, std::initializer_list<std::size_t> letters) {
  LetterMask m(k, 0);
  for (std::size_t a : letters) m[a] = 1;
  return m;
}

inline void mark_pair(PairMask& m, std::size_t k, std::size_t a, std::size_t b) {
  m[a * k + b] = m[b * k + a] = 1;
}

inline std::size_t runs_of(const std::vector<std::size_t>& w, std::size_t c) {
  std::size_t runs = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == c && (i == 0 || w[i - 1] != c)) ++runs;
  return runs;
}

inline bool palindromic(const std::vector<std::size_t>& w) {
  return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.rbegin());
}

/// The pair subinstance (E(V_a,V_b), {a,b}, chi restricted, w[a,b]).
inline DenseInstance pair_subinstance(const DenseInstance& inst, std::size_t a, std::size_t b) {
  PairMask pairs(inst.k * inst.k, 0);
  mark_pair(pairs, inst.k, a, b);
  return restrict(inst, letter_mask(inst.k, {a, b}), pairs);
}

enum class PairKind { Full, Empty, OneSided };

/// Cached per-instance facts: color group sizes, cross-edge counts, pair projections.
class PairFacts {
 public:
  explicit PairFacts(const DenseInstance& inst)
      : k_(inst.k), size_(inst.k, 0), edges_(inst.k * inst.k, 0), within_(inst.k, 0) {
    for (std::size_t v = 0; v < inst.n; ++v) ++size_[inst.letter[v]];
    for (std::size_t u = 0; u < inst.n; ++u)
      for (std::size_t v = u + 1; v < inst.n; ++v) {
        if (!inst.adjacent(u, v)) continue;
        const std::size_t a = inst.letter[u], b = inst.letter[v];
        if (a == b)
          ++within_[a];
        else {
          ++edges_[a * k_ + b];
          ++edges_[b * k_ + a];
        }
      }
    projections_.resize(k_ * k_);
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = a + 1; b < k_; ++b)
        projections_[a * k_ + b] = projections_[b * k_ + a] = project(inst, letter_mask(k_, {a, b}));
  }

  std::size_t group_size(std::size_t a) const { return size_[a]; }
  std::size_t cross_edges(std::size_t a, std::size_t b) const { return edges_[a * k_ + b]; }
  std::size_t capacity(std::size_t a, std::size_t b) const { return size_[a] * size_[b]; }

  PairKind kind(std::size_t a, std::size_t b) const {
    const std::size_t e = cross_edges(a, b);
    if (e == 0) return PairKind::Empty;
    if (e == capacity(a, b)) return PairKind::Full;
    return PairKind::OneSided;
  }
  bool one_sided(std::size_t a, std::size_t b) const { return a != b && kind(a, b) == PairKind::OneSided; }

  bool clique(std::size_t a) const {
    const std::size_t s = size_[a];
    return within_[a] == (s < 2 ? 0 : s * (s - 1) / 2);
  }
  bool independent(std::size_t a) const { return within_[a] == 0; }

  const std::vector<std::size_t>& projection(std::size_t a, std::size_t b) const {
    return projections_[a * k_ + b];
  }
  std::size_t runs(std::size_t a, std::size_t b, std::size_t of) const { return runs_of(projection(a, b), of); }
  bool palindrome(std::size_t a, std::size_t b) const { return palindromic(projection(a, b)); }

 private:
  std::size_t k_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> edges_;
  std::vector<std::size_t> within_;
  std::vector<std::vector<std::size_t>> projections_;
};

enum class PairVerdictKind { Forced, Free, Infeasible };

struct DensePairVerdict {
  PairVerdictKind kind = PairVerdictKind::Infeasible;
  std::optional<Dir> word;
};

/// Tries {ab} and {ba} on the pair subinstance. For a non-palindromic
/// projection at most one can pass. (The run-stripping argument peels the
/// first and last a-runs, matching their lengths against the universal set
/// X_a and the isolated set Y_a, until the lengths differ or the word ends
/// with b; verification on the subinstance decides the same question.)
inline DensePairVerdict forced_pair(const DenseInstance& inst, std::size_t a, std::size_t b) {
  const DenseInstance sub = pair_subinstance(inst, a, b);
  const bool ab = verify(sub, table_of(inst.k, {Dir{a, b}}));
  const bool ba = verify(sub, table_of(inst.k, {Dir{b, a}}));
  if (ab && ba) return {PairVerdictKind::Free, std::nullopt};
  if (ab) return {PairVerdictKind::Forced, Dir{a, b}};
  if (ba) return {PairVerdictKind::Forced, Dir{b, a}};
  return {PairVerdictKind::Infeasible, std::nullopt};
}

/// Given premise d_ab in {ab, ba}, which of {bc, cb} can accompany it on
/// (E(V_b, V_a u V_c), {a,b,c}, w[a,b,c])? nullopt when neither can.
inline std::optional<Dir> cascade(const DenseInstance& inst, std::size_t a, std::size_t b, std::size_t c,
                                  Dir premise) {
  PairMask pairs(inst.k * inst.k, 0);
  mark_pair(pairs, inst.k, a, b);
  mark_pair(pairs, inst.k, b, c);
  const DenseInstance sub = restrict(inst, letter_mask(inst.k, {a, b, c}), pairs);
  const bool bc = verify(sub, table_of(inst.k, {premise, Dir{b, c}}));
  const bool cb = verify(sub, table_of(inst.k, {premise, Dir{c, b}}));
  if (bc && cb) throw InternalError("both orientations of a palindromic pair follow from one premise");
  if (bc) return Dir{b, c};
  if (cb) return Dir{c, b};
  return std::nullopt;
}

/// P_a: letters b with {a,b} one-sided and at least two a-runs in w[a,b].
inline std::vector<std::size_t> partners(const PairFacts& facts, std::size_t k, std::size_t a) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < k; ++b)
    if (facts.one_sided(a, b) && facts.runs(a, b, a) >= 2) out.push_back(b);
  return out;
}

/// I_a: vertices of {a} u P_a, edges of E(V_a, V_b) for b in P_a, word w[P_a u {a}].
inline DenseInstance block_subinstance(const DenseInstance& inst, std::size_t a,
                                       const std::vector<std::size_t>& partner_letters) {
  LetterMask letters(inst.k, 0);
  PairMask pairs(inst.k * inst.k, 0);
  letters[a] = 1;
  for (std::size_t b : partner_letters) {
    letters[b] = 1;
    mark_pair(pairs, inst.k, a, b);
  }
  return restrict(inst, letters, pairs);
}

struct DenseFormula {
  std::vector<Dir> variables;  // sorted
  std::vector<Clause> clauses;  // sorted, unique
};

struct DenseBuild {
  std::optional<DenseFormula> formula;
  std::string rejection;
};

class FormulaBuilder {
 public:
  explicit FormulaBuilder(const DenseInstance& inst) : inst_(inst), facts_(inst) {}

  const PairFacts& facts() const { return facts_; }

  DenseBuild build() {
    const std::size_t k = inst_.k;
    for (std::size_t a = 0; a < k; ++a)
      if (!facts_.clique(a) && !facts_.independent(a))
        return reject("color group " + std::to_string(a + 1) + " is neither a clique nor independent");
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (facts_.one_sided(a, b) && facts_.runs(a, b, a) < 2 && facts_.runs(a, b, b) < 2)
          return reject("one-sided pair " + std::to_string(a + 1) + "/" + std::to_string(b + 1) +
                        " has a single run of each letter");

    DenseFormula f;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (facts_.one_sided(a, b)) f.variables.push_back({a, b});
    std::sort(f.variables.begin(), f.variables.end());
    for (std::size_t i = 0; i < f.variables.size(); ++i) var_.emplace(f.variables[i], i);

    // (1) exactly one orientation per one-sided pair, (2) forced orientation.
    forced_.assign(k * k, std::nullopt);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        if (!facts_.one_sided(a, b)) continue;
        clauses_.push_back(Clause::binary(pos({a, b}), pos({b, a})));
        clauses_.push_back(Clause::binary(neg({a, b}), neg({b, a})));
        const DensePairVerdict verdict = forced_pair(inst_, a, b);
        const bool palindrome = facts_.palindrome(a, b);
        if (verdict.kind == PairVerdictKind::Infeasible)
          return reject("one-sided pair " + std::to_string(a + 1) + "/" + std::to_string(b + 1) +
                        " admits neither orientation");
        if (palindrome != (verdict.kind == PairVerdictKind::Free))
          throw InternalError("pair orientation freedom disagrees with palindromicity");
        if (verdict.kind == PairVerdictKind::Forced) {
          forced_[a * k + b] = forced_[b * k + a] = verdict.word;
          clauses_.push_back(Clause::unit(pos(*verdict.word)));
        }
      }

    // (3) premise implications for every ordered qualifying triple.
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c) {
          if (a == c || !facts_.one_sided(a, b) || !facts_.one_sided(b, c)) continue;
          if (facts_.runs(a, b, b) < 2 || facts_.runs(b, c, b) < 2 || !facts_.palindrome(b, c)) continue;
          for (Dir premise : {Dir{a, b}, Dir{b, a}}) {
            if (auto implied = cascade_cached(a, b, c, premise))
              clauses_.push_back(Clause::binary(neg(premise), pos(*implied)));
            else
              clauses_.push_back(Clause::unit(neg(premise)));
          }
        }

    // (4) block clauses.
    for (std::size_t a = 0; a < k; ++a) add_block_clauses(a);

    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
    f.clauses = std::move(clauses_);
    return {std::move(f), {}};
  }

 private:
  DenseBuild reject(std::string why) { return {std::nullopt, std::move(why)}; }

  Literal pos(Dir d) const { return {var_.at(d), true}; }
  Literal neg(Dir d) const { return {var_.at(d), false}; }

  std::optional<Dir> cascade_cached(std::size_t a, std::size_t b, std::size_t c, Dir premise) {
    const auto key = std::make_tuple(a, b, c, premise.from, premise.to);
    auto it = cascades_.find(key);
    if (it != cascades_.end()) return it->second;
    auto result = cascade(inst_, a, b, c, premise);
    cascades_.emplace(key, result);
    return result;
  }

  void add_block_clauses(std::size_t a) {
    const std::size_t k = inst_.k;
    const std::vector<std::size_t> p = partners(facts_, k, a);
    if (p.empty()) return;
    std::vector<std::size_t> non_pal, pal;
    for (std::size_t b : p) (facts_.palindrome(a, b) ? pal : non_pal).push_back(b);
    const DenseInstance block = block_subinstance(inst_, a, p);

    // Assemble {d_ac : c in P_a} from the premise d_ab; false if some cascade is empty.
    auto assemble = [&](std::size_t b, Dir premise, std::vector<Dir>& words) {
      words.clear();
      for (std::size_t c : non_pal) words.push_back(*forced_[a * k + c]);
      for (std::size_t c : pal) {
        if (c == b) {
          words.push_back(premise);
          continue;
        }
        auto d = cascade_cached(b, a, c, premise);
        if (!d) return false;
        words.push_back(*d);
      }
      return true;
    };

    std::vector<Dir> words;
    if (!non_pal.empty()) {
      const std::size_t b = non_pal.front();
      const Dir premise = *forced_[a * k + b];
      if (!assemble(b, premise, words) || !verify(block, table_of(k, words)))
        clauses_.push_back(Clause::unit(neg(premise)));
      return;
    }
    const std::size_t b = pal.front();
    for (Dir premise : {Dir{a, b}, Dir{b, a}})
      if (!assemble(b, premise, words) || !verify(block, table_of(k, words)))
        clauses_.push_back(Clause::unit(neg(premise)));
  }

  const DenseInstance& inst_;
  PairFacts facts_;
  std::map<Dir, std::size_t> var_;
  std::vector<std::optional<Dir>> forced_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>, std::optional<Dir>>
      cascades_;
  std::vector<Clause> clauses_;
};

template <LetterToken Letter>
DirectedPair<Letter> named(const Alphabet<Letter>& sigma, Dir d) {
  return {sigma[d.from], sigma[d.to]};
}

template <LetterToken Letter>
Dir dense_pair(const Alphabet<Letter>& sigma, const DirectedPair<Letter>& p) {
  return {sigma.index(p.first), sigma.index(p.second)};
}

template <LetterToken Letter>
std::vector<std::uint8_t> checked_table(const Decoder<Letter>& d, const Alphabet<Letter>& sigma) {
  for (const auto& p : d)
    if (!sigma.contains(p.first) || !sigma.contains(p.second))
      throw InputError("decoder uses a letter outside the alphabet");
  return decoder_table(d, sigma);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

/// Is D a solution, i.e. is G isomorphic to G(D, w) respecting chi?
/// Malformed instances (length or letter-count mismatch, unused alphabet
/// letters) raise InputError rather than answering NO.
template <LetterToken Letter>
bool verify_decoder(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w,
                    const Decoder<Letter>& d) {
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  return detail::verify(inst, detail::checked_table(d, chi.alphabet()));
}

using PairKind = detail::PairKind;

struct PairClass {
  PairKind kind = PairKind::Empty;
  std::size_t edge_count = 0;
  std::size_t capacity = 0;
};

/// Run statistics of w[a,b], normalised so that `first` is the letter w[a,b] starts with.
template <LetterToken Letter>
struct PairProfile {
  Letter first{};
  Letter second{};
  bool swapped = false;  // true when first == b
  std::size_t first_runs = 0;
  std::size_t second_runs = 0;
  bool palindrome = false;
  std::size_t universal_count = 0;  // |X_first|: adjacent to all of V_second
  std::size_t isolated_count = 0;   // |Y_first|: adjacent to none of V_second
  std::size_t first_run_length = 0; // first run of `first` in w[a,b]
  std::size_t last_run_length = 0;  // last run of `first` in w[a,b]
};

template <LetterToken Letter>
struct PairAnalysis {
  PairClass cls;
  PairProfile<Letter> profile;
};

template <LetterToken Letter>
PairAnalysis<Letter> classify_pair(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w,
                                   const Letter& a, const Letter& b) {
  if (a == b) throw InputError("classify_pair needs two distinct letters");
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  const std::size_t ia = chi.alphabet().index(a), ib = chi.alphabet().index(b);
  const detail::PairFacts facts(inst);

  PairAnalysis<Letter> out;
  out.cls = {facts.kind(ia, ib), facts.cross_edges(ia, ib), facts.capacity(ia, ib)};

  const auto& proj = facts.projection(ia, ib);
  std::size_t f = ia, s = ib;
  if (!proj.empty() && proj.front() == ib) std::swap(f, s);
  auto& p = out.profile;
  p.first = chi.alphabet()[f];
  p.second = chi.alphabet()[s];
  p.swapped = f == ib;
  p.first_runs = detail::runs_of(proj, f);
  p.second_runs = detail::runs_of(proj, s);
  p.palindrome = detail::palindromic(proj);
  const auto& second_group = chi.group(s);
  for (VertexId v : chi.group(f)) {
    std::size_t hits = 0;
    for (VertexId u : second_group) hits += g.adjacent(v, u) ? 1 : 0;
    if (hits == second_group.size()) ++p.universal_count;
    if (hits == 0) ++p.isolated_count;
  }
  std::vector<std::size_t> lengths;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    if (proj[i] != f) continue;
    if (i == 0 || proj[i - 1] != f)
      lengths.push_back(1);
    else
      ++lengths.back();
  }
  if (!lengths.empty()) {
    p.first_run_length = lengths.front();
    p.last_run_length = lengths.back();
  }
  return out;
}

using PairVerdictKind = detail::PairVerdictKind;

template <LetterToken Letter>
struct PairVerdict {
  PairVerdictKind kind = PairVerdictKind::Infeasible;
  std::optional<DirectedPair<Letter>> word;  // set iff kind == Forced
};

/// Orientation of a one-sided pair forced by the pair subinstance alone.
/// Requires {a,b} one-sided with at least two runs of a or of b in w[a,b].
template <LetterToken Letter>
PairVerdict<Letter> forced_pair_word(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w,
                                     const Letter& a, const Letter& b) {
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  const auto& sigma = chi.alphabet();
  const std::size_t ia = sigma.index(a), ib = sigma.index(b);
  const detail::PairFacts facts(inst);
  if (!facts.one_sided(ia, ib)) throw InternalError("forced_pair_word called on a pair that is not one-sided");
  if (facts.runs(ia, ib, ia) < 2 && facts.runs(ia, ib, ib) < 2)
    throw InternalError("forced_pair_word called on a single-run projection");
  const auto v = detail::forced_pair(inst, ia, ib);
  PairVerdict<Letter> out{v.kind, std::nullopt};
  if (v.word) out.word = detail::named(sigma, *v.word);
  return out;
}

enum class CascadeKind { Implied, NoSolutionWithPremise };

template <LetterToken Letter>
struct CascadeVerdict {
  CascadeKind kind = CascadeKind::NoSolutionWithPremise;
  std::optional<DirectedPair<Letter>> word;  // d_bc, set iff Implied
};

/// Orientation of {b,c} implied by the premise d_ab in {ab, ba}.
/// Requires distinct one-sided {a,b} and {b,c}, two or more b-runs in both
/// w[a,b] and w[b,c], and w[b,c] palindromic.
template <LetterToken Letter>
CascadeVerdict<Letter> cascade_word(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w,
                                    const Letter& a, const Letter& b, const Letter& c,
                                    const DirectedPair<Letter>& premise) {
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  const auto& sigma = chi.alphabet();
  const std::size_t ia = sigma.index(a), ib = sigma.index(b), ic = sigma.index(c);
  const detail::PairFacts facts(inst);
  if (ia == ic || !facts.one_sided(ia, ib) || !facts.one_sided(ib, ic))
    throw InternalError("cascade_word needs two distinct one-sided pairs sharing b");
  if (facts.runs(ia, ib, ib) < 2 || facts.runs(ib, ic, ib) < 2 || !facts.palindrome(ib, ic))
    throw InternalError("cascade_word preconditions on w[a,b] / w[b,c] do not hold");
  const detail::Dir d = detail::dense_pair(sigma, premise);
  if (!((d.from == ia && d.to == ib) || (d.from == ib && d.to == ia)))
    throw InternalError("cascade premise must be ab or ba");
  auto implied = detail::cascade(inst, ia, ib, ic, d);
  if (!implied) return {CascadeKind::NoSolutionWithPremise, std::nullopt};
  return {CascadeKind::Implied, detail::named(sigma, *implied)};
}

/// P_a split by palindromicity of w[a,b].
template <LetterToken Letter>
struct PalindromeNeighborhood {
  std::vector<Letter> partners;        // P_a
  std::vector<Letter> palindromic;     // P_a^p
  std::vector<Letter> non_palindromic; // P_a^n
};

template <LetterToken Letter>
PalindromeNeighborhood<Letter> palindrome_neighborhood(const Graph& g, const Coloring<Letter>& chi,
                                                       const Word<Letter>& w, const Letter& a) {
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  const auto& sigma = chi.alphabet();
  const std::size_t ia = sigma.index(a);
  const detail::PairFacts facts(inst);
  PalindromeNeighborhood<Letter> out;
  for (std::size_t b : detail::partners(facts, inst.k, ia)) {
    out.partners.push_back(sigma[b]);
    (facts.palindrome(ia, b) ? out.palindromic : out.non_palindromic).push_back(sigma[b]);
  }
  return out;
}

/// 2-CNF over the orientation variables {ab, ba : {a,b} one-sided}.
template <LetterToken Letter>
struct Cnf2Formula {
  std::vector<DirectedPair<Letter>> variables;
  std::vector<Clause> clauses;

  std::optional<std::size_t> variable(const DirectedPair<Letter>& p) const {
    auto it = std::find(variables.begin(), variables.end(), p);
    if (it == variables.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables.begin());
  }

  bool contains(const Clause& c) const { return std::find(clauses.begin(), clauses.end(), c) != clauses.end(); }
};

/// The formula, or the reason the sanity checks already rule out a solution.
template <LetterToken Letter>
struct FormulaOutcome {
  std::optional<Cnf2Formula<Letter>> formula;
  std::string rejection;

  bool rejected() const { return !formula.has_value(); }
};

template <LetterToken Letter>
FormulaOutcome<Letter> build_formula(const Graph& g, const Coloring<Letter>& chi, const Word<Letter>& w) {
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  detail::FormulaBuilder builder(inst);
  detail::DenseBuild built = builder.build();
  FormulaOutcome<Letter> out;
  if (!built.formula) {
    out.rejection = std::move(built.rejection);
    return out;
  }
  Cnf2Formula<Letter> f;
  for (const detail::Dir& d : built.formula->variables) f.variables.push_back(detail::named(chi.alphabet(), d));
  f.clauses = std::move(built.formula->clauses);
  out.formula = std::move(f);
  return out;
}

template <LetterToken Letter>
std::optional<std::vector<bool>> solve_2sat(const Cnf2Formula<Letter>& f) {
  return solve_2sat(f.variables.size(), f.clauses);
}

/// A decoder D with G isomorphic to G(D, w) respecting chi, or nullopt when none exists.
template <LetterToken Letter>
std::optional<Decoder<Letter>> retrieve_decoder(const Graph& g, const Coloring<Letter>& chi,
                                                const Word<Letter>& w) {
  const detail::DenseInstance inst = detail::make_dense(g, chi, w);
  detail::FormulaBuilder builder(inst);
  detail::DenseBuild built = builder.build();
  if (!built.formula) return std::nullopt;
  auto assignment = solve_2sat(built.formula->variables.size(), built.formula->clauses);
  if (!assignment) return std::nullopt;

  const auto& facts = builder.facts();
  const auto& sigma = chi.alphabet();
  std::vector<detail::Dir> chosen;
  for (std::size_t i = 0; i < assignment->size(); ++i)
    if ((*assignment)[i]) chosen.push_back(built.formula->variables[i]);
  for (std::size_t a = 0; a < inst.k; ++a) {
    if (facts.group_size(a) >= 2 && facts.clique(a)) chosen.push_back({a, a});
    for (std::size_t b = 0; b < inst.k; ++b)
      if (a != b && facts.kind(a, b) == PairKind::Full) chosen.push_back({a, b});
  }
  if (!detail::verify(inst, detail::table_of(inst.k, chosen)))
    throw InternalError("satisfying assignment does not yield a valid decoder");

  Decoder<Letter> d;
  for (const detail::Dir& p : chosen) d.insert(detail::named(sigma, p));
  return d;
}

}  // namespace lettericity

// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace testing_support;

namespace {

using P = DirectedPair<Str>;

Literal lit(const Cnf2Formula<Str>& f, const char* pair, bool positive) {
  auto v = f.variable({Str(1, pair[0]), Str(1, pair[1])});
  REQUIRE(v.has_value());
  return {*v, positive};
}

// Planted instance, with a random edge flipped half of the time.
Instance mixed_instance(std::mt19937_64& rng, std::size_t max_n, std::size_t max_k) {
  const std::size_t n = 1 + rng() % max_n, k = 1 + rng() % max_k;
  Instance inst = planted(rng, n, k).instance;
  if (n >= 2 && rng() % 2) inst.graph = flip_random_edge(rng, inst.graph);
  return inst;
}

// Subgraph keeping V_b x (V_a u V_c) edges only, in test-local terms.
Instance triple_subinstance(const Instance& inst, const Str& a, const Str& b, const Str& c) {
  const auto& chi = inst.coloring;
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < inst.graph.size(); ++v)
    if (chi(v) == a || chi(v) == b || chi(v) == c) keep.push_back(v);
  const Graph sub = filtered_subgraph(inst.graph, keep, [&](VertexId u, VertexId v) {
    return (chi(u) == b) != (chi(v) == b);
  });
  std::vector<Str> assignment;
  for (VertexId v : keep) assignment.push_back(chi(v));
  SWord w = project_word(inst.word, std::set<Str>{a, b, c});
  return {sub, SColoring(assignment, Alphabet<Str>{a, b, c}), w, {}};
}

}  // namespace

TEST_CASE("verify_decoder examples", "[decoder_retrieval]") {
  const Instance f2 = forced_ab_instance();
  CHECK(verify_decoder(f2.graph, f2.coloring, f2.word, decoder_of({"ab"})));
  CHECK_FALSE(verify_decoder(f2.graph, f2.coloring, f2.word, decoder_of({"ba"})));
  CHECK_FALSE(naive_decoder_valid(f2.graph, f2.coloring, f2.word, decoder_of({"ba"})));

  const Graph none;
  CHECK(verify_decoder(none, SColoring(std::vector<Str>{}, Alphabet<Str>{}), SWord{}, SDecoder{}));

  const Instance f1 = banane_instance();
  CHECK(verify_decoder(f1.graph, f1.coloring, f1.word, f1.decoder));
}

TEST_CASE("verify_decoder rejects malformed instances", "[decoder_retrieval]") {
  const Instance f2 = forced_ab_instance();
  CHECK_THROWS_AS(verify_decoder(f2.graph, f2.coloring, word_of("abbab"), f2.decoder), InputError);
  CHECK_THROWS_AS(verify_decoder(f2.graph, f2.coloring, word_of("abbbba"), f2.decoder), InputError);
  CHECK_THROWS_AS(verify_decoder(f2.graph, f2.coloring, f2.word, decoder_of({"az"})), InputError);
  const SColoring wide(f2.coloring.assignment(), Alphabet<Str>{"a", "b", "z"});
  CHECK_THROWS_AS(verify_decoder(f2.graph, wide, f2.word, f2.decoder), InputError);
}

TEST_CASE("verify_decoder agrees with placement enumeration", "[decoder_retrieval][property]") {
  std::mt19937_64 rng(41);
  int yes = 0;
  for (int round = 0; round < 400; ++round) {
    const Instance inst = mixed_instance(rng, 6, 3);
    const auto& sigma = inst.coloring.alphabet();
    SDecoder d;
    for (const auto& a : sigma)
      for (const auto& b : sigma)
        if (rng() % 2) d.insert({a, b});
    if (rng() % 2) d = inst.decoder;
    const bool got = verify_decoder(inst.graph, inst.coloring, inst.word, d);
    CHECK(got == naive_decoder_valid(inst.graph, inst.coloring, inst.word, d));
    yes += got;
  }
  CHECK(yes > 50);
}

TEST_CASE("classify_pair", "[decoder_retrieval]") {
  const Instance f2 = forced_ab_instance();
  const auto r = classify_pair(f2.graph, f2.coloring, f2.word, Str("a"), Str("b"));
  CHECK(r.cls.kind == PairKind::OneSided);
  CHECK(r.cls.edge_count == 4);
  CHECK(r.cls.capacity == 9);
  CHECK(r.profile.first == "a");
  CHECK(r.profile.first_runs == 3);
  CHECK(r.profile.second_runs == 2);
  CHECK_FALSE(r.profile.palindrome);
  CHECK(r.profile.universal_count == 1);
  CHECK(r.profile.isolated_count == 1);
  CHECK(r.profile.first_run_length == 1);
  CHECK(r.profile.last_run_length == 1);

  const Graph s3 = star(3);
  const SColoring centre(std::vector<Str>{"a", "b", "b", "b"});
  CHECK(classify_pair(s3, centre, word_of("abbb"), Str("a"), Str("b")).cls.kind == PairKind::Full);

  const Graph split = labelled({"a1", "a2", "b1", "b2"}, {{"a1", "a2"}, {"b1", "b2"}});
  const SColoring halves(std::vector<Str>{"a", "a", "b", "b"});
  CHECK(classify_pair(split, halves, word_of("abab"), Str("a"), Str("b")).cls.kind == PairKind::Empty);
  CHECK_THROWS_AS(classify_pair(split, halves, word_of("abab"), Str("a"), Str("a")), InputError);
}

TEST_CASE("forced pair words", "[decoder_retrieval]") {
  const Instance f2 = forced_ab_instance();
  const auto v2 = forced_pair_word(f2.graph, f2.coloring, f2.word, Str("a"), Str("b"));
  CHECK(v2.kind == PairVerdictKind::Forced);
  CHECK(v2.word == P{"a", "b"});

  const Instance f3 = bcbacb_instance();
  CHECK(forced_pair_word(f3.graph, f3.coloring, f3.word, Str("b"), Str("c")).kind == PairVerdictKind::Free);
  const auto ab = forced_pair_word(f3.graph, f3.coloring, f3.word, Str("a"), Str("b"));
  CHECK(ab.kind == PairVerdictKind::Forced);
  CHECK(ab.word == P{"b", "a"});

  CHECK_THROWS_AS(forced_pair_word(f3.graph, f3.coloring, f3.word, Str("a"), Str("c")), InternalError);
}

TEST_CASE("cascades", "[decoder_retrieval]") {
  const Instance f3 = bcbacb_instance();
  const auto from_ba = cascade_word(f3.graph, f3.coloring, f3.word, Str("a"), Str("b"), Str("c"), P{"b", "a"});
  CHECK(from_ba.kind == CascadeKind::Implied);
  CHECK(from_ba.word == P{"b", "c"});
  const auto from_ab = cascade_word(f3.graph, f3.coloring, f3.word, Str("a"), Str("b"), Str("c"), P{"a", "b"});
  CHECK(from_ab.kind == CascadeKind::NoSolutionWithPremise);
  CHECK_THROWS_AS(cascade_word(f3.graph, f3.coloring, f3.word, Str("a"), Str("b"), Str("c"), P{"b", "c"}),
                  InternalError);
}

TEST_CASE("cascades agree with exhaustive checks on the triple subinstance", "[decoder_retrieval][property]") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int round = 0; round < 6000 && checked < 150; ++round) {
    const Instance inst = planted(rng, 4 + rng() % 4, 3).instance;
    const auto& sigma = inst.coloring.alphabet();
    if (sigma.size() < 3) continue;
    for (std::size_t ia = 0; ia < 3; ++ia)
      for (std::size_t ib = 0; ib < 3; ++ib)
        for (std::size_t ic = 0; ic < 3; ++ic) {
          if (ia == ib || ib == ic || ia == ic) continue;
          const Str a = sigma[ia], b = sigma[ib], c = sigma[ic];
          const auto ab = classify_pair(inst.graph, inst.coloring, inst.word, a, b);
          const auto bc = classify_pair(inst.graph, inst.coloring, inst.word, b, c);
          if (ab.cls.kind != PairKind::OneSided || bc.cls.kind != PairKind::OneSided) continue;
          const SWord wab = project_word(inst.word, std::set<Str>{a, b});
          const SWord wbc = project_word(inst.word, std::set<Str>{b, c});
          if (count_runs(wab, b) < 2 || count_runs(wbc, b) < 2 || !is_palindrome(wbc)) continue;
          const Instance sub = triple_subinstance(inst, a, b, c);
          for (const P& premise : {P{a, b}, P{b, a}}) {
            SDecoder with_bc{}, with_cb{};
            with_bc.insert(premise);
            with_bc.insert({b, c});
            with_cb.insert(premise);
            with_cb.insert({c, b});
            const bool ok_bc = naive_decoder_valid(sub.graph, sub.coloring, sub.word, with_bc);
            const bool ok_cb = naive_decoder_valid(sub.graph, sub.coloring, sub.word, with_cb);
            REQUIRE_FALSE((ok_bc && ok_cb));
            const auto v = cascade_word(inst.graph, inst.coloring, inst.word, a, b, c, premise);
            if (!ok_bc && !ok_cb) {
              CHECK(v.kind == CascadeKind::NoSolutionWithPremise);
            } else {
              CHECK(v.kind == CascadeKind::Implied);
              CHECK(v.word == (ok_bc ? P{b, c} : P{c, b}));
            }
            ++checked;
          }
        }
  }
  CHECK(checked >= 100);
}

TEST_CASE("formula for the bcbacb instance", "[decoder_retrieval]") {
  const Instance f3 = bcbacb_instance();
  const auto outcome = build_formula(f3.graph, f3.coloring, f3.word);
  REQUIRE_FALSE(outcome.rejected());
  const auto& f = *outcome.formula;
  auto vars = f.variables;
  std::sort(vars.begin(), vars.end());
  CHECK(vars == std::vector<P>{{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}});
  CHECK(f.contains(Clause::binary(lit(f, "ab", true), lit(f, "ba", true))));
  CHECK(f.contains(Clause::binary(lit(f, "ab", false), lit(f, "ba", false))));
  CHECK(f.contains(Clause::binary(lit(f, "bc", true), lit(f, "cb", true))));
  CHECK(f.contains(Clause::binary(lit(f, "bc", false), lit(f, "cb", false))));
  CHECK(f.contains(Clause::unit(lit(f, "ba", true))));
  CHECK(f.contains(Clause::binary(lit(f, "ba", false), lit(f, "bc", true))));

  // Exactly one model: ba and bc true, ab and cb false.
  std::vector<std::vector<bool>> models;
  for (unsigned m = 0; m < 16; ++m) {
    std::vector<bool> a(4);
    for (std::size_t i = 0; i < 4; ++i) a[i] = (m >> i) & 1U;
    if (std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) { return c.satisfied_by(a); }))
      models.push_back(a);
  }
  REQUIRE(models.size() == 1);
  auto solved = solve_2sat(f);
  REQUIRE(solved.has_value());
  CHECK(*solved == models.front());
  CHECK((*solved)[*f.variable({"b", "a"})]);
  CHECK((*solved)[*f.variable({"b", "c"})]);
  CHECK_FALSE((*solved)[*f.variable({"a", "b"})]);
  CHECK_FALSE((*solved)[*f.variable({"c", "b"})]);
}

TEST_CASE("formula edge cases", "[decoder_retrieval]") {
  const Instance f2 = forced_ab_instance();
  const auto o2 = build_formula(f2.graph, f2.coloring, f2.word);
  REQUIRE_FALSE(o2.rejected());
  CHECK(o2.formula->contains(Clause::unit(lit(*o2.formula, "ab", true))));

  const Graph s3 = star(3);
  const SColoring centre(std::vector<Str>{"a", "b", "b", "b"});
  const auto full = build_formula(s3, centre, word_of("abbb"));
  REQUIRE_FALSE(full.rejected());
  CHECK(full.formula->variables.empty());
  CHECK(full.formula->clauses.empty());

  const Graph mixed = labelled({"a1", "a2", "a3"}, {{"a1", "a2"}});
  const SColoring one(std::vector<Str>{"a", "a", "a"});
  CHECK(build_formula(mixed, one, word_of("aaa")).rejected());
}

TEST_CASE("palindrome neighbourhoods", "[decoder_retrieval]") {
  const Instance f3 = bcbacb_instance();
  const auto nb = palindrome_neighborhood(f3.graph, f3.coloring, f3.word, Str("b"));
  CHECK(nb.partners == std::vector<Str>{"a", "c"});
  CHECK(nb.palindromic == std::vector<Str>{"c"});
  CHECK(nb.non_palindromic == std::vector<Str>{"a"});
  CHECK(palindrome_neighborhood(f3.graph, f3.coloring, f3.word, Str("a")).partners.empty());
}

TEST_CASE("retrieve_decoder examples", "[decoder_retrieval]") {
  const Instance f2 = forced_ab_instance();
  CHECK(retrieve_decoder(f2.graph, f2.coloring, f2.word) == decoder_of({"ab"}));
  const Instance f3 = bcbacb_instance();
  CHECK(retrieve_decoder(f3.graph, f3.coloring, f3.word) == decoder_of({"ba", "bc"}));
  const Graph mixed = labelled({"a1", "a2", "a3"}, {{"a1", "a2"}});
  CHECK_FALSE(retrieve_decoder(mixed, SColoring(std::vector<Str>{"a", "a", "a"}), word_of("aaa")).has_value());
  const Instance f1 = banane_instance();
  auto d1 = retrieve_decoder(f1.graph, f1.coloring, f1.word);
  REQUIRE(d1.has_value());
  CHECK(naive_decoder_valid(f1.graph, f1.coloring, f1.word, *d1));
}

TEST_CASE("retrieve_decoder agrees with exhaustive decoder search", "[decoder_retrieval][property]") {
  std::mt19937_64 rng(43);
  int feasible = 0, infeasible = 0;
  for (int round = 0; round < 300; ++round) {
    const Instance inst = mixed_instance(rng, 6, 3);
    const auto got = retrieve_decoder(inst.graph, inst.coloring, inst.word);
    const auto all = naive_all_decoders(inst.graph, inst.coloring, inst.word);
    REQUIRE(got.has_value() == !all.empty());
    if (got) {
      ++feasible;
      CHECK(std::find(all.begin(), all.end(), *got) != all.end());
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible > 50);
  CHECK(infeasible > 20);
}

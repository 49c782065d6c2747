// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace testing_support;

namespace {

std::vector<VertexId> all_vertices(std::size_t n) {
  std::vector<VertexId> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_topological(const OrderDigraph& h, const std::vector<VertexId>& order) {
  std::vector<std::size_t> at(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) at[order[i]] = i;
  for (VertexId u = 0; u < h.size(); ++u)
    for (VertexId v : h.successors(u))
      if (at[u] > at[v]) return false;
  return true;
}

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  Graph g = random_graph(rng, n);
  std::vector<Str> assignment;
  for (std::size_t i = 0; i < n; ++i) assignment.push_back(letter(i < k ? i : rng() % k));
  std::vector<Str> letters;
  for (std::size_t i = 0; i < std::min(n, k); ++i) letters.push_back(letter(i));
  SDecoder d;
  for (const auto& a : letters)
    for (const auto& b : letters)
      if (rng() % 2) d.insert({a, b});
  return {g, SColoring(assignment, Alphabet<Str>(letters)), {}, d};
}

}  // namespace

TEST_CASE("order digraph of the banane instance", "[word_retrieval]") {
  const Instance f = banane_instance();
  const OrderDigraph h = build_order_digraph(f.graph, f.coloring, f.decoder);
  const Graph& g = f.graph;
  CHECK(h.has_arc(g.id("n1"), g.id("a2")));
  CHECK(h.has_arc(g.id("b1"), g.id("a1")));
  CHECK_FALSE(h.has_arc(g.id("a1"), g.id("b1")));

  auto order = topological_order(h);
  REQUIRE(order.has_value());
  std::vector<Str> names;
  for (VertexId v : *order) names.push_back(g.label(v));
  CHECK(names == std::vector<Str>{"b1", "a1", "n1", "a2", "n2", "e1"});
}

TEST_CASE("order digraph edge cases", "[word_retrieval]") {
  const Graph k2 = complete(2);
  const SColoring aa(std::vector<Str>{"a", "a"});
  CHECK(build_order_digraph(k2, aa, decoder_of({"aa"})).arc_count() == 0);
  const OrderDigraph cycle = build_order_digraph(k2, aa, SDecoder{});
  CHECK(cycle.has_arc(0, 1));
  CHECK(cycle.has_arc(1, 0));
  CHECK_FALSE(topological_order(cycle).has_value());

  OrderDigraph empty(3);
  CHECK(topological_order(empty) == std::vector<VertexId>{0, 1, 2});
  CHECK_THROWS_AS(empty.add_arc(1, 1), InternalError);

  CHECK_THROWS_AS(build_order_digraph(path(3), aa, SDecoder{}), InputError);
}

TEST_CASE("retrieve_word examples", "[word_retrieval]") {
  const Instance f = banane_instance();
  auto sol = retrieve_word(f.graph, f.coloring, f.decoder);
  REQUIRE(sol.has_value());
  CHECK(sol->word == word_of("banane"));

  const Graph none = Graph::numbered(3);
  auto aaa = retrieve_word(none, SColoring(std::vector<Str>{"a", "a", "a"}), SDecoder{});
  REQUIRE(aaa.has_value());
  CHECK(aaa->word == word_of("aaa"));

  CHECK_FALSE(retrieve_word(complete(2), SColoring(std::vector<Str>{"a", "a"}), SDecoder{}).has_value());
}

TEST_CASE("topological orders are exactly the generalized solutions", "[word_retrieval][property]") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = 1 + rng() % 6, k = 1 + rng() % 3;
    const Instance inst = random_instance(rng, n, k);
    const OrderDigraph h = build_order_digraph(inst.graph, inst.coloring, inst.decoder);
    auto p = all_vertices(n);
    do {
      CHECK(is_topological(h, p) == is_generalized_solution(inst.graph, inst.coloring, inst.decoder, p));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("absence is confirmed by exhaustive search", "[word_retrieval][property]") {
  std::mt19937_64 rng(22);
  int absent = 0;
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng() % 7, k = 1 + rng() % 3;
    const Instance inst = random_instance(rng, n, k);
    auto sol = retrieve_word(inst.graph, inst.coloring, inst.decoder);
    CHECK(sol.has_value() == naive_word_exists(inst.graph, inst.coloring, inst.decoder));
    if (!sol) ++absent;
  }
  CHECK(absent > 20);
}

TEST_CASE("decode then retrieve round trip", "[word_retrieval][property]") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 1000; ++round) {
    const Planted p = planted(rng, 1 + rng() % 12, 1 + rng() % 4);
    const Instance& inst = p.instance;
    auto sol = retrieve_word(inst.graph, inst.coloring, inst.decoder);
    REQUIRE(sol.has_value());
    const Graph back = decode(inst.decoder, sol->word, inst.coloring.alphabet()).graph;
    std::vector<VertexId> position_of(inst.graph.size());
    for (std::size_t i = 0; i < sol->permutation.size(); ++i) position_of[sol->permutation[i]] = i;
    CHECK(is_isomorphism(inst.graph, back, IsomorphismMapping{position_of}));
  }
}

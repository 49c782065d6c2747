// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "lettericity/errors.hpp"

namespace lettericity {

/// Literal over variable `var`; positive means the variable itself.
struct Literal {
  std::size_t var = 0;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// One- or two-literal disjunction. A unit clause has `second` empty.
struct Clause {
  Literal first;
  std::optional<Literal> second;

  static Clause unit(Literal a) { return {a, std::nullopt}; }
  static Clause binary(Literal a, Literal b) {
    if (b < a) std::swap(a, b);
    if (a == b) return unit(a);
    return {a, b};
  }

  bool satisfied_by(const std::vector<bool>& assignment) const {
    auto holds = [&](const Literal& l) { return assignment[l.var] == l.positive; };
    return holds(first) || (second && holds(*second));
  }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend bool operator<(const Clause& a, const Clause& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  }
};

/// 2-CNF solver over the implication graph: x and not-x in one strong
/// component means unsatisfiable; otherwise each variable takes the value of
/// whichever literal comes later in topological order.
class TwoSatSolver {
 public:
  explicit TwoSatSolver(std::size_t variables) : vars_(variables), implications_(2 * variables) {}

  void add(const Clause& c) {
    check(c.first);
    const Literal a = c.first;
    const Literal b = c.second ? *c.second : c.first;
    check(b);
    // (a or b) == (!a -> b) and (!b -> a)
    implications_[node(a.negated())].push_back(node(b));
    implications_[node(b.negated())].push_back(node(a));
  }

  std::size_t variables() const { return vars_; }

  std::optional<std::vector<bool>> solve() const {
    const auto component = strong_components();
    std::vector<bool> assignment(vars_);
    for (std::size_t x = 0; x < vars_; ++x) {
      const std::size_t pos = component[node({x, true})];
      const std::size_t neg = component[node({x, false})];
      if (pos == neg) return std::nullopt;
      // Tarjan numbers components in reverse topological order.
      assignment[x] = pos < neg;
    }
    return assignment;
  }

 private:
  static std::size_t node(const Literal& l) { return 2 * l.var + (l.positive ? 0 : 1); }

  void check(const Literal& l) const {
    if (l.var >= vars_) throw InternalError("2-SAT literal refers to an undeclared variable");
  }

  // Iterative Tarjan.
  std::vector<std::size_t> strong_components() const {
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    const std::size_t nodes = implications_.size();
    std::vector<std::size_t> index(nodes, unvisited), low(nodes, 0), component(nodes, unvisited);
    std::vector<bool> on_stack(nodes, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> frames;  // (node, next edge)
    std::size_t counter = 0, components = 0;

    for (std::size_t root = 0; root < nodes; ++root) {
      if (index[root] != unvisited) continue;
      frames.emplace_back(root, 0);
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!frames.empty()) {
        auto& [v, next] = frames.back();
        if (next < implications_[v].size()) {
          const std::size_t w = implications_[v][next++];
          if (index[w] == unvisited) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            frames.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        if (low[v] == index[v]) {
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component[w] = components;
          } while (w != v);
          ++components;
        }
        const std::size_t finished = v;
        frames.pop_back();
        if (!frames.empty()) {
          const std::size_t parent = frames.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
    return component;
  }

  std::size_t vars_;
  std::vector<std::vector<std::size_t>> implications_;
};

inline std::optional<std::vector<bool>> solve_2sat(std::size_t variables,
                                                   const std::vector<Clause>& clauses) {
  TwoSatSolver solver(variables);
  for (const Clause& c : clauses) solver.add(c);
  return solver.solve();
}

}  // namespace lettericity

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lettericity/errors.hpp"
#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"

namespace lettericity::io {

using Json = nlohmann::ordered_json;
using TokenPair = std::array<std::string, 2>;

/// Instance file contents. Keys are written in the order of the members.
struct InstanceDocument {
  std::vector<std::string> vertices;
  std::vector<TokenPair> edges;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::vector<std::pair<std::string, std::string>>> coloring;  // vertex -> letter
  std::optional<std::vector<std::string>> word;
  std::optional<std::vector<TokenPair>> decoder;
  std::optional<Json> meta;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;

  Graph graph() const {
    std::vector<std::pair<std::string, std::string>> list;
    for (const auto& [u, v] : edges) list.emplace_back(u, v);
    return Graph::from_labels(vertices, list);
  }

  /// Declared alphabet, or letters in order of first use across word,
  /// coloring and decoder.
  Alphabet<std::string> letters() const {
    if (alphabet) return Alphabet<std::string>(*alphabet);
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add = [&](const std::string& a) {
      if (seen.insert(a).second) out.push_back(a);
    };
    if (word)
      for (const auto& a : *word) add(a);
    if (coloring)
      for (const auto& [v, a] : *coloring) add(a);
    if (decoder)
      for (const auto& [a, b] : *decoder) {
        add(a);
        add(b);
      }
    return Alphabet<std::string>(out);
  }

  Coloring<std::string> colors(const Graph& g) const {
    if (!coloring) throw InputError("instance has no coloring");
    std::vector<std::optional<std::string>> by_vertex(g.size());
    for (const auto& [v, a] : *coloring) by_vertex[g.id(v)] = a;
    std::vector<std::string> assignment;
    for (VertexId v = 0; v < g.size(); ++v) {
      if (!by_vertex[v]) throw InputError("coloring misses vertex '" + g.label(v) + "'");
      assignment.push_back(*by_vertex[v]);
    }
    return Coloring<std::string>(assignment, letters());
  }

  Word<std::string> letters_of_word() const {
    if (!word) throw InputError("instance has no word");
    return *word;
  }

  Decoder<std::string> decoder_set() const {
    if (!decoder) throw InputError("instance has no decoder");
    std::vector<DirectedPair<std::string>> pairs;
    for (const auto& [a, b] : *decoder) pairs.push_back({a, b});
    return Decoder<std::string>(std::move(pairs));
  }
};

namespace detail {

inline std::string token(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string token");
  std::string s = j.get<std::string>();
  if (!lettericity::detail::is_token(s)) throw InputError(std::string(what) + " '" + s + "' is not a valid token");
  return s;
}

inline std::vector<std::string> token_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(token(x, what));
  return out;
}

inline std::vector<TokenPair> pair_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<TokenPair> out;
  for (const auto& x : j) {
    if (!x.is_array() || x.size() != 2) throw InputError(std::string(what) + " entries must be 2-element lists");
    out.push_back({token(x[0], what), token(x[1], what)});
  }
  return out;
}

inline Json pairs_json(const std::vector<TokenPair>& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs) out.push_back(Json::array({a, b}));
  return out;
}

inline void validate(const InstanceDocument& doc) {
  std::set<std::string> vertices;
  for (const auto& v : doc.vertices)
    if (!vertices.insert(v).second) throw InputError("duplicate vertex '" + v + "'");
  for (const auto& [u, v] : doc.edges)
    if (!vertices.contains(u) || !vertices.contains(v))
      throw InputError("edge {" + u + "," + v + "} uses an undeclared vertex");
  std::optional<std::set<std::string>> sigma;
  if (doc.alphabet) {
    sigma.emplace();
    for (const auto& a : *doc.alphabet)
      if (!sigma->insert(a).second) throw InputError("duplicate letter '" + a + "'");
  }
  auto check_letter = [&](const std::string& a) {
    if (sigma && !sigma->contains(a)) throw InputError("letter '" + a + "' is not in the alphabet");
  };
  if (doc.coloring) {
    std::set<std::string> seen;
    for (const auto& [v, a] : *doc.coloring) {
      if (!vertices.contains(v)) throw InputError("coloring names undeclared vertex '" + v + "'");
      if (!seen.insert(v).second) throw InputError("vertex '" + v + "' colored twice");
      check_letter(a);
    }
    if (seen.size() != vertices.size()) throw InputError("coloring must cover every vertex");
  }
  if (doc.word)
    for (const auto& a : *doc.word) check_letter(a);
  if (doc.decoder) {
    std::set<TokenPair> seen;
    for (const auto& p : *doc.decoder) {
      check_letter(p[0]);
      check_letter(p[1]);
      if (!seen.insert(p).second) throw InputError("decoder lists " + p[0] + p[1] + " twice");
    }
  }
}

}  // namespace detail

inline Json to_json(const InstanceDocument& doc) {
  Json out;
  out["graph"]["vertices"] = doc.vertices;
  out["graph"]["edges"] = detail::pairs_json(doc.edges);
  if (doc.alphabet) out["alphabet"] = *doc.alphabet;
  if (doc.coloring) {
    Json c = Json::object();
    for (const auto& [v, a] : *doc.coloring) c[v] = a;
    out["coloring"] = std::move(c);
  }
  if (doc.word) out["word"] = *doc.word;
  if (doc.decoder) out["decoder"] = detail::pairs_json(*doc.decoder);
  if (doc.meta) out["meta"] = *doc.meta;
  return out;
}

/// Canonical text: two-space indentation, trailing newline.
inline std::string serialize(const InstanceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline InstanceDocument from_json(const Json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  static const std::set<std::string> known{"graph", "alphabet", "coloring", "word", "decoder", "meta"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw InputError("unknown field '" + key + "'");
  if (!j.contains("graph") || !j["graph"].is_object()) throw InputError("missing graph object");
  const Json& g = j["graph"];
  for (const auto& [key, value] : g.items())
    if (key != "vertices" && key != "edges") throw InputError("unknown graph field '" + key + "'");
  if (!g.contains("vertices")) throw InputError("graph.vertices is missing");

  InstanceDocument doc;
  doc.vertices = detail::token_list(g["vertices"], "vertex");
  if (g.contains("edges")) doc.edges = detail::pair_list(g["edges"], "edge endpoint");
  if (j.contains("alphabet")) doc.alphabet = detail::token_list(j["alphabet"], "letter");
  if (j.contains("coloring")) {
    if (!j["coloring"].is_object()) throw InputError("coloring must be an object");
    doc.coloring.emplace();
    for (const auto& [v, a] : j["coloring"].items()) {
      if (!lettericity::detail::is_token(v)) throw InputError("coloring key '" + v + "' is not a valid token");
      doc.coloring->emplace_back(v, detail::token(a, "letter"));
    }
  }
  if (j.contains("word")) doc.word = detail::token_list(j["word"], "letter");
  if (j.contains("decoder")) doc.decoder = detail::pair_list(j["decoder"], "letter");
  if (j.contains("meta")) doc.meta = j["meta"];
  detail::validate(doc);
  return doc;
}

inline InstanceDocument parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

/// Document fields for a graph plus optional coloring, in canonical form.
inline InstanceDocument document_of(const Graph& g) {
  InstanceDocument doc;
  doc.vertices = g.labels();
  for (const Edge& e : g.edges()) doc.edges.push_back({g.label(e.u), g.label(e.v)});
  return doc;
}

inline std::vector<std::pair<std::string, std::string>> coloring_entries(const Graph& g,
                                                                         const Coloring<std::string>& chi) {
  std::vector<std::pair<std::string, std::string>> out;
  for (VertexId v = 0; v < g.size(); ++v) out.emplace_back(g.label(v), chi(v));
  return out;
}

inline std::vector<TokenPair> decoder_entries(const Decoder<std::string>& d) {
  std::vector<TokenPair> out;
  for (const auto& p : d) out.push_back({p.first, p.second});
  return out;
}

}  // namespace lettericity::io

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lettericity/coloring_retrieval.hpp"
#include "lettericity/decoder_retrieval.hpp"
#include "lettericity/io.hpp"
#include "lettericity/oracle.hpp"
#include "lettericity/symmetric.hpp"
#include "lettericity/word_retrieval.hpp"

namespace lettericity::cli {

enum ExitCode : int { kSolution = 0, kInfeasible = 1, kMalformed = 2, kSizeLimit = 3, kInternal = 4 };

enum class Mode { Word, Decoder, Coloring };

inline Mode parse_mode(const std::string& s) {
  if (s == "word") return Mode::Word;
  if (s == "decoder") return Mode::Decoder;
  if (s == "coloring") return Mode::Coloring;
  throw InputError("mode must be word, decoder or coloring");
}

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Word: return "word";
    case Mode::Decoder: return "decoder";
    case Mode::Coloring: return "coloring";
  }
  return "";
}

namespace detail {

// Uniform enough for generation and identical on every platform, unlike
// the standard distributions.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t operator()(std::size_t bound) { return static_cast<std::size_t>(rng_() % bound); }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[(*this)(i)]);
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string letter_name(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

struct Sample {
  Graph graph;
  Coloring<std::string> coloring;
  Word<std::string> word;
  Decoder<std::string> decoder;
};

inline Sample sample(Draw& draw, std::size_t n, std::size_t k) {
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < k; ++i) letters.push_back(letter_name(i));
  const Alphabet<std::string> sigma(letters);

  Word<std::string> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(i < k ? letters[i] : letters[draw(k)]);
  draw.shuffle(w);
  Decoder<std::string> d;
  for (const auto& a : letters)
    for (const auto& b : letters)
      if (draw(2)) d.insert({a, b});

  // Vertex j of the emitted graph is position at[j] of w.
  const Graph positions = decode(d, w, sigma).graph;
  std::vector<std::size_t> at(n);
  for (std::size_t i = 0; i < n; ++i) at[i] = i;
  draw.shuffle(at);
  std::vector<std::size_t> vertex_at(n);
  for (std::size_t j = 0; j < n; ++j) vertex_at[at[j]] = j;
  std::vector<std::string> labels;
  std::vector<std::string> assignment;
  for (std::size_t j = 0; j < n; ++j) {
    labels.push_back("v" + std::to_string(j + 1));
    assignment.push_back(w[at[j]]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : positions.edges()) edges.emplace_back(vertex_at[e.u], vertex_at[e.v]);
  return {Graph(labels, edges), Coloring<std::string>(assignment, sigma), w, d};
}

inline Graph flip_edges(const Graph& g, Draw& draw, std::size_t flips) {
  const std::size_t n = g.size();
  std::vector<std::uint8_t> adj(n * n, 0);
  for (const Edge& e : g.edges()) adj[e.u * n + e.v] = 1;
  for (std::size_t f = 0; f < flips; ++f) {
    const std::size_t u = draw(n);
    std::size_t v = draw(n - 1);
    if (v >= u) ++v;
    const Edge e(u, v);
    adj[e.u * n + e.v] ^= 1;
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (adj[u * n + v]) edges.emplace_back(u, v);
  return Graph(g.labels(), edges);
}

// true: oracle proves infeasible; false: oracle finds a solution;
// nullopt: instance beyond the oracle's size guard.
inline std::optional<bool> oracle_infeasible(const Sample& s, const Graph& g, Mode mode) {
  try {
    switch (mode) {
      case Mode::Word: return !oracle::brute_generalized_solution(g, s.coloring, s.decoder).has_value();
      case Mode::Decoder: return oracle::enumerate_decoders(g, s.coloring, s.word).empty();
      case Mode::Coloring:
        return !oracle::brute_isomorphism(g, decode(s.decoder, s.word, s.coloring.alphabet()).graph).has_value();
    }
  } catch (const SizeLimitError&) {
  }
  return std::nullopt;
}

}  // namespace detail

/// Random instance for one retrieval mode. Feasible instances decode a
/// sampled (Sigma, D, w) and hide the mode's target. Infeasible ones flip
/// edges of a feasible graph until the matching oracle confirms; meta records
/// whether it did.
inline io::InstanceDocument gen_instance(std::uint64_t seed, std::size_t n, std::size_t k, Mode mode,
                                         bool feasible) {
  if (n < 1 || k < 1) throw InputError("gen needs n >= 1 and k >= 1");
  if (k > 26) throw InputError("gen supports at most 26 letters");
  detail::Draw draw(seed);
  const std::size_t letters = std::min(n, k);
  const detail::Sample s = detail::sample(draw, n, letters);

  Graph g = s.graph;
  io::Json meta;
  meta["seed"] = seed;
  meta["n"] = n;
  meta["k"] = k;
  meta["mode"] = mode_name(mode);
  meta["feasible"] = feasible;
  if (!feasible) {
    constexpr std::size_t attempts = 64;
    std::size_t flips = 0;
    std::optional<bool> confirmed;
    for (std::size_t attempt = 0; attempt < attempts && n >= 2; ++attempt) {
      flips = 1 + attempt / 16;
      g = detail::flip_edges(s.graph, draw, flips);
      confirmed = detail::oracle_infeasible(s, g, mode);
      if (!confirmed || *confirmed) break;
    }
    meta["flips"] = flips;
    meta["oracle_confirmed"] = confirmed.value_or(false);
  }

  io::InstanceDocument doc = io::document_of(g);
  doc.alphabet = s.coloring.alphabet().letters();
  if (mode != Mode::Coloring) doc.coloring = io::coloring_entries(g, s.coloring);
  if (mode != Mode::Word) doc.word = s.word;
  if (mode != Mode::Decoder) doc.decoder = io::decoder_entries(s.decoder);
  doc.meta = std::move(meta);
  return doc;
}

namespace detail {

struct Outcome {
  int code;
  io::Json body;
};

inline io::Json graph_json(const Graph& g) { return io::to_json(io::document_of(g))["graph"]; }

inline io::Json coloring_json(const Graph& g, const Coloring<std::string>& chi) {
  io::Json c = io::Json::object();
  for (VertexId v = 0; v < g.size(); ++v) c[g.label(v)] = chi(v);
  return c;
}

inline io::Json decoder_json(const Decoder<std::string>& d) {
  io::Json out = io::Json::array();
  for (const auto& p : d) out.push_back(io::Json::array({p.first, p.second}));
  return out;
}

inline void require(bool ok, const char* what) {
  if (!ok) throw InternalError(std::string("re-verification failed: ") + what);
}

inline Outcome infeasible() { return {kInfeasible, {{"status", "infeasible"}}}; }

inline Outcome do_decode(const io::InstanceDocument& doc) {
  const Decoder<std::string> d = doc.decoder_set();
  const Word<std::string> w = doc.letters_of_word();
  const ColoredGraph<std::string> cg = decode(d, w, doc.letters());
  std::vector<VertexId> identity(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) identity[i] = i;
  require(is_generalized_solution(cg.graph, cg.coloring, d, identity), "decoded graph");
  return {kSolution,
          {{"status", "solution"}, {"graph", graph_json(cg.graph)}, {"coloring", coloring_json(cg.graph, cg.coloring)}}};
}

inline Outcome do_retrieve_word(const io::InstanceDocument& doc) {
  const Graph g = doc.graph();
  const auto chi = doc.colors(g);
  const auto d = doc.decoder_set();
  auto sol = retrieve_word(g, chi, d);
  if (!sol) return infeasible();
  require(is_generalized_solution(g, chi, d, sol->permutation), "word");
  io::Json perm = io::Json::array();
  for (VertexId v : sol->permutation) perm.push_back(g.label(v));
  return {kSolution, {{"status", "solution"}, {"word", sol->word}, {"permutation", perm}}};
}

inline Outcome do_retrieve_decoder(const io::InstanceDocument& doc, bool all) {
  const Graph g = doc.graph();
  const auto chi = doc.colors(g);
  const auto w = doc.letters_of_word();
  if (all) {
    const auto found = oracle::enumerate_decoders(g, chi, w);
    if (found.empty()) return infeasible();
    io::Json list = io::Json::array();
    for (const auto& d : found) {
      require(verify_decoder(g, chi, w, d), "enumerated decoder");
      list.push_back(decoder_json(d));
    }
    return {kSolution, {{"status", "solution"}, {"decoders", list}}};
  }
  auto d = retrieve_decoder(g, chi, w);
  if (!d) return infeasible();
  require(verify_decoder(g, chi, w, *d), "decoder");
  return {kSolution, {{"status", "solution"}, {"decoder", decoder_json(*d)}}};
}

inline Outcome do_retrieve_coloring(const io::InstanceDocument& doc) {
  const Graph g = doc.graph();
  const auto sigma = doc.letters();
  const auto d = doc.decoder_set();
  const auto w = doc.letters_of_word();
  auto found = retrieve_coloring(g, sigma, d, w);
  if (!found) return infeasible();
  require(is_isomorphism(g, decode(d, w, sigma).graph, found->mapping), "isomorphism");
  io::Json f = io::Json::object();
  for (VertexId v = 0; v < g.size(); ++v) {
    require(found->coloring(v) == w[found->mapping.forward[v]], "coloring");
    f[g.label(v)] = found->mapping.forward[v] + 1;
  }
  return {kSolution, {{"status", "solution"}, {"coloring", coloring_json(g, found->coloring)}, {"isomorphism", f}}};
}

inline Outcome do_verify(const io::InstanceDocument& doc) {
  const Graph g = doc.graph();
  const bool ok = verify_decoder(g, doc.colors(g), doc.letters_of_word(), doc.decoder_set());
  return {ok ? kSolution : kInfeasible, {{"status", ok ? "solution" : "infeasible"}, {"valid", ok}}};
}

inline Outcome do_nd(const io::InstanceDocument& doc) {
  const Graph g = doc.graph();
  const TwinPartition parts = twin_partition(g);
  io::Json blocks = io::Json::array();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    io::Json members = io::Json::array();
    for (VertexId v : parts.blocks[i]) members.push_back(g.label(v));
    blocks.push_back({{"vertices", members},
                      {"kind", parts.kinds[i] == BlockKind::Clique ? "clique" : "independent"}});
  }
  return {kSolution, {{"status", "solution"}, {"nd", parts.size()}, {"blocks", blocks}}};
}

inline io::Json witness_json(const Graph& g, const Word<int>& word, const Decoder<int>& d, std::size_t k,
                             const std::vector<std::size_t>& position) {
  io::Json letters = io::Json::array(), w = io::Json::array(), dec = io::Json::array(), chi = io::Json::object();
  for (std::size_t i = 1; i <= k; ++i) letters.push_back(std::to_string(i));
  for (int a : word) w.push_back(std::to_string(a));
  for (const auto& p : d) dec.push_back(io::Json::array({std::to_string(p.first), std::to_string(p.second)}));
  for (VertexId v = 0; v < g.size(); ++v) chi[g.label(v)] = std::to_string(word[position[v]]);
  return {{"alphabet", letters}, {"word", w}, {"decoder", dec}, {"coloring", chi}};
}

inline void check_witness(const Graph& g, const Word<int>& word, const Decoder<int>& d,
                          const std::vector<std::size_t>& position) {
  require(is_isomorphism(g, decode(d, word).graph, IsomorphismMapping{position}), "witness");
}

inline Outcome do_sym_lettericity(const io::InstanceDocument& doc) {
  const Graph g = doc.graph();
  const SymmetricWitness s = symmetric_witness(g);
  check_witness(g, s.word, s.decoder, s.position);
  require(s.decoder.is_symmetric(), "symmetric decoder");
  io::Json body{{"status", "solution"}, {"symmetric_lettericity", s.alphabet.size()}};
  body["witness"] = witness_json(g, s.word, s.decoder, s.alphabet.size(), s.position);
  return {kSolution, body};
}

inline Outcome do_lettericity(const io::InstanceDocument& doc, std::size_t max_k, unsigned jobs) {
  const Graph g = doc.graph();
  auto found = oracle::brute_lettericity(g, max_k, jobs);
  if (!found) {
    io::Json body{{"status", "infeasible"}, {"max_k", max_k}};
    return {kInfeasible, body};
  }
  check_witness(g, found->word, found->decoder, found->position);
  io::Json body{{"status", "solution"}, {"lettericity", found->k}};
  body["witness"] = witness_json(g, found->word, found->decoder, found->k, found->position);
  return {kSolution, body};
}

inline io::InstanceDocument read_instance(const std::string& path, std::istream& in) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw InputError("cannot read '" + path + "'");
    buffer << file.rdbuf();
  }
  return io::parse(buffer.str());
}

}  // namespace detail

/// Runs one subcommand. `args` excludes the program name. Writes one JSON
/// document to `out`, diagnostics to `err`, and returns the exit status.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Letter graph retrieval and lettericity tool", "lettericity"};
  app.require_subcommand(1);

  std::string input = "-";
  bool all = false;
  std::size_t max_k = 0;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::size_t gen_n = 0, gen_k = 0;
  std::string mode = "word";
  bool feasible = true;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "instance file, - for standard input");
    return sub;
  };
  auto* decode_cmd = with_input(app.add_subcommand("decode", "build G(D, w) from word and decoder"));
  auto* word_cmd = with_input(app.add_subcommand("retrieve-word", "find w from graph, coloring and decoder"));
  auto* decoder_cmd = with_input(app.add_subcommand("retrieve-decoder", "find D from graph, coloring and word"));
  decoder_cmd->add_flag("--all", all, "list every decoder (small alphabets only)");
  auto* coloring_cmd = with_input(app.add_subcommand("retrieve-coloring", "find a coloring from graph, decoder and word"));
  auto* verify_cmd = with_input(app.add_subcommand("verify", "check a full instance"));
  auto* nd_cmd = with_input(app.add_subcommand("nd", "neighbourhood diversity"));
  auto* sym_cmd = with_input(app.add_subcommand("sym-lettericity", "symmetric lettericity with witness"));
  auto* let_cmd = with_input(app.add_subcommand("lettericity", "exact lettericity by exhaustive search"));
  let_cmd->add_option("--max-k", max_k, "largest alphabet size to try")->required()->check(CLI::PositiveNumber);
  let_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1U, 256U));
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--seed", seed)->required();
  gen_cmd->add_option("--n", gen_n)->required();
  gen_cmd->add_option("--k", gen_k)->required();
  gen_cmd->add_option("--mode", mode)->check(CLI::IsMember({"word", "decoder", "coloring"}));
  gen_cmd->add_option("--feasible", feasible);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSolution : kMalformed;
  }

  const auto start = std::chrono::steady_clock::now();
  detail::Outcome result{kInternal, {}};
  try {
    if (gen_cmd->parsed()) {
      out << io::serialize(gen_instance(seed, gen_n, gen_k, parse_mode(mode), feasible));
      return kSolution;
    }
    const io::InstanceDocument doc = detail::read_instance(input, in);
    if (decode_cmd->parsed()) result = detail::do_decode(doc);
    else if (word_cmd->parsed()) result = detail::do_retrieve_word(doc);
    else if (decoder_cmd->parsed()) result = detail::do_retrieve_decoder(doc, all);
    else if (coloring_cmd->parsed()) result = detail::do_retrieve_coloring(doc);
    else if (verify_cmd->parsed()) result = detail::do_verify(doc);
    else if (nd_cmd->parsed()) result = detail::do_nd(doc);
    else if (sym_cmd->parsed()) result = detail::do_sym_lettericity(doc);
    else if (let_cmd->parsed()) result = detail::do_lettericity(doc, max_k, jobs);
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << "\n";
    result = {kSizeLimit, {{"status", "error"}, {"message", e.what()}}};
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    result = {kMalformed, {{"status", "error"}, {"message", e.what()}}};
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    result = {kInternal, {{"status", "error"}, {"message", e.what()}}};
  }
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  result.body["elapsed_ms"] = elapsed.count();
  out << result.body.dump(2) << "\n";
  return result.code;
}

}  // namespace lettericity::cli

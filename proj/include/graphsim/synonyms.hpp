#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "similarity.hpp"

namespace graphsim {

// Headwords are vertices; u -> v when v occurs in the definition of u.
class DictionaryGraph {
public:
  DictionaryGraph(DirectedGraph graph, std::vector<std::string> words)
    : graph_(std::move(graph)), words_(std::move(words)) {
    if (words_.size() != graph_.vertex_count()) throw input_error("word count does not match vertex count");
    for (std::size_t v = 0; v < words_.size(); ++v)
      if (!index_.emplace(words_[v], v).second) throw input_error("duplicate headword '" + words_[v] + "'");
  }

  const DirectedGraph& graph() const noexcept { return graph_; }
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

  const std::string& word(std::size_t v) const { return words_.at(v); }

  std::optional<std::size_t> find(std::string_view w) const {
    const auto it = index_.find(std::string(w));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

private:
  DirectedGraph graph_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Lines are "headword<TAB>token token ...". Headwords are numbered in order of
// first appearance; repeated headwords merge their token sets; tokens that
// are not headwords are dropped; every retained edge has weight 1.
inline DictionaryGraph build_dictionary_graph(std::istream& in) {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::set<std::string>> definitions;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw parse_error(lineno, "expected 'headword<TAB>definition tokens'");
    const auto head = detail::trim(std::string_view(line).substr(0, tab));
    if (head.empty()) throw parse_error(lineno, "empty headword");
    if (detail::split_ws(head).size() != 1) throw parse_error(lineno, "headword contains whitespace");
    const auto [it, inserted] = index.try_emplace(std::string(head), words.size());
    if (inserted) {
      words.emplace_back(head);
      definitions.emplace_back();
    }
    for (auto tok : detail::split_ws(std::string_view(line).substr(tab + 1)))
      definitions[it->second].emplace(tok);
  }
  if (words.empty()) throw input_error("dictionary has no entries");

  std::vector<Edge> edges;
  for (std::size_t u = 0; u < words.size(); ++u)
    for (const auto& tok : definitions[u])
      if (auto it = index.find(tok); it != index.end()) edges.push_back({u, it->second, 1.0});
  DirectedGraph g(words.size(), std::move(edges), words);
  return {std::move(g), std::move(words)};
}

inline DictionaryGraph build_dictionary_graph(std::string_view text) {
  std::istringstream is{std::string(text)};
  return build_dictionary_graph(is);
}

struct NeighborhoodGraph {
  DirectedGraph graph;
  std::vector<std::string> words;
  std::size_t query_vertex = 0;
};

namespace detail {

inline std::size_t require_headword(const DictionaryGraph& d, std::string_view w) {
  const auto v = d.find(w);
  if (!v) throw input_error("unknown word '" + std::string(w) + "'");
  return *v;
}

}  // namespace detail

// Subgraph induced by w, the words defining w and the words in w's
// definition. Vertices keep their dictionary order.
inline NeighborhoodGraph neighborhood_graph(const DictionaryGraph& d, std::string_view w) {
  const std::size_t q = detail::require_headword(d, w);
  const auto& g = d.graph();
  std::vector<std::size_t> verts{q};
  verts.insert(verts.end(), g.out_neighbors(q).begin(), g.out_neighbors(q).end());
  verts.insert(verts.end(), g.in_neighbors(q).begin(), g.in_neighbors(q).end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  NeighborhoodGraph out{induced_subgraph(g, verts), {}, 0};
  for (std::size_t k = 0; k < verts.size(); ++k) {
    out.words.push_back(d.word(verts[k]));
    if (verts[k] == q) out.query_vertex = k;
  }
  return out;
}

struct RankedWord {
  std::string word;
  double score;
};

struct SynonymRanking {
  std::vector<RankedWord> entries;  // query word excluded
  double query_score = 0.0;
  // Position the query held before exclusion (0 = first).
  std::size_t query_rank = 0;
  ConvergenceReport report;
};

namespace detail {

// Scores equal to 12 significant digits tie, so rounding noise in the last
// bits cannot override the alphabetical tie-break.
inline long long score_key(double s, double scale) {
  return static_cast<long long>(std::llround(s / scale * 1e12));
}

}  // namespace detail

// Central scores on the neighborhood graph of w, descending, ties by word.
inline SynonymRanking rank_synonyms(const DictionaryGraph& d, std::string_view w,
                                    const IterationConfig& cfg = {}) {
  const NeighborhoodGraph nb = neighborhood_graph(d, w);
  const ScoreVector central = central_scores(nb.graph, cfg);

  std::vector<RankedWord> all;
  for (std::size_t k = 0; k < nb.words.size(); ++k) all.push_back({nb.words[k], central.values[k]});
  const double scale = std::max(1e-300, *std::max_element(central.values.begin(), central.values.end()));
  std::sort(all.begin(), all.end(), [scale](const RankedWord& a, const RankedWord& b) {
    const auto ka = detail::score_key(a.score, scale), kb = detail::score_key(b.score, scale);
    return ka != kb ? ka > kb : a.word < b.word;
  });

  SynonymRanking out;
  out.report = central.report;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (all[k].word == nb.words[nb.query_vertex]) {
      out.query_rank = k;
      out.query_score = all[k].score;
    } else {
      out.entries.push_back(std::move(all[k]));
    }
  }
  return out;
}

// True when no other word strictly outscores the query (ties allowed).
inline bool query_ranks_first(const SynonymRanking& r) {
  if (r.entries.empty()) return true;
  const double scale = std::max(r.query_score, r.entries.front().score);
  return detail::score_key(r.query_score, scale) >= detail::score_key(r.entries.front().score, scale);
}

// "rank<TAB>word<TAB>score" with 1-based rank and six decimals.
inline void write_ranking_tsv(std::ostream& os, const SynonymRanking& r, std::size_t top = 0) {
  const std::size_t n = top == 0 ? r.entries.size() : std::min(top, r.entries.size());
  char buf[64];
  for (std::size_t k = 0; k < n; ++k) {
    std::snprintf(buf, sizeof buf, "%.6f", r.entries[k].score);
    os << (k + 1) << '\t' << r.entries[k].word << '\t' << buf << '\n';
  }
}

}  // namespace graphsim

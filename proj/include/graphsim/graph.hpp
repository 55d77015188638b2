#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dense_matrix.hpp"
#include "error.hpp"

namespace graphsim {

struct Edge {
  std::size_t src;
  std::size_t dst;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable sparse directed multigraph with non-negative weights. Entries are
// kept twice, grouped by source (rows of A) and by destination (rows of A^T),
// each in ascending index order. Duplicate edges are merged by summing.
class DirectedGraph {
public:
  DirectedGraph() : out_ptr_(1, 0), in_ptr_(1, 0) {}

  DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges,
                std::optional<std::vector<std::string>> labels = std::nullopt)
    : n_(vertex_count), labels_(std::move(labels)) {
    if (labels_) {
      if (labels_->size() != n_) throw input_error("label count does not match vertex count");
      std::unordered_set<std::string_view> seen;
      for (const auto& l : *labels_)
        if (!seen.insert(l).second) throw input_error("duplicate vertex label '" + l + "'");
    }
    for (const Edge& e : edges) {
      if (e.src >= n_ || e.dst >= n_) throw input_error("edge endpoint out of range");
      if (!std::isfinite(e.weight)) throw input_error("non-finite edge weight");
      if (e.weight < 0.0) throw input_error("negative edge weight");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    std::vector<Edge> merged;
    merged.reserve(edges.size());
    for (const Edge& e : edges) {
      if (!merged.empty() && merged.back().src == e.src && merged.back().dst == e.dst)
        merged.back().weight += e.weight;
      else
        merged.push_back(e);
    }
    std::erase_if(merged, [](const Edge& e) { return e.weight == 0.0; });
    for (const Edge& e : merged)
      if (!std::isfinite(e.weight)) throw input_error("accumulated edge weight overflows");

    integral_ = std::all_of(merged.begin(), merged.end(),
                            [](const Edge& e) { return e.weight == std::floor(e.weight); });

    out_ptr_.assign(n_ + 1, 0);
    in_ptr_.assign(n_ + 1, 0);
    for (const Edge& e : merged) {
      ++out_ptr_[e.src + 1];
      ++in_ptr_[e.dst + 1];
    }
    std::partial_sum(out_ptr_.begin(), out_ptr_.end(), out_ptr_.begin());
    std::partial_sum(in_ptr_.begin(), in_ptr_.end(), in_ptr_.begin());

    out_idx_.resize(merged.size());
    out_w_.resize(merged.size());
    for (std::size_t k = 0; k < merged.size(); ++k) {
      out_idx_[k] = merged[k].dst;
      out_w_[k] = merged[k].weight;
    }
    // Sources arrive in ascending order, so each in-list ends up sorted.
    in_idx_.resize(merged.size());
    in_w_.resize(merged.size());
    std::vector<std::size_t> fill(in_ptr_.begin(), in_ptr_.end() - 1);
    for (const Edge& e : merged) {
      const std::size_t slot = fill[e.dst]++;
      in_idx_[slot] = e.src;
      in_w_[slot] = e.weight;
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  // Number of distinct stored (src, dst) entries.
  std::size_t edge_count() const noexcept { return out_idx_.size(); }
  bool has_edges() const noexcept { return !out_idx_.empty(); }
  bool integral_weights() const noexcept { return integral_; }

  double total_weight() const {
    double s = 0.0;
    for (double w : out_w_) s += w;
    return s;
  }

  std::span<const std::size_t> out_neighbors(std::size_t v) const {
    return {out_idx_.data() + out_ptr_[v], out_ptr_[v + 1] - out_ptr_[v]};
  }
  std::span<const double> out_weights(std::size_t v) const {
    return {out_w_.data() + out_ptr_[v], out_ptr_[v + 1] - out_ptr_[v]};
  }
  std::span<const std::size_t> in_neighbors(std::size_t v) const {
    return {in_idx_.data() + in_ptr_[v], in_ptr_[v + 1] - in_ptr_[v]};
  }
  std::span<const double> in_weights(std::size_t v) const {
    return {in_w_.data() + in_ptr_[v], in_ptr_[v + 1] - in_ptr_[v]};
  }

  double weight(std::size_t src, std::size_t dst) const {
    const auto nb = out_neighbors(src);
    const auto it = std::lower_bound(nb.begin(), nb.end(), dst);
    if (it == nb.end() || *it != dst) return 0.0;
    return out_weights(src)[static_cast<std::size_t>(it - nb.begin())];
  }

  // Entries sorted by (src, dst).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = out_ptr_[i]; k < out_ptr_[i + 1]; ++k)
        out.push_back({i, out_idx_[k], out_w_[k]});
    return out;
  }

  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

  std::string label(std::size_t v) const {
    return labels_ ? (*labels_)[v] : std::to_string(v);
  }

  std::optional<std::size_t> find_vertex(std::string_view name) const {
    if (labels_) {
      const auto it = std::find(labels_->begin(), labels_->end(), name);
      if (it == labels_->end()) return std::nullopt;
      return static_cast<std::size_t>(it - labels_->begin());
    }
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
    if (ec != std::errc{} || p != name.data() + name.size() || v >= n_) return std::nullopt;
    return v;
  }

  bool is_symmetric() const {
    for (std::size_t v = 0; v < n_; ++v) {
      const auto on = out_neighbors(v), in = in_neighbors(v);
      if (!std::equal(on.begin(), on.end(), in.begin(), in.end())) return false;
      const auto ow = out_weights(v), iw = in_weights(v);
      if (!std::equal(ow.begin(), ow.end(), iw.begin(), iw.end())) return false;
    }
    return true;
  }

  DenseMatrix adjacency() const {
    DenseMatrix a(n_, n_);
    for (const Edge& e : edges()) a(e.src, e.dst) = e.weight;
    return a;
  }

  // Same edges with every weight multiplied by factor > 0.
  DirectedGraph scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw input_error("scale factor must be positive");
    auto es = edges();
    for (Edge& e : es) e.weight *= factor;
    return {n_, std::move(es), labels_};
  }

private:
  std::size_t n_ = 0;
  std::vector<std::size_t> out_ptr_, out_idx_;
  std::vector<double> out_w_;
  std::vector<std::size_t> in_ptr_, in_idx_;
  std::vector<double> in_w_;
  std::optional<std::vector<std::string>> labels_;
  bool integral_ = true;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::size_t> parse_index(std::string_view tok) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_real(std::string_view tok) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace detail

// Parses "src dst [weight]" lines. If every vertex token is a non-negative
// integer the graph is indexed densely by value; otherwise tokens are names
// numbered in order of first appearance.
inline DirectedGraph from_edge_list(std::istream& in) {
  struct Raw {
    std::string src, dst;
    double weight;
  };
  std::vector<Raw> raw;
  bool all_integer = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tok = detail::split_ws(t);
    if (tok.size() < 2 || tok.size() > 3)
      throw parse_error(lineno, "expected 'src dst [weight]'");
    double w = 1.0;
    if (tok.size() == 3) {
      const auto pw = detail::parse_real(tok[2]);
      if (!pw) throw parse_error(lineno, "invalid weight '" + std::string(tok[2]) + "'");
      if (!std::isfinite(*pw)) throw parse_error(lineno, "non-finite weight");
      if (*pw < 0.0) throw parse_error(lineno, "negative weight");
      w = *pw;
    }
    all_integer = all_integer && detail::parse_index(tok[0]) && detail::parse_index(tok[1]);
    raw.push_back({std::string(tok[0]), std::string(tok[1]), w});
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (all_integer) {
    std::size_t n = 0;
    for (const Raw& r : raw) {
      const std::size_t s = *detail::parse_index(r.src), d = *detail::parse_index(r.dst);
      if (std::max(s, d) == std::numeric_limits<std::size_t>::max())
        throw size_error("vertex index too large");
      n = std::max({n, s + 1, d + 1});
      edges.push_back({s, d, r.weight});
    }
    return {n, std::move(edges)};
  }

  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& name) {
    const auto [it, inserted] = index.try_emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };
  for (const Raw& r : raw) {
    const std::size_t s = intern(r.src);
    const std::size_t d = intern(r.dst);
    edges.push_back({s, d, r.weight});
  }
  const std::size_t n = names.size();
  return {n, std::move(edges), std::move(names)};
}

inline DirectedGraph from_edge_list(std::string_view text) {
  std::istringstream is{std::string(text)};
  return from_edge_list(is);
}

// One "src dst weight" line per stored entry, sorted by (src, dst).
inline void write_edge_list(std::ostream& os, const DirectedGraph& g) {
  for (const Edge& e : g.edges())
    os << g.label(e.src) << ' ' << g.label(e.dst) << ' ' << format_real(e.weight) << '\n';
}

inline std::string to_edge_list(const DirectedGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

struct Degrees {
  std::vector<double> in;
  std::vector<double> out;
};

inline Degrees degrees(const DirectedGraph& g) {
  Degrees d{std::vector<double>(g.vertex_count(), 0.0), std::vector<double>(g.vertex_count(), 0.0)};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (double w : g.out_weights(v)) d.out[v] += w;
    for (double w : g.in_weights(v)) d.in[v] += w;
  }
  return d;
}

// All in-degrees equal and all out-degrees equal.
inline bool is_regular(const DirectedGraph& g) {
  if (g.vertex_count() == 0) throw input_error("regularity is undefined for an empty vertex set");
  const Degrees d = degrees(g);
  double max_degree = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) max_degree = std::max({max_degree, d.in[v], d.out[v]});
  const double tol = g.integral_weights() ? 0.0 : 1e-12 * max_degree;
  auto all_equal = [tol](const std::vector<double>& xs) {
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi - *lo <= tol;
  };
  return all_equal(d.in) && all_equal(d.out);
}

// True iff ||A A^T - A^T A||_F <= 1e-12 max(1, ||A||_F^2). Both Gram products
// are formed sparsely.
inline bool is_normal(const DirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::unordered_map<std::size_t, double> diff;
  auto key = [n](std::size_t i, std::size_t j) { return i * n + j; };
  // (A A^T)_{ij} = sum_k A_ik A_jk, grouped by column k.
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = g.in_neighbors(k);
    const auto w = g.in_weights(k);
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < src.size(); ++b) diff[key(src[a], src[b])] += w[a] * w[b];
  }
  // (A^T A)_{ij} = sum_k A_ki A_kj, grouped by row k.
  for (std::size_t k = 0; k < n; ++k) {
    const auto dst = g.out_neighbors(k);
    const auto w = g.out_weights(k);
    for (std::size_t a = 0; a < dst.size(); ++a)
      for (std::size_t b = 0; b < dst.size(); ++b) diff[key(dst[a], dst[b])] -= w[a] * w[b];
  }
  double ssq = 0.0;
  for (const auto& [k, v] : diff) ssq += v * v;
  double norm_a_sq = 0.0;
  for (const Edge& e : g.edges()) norm_a_sq += e.weight * e.weight;
  return std::sqrt(ssq) <= 1e-12 * std::max(1.0, norm_a_sq);
}

inline std::size_t checked_product(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    throw size_error("product dimension overflows the index range");
  return a * b;
}

// Vertex k of the product graph is the pair (i in G_B, j in G_A) with
// k = j * n_B + i, i.e. entry k of the column-major vectorized n_B x n_A
// similarity matrix. Its adjacency is A (x) B.
struct ProductGraph {
  DirectedGraph graph;
  std::size_t n_a = 0;
  std::size_t n_b = 0;

  std::size_t index(std::size_t i_b, std::size_t j_a) const { return j_a * n_b + i_b; }
  std::pair<std::size_t, std::size_t> pair(std::size_t k) const { return {k % n_b, k / n_b}; }
};

inline ProductGraph product_graph(const DirectedGraph& ga, const DirectedGraph& gb) {
  if (ga.vertex_count() == 0 || gb.vertex_count() == 0)
    throw input_error("product graph requires non-empty graphs");
  const std::size_t nb = gb.vertex_count();
  const std::size_t n = checked_product(ga.vertex_count(), nb);
  checked_product(ga.edge_count(), gb.edge_count());
  std::vector<Edge> edges;
  edges.reserve(ga.edge_count() * gb.edge_count());
  for (const Edge& ea : ga.edges())
    for (const Edge& eb : gb.edges())
      edges.push_back({ea.src * nb + eb.src, ea.dst * nb + eb.dst, ea.weight * eb.weight});
  return {DirectedGraph(n, std::move(edges)), ga.vertex_count(), nb};
}

// weight'(i, j) = weight(i, j) + weight(j, i)
inline DirectedGraph symmetrize(const DirectedGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    edges.push_back(e);
    edges.push_back({e.dst, e.src, e.weight});
  }
  return {g.vertex_count(), std::move(edges), g.labels()};
}

// Components of the underlying undirected graph. Members ascend within each
// component; components are ordered by their smallest member.
inline std::vector<std::vector<std::size_t>> weakly_connected_components(const DirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u : g.out_neighbors(v)) {
      const std::size_t a = find(v), b = find(u);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(v);
  }
  return comps;
}

// Subgraph induced by `vertices` (ascending, unique); vertex k of the result
// is vertices[k]. Labels carry over.
inline DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const std::size_t> vertices) {
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (vertices[k] >= g.vertex_count()) throw input_error("vertex out of range");
    if (!local.emplace(vertices[k], k).second) throw input_error("duplicate vertex in induced set");
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto nb = g.out_neighbors(vertices[k]);
    const auto w = g.out_weights(vertices[k]);
    for (std::size_t e = 0; e < nb.size(); ++e)
      if (auto it = local.find(nb[e]); it != local.end()) edges.push_back({k, it->second, w[e]});
  }
  std::optional<std::vector<std::string>> labels;
  if (g.has_labels()) {
    labels.emplace();
    for (std::size_t v : vertices) labels->push_back((*g.labels())[v]);
  }
  return {vertices.size(), std::move(edges), std::move(labels)};
}

}  // namespace graphsim

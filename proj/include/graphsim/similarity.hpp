#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "dense_matrix.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "linalg.hpp"

namespace graphsim {

struct IterationConfig {
  double tolerance = default_tolerance;
  std::size_t max_operator_applications = default_max_applications;
  // Use the rank-one closed form when one graph is regular or undirected.
  bool use_fast_paths = true;
  // Also run the generic iteration and throw std::logic_error if the two
  // disagree by more than 1e-7 in Frobenius norm.
  bool verify_fast_paths = false;

  void validate() const {
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw input_error("tolerance must lie in (0, 1)");
    if (max_operator_applications < 2) throw input_error("iteration budget must be at least 2");
  }
};

// n_B x n_A, unit Frobenius norm; entry (i, j) scores vertex j of G_A against
// vertex i of G_B.
struct SimilarityMatrix {
  DenseMatrix scores;
  ConvergenceReport report;
  bool fast_path = false;
};

enum class ScoreKind { hub, authority, central };

inline std::string_view to_string(ScoreKind k) {
  switch (k) {
    case ScoreKind::hub: return "hub";
    case ScoreKind::authority: return "authority";
    case ScoreKind::central: return "central";
  }
  return "unknown";
}

// Unit 2-norm, entrywise non-negative.
struct ScoreVector {
  std::vector<double> values;
  ScoreKind kind;
  ConvergenceReport report;
};

struct HubAuthority {
  ScoreVector hub;
  ScoreVector authority;
};

namespace detail {

inline void require_edges(const DirectedGraph& g) {
  if (g.vertex_count() == 0) throw input_error("graph has no vertices");
  if (!g.has_edges()) throw zero_operator_error("graph has no edges");
}

inline void require_nonzero(const ConvergenceReport& r) {
  if (r.stop_reason == StopReason::zero_operator) throw zero_operator_error("iterated operator is zero");
}

// Even-iterate limit of x -> (A + A^T) x from the all-ones vector.
inline IterationResult symmetric_part_limit(const DirectedGraph& g, const IterationConfig& cfg) {
  auto apply = [&g](const DenseMatrix& x) {
    return spmm(g, x, false) + spmm(g, x, true);
  };
  auto r = even_iterate_limit(apply, DenseMatrix::ones(g.vertex_count(), 1), cfg.tolerance,
                              cfg.max_operator_applications);
  require_nonzero(r.report);
  return r;
}

inline ScoreVector to_score_vector(IterationResult r, ScoreKind kind) {
  require_nonzero(r.report);
  std::vector<double> v(r.value.data().begin(), r.value.data().end());
  return {std::move(v), kind, r.report};
}

}  // namespace detail

// Z -> B Z A^T + B^T Z A on n_B x n_A matrices.
inline auto similarity_operator(const DirectedGraph& ga, const DirectedGraph& gb) {
  return [&ga, &gb](const DenseMatrix& z) { return kronecker_sum_apply(ga, gb, z); };
}

// Generic normalized even iteration from the all-ones matrix; no fast paths.
inline SimilarityMatrix similarity_iteration(const DirectedGraph& ga, const DirectedGraph& gb,
                                             const IterationConfig& cfg) {
  cfg.validate();
  detail::require_edges(ga);
  detail::require_edges(gb);
  auto r = even_iterate_limit(similarity_operator(ga, gb),
                              DenseMatrix::ones(gb.vertex_count(), ga.vertex_count()),
                              cfg.tolerance, cfg.max_operator_applications);
  detail::require_nonzero(r.report);
  return {std::move(r.value), r.report, false};
}

// True when the similarity matrix is known to be the rank-one outer product
// of the (B+B^T) and (A+A^T) even limits: one graph regular or undirected.
inline bool has_rank_one_closed_form(const DirectedGraph& ga, const DirectedGraph& gb) {
  if (ga.vertex_count() == 0 || gb.vertex_count() == 0) return false;
  return is_regular(ga) || is_regular(gb) || ga.is_symmetric() || gb.is_symmetric();
}

namespace detail {

// S = v_B v_A^T with v_X the normalized even limit of (X + X^T) from 1.
//
// Regular A: A 1 = A^T 1 = d 1, every iterate stays v_k 1^T and v_A = 1/sqrt(n_A).
// Symmetric A: the operator is A (x) (B + B^T) and the limit factorizes.
// The cases with B regular or symmetric follow by transposition.
inline SimilarityMatrix rank_one_closed_form(const DirectedGraph& ga, const DirectedGraph& gb,
                                             const IterationConfig& cfg) {
  ConvergenceReport report{};
  DenseMatrix va;
  if (is_regular(ga)) {
    va = DenseMatrix::ones(ga.vertex_count(), 1);
    va *= 1.0 / std::sqrt(static_cast<double>(ga.vertex_count()));
  } else {
    auto r = symmetric_part_limit(ga, cfg);
    va = std::move(r.value);
    report = r.report;
  }
  DenseMatrix vb;
  if (is_regular(gb)) {
    vb = DenseMatrix::ones(gb.vertex_count(), 1);
    vb *= 1.0 / std::sqrt(static_cast<double>(gb.vertex_count()));
  } else {
    auto r = symmetric_part_limit(gb, cfg);
    vb = std::move(r.value);
    report = merge(report, r.report);
  }
  DenseMatrix s(gb.vertex_count(), ga.vertex_count());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = vb(i, 0) * va(j, 0);
  return {std::move(s), report, true};
}

}  // namespace detail

inline SimilarityMatrix similarity_matrix(const DirectedGraph& ga, const DirectedGraph& gb,
                                          const IterationConfig& cfg = {}) {
  cfg.validate();
  detail::require_edges(ga);
  detail::require_edges(gb);
  if (!cfg.use_fast_paths || !has_rank_one_closed_form(ga, gb)) return similarity_iteration(ga, gb, cfg);

  auto fast = detail::rank_one_closed_form(ga, gb, cfg);
  if (cfg.verify_fast_paths) {
    const auto slow = similarity_iteration(ga, gb, cfg);
    if (frobenius_norm(fast.scores - slow.scores) > 1e-7)
      throw std::logic_error("rank-one closed form disagrees with the generic iteration");
  }
  return fast;
}

// Closed form for a regular G_A: S = v 1^T / sqrt(n_A) with v the even limit
// of (B + B^T) from the all-ones vector.
inline SimilarityMatrix rank_one_similarity(const DirectedGraph& ga, const DirectedGraph& gb,
                                            const IterationConfig& cfg = {}) {
  cfg.validate();
  detail::require_edges(ga);
  detail::require_edges(gb);
  if (!is_regular(ga)) throw input_error("rank_one_similarity requires a regular first graph");
  auto r = detail::symmetric_part_limit(gb, cfg);
  const double scale = 1.0 / std::sqrt(static_cast<double>(ga.vertex_count()));
  DenseMatrix s(gb.vertex_count(), ga.vertex_count());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = r.value(i, 0) * scale;
  return {std::move(s), r.report, true};
}

// Hub scores: projection of 1 onto the dominant subspace of B B^T.
// Authority scores: the same for B^T B.
inline HubAuthority hub_authority_scores(const DirectedGraph& g, const IterationConfig& cfg = {}) {
  cfg.validate();
  detail::require_edges(g);
  const auto ones = DenseMatrix::ones(g.vertex_count(), 1);
  auto hub_op = [&g](const DenseMatrix& x) { return spmm(g, spmm(g, x, true), false); };
  auto auth_op = [&g](const DenseMatrix& x) { return spmm(g, spmm(g, x, false), true); };
  auto hub = even_iterate_limit(hub_op, ones, cfg.tolerance, cfg.max_operator_applications);
  auto auth = even_iterate_limit(auth_op, ones, cfg.tolerance, cfg.max_operator_applications);
  return {detail::to_score_vector(std::move(hub), ScoreKind::hub),
          detail::to_score_vector(std::move(auth), ScoreKind::authority)};
}

// Projection of 1 onto the dominant subspace of B^T B + B B^T.
inline ScoreVector central_scores(const DirectedGraph& g, const IterationConfig& cfg = {}) {
  cfg.validate();
  detail::require_edges(g);
  auto op = [&g](const DenseMatrix& x) {
    return spmm(g, spmm(g, x, false), true) + spmm(g, spmm(g, x, true), false);
  };
  auto r = even_iterate_limit(op, DenseMatrix::ones(g.vertex_count(), 1), cfg.tolerance,
                              cfg.max_operator_applications);
  return detail::to_score_vector(std::move(r), ScoreKind::central);
}

// Similarity of g with itself; symmetric positive semi-definite.
inline SimilarityMatrix self_similarity(const DirectedGraph& g, const IterationConfig& cfg = {}) {
  auto s = similarity_matrix(g, g, cfg);
  // The iterates are symmetric in exact arithmetic; drop rounding asymmetry.
  const std::size_t n = s.scores.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (s.scores(i, j) + s.scores(j, i));
      s.scores(i, j) = s.scores(j, i) = m;
    }
  return s;
}

// ---------------------------------------------------------------------------
// Nonzero support predicted from the symmetrized product graph.

class SupportPattern {
public:
  SupportPattern(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j) { bits_[i * cols_ + j] = 1; }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
  }

  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;

private:
  std::size_t rows_, cols_;
  std::vector<char> bits_;
};

// Entries above `threshold` of a score matrix.
inline SupportPattern nonzero_pattern(const DenseMatrix& s, double threshold) {
  SupportPattern p(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s(i, j) > threshold) p.set(i, j);
  return p;
}

namespace detail {

// Spectral radius of a symmetric non-negative weighted graph: dense Jacobi up
// to the oracle size, power iteration beyond.
inline double component_radius(const DirectedGraph& component) {
  if (!component.has_edges()) return 0.0;
  if (component.vertex_count() <= oracle_max_dimension) return spectral_radius(component.adjacency());
  auto op = [&component](const DenseMatrix& x) { return spmm(component, x, false); };
  const auto r = even_iterate_limit(op, DenseMatrix::ones(component.vertex_count(), 1), default_tolerance,
                                    default_max_applications);
  if (r.report.stop_reason == StopReason::zero_operator) return 0.0;
  return std::sqrt(frobenius_norm(op(op(r.value))));
}

}  // namespace detail

// (i, j) is set iff product vertex (i, j) lies in a weakly connected
// component of the symmetrized product graph whose spectral radius is
// maximal (relative tie tolerance 1e-9).
inline SupportPattern support_pattern(const DirectedGraph& ga, const DirectedGraph& gb) {
  const ProductGraph prod = product_graph(ga, gb);
  const DirectedGraph sym = symmetrize(prod.graph);
  const auto comps = weakly_connected_components(sym);

  std::vector<double> radius(comps.size(), 0.0);
  double best = 0.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].size() == 1 && sym.weight(comps[c][0], comps[c][0]) == 0.0) continue;
    radius[c] = detail::component_radius(induced_subgraph(sym, comps[c]));
    best = std::max(best, radius[c]);
  }

  SupportPattern p(gb.vertex_count(), ga.vertex_count());
  if (best == 0.0) return p;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (radius[c] < (1.0 - 1e-9) * best) continue;
    for (std::size_t k : comps[c]) {
      const auto [i, j] = prod.pair(k);
      p.set(i, j);
    }
  }
  return p;
}

}  // namespace graphsim

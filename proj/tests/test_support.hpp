#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <graphsim/dense_matrix.hpp>
#include <graphsim/graph.hpp>
#include <graphsim/linalg.hpp>

namespace graphsim::fixtures {

using Rng = std::mt19937_64;

// Random directed graph with edge probability p. Weights are uniform in
// [0.5, 2] when `weighted`, else 1. Retries until at least one edge exists.
inline DirectedGraph random_graph(Rng& rng, std::size_t n, double p, bool weighted = true) {
  std::bernoulli_distribution edge(p);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (;;) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (edge(rng)) edges.push_back({i, j, weighted ? w(rng) : 1.0});
    if (!edges.empty()) return {n, std::move(edges)};
  }
}

// Random undirected graph (symmetric adjacency).
inline DirectedGraph random_symmetric_graph(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (;;) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (edge(rng)) {
          const double x = w(rng);
          edges.push_back({i, j, x});
          if (i != j) edges.push_back({j, i, x});
        }
    if (!edges.empty()) return {n, std::move(edges)};
  }
}

// Random circulant: A_ij = c[(j - i) mod n], hence regular and normal.
inline DirectedGraph random_circulant(Rng& rng, std::size_t n) {
  std::bernoulli_distribution keep(0.5);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (;;) {
    std::vector<double> c(n, 0.0);
    for (double& x : c)
      if (keep(rng)) x = w(rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (c[k] > 0.0) edges.push_back({i, (i + k) % n, c[k]});
    if (!edges.empty()) return {n, std::move(edges)};
  }
}

// Pair of vertex counts with n_a * n_b <= max_product.
inline std::pair<std::size_t, std::size_t> random_sizes(Rng& rng, std::size_t max_product) {
  std::uniform_int_distribution<std::size_t> na_dist(1, 8);
  for (;;) {
    const std::size_t na = na_dist(rng), nb = na_dist(rng);
    if (na * nb <= max_product) return {na, nb};
  }
}

// Dense A^T or A, used to check sparse kernels against plain loops.
inline DenseMatrix dense_adjacency(const DirectedGraph& g, bool transpose = false) {
  auto a = g.adjacency();
  return transpose ? a.transposed() : a;
}

// Singular values via eigenvalues of S^T S, descending.
inline std::vector<double> singular_values(const DenseMatrix& s) {
  auto eig = symmetric_eigen(matmul(s.transposed(), s));
  std::vector<double> sv;
  for (double l : eig.values) sv.push_back(std::sqrt(std::max(0.0, l)));
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

inline double second_singular_value(const DenseMatrix& s) {
  const auto sv = singular_values(s);
  return sv.size() > 1 ? sv[1] : 0.0;
}

}  // namespace graphsim::fixtures

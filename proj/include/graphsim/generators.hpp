#pragma once

#include <cstddef>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace graphsim {

// 0 -> 1 -> ... -> n-1
inline DirectedGraph path_graph(std::size_t n) {
  if (n == 0) throw input_error("path graph needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return {n, std::move(edges)};
}

// 0 -> 1 -> ... -> n-1 -> 0
inline DirectedGraph cycle_graph(std::size_t n) {
  if (n == 0) throw input_error("cycle graph needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return {n, std::move(edges)};
}

// The hub -> authority structure graph.
inline DirectedGraph hub_authority_graph() { return path_graph(2); }

// Directed bow-tie: vertex 0 is the center, vertices 1..left point to the
// center, and the center points to vertices left+1..left+right.
inline DirectedGraph bowtie_graph(std::size_t left, std::size_t right) {
  if (left + right == 0) throw input_error("bow-tie needs at least one left or right vertex");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= left; ++v) edges.push_back({v, 0});
  for (std::size_t v = left + 1; v <= left + right; ++v) edges.push_back({0, v});
  return {1 + left + right, std::move(edges)};
}

}  // namespace graphsim

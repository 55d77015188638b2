#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "dense_matrix.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace graphsim {

// ---------------------------------------------------------------------------
// Sparse kernels. Every output entry is accumulated in ascending stored-entry
// order, so repeated runs are bit-identical.

// B X (transpose = false) or B^T X (transpose = true), B = adjacency of g.
inline DenseMatrix spmm(const DirectedGraph& g, const DenseMatrix& x, bool transpose) {
  if (x.rows() != g.vertex_count()) throw input_error("spmm: dimension mismatch");
  const std::size_t n = g.vertex_count(), c = x.cols();
  DenseMatrix y(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = transpose ? g.in_neighbors(i) : g.out_neighbors(i);
    const auto w = transpose ? g.in_weights(i) : g.out_weights(i);
    auto yi = y.row(i);
    for (std::size_t e = 0; e < nb.size(); ++e) {
      const auto xk = x.row(nb[e]);
      for (std::size_t j = 0; j < c; ++j) yi[j] += w[e] * xk[j];
    }
  }
  return y;
}

// X A (transpose = false) or X A^T (transpose = true), A = adjacency of g.
inline DenseMatrix spmm_right(const DenseMatrix& x, const DirectedGraph& g, bool transpose) {
  if (x.cols() != g.vertex_count()) throw input_error("spmm_right: dimension mismatch");
  const std::size_t n = g.vertex_count();
  DenseMatrix y(x.rows(), n);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xi = x.row(i);
    auto yi = y.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      // (X A)_{ij} sums over A_{kj} (in-edges of j); (X A^T)_{ij} over A_{jk}.
      const auto nb = transpose ? g.out_neighbors(j) : g.in_neighbors(j);
      const auto w = transpose ? g.out_weights(j) : g.in_weights(j);
      double s = 0.0;
      for (std::size_t e = 0; e < nb.size(); ++e) s += w[e] * xi[nb[e]];
      yi[j] = s;
    }
  }
  return y;
}

// B Z A^T + B^T Z A for Z of size n_B x n_A. Each row gathers B Z and B^T Z
// from Z alone, then applies the (small) A to that row, so only Z is read at
// random.
inline DenseMatrix kronecker_sum_apply(const DirectedGraph& ga, const DirectedGraph& gb, const DenseMatrix& z) {
  const std::size_t na = ga.vertex_count(), nb = gb.vertex_count();
  if (z.rows() != nb || z.cols() != na) throw input_error("kronecker_sum_apply: dimension mismatch");
  DenseMatrix out(nb, na);
  std::vector<double> u(na), v(na);
  for (std::size_t i = 0; i < nb; ++i) {
    std::fill(u.begin(), u.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    const auto on = gb.out_neighbors(i);
    const auto ow = gb.out_weights(i);
    for (std::size_t e = 0; e < on.size(); ++e) {
      const auto zk = z.row(on[e]);
      for (std::size_t j = 0; j < na; ++j) u[j] += ow[e] * zk[j];
    }
    const auto in = gb.in_neighbors(i);
    const auto iw = gb.in_weights(i);
    for (std::size_t e = 0; e < in.size(); ++e) {
      const auto zk = z.row(in[e]);
      for (std::size_t j = 0; j < na; ++j) v[j] += iw[e] * zk[j];
    }
    // (u A^T)_k sums A_kl u_l; (v A)_k sums A_lk v_l.
    auto oi = out.row(i);
    for (std::size_t k = 0; k < na; ++k) {
      double s = 0.0;
      const auto ao = ga.out_neighbors(k);
      const auto aow = ga.out_weights(k);
      for (std::size_t e = 0; e < ao.size(); ++e) s += aow[e] * u[ao[e]];
      const auto ai = ga.in_neighbors(k);
      const auto aiw = ga.in_weights(k);
      for (std::size_t e = 0; e < ai.size(); ++e) s += aiw[e] * v[ai[e]];
      oi[k] = s;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Even-iterate power method.

enum class StopReason { converged, max_iterations, zero_operator };

inline std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::zero_operator: return "zero_operator";
  }
  return "unknown";
}

struct ConvergenceReport {
  std::size_t iterations = 0;  // operator applications
  double residual = 0.0;       // ||z_2k - z_2k-2||_F at the last check
  StopReason stop_reason = StopReason::converged;

  bool converged() const noexcept { return stop_reason == StopReason::converged; }
};

// Combines the reports of independent solves: applications add up, the worst
// residual and the worst stop reason win.
inline ConvergenceReport merge(const ConvergenceReport& a, const ConvergenceReport& b) {
  return {a.iterations + b.iterations, std::max(a.residual, b.residual),
          std::max(a.stop_reason, b.stop_reason)};
}

struct IterationResult {
  DenseMatrix value;
  ConvergenceReport report;
};

inline constexpr double default_tolerance = 1e-10;
inline constexpr std::size_t default_max_applications = 200000;
inline constexpr double underflow_threshold = 1e-300;

// Limit of the normalized even subsequence z_2k for a linear, symmetric,
// non-negativity preserving operator. Each step applies the operator twice
// and normalizes once; iteration stops when two consecutive even iterates are
// within `tol` in Frobenius norm. The limit is Pi z0 / ||Pi z0||_F where Pi
// projects onto the eigenspaces of rho and -rho.
//
// On zero_operator the returned value is the zero matrix; on max_iterations
// it is the last iterate.
template <class Apply>
IterationResult even_iterate_limit(Apply&& apply, DenseMatrix z0, double tol,
                                   std::size_t max_applications) {
  if (!(tol > 0.0)) throw input_error("tolerance must be positive");
  if (max_applications < 2) throw input_error("iteration budget must allow at least two applications");
  for (double x : z0.data())
    if (!(x > 0.0) || !std::isfinite(x)) throw input_error("start matrix must be entrywise positive");

  DenseMatrix z = std::move(z0);
  z *= 1.0 / frobenius_norm(z);
  ConvergenceReport report{0, std::numeric_limits<double>::infinity(), StopReason::max_iterations};
  while (report.iterations + 2 <= max_applications) {
    DenseMatrix y = apply(z);
    ++report.iterations;
    if (frobenius_norm(y) < underflow_threshold) {
      report.stop_reason = StopReason::zero_operator;
      return {DenseMatrix(z.rows(), z.cols()), report};
    }
    y = apply(y);
    ++report.iterations;
    const double nrm = frobenius_norm(y);
    if (nrm < underflow_threshold) {
      report.stop_reason = StopReason::zero_operator;
      return {DenseMatrix(z.rows(), z.cols()), report};
    }
    y *= 1.0 / nrm;
    report.residual = frobenius_norm(y - z);
    z = std::move(y);
    if (report.residual <= tol) {
      report.stop_reason = StopReason::converged;
      break;
    }
  }
  return {std::move(z), report};
}

// ---------------------------------------------------------------------------
// Dense symmetric eigen-solver and the test-scale oracles built on it.

inline constexpr std::size_t oracle_max_dimension = 400;

inline double asymmetry(const DenseMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double ssq = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double d = m(i, j) - m(j, i);
      ssq += 2.0 * d * d;
    }
  return std::sqrt(ssq);
}

inline void require_symmetric(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw input_error("matrix is not square");
  if (asymmetry(m) > 1e-12 * frobenius_norm(m)) throw input_error("matrix is not symmetric");
}

struct SymmetricEigen {
  std::vector<double> values;  // unordered
  DenseMatrix vectors;         // column k pairs with values[k]
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass falls below
// 1e-14 ||m||_F.
inline SymmetricEigen symmetric_eigen(const DenseMatrix& m) {
  require_symmetric(m);
  const std::size_t n = m.rows();
  DenseMatrix a = m;
  DenseMatrix v = DenseMatrix::identity(n);
  const double threshold = 1e-14 * frobenius_norm(m);

  auto off_diagonal = [&] {
    double ssq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) ssq += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(ssq);
  };

  for (int sweep = 0; sweep < 100 && off_diagonal() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  SymmetricEigen out{std::vector<double>(n), std::move(v)};
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  return out;
}

// Largest |eigenvalue| of a symmetric matrix.
inline double spectral_radius(const DenseMatrix& m) {
  if (m.rows() > oracle_max_dimension) throw size_error("dense eigen-solver is limited to 400 dimensions");
  const auto eig = symmetric_eigen(m);
  double rho = 0.0;
  for (double l : eig.values) rho = std::max(rho, std::fabs(l));
  return rho;
}

// Reference value for even_iterate_limit: the projection of z0 onto the
// eigenspaces of rho and -rho, normalized. z0 may have any shape whose size
// matches m; it is read and written through the column-major vec convention.
inline DenseMatrix dense_projection_oracle(const DenseMatrix& m, const DenseMatrix& z0) {
  if (m.rows() > oracle_max_dimension) throw size_error("dense eigen-solver is limited to 400 dimensions");
  require_symmetric(m);
  if (z0.size() != m.rows()) throw input_error("start vector size does not match the operator");
  for (double x : m.data())
    if (x < 0.0) throw input_error("operator must be non-negative");
  if (frobenius_norm(m) == 0.0) throw zero_operator_error("operator is zero");

  const auto eig = symmetric_eigen(m);
  double rho = 0.0;
  for (double l : eig.values) rho = std::max(rho, std::fabs(l));
  const DenseMatrix z = vec(z0);
  const std::size_t n = m.rows();
  DenseMatrix p(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::fabs(eig.values[k]) < (1.0 - 1e-9) * rho) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += eig.vectors(i, k) * z(i, 0);
    for (std::size_t i = 0; i < n; ++i) p(i, 0) += dot * eig.vectors(i, k);
  }
  const double nrm = frobenius_norm(p);
  if (nrm == 0.0) throw zero_operator_error("start vector is orthogonal to the dominant subspace");
  p *= 1.0 / nrm;
  return unvec(p, z0.rows(), z0.cols());
}

// A (x) B + A^T (x) B^T, indexed by the column-major vec of n_B x n_A matrices.
inline DenseMatrix kronecker_operator(const DirectedGraph& ga, const DirectedGraph& gb) {
  const std::size_t nb = gb.vertex_count();
  const std::size_t n = checked_product(ga.vertex_count(), nb);
  if (n > oracle_max_dimension) throw size_error("Kronecker operator is limited to 400 dimensions");
  DenseMatrix k(n, n);
  for (const Edge& ea : ga.edges())
    for (const Edge& eb : gb.edges()) {
      const std::size_t r = ea.src * nb + eb.src;
      const std::size_t c = ea.dst * nb + eb.dst;
      k(r, c) += ea.weight * eb.weight;
      k(c, r) += ea.weight * eb.weight;
    }
  return k;
}

}  // namespace graphsim

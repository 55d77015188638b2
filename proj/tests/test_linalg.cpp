#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <graphsim/generators.hpp>
#include <graphsim/linalg.hpp>

#include "test_support.hpp"

using namespace graphsim;

namespace {

DenseMatrix random_symmetric_nonnegative(fixtures::Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution keep(0.4);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (keep(rng)) m(i, j) = m(j, i) = u(rng);
  m(0, n - 1) = m(n - 1, 0) = 0.5;  // never the zero matrix
  return m;
}

DenseMatrix jacobi_path_matrix(std::size_t l) {
  DenseMatrix m(l, l);
  for (std::size_t i = 0; i + 1 < l; ++i) m(i, i + 1) = m(i + 1, i) = 1.0;
  return m;
}

auto dense_operator(const DenseMatrix& m) {
  return [m](const DenseMatrix& x) { return matmul(m, x); };
}

}  // namespace

TEST(Norms, Examples) {
  EXPECT_DOUBLE_EQ(frobenius_norm(DenseMatrix::identity(2)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(frobenius_norm(DenseMatrix::ones(2, 3)), std::sqrt(6.0));
  EXPECT_EQ(frobenius_norm(DenseMatrix(2, 2)), 0.0);
  EXPECT_EQ(one_norm(DenseMatrix::identity(2)), 2.0);
  EXPECT_EQ(one_norm(DenseMatrix::ones(2, 3)), 6.0);
  EXPECT_EQ(one_norm(DenseMatrix(2, 2)), 0.0);
  DenseMatrix tiny(1, 2, std::vector<double>{3e-200, 4e-200});
  EXPECT_NEAR(frobenius_norm(tiny) / 5e-200, 1.0, 1e-15);
  DenseMatrix huge(1, 2, std::vector<double>{3e200, 4e200});
  EXPECT_NEAR(frobenius_norm(huge) / 5e200, 1.0, 1e-15);
}

TEST(Vec, ColumnMajorRoundTrip) {
  DenseMatrix x(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
  const auto v = vec(x);
  EXPECT_EQ(std::vector<double>(v.data().begin(), v.data().end()), (std::vector<double>{1, 4, 2, 5, 3, 6}));
  EXPECT_EQ(unvec(v, 2, 3), x);
}

TEST(Spmm, Examples) {
  const auto g = path_graph(3);
  const auto ones = DenseMatrix::ones(3, 1);
  EXPECT_EQ(spmm(g, ones, false), DenseMatrix::column({1, 1, 0}));
  EXPECT_EQ(spmm(g, ones, true), DenseMatrix::column({0, 1, 1}));
  EXPECT_EQ(spmm(DirectedGraph(3, {}), DenseMatrix::ones(3, 2), false), DenseMatrix(3, 2));
  EXPECT_THROW(spmm(g, DenseMatrix::ones(2, 1), false), input_error);
  EXPECT_THROW(spmm_right(DenseMatrix::ones(2, 2), g, false), input_error);
}

TEST(Spmm, MatchesDenseProducts) {
  fixtures::Rng rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 9, c = 1 + trial % 4;
    const auto g = fixtures::random_graph(rng, n, 0.35);
    DenseMatrix x(n, c), y(c, n);
    for (double& v : x.data()) v = u(rng);
    for (double& v : y.data()) v = u(rng);
    const auto a = g.adjacency();
    EXPECT_LT(max_abs_difference(spmm(g, x, false), matmul(a, x)), 1e-13);
    EXPECT_LT(max_abs_difference(spmm(g, x, true), matmul(a.transposed(), x)), 1e-13);
    EXPECT_LT(max_abs_difference(spmm_right(y, g, false), matmul(y, a)), 1e-13);
    EXPECT_LT(max_abs_difference(spmm_right(y, g, true), matmul(y, a.transposed())), 1e-13);
  }
}

TEST(Spmm, BitReproducible) {
  fixtures::Rng rng(2);
  const auto g = fixtures::random_graph(rng, 200, 0.05);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseMatrix x(200, 3);
  for (double& v : x.data()) v = u(rng);
  EXPECT_EQ(spmm(g, x, false), spmm(g, x, false));
  EXPECT_EQ(spmm(g, x, true), spmm(g, x, true));
  EXPECT_EQ(spmm_right(x.transposed(), g, true), spmm_right(x.transposed(), g, true));
}

TEST(EvenIterateLimit, IdentityConvergesInOneStep) {
  const auto z0 = DenseMatrix::column({1, 2, 3});
  const auto r = even_iterate_limit([](const DenseMatrix& x) { return x; }, z0, 1e-10, 100);
  EXPECT_EQ(r.report.stop_reason, StopReason::converged);
  EXPECT_EQ(r.report.iterations, 2u);
  EXPECT_LT(max_abs_difference(r.value, (1.0 / std::sqrt(14.0)) * z0), 1e-15);
}

TEST(EvenIterateLimit, DominantAxis) {
  const auto r = even_iterate_limit(dense_operator(DenseMatrix::diagonal(std::vector<double>{2, 1})),
                                    DenseMatrix::ones(2, 1), 1e-10, 1000);
  EXPECT_TRUE(r.report.converged());
  EXPECT_LE(r.report.residual, 1e-10);
  EXPECT_NEAR(r.value(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.value(1, 0), 0.0, 1e-9);
}

TEST(EvenIterateLimit, OscillatingOperatorHasEvenLimit) {
  // Eigenvalues +1 and -1: odd iterates swap, even iterates are constant.
  DenseMatrix swap(2, 2, std::vector<double>{0, 1, 1, 0});
  const auto r = even_iterate_limit(dense_operator(swap), DenseMatrix::column({1, 2}), 1e-12, 100);
  EXPECT_TRUE(r.report.converged());
  EXPECT_LT(max_abs_difference(r.value, DenseMatrix::column({1 / std::sqrt(5.0), 2 / std::sqrt(5.0)})), 1e-15);
}

TEST(EvenIterateLimit, ZeroOperatorAndBudget) {
  const auto zero = even_iterate_limit([](const DenseMatrix& x) { return DenseMatrix(x.rows(), x.cols()); },
                                       DenseMatrix::ones(3, 1), 1e-10, 100);
  EXPECT_EQ(zero.report.stop_reason, StopReason::zero_operator);
  EXPECT_EQ(zero.report.iterations, 1u);
  EXPECT_EQ(frobenius_norm(zero.value), 0.0);

  const auto slow = even_iterate_limit(dense_operator(DenseMatrix::diagonal(std::vector<double>{1, 0.9999})),
                                       DenseMatrix::ones(2, 1), 1e-12, 11);
  EXPECT_EQ(slow.report.stop_reason, StopReason::max_iterations);
  EXPECT_EQ(slow.report.iterations, 10u);
  EXPECT_GT(slow.report.residual, 1e-12);
  EXPECT_NEAR(frobenius_norm(slow.value), 1.0, 1e-15);
}

TEST(EvenIterateLimit, RejectsBadArguments) {
  auto id = [](const DenseMatrix& x) { return x; };
  EXPECT_THROW(even_iterate_limit(id, DenseMatrix::ones(2, 1), 0.0, 10), input_error);
  EXPECT_THROW(even_iterate_limit(id, DenseMatrix::ones(2, 1), 1e-10, 1), input_error);
  EXPECT_THROW(even_iterate_limit(id, DenseMatrix::column({1, 0}), 1e-10, 10), input_error);
}

TEST(EvenIterateLimit, HubAuthorityOperatorMatchesOracle) {
  fixtures::Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = fixtures::random_graph(rng, 4, 0.4);
    const auto b = g.adjacency();
    // M = [0 B; B^T 0] acting on stacked (hub, authority).
    DenseMatrix m(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, 4 + j) = m(4 + j, i) = b(i, j);
    const auto r = even_iterate_limit(dense_operator(m), DenseMatrix::ones(8, 1), 1e-12, 200000);
    ASSERT_TRUE(r.report.converged());
    EXPECT_LT(frobenius_norm(r.value - dense_projection_oracle(m, DenseMatrix::ones(8, 1))), 1e-8);
  }
}

TEST(EvenIterateLimit, AgreesWithOracleOnRandomSymmetricMatrices) {
  fixtures::Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 20;
    const auto m = random_symmetric_nonnegative(rng, n);
    const auto r = even_iterate_limit(dense_operator(m), DenseMatrix::ones(n, 1), default_tolerance,
                                      default_max_applications);
    ASSERT_TRUE(r.report.converged()) << trial;
    EXPECT_NEAR(frobenius_norm(r.value), 1.0, 1e-12);
    for (double x : r.value.data()) EXPECT_GE(x, 0.0);
    EXPECT_LT(frobenius_norm(r.value - dense_projection_oracle(m, DenseMatrix::ones(n, 1))), 1e-7) << trial;
  }
}

TEST(EvenIterateLimit, AllOnesStartMaximizesOneNorm) {
  fixtures::Rng rng(99);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial;
    const auto m = random_symmetric_nonnegative(rng, n);
    const auto best = even_iterate_limit(dense_operator(m), DenseMatrix::ones(n, 1), 1e-12, 200000);
    for (int s = 0; s < 50; ++s) {
      DenseMatrix z0(n, 1);
      for (double& x : z0.data()) x = u(rng);
      const auto r = even_iterate_limit(dense_operator(m), z0, 1e-12, 200000);
      EXPECT_LE(one_norm(r.value), one_norm(best.value) + 1e-9);
    }
  }
}

TEST(SymmetricEigen, ReconstructsMatrix) {
  fixtures::Rng rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1, 2, 5, 17, 40}) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    const auto eig = symmetric_eigen(m);
    const auto& v = eig.vectors;
    const auto rebuilt = matmul(matmul(v, DenseMatrix::diagonal(eig.values)), v.transposed());
    EXPECT_LT(frobenius_norm(rebuilt - m), 1e-12 * std::max(1.0, frobenius_norm(m)));
    EXPECT_LT(frobenius_norm(matmul(v.transposed(), v) - DenseMatrix::identity(n)), 1e-12);
  }
  EXPECT_THROW(symmetric_eigen(DenseMatrix(2, 2, std::vector<double>{0, 1, 0, 0})), input_error);
}

TEST(Oracle, Examples) {
  const auto a = dense_projection_oracle(DenseMatrix::diagonal(std::vector<double>{3, 1}), DenseMatrix::ones(2, 1));
  EXPECT_LT(max_abs_difference(a, DenseMatrix::column({1, 0})), 1e-14);

  DenseMatrix swap(2, 2, std::vector<double>{0, 1, 1, 0});
  const auto b = dense_projection_oracle(swap, DenseMatrix::column({1, 2}));
  EXPECT_LT(max_abs_difference(b, DenseMatrix::column({1 / std::sqrt(5.0), 2 / std::sqrt(5.0)})), 1e-14);

  // 3x3 path Jacobi matrix: eigenvectors (+-1)^j sin(j pi / 4), j = 1..3.
  std::vector<double> plus(3), minus(3);
  for (int j = 1; j <= 3; ++j) {
    plus[j - 1] = std::sin(j * std::numbers::pi / 4);
    minus[j - 1] = (j % 2 ? -1.0 : 1.0) * std::sin(j * std::numbers::pi / 4);
  }
  auto normalize = [](std::vector<double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    for (double& x : v) x /= std::sqrt(s);
    return v;
  };
  plus = normalize(plus);
  minus = normalize(minus);
  std::vector<double> expected(3, 0.0);
  double dp = 0, dm = 0;
  for (int j = 0; j < 3; ++j) dp += plus[j], dm += minus[j];
  for (int j = 0; j < 3; ++j) expected[j] = dp * plus[j] + dm * minus[j];
  const auto c = dense_projection_oracle(jacobi_path_matrix(3), DenseMatrix::ones(3, 1));
  EXPECT_LT(max_abs_difference(c, (1.0 / frobenius_norm(DenseMatrix::column(expected))) *
                                      DenseMatrix::column(expected)),
            1e-12);

  EXPECT_THROW(dense_projection_oracle(DenseMatrix(2, 2), DenseMatrix::ones(2, 1)), zero_operator_error);
  EXPECT_THROW(dense_projection_oracle(DenseMatrix(2, 2, std::vector<double>{0, 1, 0, 0}), DenseMatrix::ones(2, 1)),
               input_error);
}

TEST(Kronecker, SingleEdges) {
  const auto k = kronecker_operator(path_graph(2), path_graph(2));
  DenseMatrix expected(4, 4);
  expected(0, 3) = expected(3, 0) = 1.0;  // vec index of (0,0) is 0, of (1,1) is 3
  EXPECT_EQ(k, expected);
}

TEST(Kronecker, SymmetricAndMatchesVecIdentity) {
  fixtures::Rng rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [na, nb] = fixtures::random_sizes(rng, 64);
    const auto ga = fixtures::random_graph(rng, na, 0.4);
    const auto gb = fixtures::random_graph(rng, nb, 0.4);
    const auto k = kronecker_operator(ga, gb);
    EXPECT_EQ(asymmetry(k), 0.0);
    DenseMatrix x(nb, na);
    for (double& v : x.data()) v = u(rng);
    const auto a = ga.adjacency(), b = gb.adjacency();
    const auto direct = matmul(matmul(b, x), a.transposed()) + matmul(matmul(b.transposed(), x), a);
    EXPECT_LT(frobenius_norm(vec(direct) - matmul(k, vec(x))), 1e-12);
    EXPECT_LT(frobenius_norm(kronecker_sum_apply(ga, gb, x) - direct), 1e-12);
  }
  EXPECT_THROW(kronecker_sum_apply(path_graph(2), path_graph(3), DenseMatrix::ones(2, 3)), input_error);
  EXPECT_THROW(kronecker_operator(cycle_graph(21), cycle_graph(20)), size_error);
}

TEST(SpectralRadius, Examples) {
  EXPECT_NEAR(spectral_radius(DenseMatrix::diagonal(std::vector<double>{3, 1})), 3.0, 1e-15);
  EXPECT_EQ(spectral_radius(DenseMatrix(3, 3)), 0.0);
  for (std::size_t l = 1; l <= 12; ++l)
    EXPECT_NEAR(spectral_radius(jacobi_path_matrix(l)), 2 * std::cos(std::numbers::pi / (l + 1)), 1e-13) << l;
  EXPECT_THROW(spectral_radius(DenseMatrix(2, 2, std::vector<double>{0, 1, 0, 0})), input_error);
}

TEST(Serialization, CsvAndJson) {
  DenseMatrix m(2, 2, std::vector<double>{0.1, 1, 0, 2.5e-300});
  std::ostringstream csv, json;
  write_csv(csv, m);
  write_json(json, m);
  EXPECT_EQ(csv.str(), "0.10000000000000001,1\n0,2.5e-300\n");
  EXPECT_EQ(json.str(), "{\"rows\":2,\"cols\":2,\"data\":[0.10000000000000001,1,0,2.5e-300]}\n");
}

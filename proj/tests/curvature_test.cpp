#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "normcert/hessian.hpp"
#include "normcert/psd.hpp"
#include "oracles.hpp"

namespace normcert {
namespace {

SymRationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  SymRationalMatrix a(static_cast<int>(rows.size()));
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j) a.set(i, j, rows[i][j]);
  return a;
}

SymRationalMatrix scalar(const Rational& c) {
  SymRationalMatrix a(1);
  a.set(0, 0, c);
  return a;
}

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

TEST(Hessian, ScalarHosts) {
  for (const Rational c : {Rational(0), Rational(3), ratio(-2, 5)}) {
    EXPECT_EQ(hessian_matrix(complete_bipartite(1, 1), scalar(c)).entries, scalar(0));
    EXPECT_EQ(hessian_matrix(cycle(4), scalar(c)).entries, scalar(12 * c * c));
  }
}

TEST(Hessian, AgreesWithFiniteDifferences) {
  const auto a = from_rows({{1, -1}, {-1, 2}});
  const auto h = hessian_matrix(cycle(4), a).entries;
  const auto fd = oracle::fd_hessian(cycle(4), a);
  for (int p = 0; p < h.size(); ++p)
    for (int q = 0; q < h.size(); ++q)
      EXPECT_NEAR(h(p, q).get_d(), fd[p][q], 1e-4 * std::max(1.0, std::abs(fd[p][q])));
}

TEST(Hessian, AgreesWithSymbolicDifferentiation) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = oracle::random_graph(5, rng);
    const int n = 1 + trial % 3;
    auto a = sample_matrix(n, MatrixClass::signed_, 4, rng);
    if (trial % 4 == 0) a.set(0, 0, 0);  // exercise the zero-budget path
    const auto poly = oracle::full_polynomial(h, n);
    std::map<std::string, Rational> at;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) at[oracle::cell_name(i, j)] = a(i, j);
    const auto pairs = all_pairs(n);
    const auto hess = hessian_matrix(h, a).entries;
    for (int p = 0; p < hess.size(); ++p) {
      for (int q = p; q < hess.size(); ++q) {
        const auto sp = oracle::cell_name(pairs[p].first, pairs[p].second);
        const auto sq = oracle::cell_name(pairs[q].first, pairs[q].second);
        const auto d = p == q ? partial_derivative(poly, sp, 2)
                              : partial_derivative(partial_derivative(poly, sp), sq);
        EXPECT_EQ(hess(p, q), evaluate(d, at)) << trial << " " << p << " " << q;
      }
    }
  }
}

TEST(Hessian, ScalesWithDegreeMinusTwo) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_graph(6, rng);
    if (h.edge_count() < 2) continue;
    const auto a = sample_matrix(2, MatrixClass::signed_, 5, rng);
    const Rational lambda = ratio(static_cast<long>(trial % 5) - 2, 3);
    const auto scaled = hessian_matrix(h, lambda * a).entries;
    EXPECT_EQ(scaled, pow(lambda, static_cast<unsigned>(h.edge_count() - 2)) * hessian_matrix(h, a).entries);
  }
}

TEST(Hessian, PrincipalSubmatrixMatchesFullMatrix) {
  const auto a = from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  const auto mobius = bowtie_blowup(cycle(5));
  const auto full = hessian_matrix(mobius, a);
  EXPECT_EQ(principal_submatrix(full, all_pairs(3)), full.entries);
  const std::vector<IndexPair> pairs = {{2, 2}, {0, 2}};
  const auto sub = principal_submatrix(full, pairs);
  EXPECT_EQ(sub, hessian_principal(mobius, a, pairs));
  EXPECT_EQ(sub, from_rows({{0, 20}, {20, 940}}));
  EXPECT_THROW(principal_submatrix(full, {{0, 1}, {1, 0}}), usage_error);
  EXPECT_THROW(principal_submatrix(full, {{0, 3}}), usage_error);
}

TEST(Hessian, HostLimit) {
  EXPECT_THROW(hessian_matrix(cycle(4), all_ones(5)), inconclusive_error);
}

TEST(TwoVarHessian, Examples) {
  const auto x = SparsePoly::variable("x"), y = SparsePoly::variable("y");
  const auto p = x * x * Rational(3) + x * y * Rational(5) + y * y * Rational(7);
  const auto h = two_var_hessian_at_origin(p);
  EXPECT_EQ(h.xx, SparsePoly::constant({}, 6));
  EXPECT_EQ(h.xy, SparsePoly::constant({}, 5));
  EXPECT_EQ(h.yy, SparsePoly::constant({}, 14));
  const auto cubic = two_var_hessian_at_origin(x * x * x * y);
  EXPECT_TRUE(cubic.xx.is_zero() && cubic.xy.is_zero() && cubic.yy.is_zero());
  EXPECT_THROW(two_var_hessian_at_origin(x), usage_error);
}

TEST(TwoVarHessian, KeepsRemainingSymbols) {
  const auto x = SparsePoly::variable("x"), y = SparsePoly::variable("y"), e = SparsePoly::variable("eps");
  const auto h = two_var_hessian_at_origin(x * x * e * e + x * y * e + y * y * y);
  EXPECT_EQ(h.xx, e * e * Rational(2));
  EXPECT_EQ(h.xy, e);
  EXPECT_TRUE(h.yy.is_zero());
}

TEST(AllOnesKernel, EvenEulerianGraphs) {
  for (auto [h, n] : std::vector<std::pair<Graph, int>>{{cycle(4), 1}, {cycle(4), 2}, {cycle(6), 1}}) {
    const auto k = allones_kernel_check(h, n);
    EXPECT_TRUE(k.in_kernel);
    EXPECT_EQ(k.hessian.dim(), pair_count(2 * n));
  }
  EXPECT_THROW(allones_kernel_check(cycle(3), 1), usage_error);
  EXPECT_THROW(allones_kernel_check(path(3), 1), usage_error);
  EXPECT_THROW(allones_kernel_check(cycle(4), 3), inconclusive_error);
}

TEST(Psd, Examples) {
  EXPECT_EQ(psd_certify(SymRationalMatrix::identity(4)).verdict, PsdVerdict::psd);
  for (const auto& m : {from_rows({{0, 1}, {1, 0}}), from_rows({{1, 2}, {2, 1}})}) {
    const auto r = psd_certify(m);
    ASSERT_EQ(r.verdict, PsdVerdict::not_psd);
    EXPECT_EQ(r.witness, ints({1, -1}));
    EXPECT_EQ(r.value, -2);
  }
  const auto neg = psd_certify(from_rows({{1, 0}, {0, -3}}));
  ASSERT_EQ(neg.verdict, PsdVerdict::not_psd);
  EXPECT_EQ(neg.value, quadratic_form(from_rows({{1, 0}, {0, -3}}), neg.witness));
  EXPECT_LT(neg.value, 0);
  EXPECT_EQ(psd_certify(from_rows({{1, 1}, {1, 1}})).verdict, PsdVerdict::psd);
  EXPECT_EQ(psd_certify(SymRationalMatrix(3)).verdict, PsdVerdict::psd);
}

SymRationalMatrix gram(int n, int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<std::vector<long>> b(n, std::vector<long>(rank));
  for (auto& row : b)
    for (auto& x : row) x = d(rng);
  SymRationalMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      long s = 0;
      for (int k = 0; k < rank; ++k) s += b[i][k] * b[j][k];
      m.set(i, j, s);
    }
  return m;
}

TEST(Psd, AgreesWithEigenvalueOracle) {
  std::mt19937_64 rng(63);
  int decided = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto m = trial % 2 ? sample_matrix(6, MatrixClass::signed_, 5, rng) : gram(6, 1 + trial % 6, rng);
    if (trial % 6 == 2) m.set(1, 3, m(1, 3) + ratio(1, 7));
    const double lambda = oracle::min_eigenvalue(m);
    const auto r = psd_certify(m);
    if (r.verdict == PsdVerdict::not_psd) {
      EXPECT_EQ(quadratic_form(m, r.witness), r.value);
      EXPECT_LT(r.value, 0);
    }
    if (std::abs(lambda) <= 1e-9) continue;
    ++decided;
    EXPECT_EQ(r.verdict == PsdVerdict::psd, lambda > 0) << trial << " lambda=" << lambda;
  }
  EXPECT_GT(decided, 500);
}

TEST(Psd, NormingCycleHessiansArePsd) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const auto a = sample_matrix(n, MatrixClass::signed_, 6, rng);
    EXPECT_EQ(psd_certify(hessian_matrix(cycle(4), a).entries).verdict, PsdVerdict::psd) << trial;
  }
}

}  // namespace
}  // namespace normcert

#include <gtest/gtest.h>

#include "support.hpp"

using namespace ratquiver;
using rq_test::Q;

namespace {

std::vector<Rational> V(std::vector<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::internal;
}

}  // namespace

TEST(Rational, ParseCanonicalises) {
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("6/3"), Rational(2));
  EXPECT_EQ(parse_rational("+5"), Rational(5));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/0", "a", "1.5", "1/-2", "/3", "3/"})
    EXPECT_EQ(code_of([&] { parse_rational(bad); }), errc::parse_error) << bad;
}

TEST(Rref, Identity) {
  auto r = rref(Matrix<Rational>::identity(3));
  EXPECT_EQ(r.reduced, Matrix<Rational>::identity(3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, Zero) {
  auto r = rref(Matrix<Rational>(2, 3));
  EXPECT_TRUE(r.reduced.is_zero_matrix());
  EXPECT_EQ(r.rank, 0u);
  EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, RankOneByHand) {
  auto r = rref(Q({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.reduced, Q({{1, 2}, {0, 0}}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
}

TEST(Rref, FractionsByHand) {
  // [[2,1,1],[4,3,3]] -> [[1,0,0],[0,1,1]]
  auto r = rref(Q({{2, 1, 1}, {4, 3, 3}}));
  EXPECT_EQ(r.reduced, Q({{1, 0, 0}, {0, 1, 1}}));
  auto s = rref(Q({{3, 1}}));
  EXPECT_EQ(s.reduced(0, 1), Rational(1, 3));
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel_basis(Matrix<Rational>::identity(3)).empty());
  auto z = kernel_basis(Matrix<Rational>(2, 3));
  ASSERT_EQ(z.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(z[k][i], Rational(i == k ? 1 : 0));
  auto one = kernel_basis(Q({{1, 1}}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], V({-1, 1}));
}

TEST(Solve, Examples) {
  EXPECT_EQ(solve(Matrix<Rational>::identity(2), V({3, -4})), V({3, -4}));
  EXPECT_FALSE(solve(Q({{1, 1}, {1, 1}}), V({0, 1})).has_value());
  EXPECT_EQ(solve(Q({{2}}), V({1})), (std::vector<Rational>{Rational(1, 2)}));
  EXPECT_EQ(code_of([] { solve(Q({{1, 0}}), V({1, 2})); }), errc::dimension_mismatch);
}

TEST(Inverse, SingularAndRegular) {
  EXPECT_FALSE(try_inverse(Q({{1, 2}, {2, 4}})).has_value());
  EXPECT_EQ(code_of([] { inverse(Q({{0}})); }), errc::singular_matrix);
  auto inv = inverse(Q({{2, 1}, {1, 1}}));
  EXPECT_EQ(inv, Q({{1, -1}, {-1, 2}}));
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> ent(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 5;
    std::vector<std::vector<long>> raw(n, std::vector<long>(n));
    for (auto& row : raw)
      for (auto& x : row) x = ent(rng);
    EXPECT_EQ(determinant(Q(raw)), Rational(rq_test::leibniz_det(raw)));
  }
}

TEST(Psd, MatchesPrincipalMinorOracle) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> ent(-3, 3);
  int psd_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + trial % 5;
    // mix Gram matrices (always PSD) with arbitrary symmetric ones
    std::vector<std::vector<long>> s(n, std::vector<long>(n));
    if (trial % 2) {
      std::vector<std::vector<long>> g(n, std::vector<long>(2));
      for (auto& row : g)
        for (auto& x : row) x = ent(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = g[i][0] * g[j][0] + g[i][1] * g[j][1];
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s[i][j] = s[j][i] = ent(rng);
    }
    bool oracle = rq_test::psd_by_principal_minors(s);
    psd_seen += oracle;
    EXPECT_EQ(is_positive_semidefinite(Q(s)), oracle) << "trial " << trial;
  }
  EXPECT_GT(psd_seen, 100);
}

TEST(QuadExt, RejectsBadField) {
  for (long d : {0L, 1L, 4L, -8L, 12L}) EXPECT_EQ(code_of([d] { QuadExt(Rational(1), Rational(0), d); }), errc::invalid_field);
  EXPECT_EQ(code_of([] { (void)(QuadExt::sqrt_d(-1) + QuadExt::sqrt_d(2)); }), errc::mixed_field);
}

TEST(QuadExt, Arithmetic) {
  QuadExt i = QuadExt::sqrt_d(-1);
  EXPECT_EQ(i * i, QuadExt::rational(Rational(-1), -1));
  QuadExt x(Rational(1), Rational(2), 3);  // 1 + 2 sqrt 3, norm 1 - 12
  EXPECT_EQ(x.norm(), Rational(-11));
  EXPECT_EQ(x * x.inverse(), QuadExt::rational(Rational(1), 3));
  EXPECT_EQ(x * x.conj(), QuadExt::rational(x.norm(), 3));
}

TEST(QuadConj, Examples) {
  Matrix<QuadExt> real = to_quad(Q({{1, 2}, {3, 4}}), -1);
  EXPECT_EQ(quad_conj_matrix(real), real);
  Matrix<QuadExt> i(1, 1, QuadExt::sqrt_d(-1));
  EXPECT_EQ(quad_conj_matrix(i)(0, 0), -QuadExt::sqrt_d(-1));
}

TEST(QuadConj, IsARingHomomorphism) {
  std::mt19937 rng(3);
  for (long d : {-1L, 2L, -3L, 5L})
    for (int t = 0; t < 25; ++t) {
      auto a = rq_test::random_quad_matrix(rng, 2, 3, d, 5), b = rq_test::random_quad_matrix(rng, 3, 2, d, 5);
      EXPECT_EQ(quad_conj_matrix(a * b), quad_conj_matrix(a) * quad_conj_matrix(b));
      EXPECT_EQ(quad_conj_matrix(quad_conj_matrix(a)), a);
    }
}

TEST(RestrictScalars, Examples) {
  for (long d : {-1L, 2L, 7L}) {
    Matrix<QuadExt> id = to_quad(Matrix<Rational>::identity(3), d);
    EXPECT_EQ(restrict_scalars(id), Matrix<Rational>::identity(6));
    Matrix<QuadExt> s(1, 1, QuadExt::sqrt_d(d));
    EXPECT_EQ(restrict_scalars(s), Q({{0, d}, {1, 0}}));
  }
  EXPECT_EQ(code_of([] { restrict_scalars(to_quad(Matrix<Rational>::identity(2), 2), 3); }), errc::dimension_mismatch);
}

TEST(RestrictScalars, IsAnInjectiveAlgebraMap) {
  std::mt19937 rng(17);
  for (long d : {-1L, -2L, 3L})
    for (int t = 0; t < 25; ++t) {
      auto a = rq_test::random_quad_matrix(rng, 3, 3, d, 4), b = rq_test::random_quad_matrix(rng, 3, 3, d, 4);
      EXPECT_EQ(restrict_scalars(a * b), restrict_scalars(a) * restrict_scalars(b));
      EXPECT_EQ(restrict_scalars(a + b), restrict_scalars(a) + restrict_scalars(b));
      bool a_zero = a.is_zero_matrix();
      EXPECT_EQ(restrict_scalars(a).is_zero_matrix(), a_zero);
    }
}

TEST(Property, RankNullity) {
  std::mt19937 rng(1);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = rq_test::random_matrix(rng, r, c, 5, 0.4 + 0.1 * (t % 6));
    auto ker = kernel_basis(m);
    EXPECT_EQ(rank(m) + ker.size(), c);
    for (const auto& x : ker) {
      auto y = m * x;
      for (const auto& yi : y) EXPECT_EQ(yi, 0);
    }
  }
}

TEST(Property, RrefIdempotentAndRowEquivalent) {
  std::mt19937 rng(2);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = rq_test::random_matrix(rng, r, c, 5, 0.5);
    auto once = rref(m);
    auto twice = rref(once.reduced);
    EXPECT_EQ(twice.reduced, once.reduced);
    EXPECT_EQ(twice.pivots, once.pivots);
    // same row space: stacking adds no rank
    Matrix<Rational> stacked(2 * r, c);
    stacked.set_block(0, 0, m);
    stacked.set_block(r, 0, once.reduced);
    EXPECT_EQ(rank(stacked), once.rank);
  }
}

TEST(Property, SolveIsCorrectWhenConsistent) {
  std::mt19937 rng(4);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    auto m = rq_test::random_matrix(rng, r, c, 4, 0.6);
    std::vector<Rational> x0(c);
    for (auto& x : x0) x = rq_test::random_rational(rng, 4);
    auto b = m * x0;
    auto x = solve(m, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m * *x, b);
  }
}

TEST(Property, InverseIsTwoSided) {
  std::mt19937 rng(8);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + t % 5;
    auto g = rq_test::random_invertible(rng, n, 5);
    auto gi = inverse(g);
    EXPECT_EQ(g * gi, Matrix<Rational>::identity(n));
    EXPECT_EQ(gi * g, Matrix<Rational>::identity(n));
    EXPECT_NE(determinant(g), 0);
  }
}

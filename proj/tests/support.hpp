#pragma once

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ratquiver.hpp"

namespace rq_test {

using namespace ratquiver;

inline std::string fixture(const std::string& name) { return std::string(RATQUIVER_FIXTURES) + "/" + name; }

inline RationalQuiver load(const std::string& name) {
  return to_rational_quiver(parse_quiver_document(read_file(fixture(name))));
}

inline Root R(std::vector<int> c) { return Root{std::move(c)}; }

inline Matrix<Rational> Q(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto& row : rows) {
    std::vector<Rational> x;
    for (long v : row) x.emplace_back(v);
    r.push_back(std::move(x));
  }
  return Matrix<Rational>::from_rows(r);
}

// Quivers ------------------------------------------------------------------

inline Quiver path_quiver(std::size_t n) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) es.push_back({"e" + std::to_string(i), vs[i - 1], vs[i]});
  return Quiver(vs, es);
}

/// Star with arms of the given lengths around centre "c", edges pointing outward.
inline Quiver star_quiver(const std::vector<std::size_t>& arms) {
  std::vector<std::string> vs{"c"};
  std::vector<Edge> es;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    std::string prev = "c";
    for (std::size_t k = 0; k < arms[a]; ++k) {
      std::string v = "a" + std::to_string(a) + "_" + std::to_string(k);
      vs.push_back(v);
      es.push_back({"e" + std::to_string(a) + "_" + std::to_string(k), prev, v});
      prev = v;
    }
  }
  return Quiver(vs, es);
}

struct NamedQuiver {
  std::string name;
  Quiver quiver;
  std::size_t positive_roots;
};

/// Connected ADE diagrams of rank <= 8 with their positive root counts.
inline std::vector<NamedQuiver> ade_catalogue() {
  std::vector<NamedQuiver> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back({"A" + std::to_string(n), path_quiver(n), n * (n + 1) / 2});
  for (std::size_t n = 4; n <= 8; ++n) out.push_back({"D" + std::to_string(n), star_quiver({1, 1, n - 3}), n * (n - 1)});
  out.push_back({"E6", star_quiver({1, 2, 2}), 36});
  out.push_back({"E7", star_quiver({1, 2, 3}), 63});
  out.push_back({"E8", star_quiver({1, 2, 4}), 120});
  return out;
}

// Oracles -------------------------------------------------------------------

/// {d : 0 <= d_v <= 6, d != 0, sum d_v^2 - sum_edges d_s d_t = 1}
inline std::set<std::vector<int>> tits_oracle(const Quiver& q) {
  std::size_t n = q.vertex_count();
  std::set<std::vector<int>> out;
  std::vector<int> d(n, 0);
  while (true) {
    std::size_t k = 0;
    while (k < n && d[k] == 6) d[k++] = 0;
    if (k == n) break;
    ++d[k];
    long s = 0;
    for (int x : d) s += x * x;
    for (const auto& e : q.edges()) s -= d[q.vertex_index(e.src)] * d[q.vertex_index(e.tgt)];
    if (s == 1) out.insert(d);
  }
  return out;
}

/// Determinant by cofactor expansion on integers.
inline long leibniz_det(const std::vector<std::vector<long>>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    det += (c % 2 ? -1 : 1) * m[0][c] * leibniz_det(minor);
  }
  return det;
}

/// All principal minors >= 0.
inline bool psd_by_principal_minors(const std::vector<std::vector<long>>& m) {
  std::size_t n = m.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<long>> sub;
    for (auto i : idx) {
      std::vector<long> row;
      for (auto j : idx) row.push_back(m[i][j]);
      sub.push_back(row);
    }
    if (leibniz_det(sub) < 0) return false;
  }
  return true;
}

/// Squarefree part of a nonzero integer (sign kept), by trial division.
inline long squarefree_part(long n) {
  long sign = n < 0 ? -1 : 1, m = std::labs(n), core = 1;
  for (long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) core *= p;
  }
  return sign * core * m;
}

/// Hilbert symbol at a prime p by brute force: (a,b)_p = 1 iff
/// z^2 = a x^2 + b y^2 has a primitive solution modulo p^k, with k = 6 for
/// p = 2 and k = 3 for odd p (enough for Hensel lifting when the
/// valuations of a and b are at most 1).
inline int hilbert_bruteforce(long a, long b, long p) {
  a = squarefree_part(a);
  b = squarefree_part(b);
  long mod = 1;
  for (int k = 0; k < (p == 2 ? 6 : 3); ++k) mod *= p;
  auto rem = [mod](long x) { return ((x % mod) + mod) % mod; };
  std::vector<long> sq(mod);
  for (long x = 0; x < mod; ++x) sq[x] = x * x % mod;
  std::vector<bool> is_sq_unit(mod, false), is_sq_any(mod, false);
  for (long z = 0; z < mod; ++z) {
    is_sq_any[sq[z]] = true;
    if (z % p) is_sq_unit[sq[z]] = true;
  }
  for (long x = 0; x < mod; ++x)
    for (long y = 0; y < mod; ++y) {
      long rhs = rem(a * sq[x] + b * sq[y]);
      bool xy_primitive = (x % p) || (y % p);
      if (xy_primitive ? is_sq_any[rhs] : is_sq_unit[rhs]) return 1;
    }
  return -1;
}

/// Multiplication in (a,b/Q) on coordinates over (1, i, j, ij).
inline std::vector<Rational> quaternion_mul(const std::vector<Rational>& x, const std::vector<Rational>& y, const Rational& a,
                                            const Rational& b) {
  // basis products e_p e_q = coef * e_r
  struct Prod {
    int r;
    Rational c;
  };
  auto table = [&](int p, int q) -> Prod {
    // 1 = 0, i = 1, j = 2, k = ij = 3
    if (p == 0) return {q, 1};
    if (q == 0) return {p, 1};
    if (p == 1 && q == 1) return {0, a};
    if (p == 1 && q == 2) return {3, 1};
    if (p == 1 && q == 3) return {2, a};           // i ij = a j
    if (p == 2 && q == 1) return {3, -1};          // ji = -ij
    if (p == 2 && q == 2) return {0, b};
    if (p == 2 && q == 3) return {1, Rational(-b)};  // j ij = -ij j = -i b
    if (p == 3 && q == 1) return {2, Rational(-a)};  // ij i = -i i j = -a j
    if (p == 3 && q == 2) return {1, b};           // ij j = b i
    return {0, Rational(-a * b)};                  // ij ij = -i i j j
  };
  std::vector<Rational> z(4, Rational(0));
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      if (sgn(x[p]) == 0 || sgn(y[q]) == 0) continue;
      Prod pr = table(p, q);
      z[pr.r] += pr.c * x[p] * y[q];
    }
  return z;
}

/// Matrix of x -> x * g in the basis (1, i, j, ij).
inline Matrix<Rational> right_multiplication(int g, const Rational& a, const Rational& b) {
  Matrix<Rational> m(4, 4);
  std::vector<Rational> gen(4, Rational(0));
  gen[g] = 1;
  for (int c = 0; c < 4; ++c) {
    std::vector<Rational> e(4, Rational(0));
    e[c] = 1;
    auto img = quaternion_mul(e, gen, a, b);
    for (int r = 0; r < 4; ++r) m(r, c) = img[r];
  }
  return m;
}

// Random generators -----------------------------------------------------------

inline Rational random_rational(std::mt19937& rng, long h) {
  std::uniform_int_distribution<long> num(-h, h), den(1, h);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Matrix<Rational> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long h, double density = 1.0) {
  Matrix<Rational> m(r, c);
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m(i, j) = random_rational(rng, h);
  return m;
}

/// Random invertible n x n with entries of height <= h, by rejection.
inline Matrix<Rational> random_invertible(std::mt19937& rng, std::size_t n, long h) {
  if (n == 0) return Matrix<Rational>(0, 0);
  while (true) {
    Matrix<Rational> m = random_matrix(rng, n, n, h);
    if (try_inverse(m)) return m;
  }
}

inline Matrix<QuadExt> random_quad_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long d, long h) {
  Matrix<QuadExt> m(r, c, QuadExt::rational(Rational(0), d));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = QuadExt(random_rational(rng, h), random_rational(rng, h), d);
  return m;
}

/// A random rational quiver: a random central tree C with k isomorphic
/// copies of a random rooted tree R hung from one vertex of C, and a random
/// subgroup of S_k permuting the copies. Orientations are random but equal
/// across copies.
inline QuiverDocument random_folded_tree(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(1, 4), coin(0, 1);
  int nc = small(rng), nr = small(rng), k = std::uniform_int_distribution<int>(1, 4)(rng);
  QuiverDocument doc;
  for (int i = 0; i < nc; ++i) doc.vertices.push_back("c" + std::to_string(i));
  for (int i = 1; i < nc; ++i) {
    int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    std::string a = "c" + std::to_string(parent), b = "c" + std::to_string(i);
    if (coin(rng)) std::swap(a, b);
    doc.edges.push_back({"ce" + std::to_string(i), a, b});
  }
  std::string anchor = "c" + std::to_string(std::uniform_int_distribution<int>(0, nc - 1)(rng));
  std::vector<int> parent(nr), orient(nr);
  for (int i = 0; i < nr; ++i) {
    parent[i] = i == 0 ? -1 : std::uniform_int_distribution<int>(0, i - 1)(rng);
    orient[i] = coin(rng);
  }
  auto vname = [](int copy, int i) { return "r" + std::to_string(copy) + "_" + std::to_string(i); };
  auto ename = [](int copy, int i) { return "re" + std::to_string(copy) + "_" + std::to_string(i); };
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < nr; ++i) {
      doc.vertices.push_back(vname(c, i));
      std::string a = parent[i] < 0 ? anchor : vname(c, parent[i]), b = vname(c, i);
      if (orient[i]) std::swap(a, b);
      doc.edges.push_back({ename(c, i), a, b});
    }
  int gens = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int g = 0; g < gens; ++g) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    GeneratorSpec spec;
    spec.name = "g" + std::to_string(g);
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < nr; ++i) {
        spec.vperm[vname(c, i)] = vname(perm[c], i);
        spec.eperm[ename(c, i)] = ename(perm[c], i);
      }
    doc.generators.push_back(std::move(spec));
  }
  return doc;
}

struct RandomSum {
  SplitRepresentation rep;
  /// Expected multiplicities, in indecomposable order, zeros dropped.
  RootMultiset expected;
};

/// Direct sum of indecomposables with multiplicities in [0, max_mult] (at
/// least one summand), then a random base change at every vertex with
/// entries of height <= h.
inline RandomSum random_sum(const std::vector<Indecomposable>& indecs, std::mt19937& rng, std::size_t max_mult, long h) {
  const Quiver& q = indecs.front().rep.quiver();
  std::uniform_int_distribution<std::size_t> mult(0, max_mult), which(0, indecs.size() - 1);
  std::vector<std::size_t> m(indecs.size());
  // sparse: most multiplicities zero, so dimensions stay small
  for (auto& x : m) x = std::bernoulli_distribution(0.25)(rng) ? mult(rng) : 0;
  if (std::all_of(m.begin(), m.end(), [](std::size_t x) { return x == 0; })) m[which(rng)] = 1;
  SplitRepresentation acc = SplitRepresentation::zero(q);
  RootMultiset expected;
  for (std::size_t a = 0; a < indecs.size(); ++a) {
    if (!m[a]) continue;
    expected.emplace_back(indecs[a].root, m[a]);
    for (std::size_t k = 0; k < m[a]; ++k) acc = direct_sum(acc, indecs[a].rep);
  }
  std::vector<Matrix<Rational>> g;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) g.push_back(random_invertible(rng, acc.dim(v), h));
  return {change_basis(acc, g), expected};
}

}  // namespace rq_test

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "hilbert.hpp"
#include "matrix.hpp"
#include "quad_ext.hpp"

namespace ratquiver {

/// The quaternion algebra (a, b / Q) with i^2 = a, j^2 = b, ij = -ji, split
/// by L = Q(sqrt(a)) = Q(sqrt(d)).
struct QuaternionInput {
  Rational a;
  Rational b;
  long d;
  /// sqrt(a) = sqrt_scale * sqrt(d)
  Rational sqrt_scale;
};

inline QuaternionInput make_quaternion_input(const Rational& a, const Rational& b) {
  if (sgn(a) == 0 || sgn(b) == 0) throw error(errc::invalid_field, "a and b must be nonzero");
  require_height(a, "a");
  require_height(b, "b");
  Integer root;
  Integer core = squarefree_core(square_class_integer(a), &root);
  if (core == 1) throw error(errc::square_a, to_string(a) + " is a square in Q");
  // a = num*den / den^2 = root^2 core / den^2
  Rational scale(root, a.get_den());
  scale.canonicalize();
  return {a, b, core.get_si(), scale};
}

/// Two loop maps on M(v) = L^2.
struct TwoLoopRep {
  Matrix<QuadExt> phi1;
  Matrix<QuadExt> phi2;

  TwoLoopRep(Matrix<QuadExt> p1, Matrix<QuadExt> p2) : phi1(std::move(p1)), phi2(std::move(p2)) {
    if (phi1.rows() != 2 || phi1.cols() != 2 || phi2.rows() != 2 || phi2.cols() != 2)
      throw error(errc::dimension_mismatch, "loop maps must be 2x2");
    if (common_field(phi1) != common_field(phi2)) throw error(errc::mixed_field, "loop maps over different fields");
  }

  long d() const { return phi1.zero().d(); }
};

/// phi1 = image of i = diag(sqrt a, -sqrt a), phi2 = image of j = [[0, b], [1, 0]].
inline TwoLoopRep split_embed(const QuaternionInput& in) {
  QuadExt zero = QuadExt::rational(Rational(0), in.d);
  QuadExt s(Rational(0), in.sqrt_scale, in.d);
  Matrix<QuadExt> p1(2, 2, zero), p2(2, 2, zero);
  p1(0, 0) = s;
  p1(1, 1) = -s;
  p2(0, 1) = QuadExt::rational(in.b, in.d);
  p2(1, 0) = QuadExt::rational(Rational(1), in.d);
  TwoLoopRep rep(std::move(p1), std::move(p2));

  auto id = Matrix<QuadExt>::identity(2, zero);
  if (!(rep.phi1 * rep.phi1 == QuadExt::rational(in.a, in.d) * id) ||
      !(rep.phi2 * rep.phi2 == QuadExt::rational(in.b, in.d) * id) ||
      !(rep.phi1 * rep.phi2 == -(rep.phi2 * rep.phi1)))
    throw error(errc::internal, "quaternion relations fail for the splitting embedding");
  return rep;
}

inline TwoLoopRep split_embed(const Rational& a, const Rational& b) { return split_embed(make_quaternion_input(a, b)); }

namespace detail {

inline std::vector<QuadExt> flatten(const Matrix<QuadExt>& m) { return {m.entries().begin(), m.entries().end()}; }

inline std::vector<Rational> flatten(const Matrix<Rational>& m) { return {m.entries().begin(), m.entries().end()}; }

inline Matrix<Rational> unflatten(const std::vector<Rational>& v, std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t k = 0; k < v.size(); ++k) m(k / n, k % n) = v[k];
  return m;
}

}  // namespace detail

/// Dimension over L of the unital L-algebra generated by phi1 and phi2,
/// grown as a span until it is closed under left multiplication by the
/// generators.
inline std::size_t generated_algebra_dim_L(const TwoLoopRep& rep) {
  const QuadExt& zero = rep.phi1.zero();
  std::vector<Matrix<QuadExt>> basis;
  auto try_add = [&](const Matrix<QuadExt>& m) {
    std::vector<std::vector<QuadExt>> rows;
    for (const auto& b : basis) rows.push_back(detail::flatten(b));
    rows.push_back(detail::flatten(m));
    if (rank(Matrix<QuadExt>::from_rows(rows, zero)) > basis.size()) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  try_add(Matrix<QuadExt>::identity(2, zero));
  try_add(rep.phi1);
  try_add(rep.phi2);
  for (bool grew = true; grew;) {
    grew = false;
    auto current = basis;
    for (const auto& x : current)
      for (const auto* g : {&rep.phi1, &rep.phi2}) grew = try_add(*g * x) || grew;
  }
  return basis.size();
}

/// Burnside: absolutely irreducible iff the generated algebra is all of M_2(L).
inline bool is_absolutely_irreducible(const TwoLoopRep& rep) { return generated_algebra_dim_L(rep) == 4; }

enum class Obstruction { Trivial, NontrivialOrderTwo };

inline const char* to_string(Obstruction o) {
  return o == Obstruction::Trivial ? "trivial" : "nontrivial (order 2)";
}

struct ZeroDivisorWitness {
  std::vector<long> coefficients;
  Matrix<Rational> element;
};

/// Endomorphism algebra of the restricted-scalars representation: the
/// commutant of the two 4x4 rational loop matrices.
struct CentralizerReport {
  std::size_t dimension = 0;
  std::vector<Matrix<Rational>> basis;
  /// structure_constants[k][l] = coordinates of basis[k] * basis[l].
  std::vector<std::vector<std::vector<Rational>>> structure_constants;
  std::vector<Rational> identity_coordinates;
  bool commutative = true;
  // filled from the Hilbert-symbol verdict
  std::optional<bool> is_division;
  std::optional<Obstruction> obstruction;
  std::vector<PlaceCertificate> certificates;
  std::optional<ZeroDivisorWitness> zero_divisor_witness;
};

inline CentralizerReport centralizer(const TwoLoopRep& rep) {
  const Matrix<Rational> gens[2] = {restrict_scalars(rep.phi1, 2), restrict_scalars(rep.phi2, 2)};
  constexpr std::size_t n = 4;
  // X G - G X = 0, unknowns X row-major
  Matrix<Rational> sys(2 * n * n, n * n);
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t row = g * n * n + r * n + c;
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, r * n + k) += gens[g](k, c);
          sys(row, k * n + c) -= gens[g](r, k);
        }
      }
  CentralizerReport rep_out;
  for (const auto& x : kernel_basis(sys)) rep_out.basis.push_back(detail::unflatten(x, n));
  rep_out.dimension = rep_out.basis.size();

  for (const auto& b : rep_out.basis)
    for (const auto& g : gens)
      if (!(b * g == g * b)) throw error(errc::internal, "centralizer basis element does not commute");

  std::vector<std::vector<Rational>> cols;
  for (const auto& b : rep_out.basis) cols.push_back(detail::flatten(b));
  Matrix<Rational> span = from_columns(cols, n * n, Rational(0));
  auto coords = [&](const Matrix<Rational>& m) {
    auto c = solve(span, detail::flatten(m));
    if (!c) throw error(errc::internal, "centralizer is not closed under multiplication");
    return *c;
  };
  std::size_t dim = rep_out.dimension;
  rep_out.structure_constants.assign(dim, {});
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l) {
      Matrix<Rational> prod = rep_out.basis[k] * rep_out.basis[l];
      rep_out.structure_constants[k].push_back(coords(prod));
      if (!(prod == rep_out.basis[l] * rep_out.basis[k])) rep_out.commutative = false;
    }
  rep_out.identity_coordinates = coords(Matrix<Rational>::identity(n));

  const auto& sc = rep_out.structure_constants;
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t q = 0; q < dim; ++q) {
          Rational left = 0, right = 0;
          for (std::size_t p = 0; p < dim; ++p) {
            left += sc[k][l][p] * sc[p][m][q];
            right += sc[l][m][p] * sc[k][p][q];
          }
          if (left != right) throw error(errc::internal, "structure constants are not associative");
        }
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t q = 0; q < dim; ++q) {
      Rational left = 0, right = 0;
      for (std::size_t p = 0; p < dim; ++p) {
        left += rep_out.identity_coordinates[p] * sc[p][k][q];
        right += rep_out.identity_coordinates[p] * sc[k][p][q];
      }
      Rational expect = q == k ? 1 : 0;
      if (left != expect || right != expect) throw error(errc::internal, "identity coordinates are not a unit");
    }
  return rep_out;
}

/// Searches x = sum c_k basis[k] with integer coefficients, x != 0 and
/// x^2 = 0, by increasing max |c_k| up to bound; within one level the
/// coefficient vectors are visited in odometer order. Only attempted when
/// (2 bound + 1)^dim is at most one million.
inline std::optional<ZeroDivisorWitness> nilpotent_scan(const CentralizerReport& report, long bound = 3) {
  std::size_t dim = report.dimension;
  double combos = 1;
  for (std::size_t k = 0; k < dim; ++k) combos *= static_cast<double>(2 * bound + 1);
  if (dim == 0 || combos > 1e6) return std::nullopt;
  for (long level = 1; level <= bound; ++level) {
    std::vector<long> c(dim, -level);
    while (true) {
      long top = 0;
      for (long x : c) top = std::max(top, x < 0 ? -x : x);
      if (top == level) {
        Matrix<Rational> x(4, 4);
        for (std::size_t k = 0; k < dim; ++k)
          if (c[k]) x = x + Rational(c[k]) * report.basis[k];
        if (!x.is_zero_matrix() && (x * x).is_zero_matrix()) return ZeroDivisorWitness{c, x};
      }
      std::size_t k = 0;
      while (k < dim && c[k] == level) c[k++] = -level;
      if (k == dim) break;
      ++c[k];
    }
  }
  return std::nullopt;
}

struct DivisionVerdict {
  bool is_division;
  std::vector<PlaceCertificate> certificates;
};

/// (a, b / Q) is a division algebra iff some place has Hilbert symbol -1.
inline DivisionVerdict division_verdict(const QuaternionInput& in) {
  DivisionVerdict v{false, hilbert_certificates(in.a, in.b)};
  for (const auto& c : v.certificates) v.is_division = v.is_division || c.symbol == -1;
  return v;
}

inline void annotate(CentralizerReport& report, const DivisionVerdict& verdict) {
  report.is_division = verdict.is_division;
  report.obstruction = verdict.is_division ? Obstruction::NontrivialOrderTwo : Obstruction::Trivial;
  report.certificates = verdict.certificates;
}

/// Result of transporting the centralizer onto the regular module of
/// D = (a, b / Q) with basis (1, i, j, ij).
struct OppositeMatch {
  bool matches = false;
  std::string reason;
  Rational a;
  Rational b;
  std::size_t cyclic_vector = 0;
  /// Columns u, Phi(i)u, Phi(j)u, Phi(ij)u.
  Matrix<Rational> evaluation;
  std::vector<Matrix<Rational>> transported_basis;
  /// Transported elements acting as right multiplication by i and j.
  Matrix<Rational> right_i;
  Matrix<Rational> right_j;
};

inline OppositeMatch identify_opposite(const TwoLoopRep& rep, const CentralizerReport& report) {
  OppositeMatch out;
  if (report.dimension != 4) {
    out.reason = "centralizer has dimension " + std::to_string(report.dimension) + ", not 4";
    return out;
  }
  const QuadExt& zero = rep.phi1.zero();
  auto id2 = Matrix<QuadExt>::identity(2, zero);
  Matrix<QuadExt> sq1 = rep.phi1 * rep.phi1, sq2 = rep.phi2 * rep.phi2;
  if (!sq1(0, 0).is_rational() || !(sq1 == sq1(0, 0) * id2) || !sq2(0, 0).is_rational() || !(sq2 == sq2(0, 0) * id2) ||
      !(rep.phi1 * rep.phi2 == -(rep.phi2 * rep.phi1))) {
    out.reason = "loop maps do not satisfy quaternion relations";
    return out;
  }
  out.a = sq1(0, 0).a0();
  out.b = sq2(0, 0).a0();

  Matrix<Rational> f1 = restrict_scalars(rep.phi1), f2 = restrict_scalars(rep.phi2);
  Matrix<Rational> images[4] = {Matrix<Rational>::identity(4), f1, f2, f1 * f2};
  std::optional<Matrix<Rational>> inv;
  for (std::size_t k = 0; k < 4 && !inv; ++k) {
    Matrix<Rational> e(4, 4);
    for (std::size_t col = 0; col < 4; ++col)
      for (std::size_t row = 0; row < 4; ++row) e(row, col) = images[col](row, k);
    inv = try_inverse(e);
    if (inv) {
      out.cyclic_vector = k;
      out.evaluation = e;
    }
  }
  if (!inv) throw error(errc::no_cyclic_vector, "no standard basis vector generates L^2 as a module over D");

  for (const auto& x : report.basis) out.transported_basis.push_back(*inv * x * out.evaluation);

  // a transported element is right multiplication by the quaternion in its first column
  std::vector<std::vector<Rational>> firsts;
  for (const auto& y : out.transported_basis) firsts.push_back(y.col(0));
  Matrix<Rational> first_cols = from_columns(firsts, 4, Rational(0));
  auto element_with_first_column = [&](std::size_t unit) -> std::optional<Matrix<Rational>> {
    std::vector<Rational> target(4, Rational(0));
    target[unit] = 1;
    auto c = solve(first_cols, target);
    if (!c) return std::nullopt;
    Matrix<Rational> m(4, 4);
    for (std::size_t k = 0; k < 4; ++k) m = m + (*c)[k] * out.transported_basis[k];
    return m;
  };
  auto ri = element_with_first_column(1), rj = element_with_first_column(2);
  if (!ri || !rj) {
    out.reason = "transported centralizer does not contain right multiplication by i and j";
    return out;
  }
  out.right_i = *ri;
  out.right_j = *rj;
  auto id4 = Matrix<Rational>::identity(4);
  if (!(out.right_i * out.right_i == out.a * id4) || !(out.right_j * out.right_j == out.b * id4) ||
      !(out.right_i * out.right_j == -(out.right_j * out.right_i))) {
    out.reason = "transported elements fail the quaternion relations";
    return out;
  }
  out.matches = true;
  return out;
}

struct DescentCertificate {
  /// Dimension over Q of {Q : phi_i Q = Q conj(phi_i)}.
  std::size_t space_dim = 0;
  std::vector<Matrix<QuadExt>> solutions;
  /// Q conj(Q) = lambda I for each basis solution.
  std::vector<Rational> lambda_values;
  /// For each lambda, the places checked for (d, lambda).
  std::vector<std::vector<PlaceCertificate>> lambda_certificates;
  bool obstructed = false;
};

/// Semilinear intertwiners x -> Q conj(x) for the Galois generator. Their
/// squares Q conj(Q) are rational scalars lambda; the representation
/// descends iff lambda is a norm from L. An empty solution space counts as
/// obstructed (M is not even isomorphic to its conjugate).
inline DescentCertificate descent_certificate(const TwoLoopRep& rep) {
  long d = rep.d();
  const QuadExt zero = QuadExt::rational(Rational(0), d);
  const Matrix<QuadExt>* phis[2] = {&rep.phi1, &rep.phi2};
  Matrix<QuadExt> conj_phis[2] = {quad_conj_matrix(rep.phi1), quad_conj_matrix(rep.phi2)};

  // unknown k: entry (k / 2) of Q (row-major), 1-part if k even else sqrt(d)-part
  auto unit = [&](std::size_t k) {
    Matrix<QuadExt> q(2, 2, zero);
    q((k / 2) / 2, (k / 2) % 2) = k % 2 ? QuadExt::sqrt_d(d) : QuadExt::rational(Rational(1), d);
    return q;
  };
  Matrix<Rational> sys(16, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    Matrix<QuadExt> q = unit(k);
    for (std::size_t g = 0; g < 2; ++g) {
      Matrix<QuadExt> r = *phis[g] * q - q * conj_phis[g];
      for (std::size_t e = 0; e < 4; ++e) {
        sys(g * 8 + 2 * e, k) = r.entries()[e].a0();
        sys(g * 8 + 2 * e + 1, k) = r.entries()[e].a1();
      }
    }
  }
  DescentCertificate cert;
  Rational field(d);
  for (const auto& x : kernel_basis(sys)) {
    Matrix<QuadExt> q(2, 2, zero);
    for (std::size_t k = 0; k < 8; ++k) q = q + QuadExt::rational(x[k], d) * unit(k);
    Matrix<QuadExt> sq = q * quad_conj_matrix(q);
    if (!is_zero(sq(0, 1)) || !is_zero(sq(1, 0)) || !(sq(0, 0) == sq(1, 1)) || !sq(0, 0).is_rational())
      throw error(errc::non_scalar_double, "Q conj(Q) is not a rational scalar; representation is not absolutely irreducible");
    cert.solutions.push_back(q);
    cert.lambda_values.push_back(sq(0, 0).a0());
  }
  cert.space_dim = cert.solutions.size();
  cert.obstructed = true;
  for (const auto& lambda : cert.lambda_values) {
    std::vector<PlaceCertificate> places;
    if (sgn(lambda) != 0)
      for (const auto& pl : relevant_places({field, lambda})) places.push_back({pl, hilbert_symbol(field, lambda, pl)});
    bool some_minus = false;
    for (const auto& p : places) some_minus = some_minus || p.symbol == -1;
    if (sgn(lambda) != 0 && !some_minus) cert.obstructed = false;
    cert.lambda_certificates.push_back(std::move(places));
  }
  return cert;
}

/// Everything the wild-case construction produces for one quaternion algebra.
struct WildLabReport {
  QuaternionInput input;
  TwoLoopRep rep;
  std::size_t generated_dim_L;
  bool absolutely_irreducible;
  CentralizerReport centralizer;
  OppositeMatch opposite;
  DivisionVerdict verdict;
  DescentCertificate descent;
};

inline WildLabReport run_wild_lab(const Rational& a, const Rational& b) {
  QuaternionInput in = make_quaternion_input(a, b);
  TwoLoopRep rep = split_embed(in);
  std::size_t gen = generated_algebra_dim_L(rep);
  CentralizerReport cent = centralizer(rep);
  DivisionVerdict verdict = division_verdict(in);
  annotate(cent, verdict);
  if (!verdict.is_division) cent.zero_divisor_witness = nilpotent_scan(cent);
  OppositeMatch opp = identify_opposite(rep, cent);
  DescentCertificate descent = descent_certificate(rep);
  return {in, rep, gen, gen == 4, std::move(cent), std::move(opp), std::move(verdict), std::move(descent)};
}

}  // namespace ratquiver

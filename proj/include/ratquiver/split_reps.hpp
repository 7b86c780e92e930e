#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "roots.hpp"

namespace ratquiver {

/// A representation over Q: a space Q^dims(v) per vertex and a
/// dims(tgt e) x dims(src e) matrix per edge.
class SplitRepresentation {
 public:
  SplitRepresentation(Quiver quiver, std::vector<std::size_t> dims, std::vector<Matrix<Rational>> maps)
      : quiver_(std::move(quiver)), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (dims_.size() != quiver_.vertex_count()) throw error(errc::shape_mismatch, "one dimension per vertex expected");
    if (maps_.size() != quiver_.edge_count()) throw error(errc::shape_mismatch, "one matrix per edge expected");
    for (std::size_t e = 0; e < maps_.size(); ++e)
      if (maps_[e].rows() != dims_[quiver_.tgt(e)] || maps_[e].cols() != dims_[quiver_.src(e)])
        throw error(errc::shape_mismatch, "edge '" + quiver_.edges()[e].id + "' has a " + maps_[e].shape() +
                                              " matrix, expected " + std::to_string(dims_[quiver_.tgt(e)]) + "x" +
                                              std::to_string(dims_[quiver_.src(e)]));
  }

  static SplitRepresentation zero(const Quiver& q) {
    std::vector<Matrix<Rational>> maps(q.edge_count());
    return SplitRepresentation(q, std::vector<std::size_t>(q.vertex_count(), 0), std::move(maps));
  }

  /// One-dimensional at v, zero elsewhere.
  static SplitRepresentation simple(const Quiver& q, std::size_t v) {
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    dims[v] = 1;
    std::vector<Matrix<Rational>> maps;
    for (std::size_t e = 0; e < q.edge_count(); ++e) maps.emplace_back(dims[q.tgt(e)], dims[q.src(e)]);
    return SplitRepresentation(q, std::move(dims), std::move(maps));
  }

  const Quiver& quiver() const { return quiver_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  const std::vector<Matrix<Rational>>& maps() const { return maps_; }
  const Matrix<Rational>& map(std::size_t e) const { return maps_[e]; }

  Root dimension_vector() const {
    Root r;
    for (auto d : dims_) r.coords.push_back(static_cast<int>(d));
    return r;
  }
  bool is_zero() const {
    for (auto d : dims_)
      if (d) return false;
    return true;
  }

  friend bool operator==(const SplitRepresentation&, const SplitRepresentation&) = default;

 private:
  Quiver quiver_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix<Rational>> maps_;
};

/// Morphisms M -> N: one dims_N(v) x dims_M(v) matrix per vertex.
using RepMorphism = std::vector<Matrix<Rational>>;

struct HomSpace {
  std::size_t dimension;
  std::vector<RepMorphism> basis;
};

namespace detail {

inline void require_same_quiver(const SplitRepresentation& m, const SplitRepresentation& n) {
  if (!(m.quiver() == n.quiver())) throw error(errc::shape_mismatch, "representations live on different quivers");
}

/// The intertwining system X_t phi^M_e - phi^N_e X_s = 0 in the entries of
/// (X_v), with X_v stored row-major at offsets[v].
inline Matrix<Rational> intertwining_system(const SplitRepresentation& m, const SplitRepresentation& n,
                                            std::vector<std::size_t>& offsets) {
  const Quiver& q = m.quiver();
  offsets.assign(q.vertex_count() + 1, 0);
  for (std::size_t v = 0; v < q.vertex_count(); ++v) offsets[v + 1] = offsets[v] + n.dim(v) * m.dim(v);
  std::size_t equations = 0;
  for (std::size_t e = 0; e < q.edge_count(); ++e) equations += n.dim(q.tgt(e)) * m.dim(q.src(e));
  Matrix<Rational> sys(equations, offsets.back());
  std::size_t row = 0;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    std::size_t s = q.src(e), t = q.tgt(e);
    const auto& pm = m.map(e);
    const auto& pn = n.map(e);
    for (std::size_t r = 0; r < n.dim(t); ++r)
      for (std::size_t c = 0; c < m.dim(s); ++c, ++row) {
        for (std::size_t k = 0; k < m.dim(t); ++k)
          if (sgn(pm(k, c))) sys(row, offsets[t] + r * m.dim(t) + k) += pm(k, c);
        for (std::size_t k = 0; k < n.dim(s); ++k)
          if (sgn(pn(r, k))) sys(row, offsets[s] + k * m.dim(s) + c) -= pn(r, k);
      }
  }
  return sys;
}

}  // namespace detail

inline HomSpace hom(const SplitRepresentation& m, const SplitRepresentation& n) {
  detail::require_same_quiver(m, n);
  std::vector<std::size_t> offsets;
  Matrix<Rational> sys = detail::intertwining_system(m, n, offsets);
  HomSpace h{0, {}};
  for (const auto& x : kernel_basis(sys)) {
    RepMorphism f;
    for (std::size_t v = 0; v < m.quiver().vertex_count(); ++v) {
      Matrix<Rational> xv(n.dim(v), m.dim(v));
      for (std::size_t r = 0; r < n.dim(v); ++r)
        for (std::size_t c = 0; c < m.dim(v); ++c) xv(r, c) = x[offsets[v] + r * m.dim(v) + c];
      f.push_back(std::move(xv));
    }
    h.basis.push_back(std::move(f));
  }
  h.dimension = h.basis.size();
  return h;
}

inline std::size_t hom_dimension(const SplitRepresentation& m, const SplitRepresentation& n) {
  detail::require_same_quiver(m, n);
  std::vector<std::size_t> offsets;
  Matrix<Rational> sys = detail::intertwining_system(m, n, offsets);
  return sys.cols() - rank(sys);
}

/// Block-diagonal direct sum.
inline SplitRepresentation direct_sum(const SplitRepresentation& a, const SplitRepresentation& b) {
  detail::require_same_quiver(a, b);
  const Quiver& q = a.quiver();
  std::vector<std::size_t> dims(q.vertex_count());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = a.dim(v) + b.dim(v);
  std::vector<Matrix<Rational>> maps;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    Matrix<Rational> m(dims[q.tgt(e)], dims[q.src(e)]);
    m.set_block(0, 0, a.map(e));
    m.set_block(a.dim(q.tgt(e)), a.dim(q.src(e)), b.map(e));
    maps.push_back(std::move(m));
  }
  return SplitRepresentation(q, std::move(dims), std::move(maps));
}

/// Base change by invertible g_v at every vertex: phi_e -> g_t phi_e g_s^{-1}.
inline SplitRepresentation change_basis(const SplitRepresentation& m, const std::vector<Matrix<Rational>>& g) {
  const Quiver& q = m.quiver();
  if (g.size() != q.vertex_count()) throw error(errc::shape_mismatch, "one base change per vertex expected");
  std::vector<Matrix<Rational>> inv;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g[v].rows() != m.dim(v) || g[v].cols() != m.dim(v)) throw error(errc::shape_mismatch, "base change shape");
    inv.push_back(inverse(g[v]));
  }
  std::vector<Matrix<Rational>> maps;
  for (std::size_t e = 0; e < q.edge_count(); ++e) maps.push_back(g[q.tgt(e)] * m.map(e) * inv[q.src(e)]);
  return SplitRepresentation(q, m.dims(), std::move(maps));
}

/// BGP reflection at a sink v: the new space at v is the kernel of
/// (phi_e)_e : (+)_{tgt e = v} M(src e) -> M(v); reversed edges get the
/// coordinate projections.
inline SplitRepresentation reflect_sink(const SplitRepresentation& m, std::size_t v) {
  const Quiver& q = m.quiver();
  std::vector<std::size_t> incoming, offset;
  std::size_t total = 0;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    if (q.src(e) == v) throw error(errc::not_a_sink, "'" + q.vertices()[v] + "' has outgoing edge '" + q.edges()[e].id + "'");
    if (q.tgt(e) == v) {
      incoming.push_back(e);
      offset.push_back(total);
      total += m.dim(q.src(e));
    }
  }
  Matrix<Rational> sum(m.dim(v), total);
  for (std::size_t k = 0; k < incoming.size(); ++k) sum.set_block(0, offset[k], m.map(incoming[k]));
  auto kernel = kernel_basis(sum);
  Matrix<Rational> inclusion = from_columns(kernel, total, Rational(0));

  std::vector<std::size_t> dims = m.dims();
  dims[v] = kernel.size();
  std::vector<Matrix<Rational>> maps = m.maps();
  for (std::size_t k = 0; k < incoming.size(); ++k) {
    std::size_t e = incoming[k];
    maps[e] = inclusion.block(offset[k], 0, m.dim(q.src(e)), kernel.size());
  }
  return SplitRepresentation(q.reversed_at(v), std::move(dims), std::move(maps));
}

/// BGP reflection at a source v: the new space at v is the cokernel of
/// (phi_e)_e : M(v) -> (+)_{src e = v} M(tgt e), realized by a projection
/// whose rows span the left kernel.
inline SplitRepresentation reflect_source(const SplitRepresentation& m, std::size_t v) {
  const Quiver& q = m.quiver();
  std::vector<std::size_t> outgoing, offset;
  std::size_t total = 0;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    if (q.tgt(e) == v) throw error(errc::not_a_source, "'" + q.vertices()[v] + "' has incoming edge '" + q.edges()[e].id + "'");
    if (q.src(e) == v) {
      outgoing.push_back(e);
      offset.push_back(total);
      total += m.dim(q.tgt(e));
    }
  }
  Matrix<Rational> stacked(total, m.dim(v));
  for (std::size_t k = 0; k < outgoing.size(); ++k) stacked.set_block(offset[k], 0, m.map(outgoing[k]));
  auto left_kernel = kernel_basis(stacked.transpose());
  Matrix<Rational> projection = from_columns(left_kernel, total, Rational(0)).transpose();

  std::vector<std::size_t> dims = m.dims();
  dims[v] = left_kernel.size();
  std::vector<Matrix<Rational>> maps = m.maps();
  for (std::size_t k = 0; k < outgoing.size(); ++k) {
    std::size_t e = outgoing[k];
    maps[e] = projection.block(0, offset[k], left_kernel.size(), m.dim(q.tgt(e)));
  }
  return SplitRepresentation(q.reversed_at(v), std::move(dims), std::move(maps));
}

/// Indecomposable projective at v: basis of the space at u is the set of
/// paths v -> u, and an edge e sends a path p to e o p.
inline SplitRepresentation projective(const Quiver& q, std::size_t v) {
  if (!q.is_acyclic()) throw error(errc::cyclic_quiver, "projectives are infinite-dimensional on a cyclic quiver");
  using Path = std::vector<std::size_t>;
  std::vector<std::map<Path, std::size_t>> index(q.vertex_count());
  std::vector<std::pair<std::size_t, Path>> stack{{v, {}}};
  std::vector<std::pair<std::size_t, Path>> all;
  while (!stack.empty()) {
    auto [u, p] = stack.back();
    stack.pop_back();
    index[u].emplace(p, 0);
    all.emplace_back(u, p);
    for (std::size_t e = q.edge_count(); e-- > 0;)
      if (q.src(e) == u) {
        Path next = p;
        next.push_back(e);
        stack.emplace_back(q.tgt(e), std::move(next));
      }
  }
  // basis order: paths by length, then edge sequence
  std::vector<std::size_t> dims(q.vertex_count());
  for (std::size_t u = 0; u < q.vertex_count(); ++u) {
    std::vector<Path> paths;
    for (const auto& [p, i] : index[u]) paths.push_back(p);
    std::stable_sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) { return a.size() < b.size(); });
    for (std::size_t i = 0; i < paths.size(); ++i) index[u][paths[i]] = i;
    dims[u] = paths.size();
  }
  std::vector<Matrix<Rational>> maps;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    Matrix<Rational> m(dims[q.tgt(e)], dims[q.src(e)]);
    for (const auto& [p, i] : index[q.src(e)]) {
      Path next = p;
      next.push_back(e);
      m(index[q.tgt(e)].at(next), i) = 1;
    }
    maps.push_back(std::move(m));
  }
  return SplitRepresentation(q, std::move(dims), std::move(maps));
}

/// Composite of source reflections along a topological order; returns to
/// the original orientation.
inline SplitRepresentation coxeter_minus(const SplitRepresentation& m) {
  auto order = m.quiver().topological_order();
  if (order.empty() && m.quiver().vertex_count() > 0) throw error(errc::cyclic_quiver, "no topological order");
  SplitRepresentation x = m;
  for (auto v : order) x = reflect_source(x, v);
  return x;
}

struct Indecomposable {
  Root root;
  SplitRepresentation rep;
};

/// One indecomposable per positive root, in graded root order, generated
/// from the projectives by repeated application of coxeter_minus.
inline std::vector<Indecomposable> enumerate_indecomposables(const Quiver& q) {
  if (!q.is_acyclic()) throw error(errc::cyclic_quiver, "quiver has an oriented cycle");
  RootSystem rs = positive_roots(q);
  std::map<Root, SplitRepresentation> found;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    SplitRepresentation x = projective(q, v);
    for (std::size_t step = 0; !x.is_zero(); ++step) {
      if (step > rs.positives.size()) throw error(errc::internal, "Coxeter trajectory does not terminate");
      found.try_emplace(x.dimension_vector(), x);
      x = coxeter_minus(x);
    }
  }
  if (found.size() != rs.positives.size())
    throw error(errc::internal, "found " + std::to_string(found.size()) + " dimension vectors, expected " +
                                    std::to_string(rs.positives.size()));
  std::vector<Indecomposable> out;
  for (const auto& r : rs.positives) {
    auto it = found.find(r);
    if (it == found.end()) throw error(errc::internal, "positive root " + r.to_string() + " not reached");
    if (hom_dimension(it->second, it->second) != 1)
      throw error(errc::internal, "representation at " + r.to_string() + " is not a brick");
    out.push_back({r, it->second});
  }
  return out;
}

using RootMultiset = std::vector<std::pair<Root, std::size_t>>;

/// Krull-Schmidt multiplicities of representations of a fixed ADE quiver,
/// read off from hom dimensions: H m = h with H[a][b] = dim Hom(X_a, X_b)
/// and h[a] = dim Hom(X_a, M).
class Decomposer {
 public:
  explicit Decomposer(const Quiver& q) : quiver_(q), indecs_(enumerate_indecomposables(q)) {
    std::size_t n = indecs_.size();
    hom_matrix_ = Matrix<Rational>(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) hom_matrix_(a, b) = static_cast<long>(hom_dimension(indecs_[a].rep, indecs_[b].rep));
    if (rank(hom_matrix_) != n) throw error(errc::internal, "hom matrix of indecomposables is singular");
  }

  const std::vector<Indecomposable>& indecomposables() const { return indecs_; }
  const Matrix<Rational>& hom_matrix() const { return hom_matrix_; }

  RootMultiset decompose(const SplitRepresentation& m) const {
    if (!(m.quiver() == quiver_)) throw error(errc::shape_mismatch, "representation lives on a different quiver");
    std::vector<Rational> h;
    for (const auto& x : indecs_) h.push_back(static_cast<long>(hom_dimension(x.rep, m)));
    auto sol = solve(hom_matrix_, h);
    if (!sol) throw error(errc::internal, "hom system has no solution");
    RootMultiset out;
    std::vector<long> total(m.dims().size(), 0);
    for (std::size_t a = 0; a < indecs_.size(); ++a) {
      const Rational& c = (*sol)[a];
      if (c.get_den() != 1) throw error(errc::non_integral_solution, indecs_[a].root.to_string() + " has multiplicity " + to_string(c));
      if (sgn(c) < 0) throw error(errc::negative_multiplicity, indecs_[a].root.to_string() + " has multiplicity " + to_string(c));
      if (sgn(c) == 0) continue;
      std::size_t k = c.get_num().get_ui();
      out.emplace_back(indecs_[a].root, k);
      for (std::size_t v = 0; v < total.size(); ++v) total[v] += static_cast<long>(k) * indecs_[a].root.coords[v];
    }
    for (std::size_t v = 0; v < total.size(); ++v)
      if (total[v] != static_cast<long>(m.dim(v))) throw error(errc::internal, "multiplicities do not add up to the dimension vector");
    return out;
  }

 private:
  Quiver quiver_;
  std::vector<Indecomposable> indecs_;
  Matrix<Rational> hom_matrix_;
};

inline RootMultiset decompose(const SplitRepresentation& m) { return Decomposer(m.quiver()).decompose(m); }

}  // namespace ratquiver

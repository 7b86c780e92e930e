#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "quiver.hpp"

namespace ratquiver {

struct SpeciesNode {
  std::string representative;
  std::vector<std::string> members;
  std::size_t stabilizer_order;
  /// [L_i : K] = |G| / |G_v|
  std::size_t field_degree;
};

/// One summand L^{G_e} of a bimodule, i.e. one edge orbit.
struct BimoduleSummand {
  std::string representative;
  std::vector<std::string> edges;
  /// [L^{G_e} : K] = |G| / |G_e|
  std::size_t degree;
};

struct SpeciesArrow {
  std::size_t source;
  std::size_t target;
  std::vector<BimoduleSummand> summands;

  std::size_t total_degree() const {
    std::size_t t = 0;
    for (const auto& s : summands) t += s.degree;
    return t;
  }
};

/// Numerical skeleton of the etale species of a rational quiver: field and
/// bimodule degrees plus the orbit bookkeeping needed to recompute them.
struct SpeciesSkeleton {
  std::size_t group_order;
  std::vector<SpeciesNode> nodes;
  std::vector<SpeciesArrow> arrows;
  /// The quiver had a loop (arrow from an orbit to itself from a loop edge).
  bool has_loops = false;
};

inline SpeciesSkeleton build_species(const RationalQuiver& rq) {
  const Quiver& q = rq.quiver();
  SpeciesSkeleton sk;
  sk.group_order = rq.group_order();

  std::vector<std::size_t> orbit_of(q.vertex_count());
  for (const auto& orbit : vertex_orbits(rq)) {
    std::size_t rep = q.vertex_index(orbit.front());
    std::size_t stab = vertex_stabilizer_order(rq, rep);
    for (const auto& v : orbit) orbit_of[q.vertex_index(v)] = sk.nodes.size();
    sk.nodes.push_back({orbit.front(), orbit, stab, sk.group_order / stab});
  }

  std::map<std::pair<std::size_t, std::size_t>, SpeciesArrow> arrows;
  for (const auto& orbit : edge_orbits(rq)) {
    std::size_t e = q.edge_index(orbit.front());
    std::size_t i = orbit_of[q.src(e)], j = orbit_of[q.tgt(e)];
    if (q.src(e) == q.tgt(e)) sk.has_loops = true;
    auto& arrow = arrows.try_emplace({i, j}, SpeciesArrow{i, j, {}}).first->second;
    arrow.summands.push_back({orbit.front(), orbit, sk.group_order / edge_stabilizer_order(rq, e)});
  }
  for (auto& [key, arrow] : arrows) sk.arrows.push_back(std::move(arrow));
  return sk;
}

struct ValuedEdge {
  std::size_t i;
  std::size_t j;
  std::size_t d_ij;
  std::size_t d_ji;

  friend bool operator==(const ValuedEdge&, const ValuedEdge&) = default;
};

/// Valued graph with symmetrizer: f_i d_ij = f_j d_ji on every edge. Edges
/// are undirected (i < j) and arrows between the same pair of orbits are
/// merged.
struct ValuedGraph {
  std::vector<std::string> labels;
  std::vector<std::size_t> symmetrizer;
  std::vector<ValuedEdge> edges;

  /// B_ii = 2 f_i, B_ij = -f_i d_ij.
  Matrix<Rational> symmetrized_form() const {
    std::size_t n = labels.size();
    Matrix<Rational> b(n, n);
    for (std::size_t i = 0; i < n; ++i) b(i, i) = 2 * static_cast<long>(symmetrizer[i]);
    for (const auto& e : edges) {
      Rational w = -static_cast<long>(symmetrizer[e.i] * e.d_ij);
      b(e.i, e.j) += w;
      b(e.j, e.i) += w;
    }
    return b;
  }
};

/// Valuation of every arrow, computed from stabilizers of edge
/// representatives matched to the chosen vertex representatives: the
/// source-side entry uses an edge leaving v_i, the target-side entry an edge
/// entering v_j. Throws diagonal_bimodule for arrows inside one orbit.
inline ValuedGraph valued_graph(const RationalQuiver& rq, const SpeciesSkeleton& sk) {
  const Quiver& q = rq.quiver();
  ValuedGraph vg;
  for (const auto& n : sk.nodes) {
    vg.labels.push_back(n.representative);
    vg.symmetrizer.push_back(n.field_degree);
  }
  std::map<std::pair<std::size_t, std::size_t>, ValuedEdge> merged;
  for (const auto& arrow : sk.arrows) {
    if (arrow.source == arrow.target)
      throw error(errc::diagonal_bimodule, "edge orbit of '" + arrow.summands.front().representative +
                                               "' lies inside the vertex orbit of '" +
                                               sk.nodes[arrow.source].representative + "'");
    const SpeciesNode& si = sk.nodes[arrow.source];
    const SpeciesNode& sj = sk.nodes[arrow.target];
    std::size_t vi = q.vertex_index(si.representative), vj = q.vertex_index(sj.representative);
    std::size_t d_ij = 0, d_ji = 0;
    for (const auto& summand : arrow.summands) {
      std::optional<std::size_t> leaving, entering;
      for (const auto& id : summand.edges) {
        std::size_t e = q.edge_index(id);
        if (!leaving && q.src(e) == vi) leaving = e;
        if (!entering && q.tgt(e) == vj) entering = e;
      }
      if (!leaving || !entering) throw error(errc::internal, "edge orbit misses a representative vertex");
      std::size_t gl = edge_stabilizer_order(rq, *leaving), ge = edge_stabilizer_order(rq, *entering);
      if (si.stabilizer_order % gl != 0 || sj.stabilizer_order % ge != 0)
        throw error(errc::non_integral_valuation, "stabilizer index is not integral");
      d_ij += si.stabilizer_order / gl;
      d_ji += sj.stabilizer_order / ge;
    }
    std::size_t total = arrow.total_degree();
    if (total % si.field_degree != 0 || total % sj.field_degree != 0 || d_ij * si.field_degree != total ||
        d_ji * sj.field_degree != total)
      throw error(errc::non_integral_valuation, "valuation disagrees with bimodule degree " + std::to_string(total));

    std::size_t a = arrow.source, b = arrow.target;
    if (a > b) {
      std::swap(a, b);
      std::swap(d_ij, d_ji);
    }
    auto& edge = merged.try_emplace({a, b}, ValuedEdge{a, b, 0, 0}).first->second;
    edge.d_ij += d_ij;
    edge.d_ji += d_ji;
  }
  for (auto& [key, e] : merged) vg.edges.push_back(e);
  return vg;
}

inline ValuedGraph valued_graph(const RationalQuiver& rq) { return valued_graph(rq, build_species(rq)); }

struct TypeVerdict {
  enum class Kind { FiniteDynkin, AffineTame, Wild, Unsupported };
  Kind kind;
  /// Dynkin name for FiniteDynkin, reason for Unsupported.
  std::string detail;
  std::vector<std::string> notices;

  std::string to_string() const {
    switch (kind) {
      case Kind::FiniteDynkin: return "FiniteDynkin(" + detail + ")";
      case Kind::AffineTame: return "AffineTame";
      case Kind::Wild: return "Wild";
      case Kind::Unsupported: return "Unsupported(" + detail + ")";
    }
    return "?";
  }
};

namespace detail {

/// Name of a connected valued graph already known to be positive definite.
/// B_n has the short simple root (smaller symmetrizer) at the end of the
/// chain, C_n the long one.
inline std::string dynkin_name(const ValuedGraph& vg, const std::vector<std::size_t>& nodes) {
  std::size_t n = nodes.size();
  std::map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < n; ++k) local[nodes[k]] = k;
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<ValuedEdge> edges;
  for (const auto& e : vg.edges)
    if (local.count(e.i)) {
      adj[local[e.i]].push_back(local[e.j]);
      adj[local[e.j]].push_back(local[e.i]);
      edges.push_back({local[e.i], local[e.j], e.d_ij, e.d_ji});
    }
  auto N = std::to_string(n);
  if (n == 1) return "A1";

  const ValuedEdge* heavy = nullptr;
  for (const auto& e : edges)
    if (e.d_ij * e.d_ji > 1) heavy = &e;
  if (heavy && heavy->d_ij * heavy->d_ji == 3) return "G2";
  if (heavy) {
    if (n == 2) return "B2";
    std::size_t leaf = adj[heavy->i].size() == 1 ? heavy->i : (adj[heavy->j].size() == 1 ? heavy->j : n);
    if (leaf == n) return "F4";
    std::size_t other = leaf == heavy->i ? heavy->j : heavy->i;
    return (vg.symmetrizer[nodes[leaf]] < vg.symmetrizer[nodes[other]] ? "B" : "C") + N;
  }

  std::size_t branch = n;
  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() >= 3) branch = v;
  if (branch == n) return "A" + N;
  std::vector<std::size_t> arms;
  for (std::size_t start : adj[branch]) {
    std::size_t len = 1, prev = branch, cur = start;
    while (adj[cur].size() == 2) {
      std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() == 3 && arms[0] == 1 && arms[1] == 1) return "D" + N;
  if (arms.size() == 3 && arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E" + N;
  throw error(errc::internal, "positive definite graph with no Dynkin name");
}

inline std::vector<std::vector<std::size_t>> components(const ValuedGraph& vg) {
  std::size_t n = vg.labels.size();
  std::vector<std::size_t> comp(n, n);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<std::size_t> members{s}, stack{s};
    comp[s] = out.size();
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& e : vg.edges) {
        std::size_t w = e.i == u ? e.j : (e.j == u ? e.i : n);
        if (w != n && comp[w] == n) {
          comp[w] = out.size();
          members.push_back(w);
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace detail

/// Representation type from the symmetrized form: positive definite is
/// Dynkin, positive semidefinite and singular is affine, anything else wild.
/// A loop in the quiver is wild outright.
inline TypeVerdict classify(const ValuedGraph& vg, const GraphSummary& summary) {
  using K = TypeVerdict::Kind;
  if (summary.loops) return {K::Wild, "", {"quiver has a loop; its path algebra contains a free algebra"}};

  TypeVerdict v{K::Wild, "", {}};
  for (const auto& e : vg.edges)
    if (e.d_ij == 2 && e.d_ji == 2)
      v.notices.push_back("valued edge " + vg.labels[e.i] + "-" + vg.labels[e.j] +
                          " carries label (2,2); its symmetrized form is singular, so it is reported as affine "
                          "(tame) rather than as a finite type B2 graph");

  Matrix<Rational> b = vg.symmetrized_form();
  std::size_t n = b.rows();
  bool positive_definite = true;
  for (std::size_t k = 1; k <= n && positive_definite; ++k)
    positive_definite = sgn(determinant(b.block(0, 0, k, k))) > 0;
  if (positive_definite) {
    std::string name;
    for (const auto& comp : detail::components(vg)) name += (name.empty() ? "" : "+") + detail::dynkin_name(vg, comp);
    v.kind = K::FiniteDynkin;
    v.detail = name;
    return v;
  }
  if (is_positive_semidefinite(b) && sgn(determinant(b)) == 0) {
    v.kind = K::AffineTame;
    return v;
  }
  return v;
}

/// Full pipeline from a rational quiver; diagonal bimodules are Unsupported.
inline TypeVerdict classify(const RationalQuiver& rq) {
  GraphSummary summary = underlying_graph(rq.quiver());
  if (summary.loops) return classify(ValuedGraph{}, summary);
  try {
    return classify(valued_graph(rq), summary);
  } catch (const error& e) {
    if (e.code() != errc::diagonal_bimodule) throw;
    return {TypeVerdict::Kind::Unsupported, "diagonal bimodule", {e.what()}};
  }
}

/// The rational quiver with trivial group action.
inline RationalQuiver trivial_action(const Quiver& q) { return validate(q, {}); }

}  // namespace ratquiver

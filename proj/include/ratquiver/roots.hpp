#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "quiver.hpp"
#include "species.hpp"

namespace ratquiver {

/// A dimension vector indexed by vertex position in the quiver.
struct Root {
  std::vector<int> coords;

  int height() const {
    int h = 0;
    for (int c : coords) h += c;
    return h;
  }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
  }

  friend auto operator<=>(const Root&, const Root&) = default;
  friend bool operator==(const Root&, const Root&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s + ")";
  }
};

/// Graded order: ascending height, then descending lexicographic, so that
/// (1,0,0,0) precedes (0,1,0,0).
inline bool graded_less(const Root& a, const Root& b) {
  int ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  return a.coords > b.coords;
}

struct RootSystem {
  std::vector<std::string> vertices;
  std::vector<Root> simples;
  /// In graded order.
  std::vector<Root> positives;

  std::size_t index_of(const Root& r) const {
    auto it = std::lower_bound(positives.begin(), positives.end(), r, graded_less);
    if (it == positives.end() || *it != r) throw error(errc::internal, "not a positive root: " + r.to_string());
    return static_cast<std::size_t>(it - positives.begin());
  }
};

/// Simple reflection at v: coordinate v becomes -d_v + sum of neighbours
/// (with edge multiplicity), orientation ignored.
inline Root simple_reflection(const GraphSummary& g, const Root& d, std::size_t v) {
  Root r = d;
  int s = -d.coords[v];
  for (std::size_t u = 0; u < d.coords.size(); ++u)
    if (u != v) s += static_cast<int>(g.adjacency[v][u]) * d.coords[u];
  r.coords[v] = s;
  return r;
}

/// Throws not_ade unless the underlying graph is a simple connected Dynkin
/// diagram of type A, D or E. Returns the Dynkin name.
inline std::string require_ade(const Quiver& q) {
  GraphSummary g = underlying_graph(q);
  if (q.vertex_count() == 0) throw error(errc::not_ade, "empty quiver");
  if (!g.simple) throw error(errc::not_ade, "underlying graph is not simple");
  if (!g.connected) throw error(errc::not_ade, "underlying graph is not connected");
  TypeVerdict v = classify(trivial_action(q));
  if (v.kind != TypeVerdict::Kind::FiniteDynkin) throw error(errc::not_ade, "underlying graph is " + v.to_string());
  char t = v.detail.front();
  if (t != 'A' && t != 'D' && t != 'E') throw error(errc::not_ade, v.to_string());
  return v.detail;
}

inline RootSystem positive_roots(const Quiver& q) {
  require_ade(q);
  GraphSummary g = underlying_graph(q);
  std::size_t n = q.vertex_count();
  RootSystem rs;
  rs.vertices = q.vertices();
  std::set<Root> found;
  std::vector<Root> frontier;
  for (std::size_t v = 0; v < n; ++v) {
    Root r{std::vector<int>(n, 0)};
    r.coords[v] = 1;
    rs.simples.push_back(r);
    found.insert(r);
    frontier.push_back(r);
  }
  while (!frontier.empty()) {
    Root d = frontier.back();
    frontier.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      Root r = simple_reflection(g, d, v);
      if (r.is_nonnegative() && !r.is_zero() && found.insert(r).second) frontier.push_back(r);
    }
  }
  rs.positives.assign(found.begin(), found.end());
  std::sort(rs.positives.begin(), rs.positives.end(), graded_less);
  return rs;
}

/// Tits form q(d) = sum d_v^2 - sum over edges d_src d_tgt.
inline long tits_form(const Quiver& q, const Root& d) {
  long s = 0;
  for (int c : d.coords) s += static_cast<long>(c) * c;
  for (std::size_t e = 0; e < q.edge_count(); ++e) s -= static_cast<long>(d.coords[q.src(e)]) * d.coords[q.tgt(e)];
  return s;
}

/// (g.d)(v) = d(g^{-1} v), i.e. (g.d)(g v) = d(v).
inline Root act(const GroupElement& g, const Root& d) {
  Root r{std::vector<int>(d.coords.size(), 0)};
  for (std::size_t v = 0; v < d.coords.size(); ++v) r.coords[g.vperm[v]] = d.coords[v];
  return r;
}

/// For every group element (in the action's element order) the permutation
/// it induces on the indices of rs.positives.
inline std::vector<Perm> galois_root_action(const RationalQuiver& rq, const RootSystem& rs) {
  if (rs.vertices != rq.quiver().vertices()) throw error(errc::shape_mismatch, "root system belongs to another quiver");
  std::vector<Perm> out;
  for (const auto& g : rq.action().elements) {
    Perm p(rs.positives.size());
    for (std::size_t k = 0; k < rs.positives.size(); ++k) {
      Root image = act(g, rs.positives[k]);
      auto it = std::lower_bound(rs.positives.begin(), rs.positives.end(), image, graded_less);
      if (it == rs.positives.end() || *it != image)
        throw error(errc::action_does_not_preserve_roots, rs.positives[k].to_string() + " -> " + image.to_string());
      p[k] = static_cast<std::size_t>(it - rs.positives.begin());
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct RootOrbit {
  /// Lexicographically least member.
  Root representative;
  /// Sorted lexicographically.
  std::vector<Root> members;
  std::size_t size;
  std::size_t stabilizer_order;
  /// [L^{G_alpha} : K] = |G| / |G_alpha|
  std::size_t field_degree;
};

/// Galois orbits on the positive roots; one orbit per indecomposable
/// representation over K. Orbits are ordered by representative in graded
/// order.
struct OrbitClassification {
  std::size_t group_order;
  std::size_t positive_root_count;
  std::vector<RootOrbit> orbits;
};

inline OrbitClassification classify_indecomposables(const RationalQuiver& rq) {
  RootSystem rs = positive_roots(rq.quiver());
  std::vector<Perm> action = galois_root_action(rq, rs);
  OrbitClassification oc{rq.group_order(), rs.positives.size(), {}};
  std::vector<bool> done(rs.positives.size(), false);
  for (std::size_t k = 0; k < rs.positives.size(); ++k) {
    if (done[k]) continue;
    std::set<std::size_t> members;
    std::size_t stab = 0;
    for (const auto& p : action) {
      members.insert(p[k]);
      stab += p[k] == k;
    }
    RootOrbit o;
    for (auto m : members) {
      done[m] = true;
      o.members.push_back(rs.positives[m]);
    }
    std::sort(o.members.begin(), o.members.end());
    o.representative = o.members.front();
    o.size = o.members.size();
    // stabilizer of the representative has the same order as that of any member
    o.stabilizer_order = stab;
    o.field_degree = rq.group_order() / stab;
    if (o.size * o.stabilizer_order != rq.group_order()) throw error(errc::internal, "orbit-stabilizer failed");
    oc.orbits.push_back(std::move(o));
  }
  std::sort(oc.orbits.begin(), oc.orbits.end(),
            [](const RootOrbit& a, const RootOrbit& b) { return graded_less(a.representative, b.representative); });
  return oc;
}

}  // namespace ratquiver

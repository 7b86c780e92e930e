#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace ratquiver {

struct Edge {
  std::string id;
  std::string src;
  std::string tgt;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A finite quiver. Loops and parallel edges are allowed; ids are unique.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!vertex_index_.emplace(vertices_[i], i).second)
        throw error(errc::malformed_quiver, "duplicate vertex id '" + vertices_[i] + "'");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (!edge_index_.emplace(e.id, i).second) throw error(errc::malformed_quiver, "duplicate edge id '" + e.id + "'");
      auto s = vertex_index_.find(e.src);
      auto t = vertex_index_.find(e.tgt);
      if (s == vertex_index_.end() || t == vertex_index_.end())
        throw error(errc::malformed_quiver, "edge '" + e.id + "' names an unknown endpoint");
      src_.push_back(s->second);
      tgt_.push_back(t->second);
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t src(std::size_t e) const { return src_[e]; }
  std::size_t tgt(std::size_t e) const { return tgt_[e]; }

  bool has_vertex(const std::string& id) const { return vertex_index_.count(id) != 0; }
  bool has_edge(const std::string& id) const { return edge_index_.count(id) != 0; }

  std::size_t vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw error(errc::unknown_id, "no vertex '" + id + "'");
    return it->second;
  }
  std::size_t edge_index(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw error(errc::unknown_id, "no edge '" + id + "'");
    return it->second;
  }

  /// Same vertices and edges with the endpoints of every edge at v swapped.
  Quiver reversed_at(std::size_t v) const {
    std::vector<Edge> edges = edges_;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (src_[e] == v || tgt_[e] == v) std::swap(edges[e].src, edges[e].tgt);
    return Quiver(vertices_, std::move(edges));
  }

  /// A topological order (Kahn, smallest index first), or empty if cyclic.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indeg(vertex_count(), 0);
    for (std::size_t e = 0; e < edge_count(); ++e) ++indeg[tgt_[e]];
    std::vector<std::size_t> order;
    std::vector<bool> done(vertex_count(), false);
    while (order.size() < vertex_count()) {
      std::size_t next = vertex_count();
      for (std::size_t v = 0; v < vertex_count(); ++v)
        if (!done[v] && indeg[v] == 0) {
          next = v;
          break;
        }
      if (next == vertex_count()) return {};
      done[next] = true;
      order.push_back(next);
      for (std::size_t e = 0; e < edge_count(); ++e)
        if (src_[e] == next) --indeg[tgt_[e]];
    }
    return order;
  }

  bool is_acyclic() const { return vertex_count() == 0 || !topological_order().empty(); }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> tgt_;
};

/// A generator as written in a document: ids not mentioned are fixed.
struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::string> vperm;
  std::map<std::string, std::string> eperm;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

using Perm = std::vector<std::size_t>;

/// A group element acting on vertex and edge indices.
struct GroupElement {
  Perm vperm;
  Perm eperm;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  /// (this o other)(x) = this(other(x))
  GroupElement compose(const GroupElement& other) const {
    GroupElement r{Perm(vperm.size()), Perm(eperm.size())};
    for (std::size_t i = 0; i < vperm.size(); ++i) r.vperm[i] = vperm[other.vperm[i]];
    for (std::size_t i = 0; i < eperm.size(); ++i) r.eperm[i] = eperm[other.eperm[i]];
    return r;
  }
  GroupElement inverse() const {
    GroupElement r{Perm(vperm.size()), Perm(eperm.size())};
    for (std::size_t i = 0; i < vperm.size(); ++i) r.vperm[vperm[i]] = i;
    for (std::size_t i = 0; i < eperm.size(); ++i) r.eperm[eperm[i]] = i;
    return r;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < vperm.size(); ++i)
      if (vperm[i] != i) return false;
    for (std::size_t i = 0; i < eperm.size(); ++i)
      if (eperm[i] != i) return false;
    return true;
  }
};

struct NamedGenerator {
  std::string name;
  GroupElement element;
};

struct GroupAction {
  std::vector<NamedGenerator> generators;
  /// Closed element list; elements[0] is the identity.
  std::vector<GroupElement> elements;
};

inline constexpr std::size_t kMaxGroupOrder = 1'000'000;

/// A quiver with a compatible finite group action standing in for the Galois
/// group of L/K.
class RationalQuiver {
 public:
  RationalQuiver(Quiver quiver, GroupAction action) : quiver_(std::move(quiver)), action_(std::move(action)) {}

  const Quiver& quiver() const { return quiver_; }
  const GroupAction& action() const { return action_; }
  std::size_t group_order() const { return action_.elements.size(); }

 private:
  Quiver quiver_;
  GroupAction action_;
};

namespace detail {

inline Perm perm_from_map(const std::vector<std::string>& ids, const std::map<std::string, std::string>& m,
                          const std::string& what, const std::string& gen) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
  Perm p(ids.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (const auto& [from, to] : m) {
    auto f = index.find(from);
    auto t = index.find(to);
    if (f == index.end() || t == index.end())
      throw error(errc::malformed_quiver, "generator '" + gen + "' maps unknown " + what + " '" + from + "' -> '" + to + "'");
    p[f->second] = t->second;
  }
  std::vector<bool> hit(ids.size(), false);
  for (auto x : p) {
    if (hit[x]) throw error(errc::malformed_quiver, "generator '" + gen + "' is not a bijection on " + what + " ids");
    hit[x] = true;
  }
  return p;
}

inline std::string element_key(const GroupElement& g) {
  std::string k;
  k.reserve((g.vperm.size() + g.eperm.size()) * 4);
  auto put = [&k](std::size_t x) {
    for (int b = 0; b < 4; ++b) k.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
  };
  for (auto x : g.vperm) put(x);
  for (auto x : g.eperm) put(x);
  return k;
}

/// Returns the first edge violating s(ge) = g s(e), t(ge) = g t(e), or -1.
inline long first_incompatible_edge(const Quiver& q, const GroupElement& g) {
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    std::size_t ge = g.eperm[e];
    if (q.src(ge) != g.vperm[q.src(e)] || q.tgt(ge) != g.vperm[q.tgt(e)]) return static_cast<long>(e);
  }
  return -1;
}

inline std::string describe_element(const Quiver& q, const GroupElement& g) {
  std::string s = "{";
  bool first = true;
  for (std::size_t v = 0; v < g.vperm.size(); ++v)
    if (g.vperm[v] != v) {
      s += (first ? "" : ", ") + q.vertices()[v] + "->" + q.vertices()[g.vperm[v]];
      first = false;
    }
  for (std::size_t e = 0; e < g.eperm.size(); ++e)
    if (g.eperm[e] != e) {
      s += (first ? "" : ", ") + q.edges()[e].id + "->" + q.edges()[g.eperm[e]].id;
      first = false;
    }
  return s + "}";
}

}  // namespace detail

/// Checks the generators, enumerates the generated group by closure and
/// checks the compatibility equations on every element. Closure stops with
/// closure_bound once more than max_order elements appear.
inline RationalQuiver validate(const Quiver& q, const std::vector<GeneratorSpec>& gens,
                               std::size_t max_order = kMaxGroupOrder) {
  std::vector<std::string> edge_ids;
  for (const auto& e : q.edges()) edge_ids.push_back(e.id);

  GroupAction action;
  for (const auto& g : gens) {
    GroupElement el{detail::perm_from_map(q.vertices(), g.vperm, "vertex", g.name),
                    detail::perm_from_map(edge_ids, g.eperm, "edge", g.name)};
    long bad = detail::first_incompatible_edge(q, el);
    if (bad >= 0)
      throw error(errc::compatibility_violation,
                  "generator '" + g.name + "' and edge '" + q.edges()[static_cast<std::size_t>(bad)].id + "'");
    action.generators.push_back({g.name, std::move(el)});
  }

  GroupElement id{Perm(q.vertex_count()), Perm(q.edge_count())};
  std::iota(id.vperm.begin(), id.vperm.end(), std::size_t{0});
  std::iota(id.eperm.begin(), id.eperm.end(), std::size_t{0});

  std::unordered_set<std::string> seen{detail::element_key(id)};
  action.elements.push_back(id);
  for (std::size_t i = 0; i < action.elements.size(); ++i) {
    for (const auto& gen : action.generators) {
      GroupElement next = action.elements[i].compose(gen.element);
      if (seen.insert(detail::element_key(next)).second) {
        if (action.elements.size() >= max_order)
          throw error(errc::closure_bound, "group order exceeds " + std::to_string(max_order));
        action.elements.push_back(std::move(next));
      }
    }
  }

  for (const auto& g : action.elements) {
    long bad = detail::first_incompatible_edge(q, g);
    if (bad >= 0)
      throw error(errc::compatibility_violation, "element " + detail::describe_element(q, g) + " and edge '" +
                                                     q.edges()[static_cast<std::size_t>(bad)].id + "'");
    if (seen.count(detail::element_key(g.inverse())) == 0)
      throw error(errc::internal, "closure is missing an inverse");
  }
  return RationalQuiver(q, std::move(action));
}

namespace detail {

inline std::vector<std::vector<std::string>> orbits_of(const std::vector<std::string>& ids,
                                                       const std::vector<GroupElement>& elements, bool vertices) {
  std::vector<bool> done(ids.size(), false);
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::string> orbit;
    for (const auto& g : elements) {
      std::size_t j = vertices ? g.vperm[i] : g.eperm[i];
      if (!done[j]) {
        done[j] = true;
        orbit.push_back(ids[j]);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace detail

/// Vertex orbits; members sorted, representative (least id) first, orbits
/// ordered by representative.
inline std::vector<std::vector<std::string>> vertex_orbits(const RationalQuiver& rq) {
  return detail::orbits_of(rq.quiver().vertices(), rq.action().elements, true);
}

inline std::vector<std::vector<std::string>> edge_orbits(const RationalQuiver& rq) {
  std::vector<std::string> ids;
  for (const auto& e : rq.quiver().edges()) ids.push_back(e.id);
  return detail::orbits_of(ids, rq.action().elements, false);
}

inline std::size_t vertex_stabilizer_order(const RationalQuiver& rq, std::size_t v) {
  std::size_t n = 0;
  for (const auto& g : rq.action().elements) n += g.vperm[v] == v;
  return n;
}

inline std::size_t edge_stabilizer_order(const RationalQuiver& rq, std::size_t e) {
  std::size_t n = 0;
  for (const auto& g : rq.action().elements) n += g.eperm[e] == e;
  return n;
}

/// Stabilizer order of a vertex id, or of an edge id if no vertex has it.
inline std::size_t stabilizer_order(const RationalQuiver& rq, const std::string& id) {
  const Quiver& q = rq.quiver();
  if (q.has_vertex(id)) return vertex_stabilizer_order(rq, q.vertex_index(id));
  if (q.has_edge(id)) return edge_stabilizer_order(rq, q.edge_index(id));
  throw error(errc::unknown_id, "no vertex or edge '" + id + "'");
}

/// Orientation-forgetting summary of a quiver.
struct GraphSummary {
  bool simple = true;
  bool loops = false;
  bool multi_edges = false;
  bool connected = true;
  /// adjacency[u][v] = number of edges between u and v in either direction
  /// (a loop counts once on the diagonal).
  std::vector<std::vector<std::size_t>> adjacency;
  std::vector<std::size_t> degrees;
};

inline GraphSummary underlying_graph(const Quiver& q) {
  GraphSummary g;
  std::size_t n = q.vertex_count();
  g.adjacency.assign(n, std::vector<std::size_t>(n, 0));
  g.degrees.assign(n, 0);
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    std::size_t s = q.src(e), t = q.tgt(e);
    if (s == t) {
      g.loops = true;
      ++g.adjacency[s][s];
      g.degrees[s] += 2;
      continue;
    }
    ++g.adjacency[s][t];
    ++g.adjacency[t][s];
    ++g.degrees[s];
    ++g.degrees[t];
    if (g.adjacency[s][t] > 1) g.multi_edges = true;
  }
  g.simple = !g.loops && !g.multi_edges;

  if (n > 0) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (g.adjacency[u][v] && !seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
    }
    g.connected = count == n;
  }
  return g;
}

}  // namespace ratquiver

#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "split_reps.hpp"

namespace ratquiver {

using json = nlohmann::ordered_json;

/// {"vertices": [...], "edges": [{"id","src","tgt"}...],
///  "group": {"generators": [{"name", "vperm": {..}, "eperm": {..}}...]}}
struct QuiverDocument {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<GeneratorSpec> generators;

  friend bool operator==(const QuiverDocument&, const QuiverDocument&) = default;
};

/// {"dims": {vertex: n}, "maps": {edge: [["p/q", ...], ...]}}
struct RepresentationDocument {
  std::map<std::string, std::size_t> dims;
  std::map<std::string, std::vector<std::vector<Rational>>> maps;

  friend bool operator==(const RepresentationDocument&, const RepresentationDocument&) = default;
};

namespace detail {

[[noreturn]] inline void bad_doc(const std::string& what) { throw error(errc::parse_error, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_doc(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) bad_doc(what + " must be a string");
  return j.get<std::string>();
}

inline std::map<std::string, std::string> as_string_map(const json& j, const std::string& what) {
  std::map<std::string, std::string> m;
  if (j.is_null()) return m;
  if (!j.is_object()) bad_doc(what + " must be an object");
  for (const auto& [k, v] : j.items()) m[k] = as_string(v, what + " value");
  return m;
}

inline Rational as_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad_doc("matrix entries must be \"p/q\" strings or integers");
}

}  // namespace detail

inline QuiverDocument parse_quiver_document(const json& j) {
  QuiverDocument doc;
  const json& vs = detail::field(j, "vertices");
  if (!vs.is_array()) detail::bad_doc("'vertices' must be an array");
  for (const auto& v : vs) doc.vertices.push_back(detail::as_string(v, "vertex id"));
  const json& es = detail::field(j, "edges");
  if (!es.is_array()) detail::bad_doc("'edges' must be an array");
  for (const auto& e : es)
    doc.edges.push_back({detail::as_string(detail::field(e, "id"), "edge id"), detail::as_string(detail::field(e, "src"), "edge src"),
                         detail::as_string(detail::field(e, "tgt"), "edge tgt")});
  if (j.contains("group")) {
    const json& g = j.at("group");
    if (g.contains("generators")) {
      const json& gens = g.at("generators");
      if (!gens.is_array()) detail::bad_doc("'generators' must be an array");
      for (const auto& gen : gens) {
        GeneratorSpec spec;
        spec.name = gen.contains("name") ? detail::as_string(gen.at("name"), "generator name") : "g" + std::to_string(doc.generators.size());
        if (gen.contains("vperm")) spec.vperm = detail::as_string_map(gen.at("vperm"), "vperm");
        if (gen.contains("eperm")) spec.eperm = detail::as_string_map(gen.at("eperm"), "eperm");
        doc.generators.push_back(std::move(spec));
      }
    }
  }
  return doc;
}

inline QuiverDocument parse_quiver_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    detail::bad_doc(std::string("invalid JSON: ") + e.what());
  }
  return parse_quiver_document(j);
}

inline json render(const QuiverDocument& doc) {
  json j;
  j["vertices"] = doc.vertices;
  j["edges"] = json::array();
  for (const auto& e : doc.edges) j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
  json gens = json::array();
  for (const auto& g : doc.generators) {
    json gj;
    gj["name"] = g.name;
    gj["vperm"] = json::object();
    for (const auto& [k, v] : g.vperm) gj["vperm"][k] = v;
    gj["eperm"] = json::object();
    for (const auto& [k, v] : g.eperm) gj["eperm"][k] = v;
    gens.push_back(std::move(gj));
  }
  j["group"] = {{"generators", gens}};
  return j;
}

inline Quiver to_quiver(const QuiverDocument& doc) { return Quiver(doc.vertices, doc.edges); }

inline RationalQuiver to_rational_quiver(const QuiverDocument& doc) { return validate(to_quiver(doc), doc.generators); }

inline RepresentationDocument parse_representation_document(const json& j) {
  RepresentationDocument doc;
  const json& dims = detail::field(j, "dims");
  if (!dims.is_object()) detail::bad_doc("'dims' must be an object");
  for (const auto& [k, v] : dims.items()) {
    if (!v.is_number_integer() || v.get<long>() < 0) detail::bad_doc("dimension of '" + k + "' must be a nonnegative integer");
    doc.dims[k] = v.get<std::size_t>();
  }
  if (j.contains("maps")) {
    const json& maps = j.at("maps");
    if (!maps.is_object()) detail::bad_doc("'maps' must be an object");
    for (const auto& [k, m] : maps.items()) {
      if (!m.is_array()) detail::bad_doc("matrix of '" + k + "' must be an array of rows");
      std::vector<std::vector<Rational>> rows;
      for (const auto& row : m) {
        if (!row.is_array()) detail::bad_doc("matrix of '" + k + "' must be an array of rows");
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(detail::as_rational(x));
        rows.push_back(std::move(r));
      }
      doc.maps[k] = std::move(rows);
    }
  }
  return doc;
}

inline RepresentationDocument parse_representation_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    detail::bad_doc(std::string("invalid JSON: ") + e.what());
  }
  return parse_representation_document(j);
}

inline json render(const RepresentationDocument& doc) {
  json j;
  j["dims"] = json::object();
  for (const auto& [k, v] : doc.dims) j["dims"][k] = v;
  j["maps"] = json::object();
  for (const auto& [k, rows] : doc.maps) {
    json m = json::array();
    for (const auto& row : rows) {
      json r = json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      m.push_back(std::move(r));
    }
    j["maps"][k] = std::move(m);
  }
  return j;
}

/// Vertices missing from "dims" have dimension 0; edges missing from "maps"
/// are only allowed when their matrix is empty.
inline SplitRepresentation to_split_representation(const RepresentationDocument& doc, const Quiver& q) {
  for (const auto& [k, v] : doc.dims)
    if (!q.has_vertex(k)) throw error(errc::shape_mismatch, "dims names unknown vertex '" + k + "'");
  for (const auto& [k, v] : doc.maps)
    if (!q.has_edge(k)) throw error(errc::shape_mismatch, "maps names unknown edge '" + k + "'");
  std::vector<std::size_t> dims;
  for (const auto& v : q.vertices()) {
    auto it = doc.dims.find(v);
    dims.push_back(it == doc.dims.end() ? 0 : it->second);
  }
  std::vector<Matrix<Rational>> maps;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    std::size_t rows = dims[q.tgt(e)], cols = dims[q.src(e)];
    auto it = doc.maps.find(q.edges()[e].id);
    if (it == doc.maps.end()) {
      if (rows * cols != 0) throw error(errc::shape_mismatch, "missing matrix for edge '" + q.edges()[e].id + "'");
      maps.emplace_back(rows, cols);
      continue;
    }
    if (it->second.size() != rows)
      throw error(errc::shape_mismatch, "edge '" + q.edges()[e].id + "' needs " + std::to_string(rows) + " rows");
    maps.push_back(Matrix<Rational>::from_rows(it->second, Rational(0), cols));
    if (maps.back().cols() != cols)
      throw error(errc::shape_mismatch, "edge '" + q.edges()[e].id + "' needs " + std::to_string(cols) + " columns");
  }
  return SplitRepresentation(q, std::move(dims), std::move(maps));
}

inline RepresentationDocument to_document(const SplitRepresentation& m) {
  RepresentationDocument doc;
  const Quiver& q = m.quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) doc.dims[q.vertices()[v]] = m.dim(v);
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 0; r < m.map(e).rows(); ++r) rows.push_back(m.map(e).row(r));
    doc.maps[q.edges()[e].id] = std::move(rows);
  }
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse_error, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ratquiver

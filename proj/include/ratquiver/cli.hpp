#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "error.hpp"
#include "io.hpp"
#include "roots.hpp"
#include "species.hpp"
#include "split_reps.hpp"
#include "wild_lab.hpp"

namespace ratquiver::cli {

enum class Format { Text, Json };

namespace detail {

inline json root_json(const Root& r) { return r.coords; }

inline json matrix_json(const Matrix<Rational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string quad_string(const QuadExt& x) {
  std::ostringstream ss;
  ss << x;
  return ss.str();
}

inline json quad_matrix_json(const Matrix<QuadExt>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(quad_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
std::string matrix_text(const Matrix<S>& m) {
  std::ostringstream ss;
  ss << m;
  return ss.str();
}

inline std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

inline void emit(std::ostream& out, Format f, const json& j, const std::string& text) {
  if (f == Format::Json)
    out << j.dump(2) << "\n";
  else
    out << text;
}

inline RationalQuiver load_rational_quiver(const std::string& path) {
  return to_rational_quiver(parse_quiver_document(read_file(path)));
}

inline std::string certificate_text(const std::vector<PlaceCertificate>& cs) {
  std::vector<std::string> parts;
  for (const auto& c : cs) parts.push_back((c.place.is_infinite() ? std::string("∞") : c.place.to_string()) + ":" + std::to_string(c.symbol));
  return join(parts);
}

inline json certificate_json(const std::vector<PlaceCertificate>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back({{"place", c.place.to_string()}, {"symbol", c.symbol}});
  return arr;
}

}  // namespace detail

inline void cmd_validate(const std::string& path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(path);
  const Quiver& q = rq.quiver();
  json j;
  std::ostringstream t;
  j["group_order"] = rq.group_order();
  std::vector<std::string> names;
  for (const auto& g : rq.action().generators) names.push_back(g.name);
  j["generators"] = names;
  j["vertex_orbits"] = vertex_orbits(rq);
  j["edge_orbits"] = edge_orbits(rq);
  json vs = json::object(), es = json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) vs[q.vertices()[v]] = vertex_stabilizer_order(rq, v);
  for (std::size_t e = 0; e < q.edge_count(); ++e) es[q.edges()[e].id] = edge_stabilizer_order(rq, e);
  j["stabilizers"] = {{"vertices", vs}, {"edges", es}};

  t << "valid rational quiver: " << q.vertex_count() << " vertices, " << q.edge_count() << " edges, group order "
    << rq.group_order() << "\n";
  for (const auto& o : vertex_orbits(rq))
    t << "vertex orbit {" << detail::join(o) << "} stabilizer " << stabilizer_order(rq, o.front()) << "\n";
  for (const auto& o : edge_orbits(rq))
    t << "edge orbit {" << detail::join(o) << "} stabilizer " << edge_stabilizer_order(rq, q.edge_index(o.front())) << "\n";
  detail::emit(out, f, j, t.str());
}

inline json valued_graph_json(const ValuedGraph& vg) {
  json j;
  j["nodes"] = json::array();
  for (std::size_t i = 0; i < vg.labels.size(); ++i) j["nodes"].push_back({{"label", vg.labels[i]}, {"symmetrizer", vg.symmetrizer[i]}});
  j["edges"] = json::array();
  for (const auto& e : vg.edges) j["edges"].push_back({{"i", e.i}, {"j", e.j}, {"valuation", {e.d_ij, e.d_ji}}});
  return j;
}

inline void cmd_species(const std::string& path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(path);
  SpeciesSkeleton sk = build_species(rq);
  json j;
  std::ostringstream t;
  j["group_order"] = sk.group_order;
  j["nodes"] = json::array();
  t << "species over a group of order " << sk.group_order << "\n";
  for (std::size_t i = 0; i < sk.nodes.size(); ++i) {
    const auto& n = sk.nodes[i];
    j["nodes"].push_back({{"orbit", i},
                          {"representative", n.representative},
                          {"members", n.members},
                          {"stabilizer_order", n.stabilizer_order},
                          {"field_degree", n.field_degree}});
    t << "node " << i << " {" << detail::join(n.members) << "}: field degree " << n.field_degree << "\n";
  }
  j["arrows"] = json::array();
  for (const auto& a : sk.arrows) {
    json summands = json::array();
    std::vector<std::string> degs;
    for (const auto& s : a.summands) {
      summands.push_back({{"representative", s.representative}, {"edges", s.edges}, {"degree", s.degree}});
      degs.push_back(std::to_string(s.degree));
    }
    j["arrows"].push_back({{"source", a.source}, {"target", a.target}, {"summands", summands}, {"total_degree", a.total_degree()}});
    t << "arrow " << a.source << " -> " << a.target << ": summand degrees [" << detail::join(degs) << "]\n";
  }
  try {
    ValuedGraph vg = valued_graph(rq, sk);
    j["valued_graph"] = valued_graph_json(vg);
    for (const auto& e : vg.edges)
      t << "valued edge " << vg.labels[e.i] << " - " << vg.labels[e.j] << ": (" << e.d_ij << "," << e.d_ji << ")\n";
    std::vector<std::string> fs;
    for (auto x : vg.symmetrizer) fs.push_back(std::to_string(x));
    t << "symmetrizer: (" << detail::join(fs, ",") << ")\n";
  } catch (const error& e) {
    if (e.code() != errc::diagonal_bimodule) throw;
    j["valued_graph"] = nullptr;
    j["valued_graph_error"] = e.what();
    t << "valued graph: " << e.what() << "\n";
  }
  detail::emit(out, f, j, t.str());
}

inline void cmd_classify(const std::string& path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(path);
  TypeVerdict v = classify(rq);
  json j;
  std::ostringstream t;
  j["verdict"] = v.to_string();
  const char* kinds[] = {"FiniteDynkin", "AffineTame", "Wild", "Unsupported"};
  j["kind"] = kinds[static_cast<int>(v.kind)];
  j["detail"] = v.detail;
  if (!underlying_graph(rq.quiver()).loops) {
    try {
      Matrix<Rational> b = valued_graph(rq).symmetrized_form();
      j["symmetrized_form"] = detail::matrix_json(b);
      j["determinant"] = to_string(determinant(b));
    } catch (const error& e) {
      if (e.code() != errc::diagonal_bimodule) throw;
    }
  }
  j["notices"] = v.notices;
  t << v.to_string() << "\n";
  for (const auto& n : v.notices) t << "notice: " << n << "\n";
  detail::emit(out, f, j, t.str());
}

inline void cmd_roots(const std::string& path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(path);
  RootSystem rs = positive_roots(rq.quiver());
  json j;
  std::ostringstream t;
  j["vertices"] = rs.vertices;
  j["type"] = require_ade(rq.quiver());
  j["count"] = rs.positives.size();
  j["positives"] = json::array();
  t << rs.positives.size() << " positive roots of " << require_ade(rq.quiver()) << " in basis (" << detail::join(rs.vertices) << ")\n";
  for (const auto& r : rs.positives) {
    j["positives"].push_back(detail::root_json(r));
    t << r.to_string() << "\n";
  }
  detail::emit(out, f, j, t.str());
}

inline void cmd_orbits(const std::string& path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(path);
  OrbitClassification oc = classify_indecomposables(rq);
  json j;
  std::ostringstream t;
  j["group_order"] = oc.group_order;
  j["positive_root_count"] = oc.positive_root_count;
  j["orbit_count"] = oc.orbits.size();
  j["orbits"] = json::array();
  t << oc.orbits.size() << " Galois orbits on " << oc.positive_root_count << " positive roots (group order " << oc.group_order
    << "); one indecomposable over K per orbit\n";
  for (const auto& o : oc.orbits) {
    json members = json::array();
    std::vector<std::string> ms;
    for (const auto& m : o.members) {
      members.push_back(detail::root_json(m));
      ms.push_back(m.to_string());
    }
    j["orbits"].push_back({{"representative", detail::root_json(o.representative)},
                           {"members", members},
                           {"size", o.size},
                           {"stabilizer_order", o.stabilizer_order},
                           {"field_degree", o.field_degree}});
    t << "orbit " << o.representative.to_string() << " size " << o.size << " stabilizer " << o.stabilizer_order
      << " field degree " << o.field_degree << ": {" << detail::join(ms) << "}\n";
  }
  detail::emit(out, f, j, t.str());
}

inline void cmd_indecs(const std::string& path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(path);
  auto list = enumerate_indecomposables(rq.quiver());
  json j;
  std::ostringstream t;
  j["count"] = list.size();
  j["indecomposables"] = json::array();
  t << list.size() << " indecomposable representations\n";
  for (const auto& x : list) {
    std::size_t end = hom(x.rep, x.rep).dimension;
    j["indecomposables"].push_back(
        {{"dimension_vector", detail::root_json(x.root)}, {"endomorphism_dimension", end}, {"representation", render(to_document(x.rep))}});
    t << x.root.to_string() << " End dimension " << end;
    for (std::size_t e = 0; e < x.rep.quiver().edge_count(); ++e)
      t << " " << x.rep.quiver().edges()[e].id << "=" << detail::matrix_text(x.rep.map(e));
    t << "\n";
  }
  detail::emit(out, f, j, t.str());
}

inline void cmd_decompose(const std::string& quiver_path, const std::string& rep_path, Format f, std::ostream& out) {
  RationalQuiver rq = detail::load_rational_quiver(quiver_path);
  SplitRepresentation m = to_split_representation(parse_representation_document(read_file(rep_path)), rq.quiver());
  RootMultiset parts = decompose(m);
  json j;
  std::ostringstream t;
  j["dimension_vector"] = detail::root_json(m.dimension_vector());
  j["summands"] = json::array();
  t << "decomposition of " << m.dimension_vector().to_string() << ":\n";
  for (const auto& [r, k] : parts) {
    j["summands"].push_back({{"dimension_vector", detail::root_json(r)}, {"multiplicity", k}});
    t << "  " << k << " x " << r.to_string() << "\n";
  }
  detail::emit(out, f, j, t.str());
}

inline json wild_lab_json(const WildLabReport& r) {
  json j;
  j["a"] = to_string(r.input.a);
  j["b"] = to_string(r.input.b);
  j["d"] = r.input.d;
  j["phi1"] = detail::quad_matrix_json(r.rep.phi1);
  j["phi2"] = detail::quad_matrix_json(r.rep.phi2);
  j["generated_algebra_dim_L"] = r.generated_dim_L;
  j["absolutely_irreducible"] = r.absolutely_irreducible;
  json c;
  c["dimension"] = r.centralizer.dimension;
  c["commutative"] = r.centralizer.commutative;
  c["basis"] = json::array();
  for (const auto& b : r.centralizer.basis) c["basis"].push_back(detail::matrix_json(b));
  json sc = json::array();
  for (const auto& row : r.centralizer.structure_constants) {
    json jr = json::array();
    for (const auto& v : row) {
      json jv = json::array();
      for (const auto& x : v) jv.push_back(to_string(x));
      jr.push_back(std::move(jv));
    }
    sc.push_back(std::move(jr));
  }
  c["structure_constants"] = sc;
  if (r.centralizer.zero_divisor_witness) {
    c["zero_divisor_witness"] = {{"coefficients", r.centralizer.zero_divisor_witness->coefficients},
                                 {"element", detail::matrix_json(r.centralizer.zero_divisor_witness->element)}};
  } else {
    c["zero_divisor_witness"] = nullptr;
  }
  j["centralizer"] = c;
  j["opposite_match"] = {{"matches", r.opposite.matches},
                         {"reason", r.opposite.reason},
                         {"cyclic_vector", r.opposite.cyclic_vector},
                         {"right_i", detail::matrix_json(r.opposite.right_i)},
                         {"right_j", detail::matrix_json(r.opposite.right_j)}};
  j["division"] = r.verdict.is_division;
  j["obstruction"] = r.verdict.is_division ? "NontrivialOrderTwo" : "Trivial";
  j["certificates"] = detail::certificate_json(r.verdict.certificates);
  json lambdas = json::array();
  for (const auto& l : r.descent.lambda_values) lambdas.push_back(to_string(l));
  j["descent"] = {{"space_dim", r.descent.space_dim}, {"lambda_values", lambdas}, {"obstructed", r.descent.obstructed}};
  return j;
}

inline std::string wild_lab_text(const WildLabReport& r) {
  std::ostringstream t;
  t << "quaternion algebra (" << to_string(r.input.a) << "," << to_string(r.input.b) << " / Q), L = Q(sqrt(" << r.input.d << "))\n";
  t << "phi1 = " << r.rep.phi1 << "\n";
  t << "phi2 = " << r.rep.phi2 << "\n";
  t << "generated L-algebra dimension: " << r.generated_dim_L << "\n";
  t << "absolutely irreducible: " << (r.absolutely_irreducible ? "true" : "false") << "\n";
  t << "centralizer dimension: " << r.centralizer.dimension << " (commutative: " << (r.centralizer.commutative ? "true" : "false") << ")\n";
  t << "opposite algebra match: " << (r.opposite.matches ? "true" : "false");
  if (r.opposite.matches)
    t << " (I'^2 = " << to_string(r.opposite.a) << ", J'^2 = " << to_string(r.opposite.b) << ", I'J' = -J'I')";
  else
    t << " (" << r.opposite.reason << ")";
  t << "\n";
  t << "division: " << (r.verdict.is_division ? "true" : "false")
    << "; obstruction: " << to_string(r.verdict.is_division ? Obstruction::NontrivialOrderTwo : Obstruction::Trivial)
    << "; certificates: " << detail::certificate_text(r.verdict.certificates) << "\n";
  if (r.centralizer.zero_divisor_witness) {
    std::vector<std::string> cs;
    for (long c : r.centralizer.zero_divisor_witness->coefficients) cs.push_back(std::to_string(c));
    t << "zero-divisor witness: coefficients (" << detail::join(cs, ",") << ")\n";
  } else if (!r.verdict.is_division) {
    t << "zero-divisor witness: none with coefficients in [-3, 3] (the scan is not exhaustive)\n";
  }
  std::vector<std::string> ls;
  for (const auto& l : r.descent.lambda_values) ls.push_back(to_string(l));
  t << "descent: semilinear intertwiners of dimension " << r.descent.space_dim << ", lambda = [" << detail::join(ls)
    << "], obstructed: " << (r.descent.obstructed ? "true" : "false") << "\n";
  return t.str();
}

inline void cmd_wildlab(const std::string& a, const std::string& b, Format f, std::ostream& out) {
  WildLabReport r = run_wild_lab(parse_rational(a), parse_rational(b));
  detail::emit(out, f, wild_lab_json(r), wild_lab_text(r));
}

/// Runs one command. Exit codes: 0 success, 1 domain error, 2 malformed
/// input or usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classification of representations of quivers with Galois actions", "ratquiver"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format: text or json")->check(CLI::IsMember({"text", "json"}));
  app.fallthrough();

  std::string quiver_path, rep_path, a_str, b_str;
  std::vector<std::pair<std::string, CLI::App*>> quiver_cmds;
  const std::pair<const char*, const char*> simple[] = {
      {"validate", "Validate a rational quiver and list orbits and stabilizers"},
      {"species", "Species skeleton and valued graph"},
      {"classify", "Representation type of the species"},
      {"roots", "Positive roots of the underlying ADE quiver"},
      {"orbits", "Galois orbits on positive roots (indecomposables over K)"},
      {"indecs", "All indecomposable representations of the underlying ADE quiver over Q"},
  };
  for (const auto& [name, help] : simple) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("quiver", quiver_path, "Quiver document (JSON)")->required();
    quiver_cmds.emplace_back(name, sub);
  }
  CLI::App* dec = app.add_subcommand("decompose", "Decompose a representation into indecomposables");
  dec->add_option("quiver", quiver_path, "Quiver document (JSON)")->required();
  dec->add_option("representation", rep_path, "Representation document (JSON)")->required();
  CLI::App* wild = app.add_subcommand("wildlab", "Brauer obstruction for the quaternion algebra (a,b)");
  wild->add_option("--a", a_str, "a as p/q or integer")->required();
  wild->add_option("--b", b_str, "b as p/q or integer")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  Format f = format == "json" ? Format::Json : Format::Text;

  try {
    for (const auto& [name, sub] : quiver_cmds) {
      if (!sub->parsed()) continue;
      if (name == "validate") cmd_validate(quiver_path, f, out);
      if (name == "species") cmd_species(quiver_path, f, out);
      if (name == "classify") cmd_classify(quiver_path, f, out);
      if (name == "roots") cmd_roots(quiver_path, f, out);
      if (name == "orbits") cmd_orbits(quiver_path, f, out);
      if (name == "indecs") cmd_indecs(quiver_path, f, out);
    }
    if (dec->parsed()) cmd_decompose(quiver_path, rep_path, f, out);
    if (wild->parsed()) cmd_wildlab(a_str, b_str, f, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  }
  return 0;
}

}  // namespace ratquiver::cli

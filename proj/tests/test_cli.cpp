#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ratquiver/cli.hpp"
#include "support.hpp"

using namespace ratquiver;
using rq_test::fixture;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

const std::vector<std::string> kQuivers = {"d4_s3.quiver", "kronecker_swap.quiver", "two_loop.quiver", "a2.quiver",
                                           "a3.quiver",    "a5.quiver",             "d4.quiver",       "e6.quiver"};

}  // namespace

TEST(Cli, ClassifyD4S3) {
  auto r = run({"classify", fixture("d4_s3.quiver")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("FiniteDynkin(G2)"), std::string::npos);
  auto j = run_json({"classify", fixture("d4_s3.quiver")});
  EXPECT_EQ(j["verdict"], "FiniteDynkin(G2)");
  EXPECT_EQ(j["kind"], "FiniteDynkin");
}

TEST(Cli, ClassifyKronecker) {
  auto j = run_json({"classify", fixture("kronecker_swap.quiver")});
  EXPECT_EQ(j["verdict"], "AffineTame");
  EXPECT_EQ(j["determinant"], "0");
  EXPECT_EQ(j["notices"].size(), 1u);
}

TEST(Cli, SpeciesD4S3) {
  auto j = run_json({"species", fixture("d4_s3.quiver")});
  EXPECT_EQ(j["group_order"], 6);
  EXPECT_EQ(j["valued_graph"]["edges"][0]["valuation"], json::parse("[3,1]"));
  EXPECT_EQ(j["valued_graph"]["nodes"][1]["symmetrizer"], 3);
}

TEST(Cli, OrbitsD4S3) {
  auto j = run_json({"orbits", fixture("d4_s3.quiver")});
  EXPECT_EQ(j["orbit_count"], 6);
  EXPECT_EQ(j["positive_root_count"], 12);
  std::multiset<int> sizes;
  for (const auto& o : j["orbits"]) sizes.insert(o["size"].get<int>());
  EXPECT_EQ(sizes, (std::multiset<int>{1, 1, 1, 3, 3, 3}));
}

TEST(Cli, RootsAndIndecs) {
  auto roots = run_json({"roots", fixture("e6.quiver")});
  EXPECT_EQ(roots["count"], 36);
  EXPECT_EQ(roots["type"], "E6");
  auto ind = run_json({"indecs", fixture("a3.quiver")});
  EXPECT_EQ(ind["count"], 6);
  Quiver a3 = rq_test::load("a3.quiver").quiver();
  for (const auto& x : ind["indecomposables"]) {
    EXPECT_EQ(x["endomorphism_dimension"], 1);
    // embedded representation documents are loadable
    auto rep = to_split_representation(parse_representation_document(x["representation"]), a3);
    EXPECT_EQ(hom_dimension(rep, rep), 1u);
  }
}

TEST(Cli, Decompose) {
  auto j = run_json({"decompose", fixture("d4.quiver"), fixture("d4_sample.rep")});
  ASSERT_EQ(j["summands"].size(), 3u);
  int total = 0;
  for (const auto& s : j["summands"]) total += s["multiplicity"].get<int>();
  EXPECT_EQ(total, 3);
}

TEST(Cli, WildLabText) {
  auto r = run({"wildlab", "--a", "-1", "--b", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("division: true; obstruction: nontrivial (order 2); certificates: ∞:-1, 2:-1"), std::string::npos) << r.out;
  auto j = run_json({"wildlab", "--a", "-1", "--b", "2"});
  EXPECT_EQ(j["division"], false);
  EXPECT_EQ(j["obstruction"], "Trivial");
  EXPECT_FALSE(j["centralizer"]["zero_divisor_witness"].is_null());
  EXPECT_EQ(j["descent"]["obstructed"], false);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "classify", fixture("d4.quiver")}).code, 2);
  EXPECT_EQ(run({"classify", "/nonexistent/file.quiver"}).code, 2);
  EXPECT_EQ(run({"classify", temp_file("broken.quiver", "{\"vertices\": [")}).code, 2);
  EXPECT_EQ(run({"classify", temp_file("dup.quiver", R"({"vertices": ["a", "a"], "edges": []})")}).code, 2);
  EXPECT_EQ(run({"wildlab", "--a", "x", "--b", "1"}).code, 2);
  // domain errors
  EXPECT_EQ(run({"validate", fixture("a2_swap_invalid.quiver")}).code, 1);
  EXPECT_EQ(run({"roots", fixture("kronecker_swap.quiver")}).code, 1);
  EXPECT_EQ(run({"indecs", fixture("two_loop.quiver")}).code, 1);
  EXPECT_EQ(run({"wildlab", "--a", "4", "--b", "-1"}).code, 1);
  auto bad_rep = temp_file("bad.rep", R"({"dims": {"v0": 1, "v1": 1, "v2": 0, "v3": 0}, "maps": {"e1": [["1", "2"]]}})");
  EXPECT_EQ(run({"decompose", fixture("d4.quiver"), bad_rep}).code, 2);
  EXPECT_EQ(run({"validate", fixture("d4_s3.quiver")}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, JsonIsDeterministic) {
  for (const auto& f : kQuivers)
    for (const auto& cmd : {"validate", "species", "classify"}) {
      auto a = run({"--format", "json", cmd, fixture(f)}), b = run({"--format", "json", cmd, fixture(f)});
      EXPECT_EQ(a.code, b.code);
      EXPECT_EQ(a.out, b.out) << cmd << " " << f;
    }
  auto a = run({"--format", "json", "wildlab", "--a", "-2", "--b", "-3"});
  auto b = run({"--format", "json", "wildlab", "--a", "-2", "--b", "-3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Io, QuiverDocumentRoundTrip) {
  for (const auto& f : kQuivers) {
    auto doc = parse_quiver_document(read_file(fixture(f)));
    EXPECT_EQ(parse_quiver_document(render(doc)), doc) << f;
    EXPECT_EQ(parse_quiver_document(render(doc).dump()), doc) << f;
  }
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto doc = rq_test::random_folded_tree(rng);
    EXPECT_EQ(parse_quiver_document(render(doc)), doc);
  }
}

TEST(Io, RepresentationDocumentRoundTrip) {
  auto doc = parse_representation_document(read_file(fixture("d4_sample.rep")));
  EXPECT_EQ(parse_representation_document(render(doc)), doc);
  Quiver e6 = rq_test::load("e6.quiver").quiver();
  std::mt19937 rng(9);
  for (const auto& x : enumerate_indecomposables(e6)) {
    std::vector<Matrix<Rational>> g;
    for (std::size_t v = 0; v < e6.vertex_count(); ++v) g.push_back(rq_test::random_invertible(rng, x.rep.dim(v), 7));
    auto rep = change_basis(x.rep, g);
    auto d = to_document(rep);
    EXPECT_EQ(parse_representation_document(render(d).dump()), d);
    EXPECT_EQ(to_split_representation(d, e6), rep);
  }
}

TEST(Io, RejectsMalformedDocuments) {
  auto code = [](const std::string& text) {
    try {
      parse_quiver_document(text);
    } catch (const error& e) {
      return e.code();
    }
    return errc::internal;
  };
  EXPECT_EQ(code("[]"), errc::parse_error);
  EXPECT_EQ(code(R"({"vertices": "a", "edges": []})"), errc::parse_error);
  EXPECT_EQ(code(R"({"vertices": ["a"], "edges": [{"id": "e", "src": "a"}]})"), errc::parse_error);
  EXPECT_EQ(code("not json"), errc::parse_error);
  EXPECT_THROW(parse_representation_document(std::string(R"({"dims": {"a": 1}, "maps": {"e": [["1/0"]]}})")), error);
}

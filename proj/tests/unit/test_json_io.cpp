#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"
#include "alphatrace/json_io.hpp"
#include "oracles.hpp"

using namespace alphatrace;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("alphatrace_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("hypergraph round trip") {
  Hypergraph h = build_family(3, family::CycleWithStar{3, 5});
  json j = hypergraph_to_json(h);
  CHECK(j["k"] == 3);
  CHECK_FALSE(j.contains("mult"));
  CHECK(hypergraph_from_json(j) == h);

  Hypergraph multi(2, 2, {{0, 1}}, {3});
  json jm = hypergraph_to_json(multi);
  CHECK(jm["mult"] == json::array({3}));
  CHECK(hypergraph_from_json(jm) == multi);

  json unsorted = json::parse(R"({"k":2,"n":3,"edges":[[2,1],[0,1]]})");
  CHECK(hypergraph_from_json(unsorted) == Hypergraph(2, 3, {{1, 2}, {0, 1}}));
}

TEST_CASE("malformed hypergraph json") {
  for (const char* text : {R"({"k":2,"n":3})", R"({"k":2,"n":3,"edges":[[0,5]]})",
                           R"({"k":"two","n":3,"edges":[]})", R"({"k":2,"n":2,"edges":[[0,1,1]]})",
                           R"({"k":2,"n":2,"edges":[[0,1]],"mult":[0]})", R"([1,2])"}) {
    CHECK_THROWS_AS(hypergraph_from_json(json::parse(text)), ParameterError);
  }
  TempDir dir;
  std::ofstream(dir.path / "bad.json") << "{not json";
  CHECK_THROWS_AS(read_hypergraph(dir.path / "bad.json"), ParameterError);
  CHECK_THROWS_AS(read_hypergraph(dir.path / "missing.json"), ParameterError);
}

TEST_CASE("trace polynomials round trip") {
  AlphaPoly p({Rational(-9), Rational(27, 4), 0, Rational(12)});
  json j = trace_to_json(3, p);
  CHECK(j["d"] == 3);
  CHECK(j["poly"][1] == json::array({"27", "4"}));
  CHECK(poly_from_json(j["poly"]) == p);
  CHECK(poly_from_json(json::array()) == AlphaPoly());
  CHECK_THROWS_AS(poly_from_json(json::parse(R"([["1","0"]])")), ParameterError);
  CHECK_THROWS_AS(poly_from_json(json::parse(R"([["x","1"]])")), ParameterError);
  CHECK_THROWS_AS(poly_from_json(json::parse(R"([[1,2]])")), ParameterError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(rational_string(Rational(-1, 3)) == "-1/3");
  CHECK(rational_string(Rational(4)) == "4");
  CHECK(parse_rational(" 1 / 2 ") == Rational(1, 2));
  for (const char* bad : {"0.5", "", "1/0", "a", "1/2/3", "1e-2"})
    CHECK_THROWS_AS(parse_rational(bad), ParameterError);
}

TEST_CASE("family dump round trip") {
  TempDir dir;
  FamilyFilter f{FamilyClass::LinearUnicyclic, 3, 5};
  auto members = enumerate_family(f);
  write_family_dump(dir.path, f, members);
  CHECK(fs::exists(dir.path / "manifest.json"));
  CHECK(fs::exists(dir.path / "0000.json"));
  auto back = read_family_dump(dir.path);
  REQUIRE(back.size() == members.size());
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(canonical_form(back[i]) == canonical_form(members[i]));
  std::ifstream in(dir.path / "manifest.json");
  json manifest = json::parse(in);
  CHECK(manifest["k"] == 3);
  CHECK(manifest["members"].size() == members.size());
}

TEST_CASE("reports serialize") {
  TraceCache cache;
  TheoremReport r = verify_theorem("tree-last", 3, 4, Rational(1, 2), std::nullopt, cache);
  json j = report_to_json(r);
  CHECK(j["theorem"] == "tree-last");
  CHECK(j["holds"] == true);
  CHECK(j["alpha"] == "1/2");
  CHECK(j["checks"].size() == r.checks.size());

  OrderVerdict v = compare_at_alpha(build_family(3, family::Hyperpath{3}),
                                    build_family(3, family::Hyperstar{3}), Rational(1, 2));
  json jv = verdict_to_json(v);
  CHECK(jv["relation"] == to_string(Relation::Less));
  CHECK(jv["first_diff_order"] == 2);
  SymbolicVerdict s = compare_symbolic(build_family(3, family::Hyperpath{3}),
                                       build_family(3, family::Hyperpath{3}));
  CHECK(symbolic_to_json(s)["verdict"] == to_string(SymbolicVerdict::Kind::EqualUpTo));
}

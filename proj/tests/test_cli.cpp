#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "polyext/caps.hpp"
#include "polyext/json_io.hpp"
#include "polyext/quiver.hpp"

using namespace polyext;

namespace {

Json parse(const std::string& text) { return parse_json_text(text); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string scratch_path(const std::string& name) {
  const char* base = std::getenv("TMPDIR");
  return std::string(base ? base : "/tmp") + "/polyext_cli_" + name;
}

// Runs the installed binary; available only under ctest, which exports the
// target path. Direct invocations without the env skip those subcases.
const char* cli_path() { return std::getenv("POLYEXT_CLI_PATH"); }

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string out_file = scratch_path("stdout.txt");
  std::string cmd = env.empty() ? "" : "env " + env + " ";
  cmd += std::string(cli_path()) + " " + args + " > " + out_file +
         " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_file);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

}  // namespace

TEST_CASE("polytope json round trips") {
  Polyhedron box = Polyhedron::box({Rat(0), Rat(0)}, {Rat(2), Rat(1)});
  Json j = polyhedron_to_json(box);
  CHECK(j.at("ambient") == 2);
  CHECK(j.at("vertices").size() == 4);
  Polyhedron back = polyhedron_from_json(j);
  CHECK(back.vertices() == box.vertices());
  CHECK(dump_json(polyhedron_to_json(back)) == dump_json(j));

  // integer coordinates accepted on input, strings emitted on output
  Polyhedron seg = polyhedron_from_json(
      parse("{\"ambient\": 1, \"vertices\": [[0], [2]]}"));
  CHECK(seg.lattice_count() == 3);
  CHECK(polyhedron_to_json(seg).at("vertices")[0][0] == "0");

  Polyhedron empty = polyhedron_from_json(
      parse("{\"ambient\": 3, \"vertices\": []}"));
  CHECK(empty.is_empty());
  CHECK(polyhedron_to_json(empty).at("vertices").size() == 0);

  // fractional vertices round trip exactly
  Polyhedron half = polyhedron_from_json(
      parse("{\"ambient\": 1, \"vertices\": [[\"-1/2\"], [\"1/2\"]]}"));
  CHECK(half.lattice_count() == 1);
  Json hj = polyhedron_to_json(half);
  CHECK(hj.at("vertices")[0][0] == "-1/2");

  // H-rep input, unbounded H-rep output
  Polyhedron ray = polyhedron_from_json(parse(
      "{\"ambient\": 1, \"ineq\": [{\"a\": [\"-1\"], \"b\": \"0\"}]}"));
  CHECK(!ray.bounded());
  CHECK(ray.contains({Rat(5)}));
  Json rj = polyhedron_to_json(ray);
  CHECK(rj.contains("ineq"));
  CHECK(!rj.contains("vertices"));
  CHECK(polyhedron_from_json(rj).contains({Rat(7)}));

  // bounded H-rep input comes back as vertices
  Polyhedron tri = polyhedron_from_json(parse(
      "{\"ambient\": 2, \"ineq\": [{\"a\": [1, 1], \"b\": 1},"
      " {\"a\": [-1, 0], \"b\": 0}, {\"a\": [0, -1], \"b\": 0}]}"));
  CHECK(tri.vertices().size() == 3);

  CHECK_THROWS_AS(polyhedron_from_json(parse(
                      "{\"ambient\": 1, \"vertices\": [[0]], \"ineq\": []}")),
                  input_error);
  CHECK_THROWS_AS(polyhedron_from_json(
                      parse("{\"ambient\": 2, \"vertices\": [[1]]}")),
                  input_error);
  CHECK_THROWS_AS(polyhedron_from_json(parse(
                      "{\"ambient\": 1, \"ineq\": [{\"a\": [\"0\"],"
                      " \"b\": \"1\"}]}")),
                  input_error);
  CHECK_THROWS_AS(polyhedron_from_json(parse(
                      "{\"ambient\": 1, \"vertices\": [[\"1/0\"]]}")),
                  input_error);
  CHECK_THROWS_AS(polyhedron_from_json(parse("{\"ambient\": 17,"
                                             " \"vertices\": []}")),
                  cap_error);
}

TEST_CASE("schema validator accepts and rejects") {
  Json good = parse("{\"ambient\": 1, \"vertices\": [[\"3/2\"]]}");
  CHECK_NOTHROW(validate_input(good, "polytope"));

  auto rejects = [](const std::string& text) {
    CHECK_THROWS_AS(validate_input(parse_json_text(text), "polytope"),
                    input_error);
  };
  rejects("{\"vertices\": []}");                      // missing ambient
  rejects("{\"ambient\": \"1\", \"vertices\": []}");  // wrong type
  rejects("{\"ambient\": -1, \"vertices\": []}");     // below minimum
  rejects("{\"ambient\": 1, \"vertices\": [[\"x\"]]}");  // pattern
  rejects("{\"ambient\": 1, \"vertices\": [], \"extra\": 0}");
  rejects("[1, 2]");

  CHECK_THROWS_AS(
      validate_input(parse("{\"n\": 2, \"bases\": [[1]], \"x\": 0}"),
                     "matroid"),
      input_error);
  CHECK_THROWS_AS(validate_input(parse("{\"n\": 2, \"bases\": [[0]]}"),
                                 "matroid"),
                  input_error);  // elements are 1-based

  // the error names the offending path
  try {
    validate_input(parse("{\"ambient\": 1, \"vertices\": [[\"x\"]]}"),
                   "polytope");
    CHECK(false);
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("$") != std::string::npos);
  }

  // every shipped schema parses and self-describes
  for (const auto& [name, text] : builtin_schemas()) {
    Json s = parse_json_text(text);
    CHECK(s.at("title") == name);
  }
  CHECK(builtin_schemas().size() == 9);
}

TEST_CASE("matroid and submodular json round trips") {
  Matroid m = schubert_matroid({1, 0, 2}, 0b101);
  Json mj = matroid_to_json(m);
  CHECK(matroid_from_json(mj) == m);
  CHECK(mj.at("n") == 3);

  DeltaMatroid d = delta_schubert(SignedPermutation({2, -1}), 0b01);
  Json dj = delta_matroid_to_json(d);
  CHECK(delta_matroid_from_json(dj) == d);

  SubmodularFn f = SubmodularFn::rank_of(m);
  SubmodularFn g = submodular_from_json(submodular_to_json(f));
  CHECK(g.n == f.n);
  CHECK(g.v == f.v);

  CHECK_THROWS_AS(matroid_from_json(parse("{\"n\": 2, \"bases\": [[3]]}")),
                  input_error);
  CHECK_THROWS_AS(matroid_from_json(parse("{\"n\": 2, \"bases\": [[1, 1]]}")),
                  input_error);
  CHECK_THROWS_AS(
      matroid_from_json(parse("{\"n\": 2, \"bases\": [[1], [1, 2]]}")),
      input_error);  // exchange axiom
  CHECK_THROWS_AS(
      submodular_from_json(parse("{\"n\": 2, \"values\": [\"0\"]}")),
      input_error);
}

TEST_CASE("betti table json shape") {
  BettiTable t;
  t.add({0, 1}, 1, 2);
  t.add({0, 0}, 1, 1);
  t.add({0, 1}, 2, 1);
  Json j = betti_to_json(t);
  validate_input(j, "betti");
  REQUIRE(j.at("ext").size() == 3);
  CHECK(j.at("ext")[0] == parse("{\"m\": [0, 0], \"p\": 1, \"dim\": 1}"));
  CHECK(j.at("ext")[1] == parse("{\"m\": [0, 1], \"p\": 1, \"dim\": 2}"));
  REQUIRE(j.at("totals").size() == 2);
  CHECK(j.at("totals")[0] == parse("{\"p\": 1, \"dim\": 3}"));
  CHECK(j.at("totals")[1] == parse("{\"p\": 2, \"dim\": 1}"));

  BettiTable plain;
  plain.add({}, 0, 1);
  Json pj = betti_to_json(plain);
  CHECK(pj.at("ext")[0] == parse("{\"p\": 0, \"dim\": 1}"));

  Json ej = betti_to_json(BettiTable{});
  CHECK(ej.at("ext").size() == 0);
  CHECK(ej.at("totals").size() == 0);
}

TEST_CASE("enumerate listing matches the collections") {
  Json j = enumerate_listing(CollectionFamily::Perm, 3, "loopless");
  validate_input(j, "listing");
  REQUIRE(j.at("records").size() == 6);
  Collection c = build_collection(CollectionFamily::Perm, 3);
  for (size_t i = 0; i < 6; ++i) {
    const Json& r = j.at("records")[i];
    CHECK(r.at("id") == (int)i + 1);
    CHECK(r.at("source").get<std::string>() == c.items[i].source);
    CHECK(r.at("lattice_count").get<long>() == c.items[i].lattice_count);
    CHECK(polyhedron_from_json(r.at("polytope")).vertices() ==
          c.items[i].polytope.vertices());
  }

  Json jb = enumerate_listing(CollectionFamily::PermB, 2, "loopless");
  validate_input(jb, "listing");
  CHECK(jb.at("records").size() == 8);

  // raw stell enumeration on [2] happens to be duplicate-free
  Json js = enumerate_listing(CollectionFamily::Stell, 2, "all");
  CHECK(js.at("records").size() == 5);
  CHECK(js.at("records")[4].at("bases") == parse("[[1, 2]]"));

  // loopy Schubert matroids enter the raw listing but not the collection
  Json ja = enumerate_listing(CollectionFamily::Perm, 2, "all");
  CHECK(ja.at("records").size() > 2);
  CHECK(enumerate_listing(CollectionFamily::Perm, 2, "loopless")
            .at("records")
            .size() == 2);

  Json j0 = enumerate_listing(CollectionFamily::Perm, 0, "loopless");
  validate_input(j0, "listing");
  REQUIRE(j0.at("records").size() == 1);
  CHECK(j0.at("records")[0].at("source") == "BP[{}]");
  CHECK(j0.at("records")[0].at("bases") == parse("[[]]"));
  CHECK(j0.at("records")[0].at("lattice_count") == 1);

  CHECK_THROWS_AS(enumerate_listing(CollectionFamily::Perm, 3, "bogus"),
                  input_error);
  CHECK_THROWS_AS(enumerate_listing(CollectionFamily::Perm, -1, "loopless"),
                  input_error);
}

TEST_CASE("report and certificate json validate") {
  Collection c = build_collection(CollectionFamily::PermB, 2);
  ExceptionalityReport rep = verify_strong_exceptionality(c);
  bool unitri = is_unitriangular(euler_pairing_matrix(c));
  std::vector<OrbitCheck> orbits = {symmetry_orbit_check(c, SymmetryGroup::Sn),
                                    symmetry_orbit_check(c, SymmetryGroup::SnB)};
  Json v = verify_report_to_json(c, rep, unitri, orbits, {"Sn", "SnB"});
  validate_input(v, "verify");
  CHECK(v.at("items") == 8);
  CHECK(v.at("pass") == true);
  CHECK(v.at("orbits")[1].at("generators")[1] == "s1");
  CHECK(v.at("orbits")[1].at("maps")[1] ==
        parse("[1, 3, 2, 4, 7, 6, 5, 8]"));
  CHECK(full_verify_report(c) == v);

  // a failing report keeps the violation table
  Collection bad;
  bad.family = CollectionFamily::Classical;
  bad.n = 1;
  CollectionItem it;
  it.polytope = Polyhedron::box({Rat(0)}, {Rat(2)});
  it.source = "seg";
  it.lattice_count = 3;
  bad.items.push_back(it);
  it.polytope = Polyhedron::point({Rat(0)});
  it.source = "pt";
  it.lattice_count = 1;
  bad.items.push_back(it);
  ExceptionalityReport brep = verify_strong_exceptionality(bad);
  CHECK(!brep.pass());
  Json bv = verify_report_to_json(bad, brep, false, {}, {});
  CHECK(bv.at("pass") == false);
  CHECK(bv.at("violations").size() > 0);
  CHECK(bv.at("violations")[0].at("table").at("ext").size() > 0);

  Polyhedron square = Polyhedron::unit_cube(2);
  FullnessCertificate cert = fullness_certificate(c, square);
  Json cj = certificate_to_json(cert, c);
  validate_input(cj, "certificate");
  CHECK(cj.at("family") == "permB");
  const Json& root = cj.at("nodes")[cj.at("root").get<int>() - 1];
  CHECK(root.at("stage") == 0);
  CHECK(root.at("item") == 8);

  Polyhedron big = Polyhedron::box({Rat(0), Rat(0)}, {Rat(2), Rat(1)});
  FullnessCertificate cert2 = fullness_certificate(c, big);
  Json cj2 = certificate_to_json(cert2, c);
  validate_input(cj2, "certificate");
  const Json& root2 = cj2.at("nodes")[cj2.at("root").get<int>() - 1];
  CHECK(root2.at("stage") == 2);
  CHECK(root2.at("complex").at("elements").get<int>() >= 3);
  CHECK(root2.at("children").size() >= 2);
  for (const Json& ch : root2.at("children")) {
    int node = ch.at("node").get<int>();
    CHECK(node >= 1);
    CHECK(node <= (int)cj2.at("nodes").size());
  }

  Quiver q = tilting_quiver(c);
  validate_input(parse(export_json(q)), "quiver");
}

TEST_CASE("pairing matrix emitters") {
  std::vector<std::vector<long>> m = {{1, 2}, {0, 1}};
  CHECK(pairing_matrix_to_csv(m) == "1,2\n0,1\n");
  CHECK(dump_json(pairing_matrix_to_json(m)) ==
        "{\n  \"matrix\": [\n    [\n      1,\n      2\n    ],\n    [\n      "
        "0,\n      1\n    ]\n  ]\n}\n");
}

TEST_CASE("cli binary spec examples") {
  if (!cli_path()) {
    MESSAGE("POLYEXT_CLI_PATH unset; skipping binary tests");
    return;
  }
  std::string pt = scratch_path("pt.json");
  std::string seg = scratch_path("seg.json");
  write_file(pt, "{\"ambient\": 1, \"vertices\": [[\"0\"]]}\n");
  write_file(seg, "{\"ambient\": 1, \"vertices\": [[\"0\"], [\"2\"]]}\n");

  RunResult r = run_cli("enumerate --family perm --n 3 --filter loopless");
  CHECK(r.code == 0);
  CHECK(parse(r.out).at("records").size() == 6);

  r = run_cli("enumerate --family permB --n 2");
  CHECK(r.code == 0);
  CHECK(parse(r.out).at("records").size() == 8);

  r = run_cli("enumerate --family perm --n 0");
  CHECK(r.code == 0);
  CHECK(parse(r.out).at("records").size() == 1);

  r = run_cli("ext --p " + pt + " --q " + seg);
  CHECK(r.code == 0);
  Json totals = parse(r.out).at("totals");
  REQUIRE(totals.size() == 1);
  CHECK(totals[0] == parse("{\"p\": 0, \"dim\": 3}"));

  r = run_cli("ext --p " + seg + " --q " + pt);
  CHECK(r.code == 0);
  Json rows = parse(r.out).at("ext");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == parse("{\"m\": [1], \"p\": 1, \"dim\": 1}"));

  r = run_cli("ext --p " + seg + " --q " + seg + " --equivariant");
  CHECK(r.code == 0);
  CHECK(parse(r.out).at("ext")[0] == parse("{\"p\": 0, \"dim\": 1}"));

  r = run_cli("verify --family stell --n 2");
  CHECK(r.code == 0);
  Json v = parse(r.out);
  validate_input(v, "verify");
  CHECK(v.at("pass") == true);
  CHECK(v.at("items") == 5);

  r = run_cli("quiver --family perm --n 3 --format dot");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph perm3 {", 0) == 0);
  size_t arrows = 0;
  for (size_t at = r.out.find("->"); at != std::string::npos;
       at = r.out.find("->", at + 2))
    ++arrows;
  CHECK(arrows == 12);

  r = run_cli("quiver --family permB --n 2 --format json");
  CHECK(r.code == 0);
  Json qj = parse(r.out);
  validate_input(qj, "quiver");
  CHECK(qj.at("arrows").size() == 16);

  r = run_cli("counts --family perm --n 4 --cuspidal");
  CHECK(r.code == 0);
  CHECK(r.out == "9\n");

  r = run_cli("counts --family stell --n 2");
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");

  std::string sq = scratch_path("sq.json");
  write_file(sq, "{\"ambient\": 2, \"vertices\": [[0, 0], [1, 0], [0, 1],"
                 " [1, 1]]}\n");
  r = run_cli("certify --polytope " + sq + " --family permB");
  CHECK(r.code == 0);
  Json cj = parse(r.out);
  validate_input(cj, "certificate");
  CHECK(cj.at("nodes")[cj.at("root").get<int>() - 1].at("item") == 8);
}

TEST_CASE("cli binary determinism, output files and exit codes") {
  if (!cli_path()) {
    MESSAGE("POLYEXT_CLI_PATH unset; skipping binary tests");
    return;
  }
  RunResult a = run_cli("enumerate --family stell --n 3");
  RunResult b = run_cli("enumerate --family stell --n 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  // --jobs must not affect the bytes
  RunResult c = run_cli("enumerate --family stell --n 3 --jobs 4");
  CHECK(c.out == a.out);

  std::string out_file = scratch_path("listing.json");
  RunResult d = run_cli("enumerate --family stell --n 3 --out " + out_file);
  CHECK(d.code == 0);
  CHECK(d.out.empty());
  CHECK(slurp(out_file) == a.out);

  CHECK(run_cli("enumerate --family bogus --n 2").code == 2);
  CHECK(run_cli("enumerate --family perm --n 6").code == 3);
  CHECK(run_cli("enumerate --family perm").code == 2);  // missing --n
  CHECK(run_cli("bogus").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("ext --p /nonexistent.json --q /nonexistent.json").code == 2);

  std::string bad = scratch_path("bad.json");
  write_file(bad, "{\"ambient\": 1, \"vertices\": [[\"x\"]]}\n");
  std::string pt = scratch_path("pt.json");
  write_file(pt, "{\"ambient\": 1, \"vertices\": [[\"0\"]]}\n");
  CHECK(run_cli("ext --p " + bad + " --q " + pt).code == 2);

  std::string pt2 = scratch_path("pt2.json");
  write_file(pt2, "{\"ambient\": 2, \"vertices\": [[\"0\", \"0\"]]}\n");
  CHECK(run_cli("ext --p " + pt + " --q " + pt2).code == 2);  // ambient

  // env caps tighten the limits
  CHECK(run_cli("enumerate --family perm --n 3",
                "POLYEXT_CAPS=max_n_a=2").code == 3);
  CHECK(run_cli("enumerate --family perm --n 3",
                "POLYEXT_CAPS=max_n_a=oops").code == 2);
}

TEST_CASE("shipped schema files match the embedded copies") {
  const char* dir = std::getenv("POLYEXT_SCHEMA_DIR");
  if (!dir) {
    MESSAGE("POLYEXT_SCHEMA_DIR unset; skipping file comparison");
    return;
  }
  for (const auto& [name, text] : builtin_schemas()) {
    std::string path = std::string(dir) + "/" + name + ".schema.json";
    CHECK(slurp(path) == text);
  }
}

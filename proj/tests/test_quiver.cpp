#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "polyext/caps.hpp"
#include "polyext/quiver.hpp"

using namespace polyext;

namespace {

std::set<int> containment_masks(const Polyhedron& a, const Polyhedron& b) {
  std::set<int> out;
  for (const QVec& m : a.translate_containments(b)) {
    int mask = 0;
    for (size_t k = 0; k < m.size(); ++k) {
      REQUIRE((m[k] == 0 || m[k] == 1));
      if (m[k] == 1) mask |= 1 << k;
    }
    out.insert(mask);
  }
  return out;
}

// union-find orbits of the node set under every generator map
std::vector<int> orbits_of(const OrbitCheck& oc, int size) {
  std::vector<int> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& map : oc.maps)
    for (int i = 0; i < size; ++i) {
      int a = find(i), b = find(map[i]);
      if (a != b) parent[a] = b;
    }
  std::vector<int> out(size);
  for (int i = 0; i < size; ++i) out[i] = find(i);
  return out;
}

int swap_bits(int mask, int i, int j) {
  int bi = (mask >> i) & 1, bj = (mask >> j) & 1;
  mask &= ~((1 << i) | (1 << j));
  if (bi) mask |= 1 << j;
  if (bj) mask |= 1 << i;
  return mask;
}

void check_census_identity(const Quiver& q) {
  for (int i = 0; i < (int)q.nodes.size(); ++i)
    for (int j = 0; j < (int)q.nodes.size(); ++j) {
      std::set<int> census = path_label_census(q, i, j);
      std::set<int> contain =
          containment_masks(q.nodes[i].rep, q.nodes[j].rep);
      CHECK(census == contain);
    }
}

}  // namespace

TEST_CASE("perm quiver reproduces the twelve figure arrows") {
  Collection c = build_collection(CollectionFamily::Perm, 3);
  Quiver q = tilting_quiver(c);
  REQUIRE(q.nodes.size() == 6);
  CHECK(q.kind == MorphismKind::Inclusion);
  for (size_t k = 0; k < q.nodes.size(); ++k) {
    CHECK(q.nodes[k].rep.translate_equal(c.items[k].polytope));
    CHECK(q.nodes[k].matroid->coloops() == 0);
  }
  std::vector<AugMorphism> expect{
      {0, 1, 2}, {0, 1, 4}, {0, 2, 1}, {0, 2, 2}, {0, 3, 1}, {0, 3, 4},
      {1, 4, 0}, {1, 5, 1}, {2, 4, 0}, {2, 5, 4}, {3, 4, 0}, {3, 5, 2}};
  CHECK(q.arrows == expect);
}

TEST_CASE("stell quiver reproduces the nine figure arrows") {
  Quiver q = tilting_quiver(build_collection(CollectionFamily::Stell, 2));
  REQUIRE(q.nodes.size() == 5);
  CHECK(q.kind == MorphismKind::WeakMap);
  std::vector<AugMorphism> expect{{0, 1, 0}, {0, 1, 2}, {0, 2, 0},
                                  {0, 2, 1}, {1, 3, 0}, {1, 4, 1},
                                  {2, 3, 0}, {2, 4, 2}, {3, 4, 0}};
  CHECK(q.arrows == expect);
}

TEST_CASE("permB quiver reproduces the sixteen figure arrows") {
  Quiver q = tilting_quiver(build_collection(CollectionFamily::PermB, 2));
  REQUIRE(q.nodes.size() == 8);
  CHECK(q.kind == MorphismKind::Delta);
  std::vector<AugMorphism> expect{
      {0, 1, 0}, {0, 1, 2}, {0, 2, 0}, {0, 2, 1},
      {1, 3, 0}, {1, 4, 0}, {1, 5, 1}, {1, 6, 1},
      {2, 3, 0}, {2, 4, 2}, {2, 5, 2}, {2, 6, 0},
      {3, 7, 0}, {4, 7, 0}, {5, 7, 0}, {6, 7, 0}};
  CHECK(q.arrows == expect);
}

TEST_CASE("identity is the only self morphism") {
  Quiver q = tilting_quiver(build_collection(CollectionFamily::Perm, 3));
  for (int k = 0; k < (int)q.nodes.size(); ++k)
    CHECK(augmented_morphisms(q, k, k) == std::vector<int>{0});
  CHECK_THROWS_AS(
      tilting_quiver(classical_gallery(GalleryKind::Projective, 2).collection),
      input_error);
}

TEST_CASE("path label census equals translate containments") {
  check_census_identity(
      tilting_quiver(build_collection(CollectionFamily::Perm, 3)));
  check_census_identity(
      tilting_quiver(build_collection(CollectionFamily::Stell, 2)));
  check_census_identity(
      tilting_quiver(build_collection(CollectionFamily::PermB, 2)));

  Quiver q = tilting_quiver(build_collection(CollectionFamily::Perm, 3));
  CHECK(path_label_census(q, 0, 0) == std::set<int>{0});
  CHECK(path_label_census(q, 4, 5).empty());
  CHECK(path_label_census(q, 0, 4) == std::set<int>{1, 2, 4});
  CHECK(path_label_census(q, 0, 5) == std::set<int>{3, 5, 6});
  CHECK_THROWS_AS(path_label_census(q, 0, 9), input_error);
}

TEST_CASE("quivers point forward and respect the symmetry action") {
  struct Row {
    CollectionFamily fam;
    int n;
    SymmetryGroup g;
  };
  for (Row row : {Row{CollectionFamily::Perm, 3, SymmetryGroup::S2xSn},
                  Row{CollectionFamily::Stell, 2, SymmetryGroup::Sn},
                  Row{CollectionFamily::PermB, 2, SymmetryGroup::SnB}}) {
    Collection c = build_collection(row.fam, row.n);
    Quiver q = tilting_quiver(c);
    for (const AugMorphism& m : q.arrows) CHECK(m.src < m.dst);

    OrbitCheck oc = symmetry_orbit_check(c, row.g);
    REQUIRE(oc.ok);
    std::vector<int> orbit = orbits_of(oc, (int)c.items.size());
    for (const AugMorphism& m : q.arrows) CHECK(orbit[m.src] != orbit[m.dst]);

    // adjacent transpositions act on arrows by relabeling
    for (size_t g = 0; g < oc.generator_names.size(); ++g) {
      const std::string& name = oc.generator_names[g];
      if (name.size() != 2 || name[0] != 's') continue;
      int i = name[1] - '1';
      for (const AugMorphism& m : q.arrows) {
        AugMorphism image{oc.maps[g][m.src], oc.maps[g][m.dst],
                          swap_bits(m.label, i, i + 1)};
        CHECK(std::count(q.arrows.begin(), q.arrows.end(), image) == 1);
      }
    }
  }
}

TEST_CASE("perm four quiver stays consistent at scale") {
  Quiver q = tilting_quiver(build_collection(CollectionFamily::Perm, 4));
  REQUIRE(q.nodes.size() == 24);
  CHECK(!q.arrows.empty());
  for (const AugMorphism& m : q.arrows) CHECK(m.src < m.dst);
  check_census_identity(q);
}

TEST_CASE("dot and json exports are deterministic") {
  Quiver q = tilting_quiver(build_collection(CollectionFamily::Perm, 3));
  std::string dot = export_dot(q);
  CHECK(dot == export_dot(q));
  CHECK(dot.find("digraph perm3 {") == 0);
  CHECK(dot.find("  v6;\n") != std::string::npos);
  CHECK(dot.find("v2 -> v5;") != std::string::npos);          // empty label
  CHECK(dot.find("v2 -> v6 [label=\"{1}\"];") != std::string::npos);
  size_t arrows = 0, at = 0;
  while ((at = dot.find("->", at)) != std::string::npos) {
    ++arrows;
    at += 2;
  }
  CHECK(arrows == 12);

  std::string js = export_json(q);
  CHECK(js == export_json(q));
  nlohmann::json parsed = nlohmann::json::parse(js);
  CHECK(parsed["family"] == "perm");
  CHECK(parsed["n"] == 3);
  CHECK(parsed["nodes"].size() == 6);
  REQUIRE(parsed["arrows"].size() == 12);
  CHECK(parsed["arrows"][0]["src"] == 1);
  CHECK(parsed["arrows"][0]["dst"] == 2);
  CHECK(parsed["arrows"][0]["label"] == nlohmann::json::array({2}));
  CHECK(parsed["arrows"][6]["src"] == 2);
  CHECK(parsed["arrows"][6]["dst"] == 5);
  CHECK(parsed["arrows"][6]["label"] == nlohmann::json::array());
}

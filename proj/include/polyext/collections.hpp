#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyext/homology.hpp"
#include "polyext/iecomplex.hpp"
#include "polyext/matroid.hpp"

namespace polyext {

// The three polytopal collections: base polytopes of loopless Schubert
// matroids (perm), independence polytopes of all Schubert matroids (stell),
// and feasible polytopes of loopless Schubert delta matroids (permB). Items
// are ordered by non-decreasing lattice-point count; ties break by the
// lexicographic vertex list of the canonical form.

enum class CollectionFamily { Perm, Stell, PermB, Classical };
enum class SymmetryGroup { Sn, S2xSn, SnB };
enum class GalleryKind { Projective, Hirzebruch };

struct CollectionItem {
  Polyhedron polytope;
  std::string source;                 // printable indexing object
  std::optional<Matroid> matroid;     // perm and stell sources
  std::optional<DeltaMatroid> delta;  // permB sources
  long lattice_count = 0;
};

struct Collection {
  CollectionFamily family = CollectionFamily::Classical;
  int n = 0;  // ground-set size, or the gallery parameter
  std::optional<FanFamily> fan;
  std::vector<CollectionItem> items;
};

Collection build_collection(CollectionFamily family, int n);

struct ExtViolation {
  int i = 0, j = 0;  // item indices, pair (L_i, L_j)
  BettiTable table;
  std::string reason;
};

// Strong exceptionality asks Ext^p(L_i, L_j) = 0 for all p >= 1 and every
// ordered pair; the order is exceptional when additionally Hom(L_j, L_i) = 0
// for i < j and Hom(L_i, L_i) is one dimensional. Violations are data.
struct ExceptionalityReport {
  bool strongly_exceptional = true;
  bool exceptional_order = true;
  std::vector<ExtViolation> violations;
  bool pass() const { return strongly_exceptional && exceptional_order; }
};

ExceptionalityReport verify_strong_exceptionality(const Collection& c);

// entry (i, j) = sum over p of (-1)^p dim Ext^p(L_i, L_j)
std::vector<std::vector<long>> euler_pairing_matrix(const Collection& c);
bool is_unitriangular(const std::vector<std::vector<long>>& m);

// Fullness certificate: a tree of exact complexes expressing the target in
// terms of translated collection members. Stage 2 nodes slice the target by
// lattice unit boxes (subdivision Koszul); stage 1 nodes resolve a single
// box-sized piece through a truncated Brianchon-Gram complex (tensored with
// [-1,0]^n and truncated back to the cube for stell); stage 0 nodes are
// leaves matching a collection item up to translation.
struct CertNode {
  int stage = 0;
  Polyhedron target;
  std::optional<IEComplex> complex;  // stages 1 and 2
  int item = -1;                     // stage 0: collection index
  std::vector<std::pair<int, QVec>> children;  // (node, shift) per term
};

struct FullnessCertificate {
  Polyhedron target;
  int root = 0;
  std::vector<CertNode> nodes;
};

FullnessCertificate fullness_certificate(const Collection& c,
                                         const Polyhedron& target);

struct OrbitCheck {
  bool ok = true;
  std::vector<std::string> generator_names;
  std::vector<std::vector<int>> maps;  // item permutation per generator
};

// Applies each generator of the group to every item and matches the image
// against the collection up to translation.
OrbitCheck symmetry_orbit_check(const Collection& c, SymmetryGroup g);

// Items generic in the sense that no coordinate is constant on the polytope
// (no translate fits inside a proper coordinate subspace), reordered by
// non-increasing lattice-point count.
Collection cuspidal_subcollection(const Collection& c);

struct GalleryResult {
  Collection collection;
  ExceptionalityReport report;
  std::vector<std::string> witness_names;
  std::vector<IEComplex> witnesses;
};

// Classical examples: projective(n) is {k simplex dilates, k = 0..n} with the
// simplex-cover Koszul witness for (n+1) dilates; hirzebruch(a) is the four
// deformation-cone generators with the strip and segment witnesses.
GalleryResult classical_gallery(GalleryKind kind, int param);

// The C2 lattice probe: the doubled unit square against the point. The
// returned table restricts to even coordinate sums (the type C weight
// lattice) and is nonzero, so the type C analog of the permB collection is
// not exceptional in any order.
BettiTable type_c_counterexample();

}  // namespace polyext

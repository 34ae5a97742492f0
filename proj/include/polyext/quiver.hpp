#pragma once

#include <set>
#include <string>

#include "polyext/collections.hpp"

namespace polyext {

// Morphisms between collection members: augmented inclusions (perm),
// augmented weak maps (stell), augmented delta inclusions (permB). A label S
// is a set of loops of the source whose indicator translate lands the source
// polytope inside the destination.
enum class MorphismKind { Inclusion, WeakMap, Delta };

MorphismKind kind_for(CollectionFamily f);
const char* family_name(CollectionFamily f);

struct AugMorphism {
  int src = 0, dst = 0;  // node indices in collection order
  int label = 0;         // subset mask of [n]

  bool operator==(const AugMorphism& o) const {
    return src == o.src && dst == o.dst && label == o.label;
  }
  bool operator<(const AugMorphism& o) const {
    if (src != o.src) return src < o.src;
    if (dst != o.dst) return dst < o.dst;
    return label < o.label;
  }
};

// Quiver vertices use the coloopless convention for perm and permB (constant
// coordinates shifted to zero) and the independence polytopes for stell, so
// labels are honest subsets of loops.
struct QuiverNode {
  Polyhedron rep;
  int loops = 0;  // mask
  std::optional<Matroid> matroid;
  std::optional<DeltaMatroid> delta;
};

struct Quiver {
  CollectionFamily family = CollectionFamily::Perm;
  MorphismKind kind = MorphismKind::Inclusion;
  int n = 0;
  std::vector<QuiverNode> nodes;
  std::vector<AugMorphism> arrows;  // indecomposable only, sorted
};

// All valid label masks src -> dst under the kind closure, ascending. Each
// mask is cross-checked against polytope translate containment; disagreement
// is an internal error. The identity (src == dst, empty mask) is valid.
std::vector<int> augmented_morphisms(const Quiver& q, int src, int dst);

// True when no intermediate node and disjoint label split compose to m with
// both factors valid and neither an identity.
bool indecomposable(const Quiver& q, const AugMorphism& m);

Quiver tilting_quiver(const Collection& c);

// DOT text, nodes v1..vk in collection order, empty labels unannotated.
std::string export_dot(const Quiver& q);

// JSON text with 1-based node ids and 1-based label elements.
std::string export_json(const Quiver& q);

// Distinct label unions over directed paths i -> j; {empty} for i == j.
// Equals the set of indicator translates of rep(i) into rep(j).
std::set<int> path_label_census(const Quiver& q, int i, int j);

}  // namespace polyext

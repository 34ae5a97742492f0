#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "polyext/fan.hpp"
#include "polyext/polyhedron.hpp"

namespace polyext {

enum class PosetKind {
  Boolean,
  FaceLattice,
  FanFacePoset,
  OppositeOf,
  ChainPair,
  Custom,
};

// Finite graded poset with a unique bottom element, presented by its cover
// relations. Candidates for face posets of regular CW complexes: validation
// checks the necessary conditions (unique bottom, graded, thin, Eulerian from
// the bottom, solvable signs); the sphere condition itself is guaranteed by
// construction for the built-in kinds and not decided for Custom ones.
struct CWPoset {
  PosetKind kind = PosetKind::Custom;
  int size = 0;
  int bottom = 0;
  std::vector<int> rank;                     // rank[bottom] == 0
  std::vector<std::pair<int, int>> covers;   // (lower, upper), sorted
  std::map<std::pair<int, int>, int> signs;  // empty until incidence_signs

  std::vector<int> upper_covers(int x) const;
  std::vector<int> lower_covers(int x) const;
  int max_rank() const;

  // subsets of [k] ordered by inclusion, element i = bitmask i
  static CWPoset boolean_lattice(int k);
  // the two-element poset 0̂ < a
  static CWPoset chain_pair();
  // faces of a nonempty bounded polytope, from the empty face to P itself;
  // element 0 is the empty face, the last element is P
  static CWPoset face_lattice(const Polyhedron& p);
  // cones of the family's fan in the fan's own indexing, ranked by dimension
  // above the minimal cone, with an artificial top cell appended at index
  // fan->cones.size()
  static CWPoset fan_face_poset(const FanFamily& f);
  // ranks are derived from the covers; not graded or multiple bottoms → error
  static CWPoset custom(int size, std::vector<std::pair<int, int>> covers);

  // reverses all covers; element indices are preserved
  CWPoset opposite() const;
};

// Necessary CW conditions; throws input_error with the failed condition.
void validate_cw_poset(const CWPoset& p);

// row-major reachability bitset of the reflexive order: bit y of row x set
// iff x <= y
std::vector<std::vector<std::uint64_t>> reachability(const CWPoset& p);

// Signs on covers making every diamond multiply to -1, with +1 out of the
// bottom. Boolean posets get the closed-form Koszul signs; everything else
// goes through a GF(2) solve with free variables pinned to +1. Validates
// first; an unsolvable sign system is an input_error.
std::map<std::pair<int, int>, int> incidence_signs(const CWPoset& p);

}  // namespace polyext

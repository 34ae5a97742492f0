#pragma once

#include <map>
#include <utility>
#include <vector>

#include "polyext/polyhedron.hpp"

namespace polyext {

// Abstract simplicial complex given by its inclusion-maximal faces.
struct SimplicialComplex {
  int num_vertices = 0;
  std::vector<std::vector<int>> facets;  // each sorted ascending
};

// Graded dimension table. Plain cohomology tables use the empty translation
// key and degrees p >= -1; Ext tables use lattice translations and p >= 0.
// Zero dimensions are never stored.
struct BettiTable {
  std::map<std::pair<std::vector<long>, int>, long> entries;

  void add(std::vector<long> m, int p, long dim);
  long at(const std::vector<long>& m, int p) const;
  long at(int p) const { return at({}, p); }
  long total() const;
  bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

// Reduced simplicial cohomology over the rationals. The empty complex has
// H^{-1} = 1; any nonempty complex has H^{-1} = 0.
BettiTable reduced_cohomology(const SimplicialComplex& k);

// Nerve of the violation cover {P n {phi_i < 0}} over the irredundant
// constraints of Q (equalities expanded to inequality pairs). Simplices are
// capped at dimension dim_cap, which must be at least dim(P) + 1 so that
// cohomology is exact through degree dim(P). The realization is homotopy
// equivalent to P minus Q; a single-vertex complex may stand in for any
// contractible difference.
SimplicialComplex nerve_of_violation_cover(const Polyhedron& p,
                                           const Polyhedron& q, int dim_cap);

// Reduced cohomology of P minus (Q + m), degrees -1 .. dim(P).
BettiTable set_difference_cohomology(const Polyhedron& p, const Polyhedron& q,
                                     const std::vector<long>& m);

// Ext dimensions per Theorem A: Ext^p = sum over m of H~^{p-1}(P \ (Q+m)),
// with Hom appearing as the m with P <= Q+m. Equivariant tables keep only
// m = 0 and use the empty translation key.
BettiTable ext_table(const Polyhedron& p, const Polyhedron& q,
                     bool equivariant);

// Independent oracle: triangulates the closed thickening
// K_eps = union_i (P n {phi_i <= -eps}) over the arrangement cells with a
// pulling triangulation and returns its reduced cohomology. Asserts
// stability under halving eps. Intended for small dimensions.
BettiTable shifted_complement_cohomology_oracle(const Polyhedron& p,
                                                const Polyhedron& q,
                                                const std::vector<long>& m);

}  // namespace polyext

#pragma once

#include <optional>
#include <vector>

#include "polyext/lp.hpp"

namespace polyext {

// Affine chart of a polyhedron's affine hull: x = x0 + B^T t, t = G (x - x0).
struct AffineChart {
  QVec x0;
  QMat basis;  // rows span the direction space, size d x n
  QMat gram;   // left inverse rows, size d x n
  int ambient = 0;
  int dim = 0;
  QVec to_chart(const QVec& x) const;
  QVec to_ambient(const QVec& t) const;
};

// Convex polyhedron with both representations kept in sync.
// Bounded polyhedra carry vertices and an irredundant facet list; unbounded
// ones carry an irredundant H-rep only and support membership, translation
// and intersection.
class Polyhedron {
 public:
  Polyhedron() = default;  // empty in ambient 0

  static Polyhedron empty(int ambient);
  static Polyhedron from_hrep(int ambient, std::vector<AffineForm> forms);
  static Polyhedron from_vertices(int ambient, std::vector<QVec> pts);
  static Polyhedron point(const QVec& p);
  static Polyhedron box(const QVec& lo, const QVec& hi);
  static Polyhedron unit_cube(int n);

  int ambient() const { return ambient_; }
  bool is_empty() const { return empty_; }
  bool bounded() const { return bounded_; }
  int dim() const { return dim_; }  // affine dimension, -1 when empty

  const std::vector<QVec>& vertices() const;                 // bounded only
  const std::vector<AffineForm>& facets() const { return facets_; }
  const std::vector<AffineForm>& equalities() const { return eqs_; }
  std::vector<AffineForm> hrep() const;                      // facets + eqs
  std::vector<AffineForm> facet_forms_expanded() const;      // eqs as LE pairs

  bool contains(const QVec& p) const;
  bool contains_strictly(const QVec& p) const;  // relative interior

  Polyhedron translate(const QVec& m) const;
  Polyhedron negate() const;
  Polyhedron intersect(const Polyhedron& o) const;
  Polyhedron minkowski_sum(const Polyhedron& o) const;

  std::vector<QVec> lattice_points(bool interior = false) const;
  long lattice_count(bool interior = false) const;
  bool is_lattice_polytope() const;

  QVec lexmin_vertex() const;
  Polyhedron canonical_form() const;
  std::vector<QVec> canonical_vertices() const;
  bool translate_equal(const Polyhedron& o) const;
  // m with this + m == o, if any
  std::optional<QVec> translation_to(const Polyhedron& o) const;

  // primitive sign-normalized directions of 1-faces, deduplicated, sorted
  std::vector<QVec> edge_directions() const;

  Rat support(const QVec& w) const;
  QVec argmax_vertex(const QVec& w) const;  // lex-min among maximizers

  // all lattice m with this + m inside Q, sorted lex
  std::vector<QVec> translate_containments(const Polyhedron& Q) const;

  bool subset_of(const Polyhedron& o) const;
  bool disjoint_from(const Polyhedron& o) const;

  AffineChart chart() const;

  // integer bounding box [lo, hi] per coordinate (bounded, nonempty)
  void lattice_box(std::vector<Int>& lo, std::vector<Int>& hi) const;

 private:
  int ambient_ = 0;
  bool empty_ = true;
  bool bounded_ = true;
  int dim_ = -1;
  std::vector<AffineForm> facets_;  // Sense::LE, irredundant, sorted
  std::vector<AffineForm> eqs_;     // affine hull, Sense::EQ

  std::vector<QVec> verts_;  // sorted lex; bounded only

  void init_from_hrep(std::vector<AffineForm> forms);
  void init_from_vertices(std::vector<QVec> pts, bool known_extreme);
  friend Polyhedron vertices_unchecked(int, std::vector<QVec>);
};

// Trusts that pts are pairwise distinct extreme points.
Polyhedron vertices_unchecked(int ambient, std::vector<QVec> pts);

}  // namespace polyext

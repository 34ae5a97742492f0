#pragma once

#include <memory>
#include <string>

#include "polyext/polyhedron.hpp"

namespace polyext {

enum class FanTag { BraidA, Stellahedral, TypeB, ProductP1, Custom };

// Closed polyhedral cone of a complete fan. hrep forms all have b = 0.
struct Cone {
  int dim = 0;
  QMat rays;       // primitive generators, lineality excluded
  QMat lineality;  // basis rows
  std::vector<AffineForm> hrep;
  std::string tag;  // combinatorial name, e.g. "13|2" or "I={1};F=,1"
  bool contains(const QVec& x) const;
};

// Complete fan with its full face list and face order.
struct Fan {
  int ambient = 0;
  std::string name;
  std::vector<Cone> cones;
  std::vector<std::vector<char>> leq;  // leq[i][j]: cone i is a face of cone j
  int zero = -1;                       // unique minimal cone
  std::vector<int> maximal;            // dim == ambient
  bool less_eq(int i, int j) const { return leq[i][j] != 0; }
};

// One of the named fan families, or a custom admissible-direction set.
// The admissible set is kept sign-normalized; membership tests treat a
// direction and its negation alike, so the set is closed under negation.
class FanFamily {
 public:
  static FanFamily braid_a(int n);
  static FanFamily stellahedral(int n);
  static FanFamily type_b(int n);
  static FanFamily product_p1(int n);
  static FanFamily custom(int ambient, QMat dirs);

  FanTag tag() const { return tag_; }
  int n() const { return n_; }
  int ambient() const { return ambient_; }
  const std::string& name() const { return name_; }

  // Sign-normalized primitive directions, sorted lex.
  const QMat& admissible_edge_directions() const { return dirs_; }

  // Edge-direction membership test. P must be nonempty and bounded with
  // integral vertices; points pass vacuously.
  bool in_deformation_cone(const Polyhedron& P) const;

  // Cone complex of the named families. Custom has none. The pointer shares
  // ownership, so it outlives the family object.
  std::shared_ptr<const Fan> fan() const;

 private:
  FanFamily() = default;
  FanTag tag_ = FanTag::Custom;
  int n_ = 0;
  int ambient_ = 0;
  std::string name_;
  QMat dirs_;
  std::shared_ptr<const Fan> fan_;
};

}  // namespace polyext

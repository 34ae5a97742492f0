#pragma once

#include <memory>
#include <vector>

#include "polyext/cwposet.hpp"
#include "polyext/matroid.hpp"

namespace polyext {

struct IndicatorTerm {
  long coeff = 0;
  Polyhedron polytope = Polyhedron::empty(0);
};

// Integer combination of indicator functions of polyhedra.
struct IndicatorExpr {
  std::vector<IndicatorTerm> terms;
  long evaluate(const QVec& x) const;
  // merges terms with identical polyhedra and drops zero coefficients
  IndicatorExpr combined() const;
};

// Complex of polytope-labeled line bundles over a signed CW poset. The
// differential sends x to y along covers with coefficient signs[x, y]; the
// terms are the elements with nonempty labels (`alive`), and empty labels
// are pruned, which is harmless because labels are required to be monotone:
// a nonempty label below forces nonempty labels above.
struct IEComplex {
  CWPoset poset;                   // signs filled
  std::vector<Polyhedron> labels;  // one per poset element, empties allowed
  std::vector<int> alive;          // ascending indices of nonempty labels
  std::shared_ptr<const FanFamily> family;  // set by the BG constructors

  bool all_bounded() const;  // over alive labels
  int min_rank() const;      // over alive labels
  int max_rank() const;
};

// Validates the poset, fills signs, enforces monotone labels, and checks
// d^2 = 0 componentwise.
IEComplex make_ie_complex(CWPoset poset, std::vector<Polyhedron> labels);

struct StalkReport {
  std::vector<long> m;
  bool interval_criterion = false;  // I_m empty or an interval with |I| > 1
  bool exact = false;               // ranks of the signed stalk complex
};

struct ExactnessReport {
  bool all_exact = true;
  bool all_criterion = true;
  std::vector<StalkReport> stalks;
};

// Checks T-stalk exactness at every lattice point of the union of labels
// (which must all be bounded), or at the given probe points, which work for
// unbounded labels too since stalks only need membership. A stalk whose
// sufficient criterion holds but whose ranks disagree is an internal error:
// the poset was not CW after all.
ExactnessReport check_exactness_tstalks(const IEComplex& c);
ExactnessReport check_exactness_tstalks(
    const IEComplex& c, const std::vector<std::vector<long>>& probes);

// Koszul complex of a weak subdivision: Boolean poset on the pieces with
// F(S) = intersection of the pieces outside S and F(full) = p. The cover is
// certified by sampling at denominator 2, pairwise intersections must pass
// the ambient edge-direction test, and the result is verified stalk-exact.
IEComplex subdivision_koszul(const std::vector<Polyhedron>& pieces,
                             const Polyhedron& p);

// Brianchon-Gram complex of P over the family's fan: the opposite fan face
// poset with the old top as new bottom labeled P, and every cone labeled by
// the tangent cone of P at its face, based at the lex-min maximizing vertex.
IEComplex brianchon_gram(const Polyhedron& p, const FanFamily& fan);

// brianchon_gram followed by intersecting every label with qtrunc (which
// must contain P); the truncated labels must pass the family edge test.
IEComplex truncated_bg(const Polyhedron& p, const Polyhedron& qtrunc,
                       const FanFamily& fan);

// Signed combination of Schubert base polytope translates representing
// 1_{BP(M)}, read off the truncated BG complex over the hypersimplex and
// verified pointwise at every lattice point of the hypersimplex.
IndicatorExpr derksen_fink_decompose(const Matroid& m);

enum class TensorDirection { Add, Subtract };

// Minkowski-adds or -subtracts `by` on every label. Subtraction requires
// `by` to be an exact summand of every nonempty label. Exactness is
// preserved and re-verified when the labels are bounded.
IEComplex tensor_translate(const IEComplex& c, const Polyhedron& by,
                           TensorDirection dir);
IEComplex tensor_translate(const IEComplex& c, const std::vector<long>& by,
                           TensorDirection dir);

// Intersects every label with q; with a family attached, truncated labels
// must pass the family edge test. Exactness is preserved and re-verified.
IEComplex truncate_complex(const IEComplex& c, const Polyhedron& q);

// Alternating sum of label indicators, one term per alive element.
IndicatorExpr euler_indicator(const IEComplex& c);

}  // namespace polyext

#pragma once

#include <string>
#include <vector>

#include "polyext/polyhedron.hpp"

namespace polyext {

// Ground sets are bitmasks over [n], n <= 16, element i at bit i (0-based).

struct SetFamily {
  int n = 0;
  std::vector<int> sets;  // sorted ascending, duplicate-free
  SetFamily() = default;
  SetFamily(int n, std::vector<int> sets);
};

bool is_matroid(const SetFamily& f);
bool is_delta_matroid(const SetFamily& f);

class Matroid {
 public:
  Matroid(int n, std::vector<int> bases);  // validates the exchange axiom
  int n() const { return n_; }
  int rank() const;
  const std::vector<int>& bases() const { return bases_; }
  int rank_of(int mask) const;  // rank function
  int loops() const;            // mask of elements in no basis
  int coloops() const;          // mask of elements in every basis
  std::vector<int> independent_sets() const;

  Matroid dual() const;
  Matroid restrict_to(int mask) const;   // reindexed to [popcount(mask)]
  Matroid contract(int mask) const;      // mask independent; reindexed
  Matroid truncate_to(int k) const;
  Matroid direct_sum(const Matroid& o) const;
  Matroid flip_loops_to_coloops(int mask) const;  // mask subset of loops()

  bool operator==(const Matroid& o) const {
    return n_ == o.n_ && bases_ == o.bases_;
  }

 private:
  int n_;
  std::vector<int> bases_;
};

class DeltaMatroid {
 public:
  DeltaMatroid(int n, std::vector<int> feasible);  // validates sym. exchange
  int n() const { return n_; }
  const std::vector<int>& feasible() const { return feas_; }
  int loops() const;
  int coloops() const;

  DeltaMatroid restrict_to(int mask) const;  // feasible sets inside mask
  DeltaMatroid trivial_extend() const;       // adds a loop element n+1
  DeltaMatroid flip_loops(int mask) const;   // mask subset of loops()

  bool operator==(const DeltaMatroid& o) const {
    return n_ == o.n_ && feas_ == o.feas_;
  }

 private:
  int n_;
  std::vector<int> feas_;
};

// Submodular function given by its 2^n value table.
struct SubmodularFn {
  int n = 0;
  std::vector<Rat> v;  // v[mask], v[0] = 0

  SubmodularFn() = default;
  SubmodularFn(int n, std::vector<Rat> values);  // validates submodularity
  const Rat& operator()(int mask) const { return v[mask]; }
  bool is_monotone() const;
  static SubmodularFn rank_of(const Matroid& m);

  bool in_base_polytope(const QVec& x) const;
  bool in_independence_polytope(const QVec& x) const;  // needs monotone
  Polyhedron base_polytope() const;
  Polyhedron independence_polytope() const;
};

struct SignedPermutation {
  // images[i] = +-(j+1): element i+1 maps to that signed value (1-based).
  std::vector<int> images;
  explicit SignedPermutation(std::vector<int> images);
  int n() const { return (int)images.size(); }
};

Matroid schubert_matroid(const std::vector<int>& w, int smask);
DeltaMatroid delta_schubert(const SignedPermutation& w, int smask);

// Type-B Gale order on subsets of [n]: A <= B iff |A| <= |B| and the
// suffix-aligned elementwise comparison holds.
bool type_b_gale_leq(int amask, int bmask);

Polyhedron base_polytope(const Matroid& m);
Polyhedron independence_polytope(const Matroid& m);
Polyhedron feasible_polytope(const DeltaMatroid& d);

enum class SchubertFilter { All, Loopless, LooplessAndColoopless };

std::vector<Matroid> enumerate_schubert(int n, SchubertFilter filter);
std::vector<DeltaMatroid> enumerate_delta_schubert(int n, SchubertFilter filter);

// Polymatroid optimization primitives.
Rat exchange_capacity(const SubmodularFn& mu, const QVec& x, int i, int j);

struct RetractSegment {
  QVec from;
  int i = 0, j = 0;  // direction e_i - e_j
  Rat length;
};
struct RetractPath {
  QVec endpoint;
  std::vector<RetractSegment> segments;
};
RetractPath greedy_retract(const SubmodularFn& mu, const QVec& x);

Rat saturation(const SubmodularFn& mu, const QVec& x, int i);
RetractPath ib_retract(const SubmodularFn& mu, const QVec& x);

}  // namespace polyext

#include "polyext/homology.hpp"

#include <algorithm>
#include <set>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"
#include "polyext/lp.hpp"

namespace polyext {

void BettiTable::add(std::vector<long> m, int p, long dim) {
  if (dim < 0) throw internal_error("negative betti dimension");
  if (dim == 0) return;
  entries[{std::move(m), p}] += dim;
}

long BettiTable::at(const std::vector<long>& m, int p) const {
  auto it = entries.find({m, p});
  return it == entries.end() ? 0 : it->second;
}

long BettiTable::total() const {
  long s = 0;
  for (const auto& [k, v] : entries) s += v;
  return s;
}

namespace {

QVec qvec_of(const std::vector<long>& m) {
  QVec v;
  v.reserve(m.size());
  for (long x : m) v.push_back(Rat(x));
  return v;
}

std::vector<long> long_of(const QVec& v) {
  std::vector<long> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(rat_to_long(x));
  return out;
}

SimplicialComplex single_vertex() {
  SimplicialComplex k;
  k.num_vertices = 1;
  k.facets = {{0}};
  return k;
}

// coboundary rank from dimension-d faces to dimension-(d+1) faces
long coboundary_rank(const std::vector<std::vector<int>>& lo,
                     const std::vector<std::vector<int>>& hi) {
  if (lo.empty() || hi.empty()) return 0;
  std::map<std::vector<int>, int> lo_index;
  for (size_t i = 0; i < lo.size(); ++i) lo_index[lo[i]] = (int)i;
  QMat mat(hi.size(), QVec(lo.size(), Rat(0)));
  for (size_t r = 0; r < hi.size(); ++r) {
    std::vector<int> face = hi[r];
    for (size_t drop = 0; drop < hi[r].size(); ++drop) {
      face.erase(face.begin() + drop);
      auto it = lo_index.find(face);
      if (it == lo_index.end()) throw internal_error("complex not down-closed");
      mat[r][it->second] = (drop % 2 == 0) ? Rat(1) : Rat(-1);
      face.insert(face.begin() + drop, hi[r][drop]);
    }
  }
  return (long)mat_rank(mat);
}

}  // namespace

BettiTable reduced_cohomology(const SimplicialComplex& k) {
  // collect all faces, graded by dimension
  std::vector<std::set<std::vector<int>>> graded;
  for (const std::vector<int>& f : k.facets) {
    if (f.empty()) throw input_error("empty facet");
    for (int v : f)
      if (v < 0 || v >= k.num_vertices) throw input_error("vertex out of range");
    if (!std::is_sorted(f.begin(), f.end()) ||
        std::adjacent_find(f.begin(), f.end()) != f.end())
      throw input_error("facet vertices must be sorted and distinct");
    int n = (int)f.size();
    if ((int)graded.size() < n) graded.resize(n);
    for (int s = 1; s < (1 << n); ++s) {
      std::vector<int> face;
      for (int i = 0; i < n; ++i)
        if ((s >> i) & 1) face.push_back(f[i]);
      graded[face.size() - 1].insert(std::move(face));
    }
  }
  BettiTable out;
  if (graded.empty()) {
    out.add({}, -1, 1);
    return out;
  }
  std::vector<std::vector<std::vector<int>>> faces(graded.size());
  for (size_t d = 0; d < graded.size(); ++d)
    faces[d].assign(graded[d].begin(), graded[d].end());

  int top = (int)faces.size() - 1;  // largest face dimension
  // ranks[d] = rank of the coboundary C^{d-1} -> C^d, d = 0 .. top+1
  std::vector<long> rank(top + 2, 0);
  rank[0] = 1;  // augmentation: nonzero map k -> C^0 since some vertex exists
  for (int d = 1; d <= top; ++d)
    rank[d] = coboundary_rank(faces[d - 1], faces[d]);

  long h_minus1 = 1 - rank[0];
  if (h_minus1 > 0) out.add({}, -1, h_minus1);
  for (int d = 0; d <= top; ++d) {
    long dim_cd = (long)faces[d].size();
    out.add({}, d, dim_cd - rank[d + 1] - rank[d]);
  }
  return out;
}

namespace {

// bitmask words over the vertex list of P
using Mask = std::vector<unsigned long long>;

bool mask_and_any(const Mask& a, const Mask& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

Mask mask_and(const Mask& a, const Mask& b) {
  Mask out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool mask_subset(const Mask& a, const Mask& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

SimplicialComplex nerve_of_violation_cover(const Polyhedron& p,
                                           const Polyhedron& q, int dim_cap) {
  if (p.ambient() != q.ambient()) throw input_error("ambient mismatch");
  if (!p.bounded() || !q.bounded())
    throw input_error("violation cover needs bounded polytopes");
  if (p.is_empty()) return {};
  if (dim_cap < p.dim() + 1)
    throw input_error("dim_cap must be at least dim(P) + 1");
  if (q.is_empty()) return single_vertex();

  const std::vector<AffineForm> all_forms = q.facet_forms_expanded();
  const std::vector<QVec>& pv = p.vertices();
  const size_t words = (pv.size() + 63) / 64;

  // keep a constraint iff some vertex of P strictly violates it
  std::vector<AffineForm> forms;
  std::vector<Mask> viol;
  for (const AffineForm& g : all_forms) {
    Mask m(words, 0ull);
    bool any = false;
    for (size_t v = 0; v < pv.size(); ++v)
      if (dot(g.a, pv[v]) > g.b) {
        m[v / 64] |= 1ull << (v % 64);
        any = true;
      }
    if (any) {
      forms.push_back(g);
      viol.push_back(std::move(m));
    }
  }
  const int l = (int)forms.size();
  if (l == 0) return {};  // P inside Q

  const std::vector<AffineForm> base = p.hrep();
  const int n = p.ambient();
  auto strict_violation = [&](const AffineForm& g) {
    QVec a = g.a;
    for (Rat& c : a) c = -c;
    return AffineForm{std::move(a), -g.b, Sense::LT};
  };

  // contractible fast path: one cover set containing all the others
  for (int i = 0; i < l; ++i) {
    bool candidate = true;
    for (int j = 0; j < l && candidate; ++j)
      if (!mask_subset(viol[j], viol[i])) candidate = false;
    if (!candidate) continue;
    bool covers = true;
    for (int j = 0; j < l && covers; ++j) {
      if (j == i) continue;
      std::vector<AffineForm> sys = base;
      sys.push_back(strict_violation(forms[j]));
      sys.push_back(forms[i]);  // stay weakly inside constraint i
      if (lp_feasible(n, sys).has_value()) covers = false;
    }
    if (covers) return single_vertex();
  }

  const long cap = Caps::global().max_nerve_simplices;
  long count = l;
  // levels[k]: feasible simplices with k+1 vertices, with witness masks
  std::vector<std::vector<std::vector<int>>> levels;
  std::vector<std::vector<Mask>> level_masks;
  {
    std::vector<std::vector<int>> first;
    std::vector<Mask> first_masks;
    for (int i = 0; i < l; ++i) {
      first.push_back({i});
      first_masks.push_back(viol[i]);
    }
    levels.push_back(std::move(first));
    level_masks.push_back(std::move(first_masks));
  }
  for (int size = 2; size <= dim_cap + 1; ++size) {
    std::vector<std::vector<int>> next;
    std::vector<Mask> next_masks;
    const auto& prev = levels.back();
    const auto& prev_masks = level_masks.back();
    for (size_t s = 0; s < prev.size(); ++s)
      for (int j = prev[s].back() + 1; j < l; ++j) {
        Mask m = mask_and(prev_masks[s], viol[j]);
        bool ok = mask_and_any(m, m);
        if (!ok) {
          std::vector<AffineForm> sys = base;
          for (int i : prev[s]) sys.push_back(strict_violation(forms[i]));
          sys.push_back(strict_violation(forms[j]));
          ok = lp_feasible(n, sys).has_value();
        }
        if (!ok) continue;
        if (++count > cap) throw cap_error("nerve simplex budget exceeded");
        std::vector<int> simplex = prev[s];
        simplex.push_back(j);
        next.push_back(std::move(simplex));
        next_masks.push_back(std::move(m));
      }
    if (next.empty()) break;
    levels.push_back(std::move(next));
    level_masks.push_back(std::move(next_masks));
  }

  // maximal simplices: not a facet of any feasible extension
  SimplicialComplex out;
  out.num_vertices = l;
  for (size_t k = 0; k < levels.size(); ++k) {
    std::set<std::vector<int>> dominated;
    if (k + 1 < levels.size())
      for (const std::vector<int>& t : levels[k + 1]) {
        std::vector<int> sub = t;
        for (size_t drop = 0; drop < t.size(); ++drop) {
          sub.erase(sub.begin() + drop);
          dominated.insert(sub);
          sub.insert(sub.begin() + drop, t[drop]);
        }
      }
    for (const std::vector<int>& s : levels[k])
      if (!dominated.count(s)) out.facets.push_back(s);
  }
  std::sort(out.facets.begin(), out.facets.end());
  return out;
}

BettiTable set_difference_cohomology(const Polyhedron& p, const Polyhedron& q,
                                     const std::vector<long>& m) {
  if (p.ambient() != q.ambient()) throw input_error("ambient mismatch");
  if ((int)m.size() != p.ambient()) throw input_error("translation arity");
  if (!p.bounded() || !q.bounded())
    throw input_error("set difference needs bounded polytopes");
  BettiTable out;
  if (p.is_empty()) {
    out.add({}, -1, 1);
    return out;
  }
  Polyhedron qm = q.translate(qvec_of(m));
  if (qm.is_empty() || p.disjoint_from(qm)) return out;  // difference is P
  if (p.subset_of(qm)) {
    out.add({}, -1, 1);
    return out;
  }
  SimplicialComplex nerve = nerve_of_violation_cover(p, qm, p.dim() + 1);
  BettiTable full = reduced_cohomology(nerve);
  for (const auto& [key, dim] : full.entries)
    if (key.second <= p.dim()) out.add(key.first, key.second, dim);
  return out;
}

BettiTable ext_table(const Polyhedron& p, const Polyhedron& q,
                     bool equivariant) {
  if (p.ambient() != q.ambient()) throw input_error("ambient mismatch");
  if (p.is_empty() || q.is_empty())
    throw input_error("ext table needs nonempty polytopes");
  if (!p.bounded() || !q.bounded() || !p.is_lattice_polytope() ||
      !q.is_lattice_polytope())
    throw input_error("ext table needs bounded lattice polytopes");

  BettiTable out;
  if (equivariant) {
    BettiTable t = set_difference_cohomology(p, q, std::vector<long>(p.ambient(), 0));
    for (const auto& [key, dim] : t.entries) out.add({}, key.second + 1, dim);
    return out;
  }

  // m contributes only when P meets Q + m
  Polyhedron domain = p.minkowski_sum(q.negate());
  std::set<std::vector<long>> hom_keys;
  for (const QVec& mv : domain.lattice_points()) {
    std::vector<long> m = long_of(mv);
    BettiTable t = set_difference_cohomology(p, q, m);
    for (const auto& [key, dim] : t.entries) {
      out.add(m, key.second + 1, dim);
      if (key.second == -1) hom_keys.insert(m);
    }
  }
  // cross-check degree 0 against the containment list
  std::set<std::vector<long>> expected;
  for (const QVec& t : p.translate_containments(q)) {
    std::vector<long> m = long_of(t);
    for (long& c : m) c = -c;
    expected.insert(std::move(m));
  }
  if (expected != hom_keys)
    throw internal_error("containment translates disagree with H^{-1} terms");
  return out;
}

namespace {

// pulling triangulation by repeated coning from the lex-min vertex;
// deterministic in the global vertex order, so shared faces of different
// cells triangulate identically
void pull_triangulate(const Polyhedron& cell,
                      std::vector<std::vector<QVec>>& out,
                      std::vector<QVec>& cone) {
  if (cell.dim() == 0) {
    std::vector<QVec> simplex = cone;
    simplex.push_back(cell.vertices()[0]);
    out.push_back(std::move(simplex));
    return;
  }
  QVec v0 = cell.lexmin_vertex();
  cone.push_back(v0);
  for (const AffineForm& g : cell.facets()) {
    if (dot(g.a, v0) == g.b) continue;  // facet through the cone point
    std::vector<AffineForm> sys = cell.hrep();
    sys.push_back(AffineForm{g.a, g.b, Sense::EQ});
    Polyhedron face = Polyhedron::from_hrep(cell.ambient(), std::move(sys));
    if (face.is_empty()) throw internal_error("facet equality cut is empty");
    pull_triangulate(face, out, cone);
  }
  cone.pop_back();
}

struct ArrangementOracle {
  const Polyhedron& p;
  std::vector<AffineForm> forms;  // constraints of Q + m
  int n;

  BettiTable betti_at(const Rat& eps) const {
    const long cap = Caps::global().max_arrangement_cells;
    long cells = 0;
    std::vector<std::vector<QVec>> simplices;
    std::vector<AffineForm> sys = p.hrep();
    // low side: a.x >= b + eps; high side: a.x <= b + eps
    std::vector<AffineForm> low(forms.size()), high(forms.size());
    for (size_t i = 0; i < forms.size(); ++i) {
      QVec neg = forms[i].a;
      for (Rat& c : neg) c = -c;
      low[i] = AffineForm{neg, -(forms[i].b + eps), Sense::LE};
      high[i] = AffineForm{forms[i].a, forms[i].b + eps, Sense::LE};
    }
    auto rec = [&](auto&& self, size_t idx, bool has_low) -> void {
      if (!lp_feasible(n, sys).has_value()) return;
      if (idx == forms.size()) {
        if (!has_low) return;
        if (++cells > cap) throw cap_error("arrangement cell budget exceeded");
        Polyhedron cell = Polyhedron::from_hrep(n, sys);
        if (cell.is_empty()) return;
        std::vector<QVec> cone;
        pull_triangulate(cell, simplices, cone);
        return;
      }
      sys.push_back(low[idx]);
      self(self, idx + 1, true);
      sys.pop_back();
      sys.push_back(high[idx]);
      self(self, idx + 1, has_low);
      sys.pop_back();
    };
    rec(rec, 0, false);

    // build the union complex over shared vertices
    std::map<QVec, int> vid;
    std::set<std::vector<int>> top;
    for (const std::vector<QVec>& s : simplices) {
      std::vector<int> ids;
      for (const QVec& v : s) {
        auto it = vid.try_emplace(v, (int)vid.size()).first;
        ids.push_back(it->second);
      }
      std::sort(ids.begin(), ids.end());
      if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw internal_error("degenerate simplex in pulling triangulation");
      top.insert(std::move(ids));
    }
    SimplicialComplex k;
    k.num_vertices = (int)vid.size();
    for (const std::vector<int>& s : top) {
      bool maximal = true;
      for (const std::vector<int>& t : top) {
        if (t.size() <= s.size()) continue;
        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal) k.facets.push_back(s);
    }
    return reduced_cohomology(k);
  }
};

}  // namespace

BettiTable shifted_complement_cohomology_oracle(const Polyhedron& p,
                                                const Polyhedron& q,
                                                const std::vector<long>& m) {
  if (p.ambient() != q.ambient()) throw input_error("ambient mismatch");
  if ((int)m.size() != p.ambient()) throw input_error("translation arity");
  if (!p.bounded() || !q.bounded())
    throw input_error("oracle needs bounded polytopes");
  BettiTable out;
  if (p.is_empty()) {
    out.add({}, -1, 1);
    return out;
  }
  Polyhedron qm = q.translate(qvec_of(m));
  if (qm.is_empty()) return out;  // difference is all of P

  const int n = p.ambient();
  ArrangementOracle oracle{p, qm.facet_forms_expanded(), n};

  // hyperplanes of the arrangement: facet and equality walls of P and Q+m
  QMat planes;     // rows (a | b) meaning a.x = b
  auto add_plane = [&](const AffineForm& g) {
    QVec row = g.a;
    row.push_back(g.b);
    planes.push_back(std::move(row));
  };
  for (const AffineForm& g : p.hrep()) add_plane(g);
  for (const AffineForm& g : qm.hrep()) add_plane(g);

  Rat delta(1);
  bool found = false;
  std::vector<size_t> pick;
  auto consider = [&](const QVec& v) {
    for (const AffineForm& g : oracle.forms) {
      Rat val = g.b - dot(g.a, v);
      if (val < 0) val = -val;
      if (val == 0) continue;
      if (!found || val < delta) delta = val;
      found = true;
    }
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    if ((int)pick.size() == n) {
      QMat a(n, QVec(n));
      QVec b(n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a[r][c] = planes[pick[r]][c];
        b[r] = planes[pick[r]][n];
      }
      if (mat_rank(a) < (size_t)n) return;
      auto x = solve_linear(a, b);
      if (x) consider(*x);
      return;
    }
    for (size_t i = start; i < planes.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  if (n > 0) rec(rec, 0);

  Rat eps = delta / 2;
  BettiTable prev = oracle.betti_at(eps);
  for (int round = 0; round < 4; ++round) {
    eps /= 2;
    BettiTable next = oracle.betti_at(eps);
    if (next == prev) return prev;
    prev = std::move(next);
  }
  throw internal_error("epsilon halving did not stabilize");
}

}  // namespace polyext

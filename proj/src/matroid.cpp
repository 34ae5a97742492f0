#include "polyext/matroid.hpp"

#include <algorithm>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"

namespace polyext {

namespace {

int popcount(int m) { return __builtin_popcount((unsigned)m); }

std::vector<int> bits_of(int mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if ((mask >> i) & 1) out.push_back(i);
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

QVec mask_vector(int n, int mask) {
  QVec v(n, Rat(0));
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1) v[i] = 1;
  return v;
}

// Reindex a mask living inside `support` to [popcount(support)].
int squeeze(int mask, int support) {
  int out = 0, pos = 0;
  for (int i = 0; support >> i; ++i)
    if ((support >> i) & 1) {
      if ((mask >> i) & 1) out |= 1 << pos;
      ++pos;
    }
  return out;
}

}  // namespace

SetFamily::SetFamily(int n_, std::vector<int> sets_) : n(n_), sets(std::move(sets_)) {
  if (n < 0 || n > Caps::global().max_ground)
    throw input_error("ground set size out of range");
  sets = sorted_unique(std::move(sets));
  for (int s : sets)
    if (s < 0 || s >= (1 << n)) throw input_error("set outside ground set");
}

bool is_matroid(const SetFamily& f) {
  if (f.sets.empty()) return false;
  int k = popcount(f.sets[0]);
  for (int b : f.sets)
    if (popcount(b) != k) return false;
  auto member = [&](int s) {
    return std::binary_search(f.sets.begin(), f.sets.end(), s);
  };
  for (int b1 : f.sets)
    for (int b2 : f.sets) {
      int out = b1 & ~b2, in = b2 & ~b1;
      for (int i : bits_of(out)) {
        bool found = false;
        for (int j : bits_of(in))
          if (member((b1 & ~(1 << i)) | (1 << j))) {
            found = true;
            break;
          }
        if (!found) return false;
      }
    }
  return true;
}

bool is_delta_matroid(const SetFamily& f) {
  if (f.sets.empty()) return false;
  auto member = [&](int s) {
    return std::binary_search(f.sets.begin(), f.sets.end(), s);
  };
  for (int a1 : f.sets)
    for (int a2 : f.sets) {
      int delta = a1 ^ a2;
      for (int e : bits_of(delta)) {
        bool found = false;
        for (int fbit : bits_of(delta)) {
          int move = (e == fbit) ? (1 << e) : ((1 << e) | (1 << fbit));
          if (member(a1 ^ move)) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
    }
  return true;
}

Matroid::Matroid(int n, std::vector<int> bases) : n_(n) {
  SetFamily f(n, std::move(bases));
  if (!is_matroid(f)) throw input_error("basis family fails the exchange axiom");
  bases_ = std::move(f.sets);
}

int Matroid::rank() const { return popcount(bases_[0]); }

int Matroid::rank_of(int mask) const {
  int best = 0;
  for (int b : bases_) best = std::max(best, popcount(b & mask));
  return best;
}

int Matroid::loops() const {
  int u = 0;
  for (int b : bases_) u |= b;
  return ((1 << n_) - 1) & ~u;
}

int Matroid::coloops() const {
  int c = (1 << n_) - 1;
  for (int b : bases_) c &= b;
  return c;
}

std::vector<int> Matroid::independent_sets() const {
  std::vector<char> ind(1 << n_, 0);
  for (int b : bases_) {
    // mark all submasks
    for (int s = b;; s = (s - 1) & b) {
      ind[s] = 1;
      if (!s) break;
    }
  }
  std::vector<int> out;
  for (int s = 0; s < (1 << n_); ++s)
    if (ind[s]) out.push_back(s);
  return out;
}

Matroid Matroid::dual() const {
  int full = (1 << n_) - 1;
  std::vector<int> b;
  for (int x : bases_) b.push_back(full & ~x);
  return Matroid(n_, std::move(b));
}

Matroid Matroid::restrict_to(int mask) const {
  if (mask < 0 || mask >= (1 << n_)) throw input_error("restrict: not a subset");
  int r = rank_of(mask);
  std::vector<int> b;
  for (int x : bases_)
    if (popcount(x & mask) == r) b.push_back(squeeze(x & mask, mask));
  return Matroid(popcount(mask), sorted_unique(std::move(b)));
}

Matroid Matroid::contract(int mask) const {
  if (mask < 0 || mask >= (1 << n_)) throw input_error("contract: not a subset");
  if (rank_of(mask) != popcount(mask))
    throw input_error("contract: set is dependent");
  std::vector<int> b;
  for (int x : bases_)
    if ((x & mask) == mask) b.push_back(squeeze(x & ~mask, ~mask & ((1 << n_) - 1)));
  return Matroid(n_ - popcount(mask), sorted_unique(std::move(b)));
}

Matroid Matroid::truncate_to(int k) const {
  if (k < 0 || k > rank()) throw input_error("truncate: bad target rank");
  std::vector<int> b;
  for (int s : independent_sets())
    if (popcount(s) == k) b.push_back(s);
  return Matroid(n_, std::move(b));
}

Matroid Matroid::direct_sum(const Matroid& o) const {
  if (n_ + o.n_ > Caps::global().max_ground)
    throw input_error("direct sum exceeds ground cap");
  std::vector<int> b;
  for (int x : bases_)
    for (int y : o.bases_) b.push_back(x | (y << n_));
  return Matroid(n_ + o.n_, std::move(b));
}

Matroid Matroid::flip_loops_to_coloops(int mask) const {
  if ((mask & loops()) != mask) throw input_error("flip: not a subset of loops");
  std::vector<int> b;
  for (int x : bases_) b.push_back(x | mask);
  return Matroid(n_, std::move(b));
}

DeltaMatroid::DeltaMatroid(int n, std::vector<int> feasible) : n_(n) {
  SetFamily f(n, std::move(feasible));
  if (!is_delta_matroid(f))
    throw input_error("family fails the symmetric exchange axiom");
  feas_ = std::move(f.sets);
}

int DeltaMatroid::loops() const {
  int u = 0;
  for (int s : feas_) u |= s;
  return ((1 << n_) - 1) & ~u;
}

int DeltaMatroid::coloops() const {
  int c = (1 << n_) - 1;
  for (int s : feas_) c &= s;
  return c;
}

DeltaMatroid DeltaMatroid::restrict_to(int mask) const {
  if (mask < 0 || mask >= (1 << n_)) throw input_error("restrict: not a subset");
  std::vector<int> f;
  for (int s : feas_)
    if ((s & ~mask) == 0) f.push_back(squeeze(s, mask));
  if (f.empty()) throw input_error("restrict: no feasible set inside subset");
  return DeltaMatroid(popcount(mask), sorted_unique(std::move(f)));
}

DeltaMatroid DeltaMatroid::trivial_extend() const {
  return DeltaMatroid(n_ + 1, feas_);
}

DeltaMatroid DeltaMatroid::flip_loops(int mask) const {
  if ((mask & loops()) != mask) throw input_error("flip: not a subset of loops");
  std::vector<int> f;
  for (int s : feas_) f.push_back(s | mask);
  return DeltaMatroid(n_, std::move(f));
}

SubmodularFn::SubmodularFn(int n_, std::vector<Rat> values) : n(n_), v(std::move(values)) {
  if (n < 0 || n > Caps::global().max_ground)
    throw input_error("ground set size out of range");
  if ((int)v.size() != (1 << n)) throw input_error("value table size mismatch");
  if (v[0] != 0) throw input_error("submodular function must vanish on the empty set");
  for (int a = 0; a < (1 << n); ++a)
    for (int i = 0; i < n; ++i) {
      if ((a >> i) & 1) continue;
      for (int j = i + 1; j < n; ++j) {
        if ((a >> j) & 1) continue;
        if (v[a | (1 << i)] + v[a | (1 << j)] < v[a | (1 << i) | (1 << j)] + v[a])
          throw input_error("value table is not submodular");
      }
    }
}

bool SubmodularFn::is_monotone() const {
  for (int a = 0; a < (1 << n); ++a)
    for (int i = 0; i < n; ++i)
      if (!((a >> i) & 1) && v[a | (1 << i)] < v[a]) return false;
  return true;
}

SubmodularFn SubmodularFn::rank_of(const Matroid& m) {
  std::vector<Rat> vals(1 << m.n());
  for (int a = 0; a < (1 << m.n()); ++a) vals[a] = m.rank_of(a);
  return SubmodularFn(m.n(), std::move(vals));
}

bool SubmodularFn::in_base_polytope(const QVec& x) const {
  if ((int)x.size() != n) throw input_error("point arity mismatch");
  for (int a = 0; a < (1 << n); ++a) {
    Rat s = 0;
    for (int i = 0; i < n; ++i)
      if ((a >> i) & 1) s += x[i];
    if (a == (1 << n) - 1 ? s != v[a] : s > v[a]) return false;
  }
  return true;
}

bool SubmodularFn::in_independence_polytope(const QVec& x) const {
  if ((int)x.size() != n) throw input_error("point arity mismatch");
  for (int i = 0; i < n; ++i)
    if (x[i] < 0) return false;
  for (int a = 1; a < (1 << n); ++a) {
    Rat s = 0;
    for (int i = 0; i < n; ++i)
      if ((a >> i) & 1) s += x[i];
    if (s > v[a]) return false;
  }
  return true;
}

Polyhedron SubmodularFn::base_polytope() const {
  std::vector<AffineForm> forms;
  for (int a = 1; a < (1 << n); ++a)
    forms.push_back(AffineForm{mask_vector(n, a), v[a],
                               a == (1 << n) - 1 ? Sense::EQ : Sense::LE});
  return Polyhedron::from_hrep(n, std::move(forms));
}

Polyhedron SubmodularFn::independence_polytope() const {
  if (!is_monotone())
    throw input_error("independence polytope needs a monotone function");
  std::vector<AffineForm> forms;
  for (int a = 1; a < (1 << n); ++a)
    forms.push_back(AffineForm{mask_vector(n, a), v[a], Sense::LE});
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = -1;
    forms.push_back(AffineForm{std::move(e), Rat(0), Sense::LE});
  }
  return Polyhedron::from_hrep(n, std::move(forms));
}

SignedPermutation::SignedPermutation(std::vector<int> im) : images(std::move(im)) {
  int n = (int)images.size();
  std::vector<char> seen(n + 1, 0);
  for (int x : images) {
    int a = x < 0 ? -x : x;
    if (a < 1 || a > n || seen[a]) throw input_error("not a signed permutation");
    seen[a] = 1;
  }
}

Matroid schubert_matroid(const std::vector<int>& w, int smask) {
  int n = (int)w.size();
  std::vector<int> pos(n, -1);  // pos[element] = rank in w-order
  std::vector<char> seen(n, 0);
  for (int r = 0; r < n; ++r) {
    int e = w[r];
    if (e < 0 || e >= n || seen[e]) throw input_error("not a permutation");
    seen[e] = 1;
    pos[e] = r;
  }
  auto ranks = [&](int mask) {
    std::vector<int> rs;
    for (int i : bits_of(mask)) rs.push_back(pos[i]);
    std::sort(rs.begin(), rs.end());
    return rs;
  };
  std::vector<int> sr = ranks(smask);
  int k = (int)sr.size();
  std::vector<int> bases;
  for (int t = 0; t < (1 << n); ++t) {
    if (popcount(t) != k) continue;
    std::vector<int> tr = ranks(t);
    bool geq = true;
    for (int i = 0; i < k; ++i)
      if (tr[i] < sr[i]) {
        geq = false;
        break;
      }
    if (geq) bases.push_back(t);
  }
  return Matroid(n, std::move(bases));
}

bool type_b_gale_leq(int amask, int bmask) {
  std::vector<int> a = bits_of(amask), b = bits_of(bmask);
  if (a.size() > b.size()) return false;
  // suffix-aligned: compare the largest elements downward
  for (size_t i = 0; i < a.size(); ++i)
    if (a[a.size() - 1 - i] > b[b.size() - 1 - i]) return false;
  return true;
}

DeltaMatroid delta_schubert(const SignedPermutation& w, int smask) {
  int n = w.n();
  if (smask < 0 || smask >= (1 << n)) throw input_error("S outside ground set");
  // standard delta Schubert: down-set of S in the type-B Gale order
  std::vector<int> feas;
  for (int a = 0; a < (1 << n); ++a)
    if (type_b_gale_leq(a, smask)) feas.push_back(a);
  // apply w to the feasible polytope's 0/1 vertices: coordinate |w(i)| of
  // the image is x_i when w(i) > 0 and 1 - x_i when w(i) < 0
  std::vector<int> out;
  for (int f : feas) {
    int g = 0;
    for (int i = 0; i < n; ++i) {
      int im = w.images[i];
      int j = (im < 0 ? -im : im) - 1;
      int bit = (f >> i) & 1;
      if (im < 0) bit = 1 - bit;
      if (bit) g |= 1 << j;
    }
    out.push_back(g);
  }
  return DeltaMatroid(n, sorted_unique(std::move(out)));
}

Polyhedron base_polytope(const Matroid& m) {
  std::vector<QVec> pts;
  for (int b : m.bases()) pts.push_back(mask_vector(m.n(), b));
  return vertices_unchecked(m.n(), std::move(pts));
}

Polyhedron independence_polytope(const Matroid& m) {
  std::vector<QVec> pts;
  for (int s : m.independent_sets()) pts.push_back(mask_vector(m.n(), s));
  return vertices_unchecked(m.n(), std::move(pts));
}

Polyhedron feasible_polytope(const DeltaMatroid& d) {
  std::vector<QVec> pts;
  for (int s : d.feasible()) pts.push_back(mask_vector(d.n(), s));
  return vertices_unchecked(d.n(), std::move(pts));
}

namespace {

bool family_less(const std::vector<int>& a, const std::vector<int>& b) {
  int ra = a.empty() ? 0 : popcount(a[0]);
  int rb = b.empty() ? 0 : popcount(b[0]);
  if (ra != rb) return ra < rb;
  return a < b;
}

}  // namespace

std::vector<Matroid> enumerate_schubert(int n, SchubertFilter filter) {
  const Caps& caps = Caps::global();
  if (n < 1 || n > caps.max_ground) throw input_error("bad ground size");
  if (n > caps.max_n_a) throw cap_error("schubert enumeration exceeds cap");
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  std::vector<std::vector<int>> families;
  do {
    for (int s = 0; s < (1 << n); ++s) {
      Matroid m = schubert_matroid(w, s);
      if (filter != SchubertFilter::All && m.loops() != 0) continue;
      if (filter == SchubertFilter::LooplessAndColoopless && m.coloops() != 0)
        continue;
      families.push_back(m.bases());
    }
  } while (std::next_permutation(w.begin(), w.end()));
  std::sort(families.begin(), families.end(), family_less);
  families.erase(std::unique(families.begin(), families.end()), families.end());
  std::vector<Matroid> out;
  for (auto& f : families) out.push_back(Matroid(n, std::move(f)));
  return out;
}

std::vector<DeltaMatroid> enumerate_delta_schubert(int n, SchubertFilter filter) {
  const Caps& caps = Caps::global();
  if (n < 1 || n > caps.max_ground) throw input_error("bad ground size");
  if (n > caps.max_n_b) throw cap_error("delta schubert enumeration exceeds cap");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<std::vector<int>> families;
  do {
    for (int signs = 0; signs < (1 << n); ++signs) {
      std::vector<int> im(n);
      for (int i = 0; i < n; ++i)
        im[i] = ((signs >> i) & 1) ? -perm[i] : perm[i];
      SignedPermutation w(im);
      for (int s = 0; s < (1 << n); ++s) {
        DeltaMatroid d = delta_schubert(w, s);
        if (filter != SchubertFilter::All && d.loops() != 0) continue;
        if (filter == SchubertFilter::LooplessAndColoopless && d.coloops() != 0)
          continue;
        families.push_back(d.feasible());
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(families.begin(), families.end(), family_less);
  families.erase(std::unique(families.begin(), families.end()), families.end());
  std::vector<DeltaMatroid> out;
  for (auto& f : families) out.push_back(DeltaMatroid(n, std::move(f)));
  return out;
}

Rat exchange_capacity(const SubmodularFn& mu, const QVec& x, int i, int j) {
  if (i < 0 || j < 0 || i >= mu.n || j >= mu.n || i == j)
    throw input_error("bad exchange indices");
  if (!mu.in_base_polytope(x)) throw input_error("point outside base polytope");
  bool first = true;
  Rat best = 0;
  for (int a = 0; a < (1 << mu.n); ++a) {
    if (!((a >> i) & 1) || ((a >> j) & 1)) continue;
    Rat s = 0;
    for (int t = 0; t < mu.n; ++t)
      if ((a >> t) & 1) s += x[t];
    Rat val = mu.v[a] - s;
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

RetractPath greedy_retract(const SubmodularFn& mu, const QVec& x0) {
  if (!mu.in_base_polytope(x0)) throw input_error("point outside base polytope");
  RetractPath path;
  QVec x = x0;
  const int kMaxPasses = 200;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool moved = false;
    for (int i = 0; i < mu.n; ++i)
      for (int j = i + 1; j < mu.n; ++j) {
        Rat alpha = exchange_capacity(mu, x, i, j);
        RetractSegment seg;
        seg.from = x;
        seg.i = i;
        seg.j = j;
        seg.length = alpha;
        path.segments.push_back(std::move(seg));
        if (alpha != 0) {
          x[i] += alpha;
          x[j] -= alpha;
          moved = true;
        }
      }
    if (!moved) break;
    if (pass == kMaxPasses - 1)
      throw internal_error("greedy retract did not stabilize");
  }
  path.endpoint = x;
  return path;
}

Rat saturation(const SubmodularFn& mu, const QVec& x, int i) {
  if (i < 0 || i >= mu.n) throw input_error("bad saturation index");
  if (!mu.is_monotone()) throw input_error("saturation needs a monotone function");
  if (!mu.in_independence_polytope(x))
    throw input_error("point outside independence polytope");
  bool first = true;
  Rat best = 0;
  for (int a = 0; a < (1 << mu.n); ++a) {
    if (!((a >> i) & 1)) continue;
    Rat s = 0;
    for (int t = 0; t < mu.n; ++t)
      if ((a >> t) & 1) s += x[t];
    Rat val = mu.v[a] - s;
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

RetractPath ib_retract(const SubmodularFn& mu, const QVec& x0) {
  RetractPath path;
  QVec x = x0;
  for (int i = 0; i < mu.n; ++i) {
    Rat alpha = saturation(mu, x, i);
    RetractSegment seg;
    seg.from = x;
    seg.i = i;
    seg.j = -1;  // direction e_i
    seg.length = alpha;
    path.segments.push_back(std::move(seg));
    x[i] += alpha;
  }
  path.endpoint = x;
  return path;
}

}  // namespace polyext

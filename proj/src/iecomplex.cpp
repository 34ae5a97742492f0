#include "polyext/iecomplex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"

namespace polyext {

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

}  // namespace

long IndicatorExpr::evaluate(const QVec& x) const {
  long s = 0;
  for (const IndicatorTerm& t : terms)
    if (t.polytope.contains(x)) s += t.coeff;
  return s;
}

IndicatorExpr IndicatorExpr::combined() const {
  std::map<std::vector<QVec>, std::pair<long, const Polyhedron*>> acc;
  for (const IndicatorTerm& t : terms) {
    if (t.polytope.is_empty()) continue;
    if (!t.polytope.bounded())
      throw input_error("combining needs bounded terms");
    auto& slot = acc[t.polytope.vertices()];
    slot.first += t.coeff;
    slot.second = &t.polytope;
  }
  IndicatorExpr out;
  for (const auto& [key, slot] : acc)
    if (slot.first != 0) out.terms.push_back({slot.first, *slot.second});
  return out;
}

bool IEComplex::all_bounded() const {
  for (int x : alive)
    if (!labels[x].bounded()) return false;
  return true;
}

int IEComplex::min_rank() const {
  int r = poset.max_rank();
  for (int x : alive) r = std::min(r, poset.rank[x]);
  return r;
}

int IEComplex::max_rank() const {
  int r = 0;
  for (int x : alive) r = std::max(r, poset.rank[x]);
  return r;
}

IEComplex make_ie_complex(CWPoset poset, std::vector<Polyhedron> labels) {
  if ((int)labels.size() != poset.size)
    throw input_error("one label per poset element required");
  for (const Polyhedron& l : labels)
    if (l.ambient() != labels[0].ambient())
      throw input_error("labels must share an ambient space");
  poset.signs = incidence_signs(poset);

  IEComplex c;
  c.poset = std::move(poset);
  c.labels = std::move(labels);
  for (int x = 0; x < c.poset.size; ++x)
    if (!c.labels[x].is_empty()) c.alive.push_back(x);

  // monotone labels: nonempty below forces containment above, which makes
  // pruning empty labels safe
  for (const auto& [l, u] : c.poset.covers) {
    if (c.labels[l].is_empty()) continue;
    if (c.labels[u].is_empty() || !c.labels[l].subset_of(c.labels[u]))
      throw input_error("labels are not order preserving");
  }

  // d^2 = 0 componentwise over the alive elements
  std::vector<std::vector<int>> up(c.poset.size);
  for (const auto& [l, u] : c.poset.covers) up[l].push_back(u);
  for (int x : c.alive) {
    std::map<int, long> acc;
    for (int z : up[x])
      for (int y : up[z])
        acc[y] += c.poset.signs.at({x, z}) * c.poset.signs.at({z, y});
    for (const auto& [y, s] : acc)
      if (s != 0) throw internal_error("differential does not square to zero");
  }
  return c;
}

namespace {

struct StalkContext {
  const IEComplex& c;
  std::vector<std::vector<std::uint64_t>> reach;

  explicit StalkContext(const IEComplex& cc) : c(cc), reach(reachability(cc.poset)) {}

  bool leq(int x, int y) const { return (reach[x][y / 64] >> (y % 64)) & 1; }

  StalkReport at(const std::vector<long>& m) const {
    if ((int)m.size() != c.labels[0].ambient())
      throw input_error("probe arity mismatch");
    QVec mq = qvec_of(m);
    std::vector<int> im;
    for (int x : c.alive)
      if (c.labels[x].contains(mq)) im.push_back(x);

    StalkReport r;
    r.m = m;
    r.interval_criterion = interval_ok(im);
    r.exact = ranks_exact(im);
    if (r.interval_criterion && !r.exact)
      throw internal_error("interval stalk fails exactness; poset is not CW");
    return r;
  }

  bool interval_ok(const std::vector<int>& im) const {
    if (im.empty()) return true;
    if (im.size() == 1) return false;
    int lo = -1, hi = -1;
    for (int x : im) {
      bool has_below = false, has_above = false;
      for (int z : im) {
        if (z == x) continue;
        has_below |= leq(z, x);
        has_above |= leq(x, z);
      }
      if (!has_below) {
        if (lo >= 0) return false;
        lo = x;
      }
      if (!has_above) {
        if (hi >= 0) return false;
        hi = x;
      }
    }
    // the whole order interval [lo, hi] must carry the stalk
    std::set<int> in(im.begin(), im.end());
    for (int z = 0; z < c.poset.size; ++z)
      if (leq(lo, z) && leq(z, hi) && !in.count(z)) return false;
    return true;
  }

  bool ranks_exact(const std::vector<int>& im) const {
    if (im.empty()) return true;
    int rmin = c.poset.rank[im[0]], rmax = rmin;
    for (int x : im) {
      rmin = std::min(rmin, c.poset.rank[x]);
      rmax = std::max(rmax, c.poset.rank[x]);
    }
    std::vector<std::vector<int>> level(rmax - rmin + 1);
    for (int x : im) level[c.poset.rank[x] - rmin].push_back(x);

    std::vector<long> dr(level.size() + 1, 0);  // dr[i]: rank of level i-1 -> i
    for (size_t i = 1; i < level.size(); ++i) {
      const auto& lo = level[i - 1];
      const auto& hi = level[i];
      if (lo.empty() || hi.empty()) continue;
      QMat mat(hi.size(), QVec(lo.size(), Rat(0)));
      for (size_t rr = 0; rr < hi.size(); ++rr)
        for (size_t cc = 0; cc < lo.size(); ++cc) {
          auto it = c.poset.signs.find({lo[cc], hi[rr]});
          if (it != c.poset.signs.end()) mat[rr][cc] = Rat(it->second);
        }
      dr[i] = (long)mat_rank(mat);
    }
    for (size_t i = 0; i < level.size(); ++i)
      if ((long)level[i].size() != dr[i] + dr[i + 1]) return false;
    return true;
  }
};

ExactnessReport run_stalks(const IEComplex& c,
                           const std::set<std::vector<long>>& probes) {
  StalkContext ctx(c);
  ExactnessReport rep;
  for (const auto& m : probes) {
    StalkReport r = ctx.at(m);
    rep.all_exact = rep.all_exact && r.exact;
    rep.all_criterion = rep.all_criterion && r.interval_criterion;
    rep.stalks.push_back(std::move(r));
  }
  return rep;
}

}  // namespace

ExactnessReport check_exactness_tstalks(const IEComplex& c) {
  std::set<std::vector<long>> probes;
  for (int x : c.alive) {
    if (!c.labels[x].bounded())
      throw input_error("unbounded labels need explicit probe points");
    for (const QVec& v : c.labels[x].lattice_points()) {
      probes.insert(long_of(v));
      if (probes.size() > Caps::global().max_stalk_points)
        throw cap_error("stalk point budget exceeded");
    }
  }
  return run_stalks(c, probes);
}

ExactnessReport check_exactness_tstalks(
    const IEComplex& c, const std::vector<std::vector<long>>& probes) {
  std::set<std::vector<long>> uniq(probes.begin(), probes.end());
  if (uniq.size() > Caps::global().max_stalk_points)
    throw cap_error("stalk point budget exceeded");
  return run_stalks(c, uniq);
}

namespace {

// edge directions of x must appear in the sign-normalized sorted list
bool edges_admissible(const Polyhedron& x, const QMat& dirs) {
  for (const QVec& d : x.edge_directions())
    if (!std::binary_search(dirs.begin(), dirs.end(), d, lex_less))
      return false;
  return true;
}

}  // namespace

IEComplex subdivision_koszul(const std::vector<Polyhedron>& pieces,
                             const Polyhedron& p) {
  if (pieces.empty()) throw input_error("subdivision needs at least one piece");
  if (pieces.size() > Caps::global().max_pieces)
    throw cap_error("piece budget exceeded");
  if (p.is_empty() || !p.bounded())
    throw input_error("subdivision target must be a nonempty polytope");
  const int n = p.ambient();
  for (const Polyhedron& piece : pieces) {
    if (piece.ambient() != n) throw input_error("ambient mismatch");
    if (piece.is_empty() || !piece.bounded())
      throw input_error("pieces must be nonempty polytopes");
    if (!piece.subset_of(p)) throw input_error("piece sticks out of the target");
  }

  // cover certificate at denominator 2
  Polyhedron doubled = p.minkowski_sum(p);
  for (const QVec& w : doubled.lattice_points()) {
    QVec x = w;
    for (Rat& c : x) c /= 2;
    bool covered = false;
    for (const Polyhedron& piece : pieces)
      if (piece.contains(x)) {
        covered = true;
        break;
      }
    if (!covered)
      throw input_error("pieces do not cover the target at sampling scale");
  }

  // pairwise intersections stay in the deformation class of the inputs
  QMat dirs = p.edge_directions();
  for (const Polyhedron& piece : pieces)
    for (const QVec& d : piece.edge_directions()) dirs.push_back(d);
  std::sort(dirs.begin(), dirs.end(), lex_less);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  const int k = (int)pieces.size();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Polyhedron meet = pieces[i].intersect(pieces[j]);
      if (!meet.is_empty() && !edges_admissible(meet, dirs))
        throw input_error(
            "piece intersection leaves the ambient deformation class");
    }

  CWPoset poset = CWPoset::boolean_lattice(k);
  const int full = (1 << k) - 1;
  std::vector<Polyhedron> labels(poset.size, Polyhedron::empty(n));
  labels[full] = p;
  for (int s = full - 1; s >= 0; --s) {
    int j = 0;
    while ((s >> j) & 1) ++j;  // lowest element outside S
    labels[s] = labels[s | (1 << j)].intersect(pieces[j]);
  }
  IEComplex c = make_ie_complex(std::move(poset), std::move(labels));
  if (!check_exactness_tstalks(c).all_exact)
    throw input_error("pieces do not form a weak subdivision");
  return c;
}

IEComplex brianchon_gram(const Polyhedron& p, const FanFamily& fan) {
  if (!fan.in_deformation_cone(p))
    throw input_error("polytope is not in the family deformation cone");
  auto fanp = fan.fan();
  const Fan& f = *fanp;
  const int ncones = (int)f.cones.size();
  CWPoset poset = CWPoset::fan_face_poset(fan).opposite();

  std::vector<Polyhedron> labels;
  labels.reserve(ncones + 1);
  const int n = p.ambient();
  for (int i = 0; i < ncones; ++i) {
    const Cone& cone = f.cones[i];
    QVec dir(n, Rat(0));
    for (const QVec& u : cone.rays) dir = vadd(dir, u);
    QVec a = p.argmax_vertex(dir);
    std::vector<AffineForm> forms;
    for (const QVec& u : cone.rays)
      forms.push_back({u, dot(u, a), Sense::LE});
    for (const QVec& w : cone.lineality)
      forms.push_back({w, dot(w, a), Sense::EQ});
    labels.push_back(Polyhedron::from_hrep(n, std::move(forms)));
  }
  labels.push_back(p);  // the old top is the new bottom

  IEComplex c = make_ie_complex(std::move(poset), std::move(labels));
  c.family = std::make_shared<const FanFamily>(fan);
  return c;
}

IEComplex truncated_bg(const Polyhedron& p, const Polyhedron& qtrunc,
                       const FanFamily& fan) {
  if (qtrunc.ambient() != p.ambient()) throw input_error("ambient mismatch");
  if (!p.subset_of(qtrunc))
    throw input_error("truncating polytope must contain P");
  return truncate_complex(brianchon_gram(p, fan), qtrunc);
}

IndicatorExpr derksen_fink_decompose(const Matroid& m) {
  const int n = m.n();
  const int k = m.rank();
  std::vector<int> uniform_bases;
  for (int s = 0; s < (1 << n); ++s)
    if (std::popcount((unsigned)s) == k) uniform_bases.push_back(s);
  Polyhedron delta =
      SubmodularFn::rank_of(Matroid(n, uniform_bases)).base_polytope();
  Polyhedron bp = SubmodularFn::rank_of(m).base_polytope();

  IEComplex tbg = truncated_bg(bp, delta, FanFamily::braid_a(n));
  IndicatorExpr expr;
  for (int x : tbg.alive) {
    if (x == tbg.poset.bottom) continue;
    int r = tbg.poset.rank[x];
    expr.terms.push_back({r % 2 == 1 ? 1L : -1L, tbg.labels[x]});
  }
  expr = expr.combined();

  for (const QVec& pt : delta.lattice_points()) {
    long want = bp.contains(pt) ? 1 : 0;
    if (expr.evaluate(pt) != want)
      throw internal_error("decomposition fails the pointwise identity");
  }
  return expr;
}

namespace {

// verified exactness transfer: if the input was exact (or is a BG complex,
// which is exact by construction), the output must be exact too
void verify_preserved(const IEComplex& in, const IEComplex& out,
                      const char* what) {
  bool exact_in;
  if (in.all_bounded())
    exact_in = check_exactness_tstalks(in).all_exact;
  else if (in.family)
    exact_in = true;
  else
    return;
  if (!out.all_bounded()) return;
  if (exact_in && !check_exactness_tstalks(out).all_exact)
    throw internal_error(what);
}

}  // namespace

IEComplex tensor_translate(const IEComplex& c, const Polyhedron& by,
                           TensorDirection dir) {
  if (by.ambient() != c.labels[0].ambient())
    throw input_error("ambient mismatch");
  if (by.is_empty() || !by.bounded())
    throw input_error("tensor needs a nonempty bounded polytope");
  std::vector<Polyhedron> labels;
  labels.reserve(c.labels.size());
  for (const Polyhedron& l : c.labels) {
    if (l.is_empty()) {
      labels.push_back(l);
      continue;
    }
    if (!l.bounded())
      throw input_error("tensor by a polytope needs bounded labels");
    if (dir == TensorDirection::Add) {
      labels.push_back(l.minkowski_sum(by));
    } else {
      std::vector<AffineForm> forms = l.facet_forms_expanded();
      for (AffineForm& g : forms) g.b -= by.support(g.a);
      Polyhedron diff = Polyhedron::from_hrep(l.ambient(), std::move(forms));
      if (diff.is_empty() || !diff.minkowski_sum(by).subset_of(l) ||
          !l.subset_of(diff.minkowski_sum(by)))
        throw input_error("label has no such Minkowski summand");
      labels.push_back(std::move(diff));
    }
  }
  IEComplex out = make_ie_complex(c.poset, std::move(labels));
  // the family attachment survives only if the summand keeps every label
  // inside the deformation class; otherwise exactness is re-verified directly
  out.family = c.family;
  if (c.family) {
    const QMat& adm = c.family->admissible_edge_directions();
    for (const QVec& d : by.edge_directions())
      if (!std::binary_search(adm.begin(), adm.end(), d, lex_less)) {
        out.family.reset();
        break;
      }
  }
  verify_preserved(c, out, "tensoring lost exactness");
  return out;
}

IEComplex tensor_translate(const IEComplex& c, const std::vector<long>& by,
                           TensorDirection dir) {
  if ((int)by.size() != c.labels[0].ambient())
    throw input_error("ambient mismatch");
  QVec t = qvec_of(by);
  if (dir == TensorDirection::Subtract)
    for (Rat& x : t) x = -x;
  std::vector<Polyhedron> labels;
  labels.reserve(c.labels.size());
  for (const Polyhedron& l : c.labels)
    labels.push_back(l.is_empty() ? l : l.translate(t));
  IEComplex out = make_ie_complex(c.poset, std::move(labels));
  out.family = c.family;
  verify_preserved(c, out, "translation lost exactness");
  return out;
}

IEComplex truncate_complex(const IEComplex& c, const Polyhedron& q) {
  if (q.ambient() != c.labels[0].ambient())
    throw input_error("ambient mismatch");
  std::vector<Polyhedron> labels;
  labels.reserve(c.labels.size());
  for (const Polyhedron& l : c.labels)
    labels.push_back(l.is_empty() ? l : l.intersect(q));
  if (c.family) {
    const QMat& dirs = c.family->admissible_edge_directions();
    for (const Polyhedron& l : labels)
      if (!l.is_empty() && l.bounded() && !edges_admissible(l, dirs))
        throw input_error("truncation leaves the deformation cone");
  }
  IEComplex out = make_ie_complex(c.poset, std::move(labels));
  out.family = c.family;
  verify_preserved(c, out, "truncation lost exactness");
  return out;
}

IndicatorExpr euler_indicator(const IEComplex& c) {
  IndicatorExpr expr;
  for (int x : c.alive)
    expr.terms.push_back(
        {c.poset.rank[x] % 2 == 0 ? 1L : -1L, c.labels[x]});
  return expr;
}

}  // namespace polyext

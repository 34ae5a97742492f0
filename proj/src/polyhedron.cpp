#include "polyext/polyhedron.hpp"

#include <algorithm>
#include <map>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"

namespace polyext {

namespace {

// Scales (a | b) to coprime integers, keeping the sense direction.
AffineForm normalize_form(AffineForm f) {
  QVec all = f.a;
  all.push_back(f.b);
  QVec prim = primitive(all);
  for (size_t i = 0; i < f.a.size(); ++i) f.a[i] = prim[i];
  f.b = prim.back();
  return f;
}

bool form_less(const AffineForm& x, const AffineForm& y) {
  if (int c = lex_cmp(x.a, y.a); c != 0) return c < 0;
  return x.b < y.b;
}

bool form_eq(const AffineForm& x, const AffineForm& y) {
  return x.a == y.a && x.b == y.b && x.sense == y.sense;
}

// Solves w . t_i = c for all rows t_i; returns primitive (w | -c) spans.
QMat affine_normals(const QMat& pts) {
  QMat sys;
  for (const QVec& t : pts) {
    QVec row = t;
    row.push_back(Rat(-1));
    sys.push_back(row);
  }
  return nullspace(sys);
}

}  // namespace

QVec AffineChart::to_chart(const QVec& x) const {
  QVec shifted = vsub(x, x0);
  QVec t(dim);
  for (int i = 0; i < dim; ++i) t[i] = dot(gram[i], shifted);
  return t;
}

QVec AffineChart::to_ambient(const QVec& t) const {
  QVec x = x0;
  for (int i = 0; i < dim; ++i) x = vadd(x, vscale(t[i], basis[i]));
  return x;
}

Polyhedron Polyhedron::empty(int ambient) {
  Polyhedron p;
  p.ambient_ = ambient;
  return p;
}

Polyhedron Polyhedron::from_hrep(int ambient, std::vector<AffineForm> forms) {
  if (ambient < 0) throw input_error("negative ambient dimension");
  for (const AffineForm& f : forms) {
    if ((int)f.a.size() != ambient) throw input_error("form arity mismatch");
    if (f.sense == Sense::LT)
      throw input_error("strict inequalities cannot define a polyhedron");
  }
  Polyhedron p;
  p.ambient_ = ambient;
  p.init_from_hrep(std::move(forms));
  return p;
}

Polyhedron Polyhedron::from_vertices(int ambient, std::vector<QVec> pts) {
  if (ambient < 0) throw input_error("negative ambient dimension");
  for (const QVec& v : pts)
    if ((int)v.size() != ambient) throw input_error("vertex arity mismatch");
  Polyhedron p;
  p.ambient_ = ambient;
  p.init_from_vertices(std::move(pts), false);
  return p;
}

Polyhedron vertices_unchecked(int ambient, std::vector<QVec> pts) {
  Polyhedron p;
  p.ambient_ = ambient;
  p.init_from_vertices(std::move(pts), true);
  return p;
}

Polyhedron Polyhedron::point(const QVec& p) {
  return from_vertices((int)p.size(), {p});
}

Polyhedron Polyhedron::box(const QVec& lo, const QVec& hi) {
  int n = (int)lo.size();
  if (hi.size() != lo.size()) throw input_error("box corner arity mismatch");
  std::vector<QVec> corners{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<QVec> next;
    for (const QVec& c : corners) {
      QVec a = c, b = c;
      a.push_back(lo[i]);
      next.push_back(a);
      if (hi[i] != lo[i]) {
        b.push_back(hi[i]);
        next.push_back(b);
      }
    }
    corners = std::move(next);
  }
  return from_vertices(n, corners);
}

Polyhedron Polyhedron::unit_cube(int n) {
  return box(QVec(n, Rat(0)), QVec(n, Rat(1)));
}

void Polyhedron::init_from_hrep(std::vector<AffineForm> forms) {
  const int n = ambient_;
  std::vector<AffineForm> les, eqs;
  for (AffineForm& f : forms) {
    AffineForm g = normalize_form(std::move(f));
    if (is_zero(g.a)) {
      bool ok = (g.sense == Sense::EQ) ? g.b == 0 : g.b >= 0;
      if (!ok) return;  // constant contradiction, stays empty
      continue;
    }
    (g.sense == Sense::EQ ? eqs : les).push_back(std::move(g));
  }
  std::sort(les.begin(), les.end(), form_less);
  les.erase(std::unique(les.begin(), les.end(), form_eq), les.end());

  std::vector<AffineForm> all = les;
  for (const AffineForm& e : eqs) all.push_back(e);
  if (!lp_feasible(n, all)) return;

  // Implicit equalities: an inequality tight on the whole feasible set.
  for (const AffineForm& f : les) {
    QVec negc = vscale(Rat(-1), f.a);
    LPResult r = lp_optimize(n, negc, all);
    if (r.status == LPStatus::Feasible && f.b + r.value == 0)
      eqs.push_back(AffineForm{f.a, f.b, Sense::EQ});
  }

  // Affine hull chart from the equality system.
  QMat eqmat;
  QVec eqrhs;
  for (const AffineForm& e : eqs) {
    eqmat.push_back(e.a);
    eqrhs.push_back(e.b);
  }
  QVec x0;
  QMat dirs;  // rows
  if (eqmat.empty()) {
    QVec w = lp_feasible(n, all).value();
    x0 = w;
    for (int i = 0; i < n; ++i) {
      QVec e(n, Rat(0));
      e[i] = 1;
      dirs.push_back(e);
    }
  } else {
    x0 = solve_linear(eqmat, eqrhs).value();
    QMat ns = nullspace(eqmat);  // columns... returned as rows of basis
    dirs = ns;
  }
  const int d = (int)dirs.size();

  // Reduced system in chart coordinates t: (a . B_k) t <= b - a . x0.
  QMat A;
  QVec rhs;
  for (const AffineForm& f : les) {
    QVec row(d);
    for (int k = 0; k < d; ++k) row[k] = dot(f.a, dirs[k]);
    Rat r = f.b - dot(f.a, x0);
    if (is_zero(row)) continue;  // constant after restriction, feasible
    A.push_back(row);
    rhs.push_back(r);
  }

  // Boundedness: each chart coordinate has a bounded max and min.
  bool bounded = true;
  {
    std::vector<AffineForm> tf;
    for (size_t i = 0; i < A.size(); ++i)
      tf.push_back(AffineForm{A[i], rhs[i], Sense::LE});
    for (int k = 0; k < d && bounded; ++k) {
      for (int s : {1, -1}) {
        QVec c(d, Rat(0));
        c[k] = s;
        if (lp_optimize(d, c, tf).status != LPStatus::Feasible) {
          bounded = false;
          break;
        }
      }
    }
  }

  if (!bounded) {
    empty_ = false;
    bounded_ = false;
    // Irredundant H-rep: drop each inequality implied by the rest.
    std::vector<AffineForm> kept = les;
    for (size_t i = 0; i < kept.size();) {
      std::vector<AffineForm> test;
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) test.push_back(kept[j]);
      for (const AffineForm& e : eqs) test.push_back(e);
      test.push_back(AffineForm{vscale(Rat(-1), kept[i].a), -kept[i].b, Sense::LT});
      if (lp_feasible(n, test))
        ++i;
      else
        kept.erase(kept.begin() + i);
    }
    std::sort(eqs.begin(), eqs.end(), form_less);
    eqs.erase(std::unique(eqs.begin(), eqs.end(), form_eq), eqs.end());
    facets_ = std::move(kept);
    eqs_ = std::move(eqs);
    // Affine dimension of an unbounded polyhedron: chart dim minus nothing;
    // lineality and rays keep the hull full inside the chart.
    dim_ = d;
    // Re-derive implicit-equality-free dimension: chart already quotiented.
    return;
  }

  // Vertex enumeration: basic solutions of d-subsets of the reduced rows.
  const size_t m = A.size();
  const Caps& caps = Caps::global();
  std::vector<QVec> verts;
  if (d == 0) {
    verts.push_back(x0);
  } else {
    double work = 1.0;
    for (int i = 0; i < d; ++i) work *= (double)(m - i) / (i + 1);
    if (work > (double)caps.max_facet_subsets)
      throw cap_error("facet subset enumeration too large");
    std::vector<size_t> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    auto advance = [&]() -> bool {
      int i = d - 1;
      while (i >= 0 && idx[i] == m - d + i) --i;
      if (i < 0) return false;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    };
    if (m >= (size_t)d) {
      do {
        QMat S;
        QVec sb;
        for (int i = 0; i < d; ++i) {
          S.push_back(A[idx[i]]);
          sb.push_back(rhs[idx[i]]);
        }
        auto t = solve_linear(S, sb);
        if (!t || (int)mat_rank(S) != d) continue;
        bool ok = true;
        for (size_t r = 0; r < m && ok; ++r) ok = dot(A[r], *t) <= rhs[r];
        if (!ok) continue;
        QVec x = x0;
        for (int k = 0; k < d; ++k) x = vadd(x, vscale((*t)[k], dirs[k]));
        verts.push_back(x);
      } while (advance());
    }
    std::sort(verts.begin(), verts.end(), lex_less);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.empty()) throw internal_error("bounded nonempty without vertices");
    if (verts.size() > (size_t)caps.max_vertices)
      throw cap_error("vertex count exceeds cap");
  }
  init_from_vertices(std::move(verts), true);
}

void Polyhedron::init_from_vertices(std::vector<QVec> pts, bool known_extreme) {
  const int n = ambient_;
  const Caps& caps = Caps::global();
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return;
  if (pts.size() > (size_t)caps.max_vertices)
    throw cap_error("vertex count exceeds cap");

  empty_ = false;
  bounded_ = true;

  // Affine hull basis: echelon rows of the difference matrix. Copy: the
  // extreme point filter below may reallocate pts.
  const QVec p0 = pts[0];
  QMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], p0));
  QMat basis;
  {
    QMat e = diffs;
    echelon(e);
    for (const QVec& row : e)
      if (!is_zero(row)) basis.push_back(row);
  }
  const int d = (int)basis.size();
  dim_ = d;

  // Equalities: nullspace normals of the direction space, through p0.
  eqs_.clear();
  {
    QMat normals = basis.empty() ? QMat{} : nullspace(basis);
    if (basis.empty()) {
      for (int i = 0; i < n; ++i) {
        QVec e(n, Rat(0));
        e[i] = 1;
        normals.push_back(e);
      }
    }
    for (const QVec& c : normals)
      eqs_.push_back(normalize_form(AffineForm{c, dot(c, p0), Sense::EQ}));
    std::sort(eqs_.begin(), eqs_.end(), form_less);
  }

  // Gram left inverse rows: t = G (x - p0).
  QMat gram;
  if (d > 0) {
    QMat gmat(d, QVec(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gmat[i][j] = dot(basis[i], basis[j]);
    for (int i = 0; i < d; ++i) {
      QVec e(d, Rat(0));
      e[i] = 1;
      QVec y = solve_linear(gmat, e).value();
      QVec row(n, Rat(0));
      for (int j = 0; j < d; ++j) row = vadd(row, vscale(y[j], basis[j]));
      gram.push_back(row);
    }
  }
  auto to_chart = [&](const QVec& x) {
    QVec sh = vsub(x, p0);
    QVec t(d);
    for (int i = 0; i < d; ++i) t[i] = dot(gram[i], sh);
    return t;
  };

  QMat T;
  for (const QVec& p : pts) T.push_back(to_chart(p));

  // Extreme point filter via LP: p_j in conv(others)?
  if (!known_extreme && pts.size() > 1) {
    std::vector<bool> keep(pts.size(), true);
    for (size_t j = 0; j < pts.size(); ++j) {
      size_t k = pts.size() - 1;  // lambda variables for the others
      std::vector<AffineForm> forms;
      // sum lambda = 1
      QVec ones(k, Rat(1));
      forms.push_back(AffineForm{ones, Rat(1), Sense::EQ});
      for (size_t i = 0; i < k; ++i) {
        QVec e(k, Rat(0));
        e[i] = -1;
        forms.push_back(AffineForm{e, Rat(0), Sense::LE});  // lambda_i >= 0
      }
      for (int c = 0; c < d; ++c) {
        QVec row(k);
        size_t w = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
          if (i == j) continue;
          row[w++] = T[i][c];
        }
        forms.push_back(AffineForm{row, T[j][c], Sense::EQ});
      }
      if (lp_feasible((int)k, forms)) keep[j] = false;
    }
    std::vector<QVec> kept;
    QMat keptT;
    for (size_t j = 0; j < pts.size(); ++j)
      if (keep[j]) {
        kept.push_back(pts[j]);
        keptT.push_back(T[j]);
      }
    pts = std::move(kept);
    T = std::move(keptT);
  }
  verts_ = pts;

  // Facets in chart coordinates from d-subsets of vertices.
  facets_.clear();
  if (d >= 1) {
    const size_t V = verts_.size();
    double work = 1.0;
    for (int i = 0; i < d; ++i) work *= (double)(V - i) / (i + 1);
    if (work * (double)V > (double)caps.max_facet_subsets)
      throw cap_error("facet enumeration too large");
    std::vector<size_t> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    auto advance = [&]() -> bool {
      int i = d - 1;
      while (i >= 0 && idx[i] == V - d + i) --i;
      if (i < 0) return false;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    };
    std::vector<AffineForm> chart_facets;
    do {
      QMat sub;
      for (int i = 0; i < d; ++i) sub.push_back(T[idx[i]]);
      QMat wc = affine_normals(sub);  // (w | c) with w.t = c on sub
      if (wc.size() != 1) continue;
      QVec w(wc[0].begin(), wc[0].end() - 1);
      Rat c = wc[0].back();
      if (is_zero(w)) continue;
      int sgn = 0;
      bool facet = true;
      for (size_t i = 0; i < V && facet; ++i) {
        Rat s = dot(w, T[i]) - c;
        if (s == 0) continue;
        int cur = s > 0 ? 1 : -1;
        if (sgn == 0)
          sgn = cur;
        else if (sgn != cur)
          facet = false;
      }
      if (!facet) continue;
      if (sgn == 0) continue;  // all vertices on the hyperplane: d-subset spans hull
      if (sgn > 0) {
        w = vscale(Rat(-1), w);
        c = -c;
      }
      chart_facets.push_back(normalize_form(AffineForm{w, c, Sense::LE}));
    } while (advance());
    std::sort(chart_facets.begin(), chart_facets.end(), form_less);
    chart_facets.erase(
        std::unique(chart_facets.begin(), chart_facets.end(), form_eq),
        chart_facets.end());
    // Map back to ambient: (w . G)(x - p0) <= c.
    for (const AffineForm& f : chart_facets) {
      QVec a(n, Rat(0));
      for (int i = 0; i < d; ++i) a = vadd(a, vscale(f.a[i], gram[i]));
      Rat b = f.b + dot(a, p0);
      facets_.push_back(normalize_form(AffineForm{a, b, Sense::LE}));
    }
    std::sort(facets_.begin(), facets_.end(), form_less);
  }
}

const std::vector<QVec>& Polyhedron::vertices() const {
  if (empty_) throw input_error("empty polyhedron has no vertices");
  if (!bounded_) throw input_error("unbounded polyhedron has no vertex list");
  return verts_;
}

std::vector<AffineForm> Polyhedron::hrep() const {
  if (empty_) {
    // 0 <= -1 in ambient coordinates
    QVec z(ambient_, Rat(0));
    return {AffineForm{z, Rat(-1), Sense::LE}};
  }
  std::vector<AffineForm> out = facets_;
  for (const AffineForm& e : eqs_) out.push_back(e);
  return out;
}

std::vector<AffineForm> Polyhedron::facet_forms_expanded() const {
  std::vector<AffineForm> out = facets_;
  for (const AffineForm& e : eqs_) {
    out.push_back(AffineForm{e.a, e.b, Sense::LE});
    out.push_back(AffineForm{vscale(Rat(-1), e.a), -e.b, Sense::LE});
  }
  return out;
}

bool Polyhedron::contains(const QVec& p) const {
  if (empty_) return false;
  for (const AffineForm& e : eqs_)
    if (dot(e.a, p) != e.b) return false;
  for (const AffineForm& f : facets_)
    if (dot(f.a, p) > f.b) return false;
  return true;
}

bool Polyhedron::contains_strictly(const QVec& p) const {
  if (empty_) return false;
  for (const AffineForm& e : eqs_)
    if (dot(e.a, p) != e.b) return false;
  for (const AffineForm& f : facets_)
    if (dot(f.a, p) >= f.b) return false;
  return true;
}

Polyhedron Polyhedron::translate(const QVec& m) const {
  if ((int)m.size() != ambient_) throw input_error("translate arity mismatch");
  Polyhedron p = *this;
  for (AffineForm& f : p.facets_) f.b += dot(f.a, m);
  for (AffineForm& e : p.eqs_) e.b += dot(e.a, m);
  for (QVec& v : p.verts_) v = vadd(v, m);
  return p;
}

Polyhedron Polyhedron::negate() const {
  Polyhedron p = *this;
  for (AffineForm& f : p.facets_) f.a = vscale(Rat(-1), f.a);
  for (AffineForm& e : p.eqs_) e.a = vscale(Rat(-1), e.a);
  std::sort(p.facets_.begin(), p.facets_.end(), form_less);
  std::sort(p.eqs_.begin(), p.eqs_.end(), form_less);
  for (QVec& v : p.verts_) v = vscale(Rat(-1), v);
  std::sort(p.verts_.begin(), p.verts_.end(), lex_less);
  return p;
}

Polyhedron Polyhedron::intersect(const Polyhedron& o) const {
  if (o.ambient() != ambient_) throw input_error("ambient mismatch");
  if (empty_ || o.empty_) return Polyhedron::empty(ambient_);
  std::vector<AffineForm> forms = hrep();
  for (const AffineForm& f : o.hrep()) forms.push_back(f);
  return from_hrep(ambient_, std::move(forms));
}

Polyhedron Polyhedron::minkowski_sum(const Polyhedron& o) const {
  if (o.ambient() != ambient_) throw input_error("ambient mismatch");
  if (empty_ || o.empty_) return Polyhedron::empty(ambient_);
  if (!bounded_ || !o.bounded_)
    throw input_error("minkowski_sum requires bounded summands");
  if (verts_.size() * o.verts_.size() > 65536)
    throw cap_error("minkowski sum candidate count too large");
  std::vector<QVec> cands;
  for (const QVec& v : verts_)
    for (const QVec& w : o.verts_) cands.push_back(vadd(v, w));
  return from_vertices(ambient_, std::move(cands));
}

void Polyhedron::lattice_box(std::vector<Int>& lo, std::vector<Int>& hi) const {
  if (empty_ || !bounded_) throw input_error("lattice_box needs bounded nonempty");
  lo.assign(ambient_, Int(0));
  hi.assign(ambient_, Int(0));
  for (int i = 0; i < ambient_; ++i) {
    Rat mn = verts_[0][i], mx = verts_[0][i];
    for (const QVec& v : verts_) {
      if (v[i] < mn) mn = v[i];
      if (v[i] > mx) mx = v[i];
    }
    lo[i] = rat_ceil(mn);
    hi[i] = rat_floor(mx);
  }
}

std::vector<QVec> Polyhedron::lattice_points(bool interior) const {
  if (empty_) return {};
  if (!bounded_) throw input_error("lattice_points requires bounded");
  const Caps& caps = Caps::global();
  std::vector<Int> lo, hi;
  lattice_box(lo, hi);
  double cells = 1.0;
  for (int i = 0; i < ambient_; ++i) {
    if (hi[i] < lo[i]) return {};
    cells *= (double)(hi[i] - lo[i] + 1);
    if (cells > (double)caps.max_lattice_scan)
      throw cap_error("lattice scan too large");
  }
  std::vector<QVec> out;
  QVec cur(ambient_);
  std::vector<Int> c = lo;
  if (ambient_ == 0) {
    if (interior ? contains_strictly({}) : contains({})) out.push_back({});
    return out;
  }
  for (;;) {
    for (int i = 0; i < ambient_; ++i) cur[i] = Rat(c[i]);
    if (interior ? contains_strictly(cur) : contains(cur)) out.push_back(cur);
    int i = ambient_ - 1;
    while (i >= 0 && c[i] == hi[i]) {
      c[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

long Polyhedron::lattice_count(bool interior) const {
  return (long)lattice_points(interior).size();
}

bool Polyhedron::is_lattice_polytope() const {
  if (empty_ || !bounded_) return false;
  for (const QVec& v : verts_)
    for (const Rat& x : v)
      if (!rat_is_integer(x)) return false;
  return true;
}

QVec Polyhedron::lexmin_vertex() const { return vertices().front(); }

Polyhedron Polyhedron::canonical_form() const {
  return translate(vscale(Rat(-1), lexmin_vertex()));
}

std::vector<QVec> Polyhedron::canonical_vertices() const {
  QVec m = vscale(Rat(-1), lexmin_vertex());
  std::vector<QVec> out;
  for (const QVec& v : verts_) out.push_back(vadd(v, m));
  return out;  // verts_ sorted, shift preserves lex order
}

std::optional<QVec> Polyhedron::translation_to(const Polyhedron& o) const {
  if (empty_ || o.empty_ || !bounded_ || !o.bounded_) return std::nullopt;
  if (ambient_ != o.ambient_) return std::nullopt;
  if (verts_.size() != o.verts_.size()) return std::nullopt;
  QVec m = vsub(o.verts_.front(), verts_.front());
  for (size_t i = 0; i < verts_.size(); ++i)
    if (vadd(verts_[i], m) != o.verts_[i]) return std::nullopt;
  return m;
}

bool Polyhedron::translate_equal(const Polyhedron& o) const {
  return translation_to(o).has_value();
}

std::vector<QVec> Polyhedron::edge_directions() const {
  if (empty_ || !bounded_) throw input_error("edge_directions requires polytope");
  std::vector<QVec> dirs;
  const size_t V = verts_.size();
  const int n = ambient_;
  for (size_t i = 0; i < V; ++i) {
    for (size_t j = i + 1; j < V; ++j) {
      QMat rows;
      for (const AffineForm& e : eqs_) rows.push_back(e.a);
      for (const AffineForm& f : facets_)
        if (dot(f.a, verts_[i]) == f.b && dot(f.a, verts_[j]) == f.b)
          rows.push_back(f.a);
      if ((int)mat_rank(rows) == n - 1)
        dirs.push_back(primitive_signed(vsub(verts_[j], verts_[i])));
    }
  }
  std::sort(dirs.begin(), dirs.end(), lex_less);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  return dirs;
}

Rat Polyhedron::support(const QVec& w) const {
  const std::vector<QVec>& vs = vertices();
  Rat best = dot(w, vs[0]);
  for (const QVec& v : vs) best = std::max(best, dot(w, v));
  return best;
}

QVec Polyhedron::argmax_vertex(const QVec& w) const {
  const std::vector<QVec>& vs = vertices();
  Rat best = dot(w, vs[0]);
  for (const QVec& v : vs) best = std::max(best, dot(w, v));
  for (const QVec& v : vs)
    if (dot(w, v) == best) return v;  // verts_ lex sorted
  throw internal_error("argmax unreachable");
}

std::vector<QVec> Polyhedron::translate_containments(const Polyhedron& Q) const {
  if (empty_ || Q.empty_) return {};
  if (!bounded_ || !Q.bounded_)
    throw input_error("translate_containments requires polytopes");
  if (ambient_ != Q.ambient_) throw input_error("ambient mismatch");
  const Caps& caps = Caps::global();
  std::vector<Int> plo, phi, qlo, qhi;
  lattice_box(plo, phi);
  Q.lattice_box(qlo, qhi);
  // m must satisfy box(P) + m inside box(Q) componentwise.
  std::vector<Int> lo(ambient_), hi(ambient_);
  double cells = 1.0;
  for (int i = 0; i < ambient_; ++i) {
    // ceil(qlo - pverts min) etc: use rational vertex extremes directly.
    Rat pmn = verts_[0][i], pmx = verts_[0][i];
    for (const QVec& v : verts_) {
      pmn = std::min(pmn, v[i]);
      pmx = std::max(pmx, v[i]);
    }
    Rat qmn = Q.verts_[0][i], qmx = Q.verts_[0][i];
    for (const QVec& v : Q.verts_) {
      qmn = std::min(qmn, v[i]);
      qmx = std::max(qmx, v[i]);
    }
    lo[i] = rat_ceil(qmn - pmn);
    hi[i] = rat_floor(qmx - pmx);
    if (hi[i] < lo[i]) return {};
    cells *= (double)(hi[i] - lo[i] + 1);
    if (cells > (double)caps.max_lattice_scan)
      throw cap_error("containment scan too large");
  }
  std::vector<QVec> out;
  if (ambient_ == 0) {
    out.push_back({});
    return out;
  }
  std::vector<Int> c = lo;
  QVec m(ambient_);
  for (;;) {
    for (int i = 0; i < ambient_; ++i) m[i] = Rat(c[i]);
    bool ok = true;
    for (const QVec& v : verts_) {
      if (!Q.contains(vadd(v, m))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(m);
    int i = ambient_ - 1;
    while (i >= 0 && c[i] == hi[i]) {
      c[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

bool Polyhedron::subset_of(const Polyhedron& o) const {
  if (empty_) return true;
  if (o.empty_) return false;
  if (ambient_ != o.ambient_) throw input_error("ambient mismatch");
  if (bounded_) {
    for (const QVec& v : verts_)
      if (!o.contains(v)) return false;
    return true;
  }
  // Unbounded: every constraint of o must be implied.
  for (const AffineForm& g : o.hrep()) {
    std::vector<AffineForm> test = hrep();
    if (g.sense == Sense::LE) {
      test.push_back(AffineForm{vscale(Rat(-1), g.a), -g.b, Sense::LT});
      if (lp_feasible(ambient_, test)) return false;
    } else {
      // Equality implied iff neither strict violation is feasible.
      for (int s : {1, -1}) {
        std::vector<AffineForm> t2 = hrep();
        t2.push_back(AffineForm{vscale(Rat(s), g.a), Rat(s) * g.b, Sense::LT});
        if (lp_feasible(ambient_, t2)) return false;
      }
    }
  }
  return true;
}

bool Polyhedron::disjoint_from(const Polyhedron& o) const {
  if (empty_ || o.empty_) return true;
  if (ambient_ != o.ambient_) throw input_error("ambient mismatch");
  std::vector<AffineForm> f = hrep();
  for (const AffineForm& g : o.hrep()) f.push_back(g);
  return !lp_feasible(ambient_, f);
}

AffineChart Polyhedron::chart() const {
  if (empty_) throw input_error("chart of empty polyhedron");
  AffineChart ch;
  ch.ambient = ambient_;
  if (bounded_) {
    ch.x0 = verts_.front();
  } else {
    ch.x0 = lp_feasible(ambient_, hrep()).value();
  }
  QMat eqmat;
  for (const AffineForm& e : eqs_) eqmat.push_back(e.a);
  QMat basis;
  if (eqmat.empty()) {
    for (int i = 0; i < ambient_; ++i) {
      QVec e(ambient_, Rat(0));
      e[i] = 1;
      basis.push_back(e);
    }
  } else {
    basis = nullspace(eqmat);
  }
  ch.dim = (int)basis.size();
  ch.basis = basis;
  if (ch.dim > 0) {
    QMat gmat(ch.dim, QVec(ch.dim));
    for (int i = 0; i < ch.dim; ++i)
      for (int j = 0; j < ch.dim; ++j) gmat[i][j] = dot(basis[i], basis[j]);
    for (int i = 0; i < ch.dim; ++i) {
      QVec e(ch.dim, Rat(0));
      e[i] = 1;
      QVec y = solve_linear(gmat, e).value();
      QVec row(ambient_, Rat(0));
      for (int j = 0; j < ch.dim; ++j) row = vadd(row, vscale(y[j], basis[j]));
      ch.gram.push_back(row);
    }
  }
  return ch;
}

}  // namespace polyext

#include "polyext/collections.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "polyext/caps.hpp"

namespace polyext {

namespace {

std::string mask_str(int mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

std::string family_source(const char* tag, const std::vector<int>& masks,
                          int n) {
  std::ostringstream os;
  os << tag << "[";
  for (size_t i = 0; i < masks.size(); ++i) {
    if (i) os << ",";
    os << mask_str(masks[i], n);
  }
  os << "]";
  return os.str();
}

QMat canon_vertices(const Polyhedron& p) {
  Polyhedron c = p.canonical_form();
  return c.vertices();
}

bool qmat_lex_less(const QMat& a, const QMat& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      lex_less);
}

bool item_less(const CollectionItem& a, const CollectionItem& b) {
  if (a.lattice_count != b.lattice_count)
    return a.lattice_count < b.lattice_count;
  return qmat_lex_less(canon_vertices(a.polytope), canon_vertices(b.polytope));
}

Polyhedron dilated_simplex(int n, long k) {
  std::vector<QVec> vs{QVec(n, Rat(0))};
  if (k > 0)
    for (int i = 0; i < n; ++i) {
      QVec v(n, Rat(0));
      v[i] = k;
      vs.push_back(v);
    }
  return Polyhedron::from_vertices(n, std::move(vs));
}

Matroid uniform_matroid(int k, int n) {
  std::vector<int> bases;
  for (int s = 0; s < (1 << n); ++s)
    if (std::popcount((unsigned)s) == k) bases.push_back(s);
  return Matroid(n, bases);
}

long hom_dimension(const BettiTable& t) {
  long d = 0;
  for (const auto& [key, dim] : t.entries)
    if (key.second == 0) d += dim;
  return d;
}

bool has_higher_ext(const BettiTable& t) {
  for (const auto& [key, dim] : t.entries)
    if (key.second >= 1 && dim > 0) return true;
  return false;
}

}  // namespace

Collection build_collection(CollectionFamily family, int n) {
  if (family == CollectionFamily::Classical)
    throw input_error("classical collections come from classical_gallery");
  if (n < 1) throw input_error("collection needs a positive ground set");

  Collection c;
  c.family = family;
  c.n = n;
  if (family == CollectionFamily::Perm) {
    c.fan = FanFamily::braid_a(n);
    for (const Matroid& m : enumerate_schubert(n, SchubertFilter::Loopless)) {
      CollectionItem it;
      it.polytope = base_polytope(m);
      it.source = family_source("BP", m.bases(), n);
      it.matroid = m;
      c.items.push_back(std::move(it));
    }
  } else if (family == CollectionFamily::Stell) {
    c.fan = FanFamily::stellahedral(n);
    std::map<QMat, bool> seen;  // dedup by translation class
    for (const Matroid& m : enumerate_schubert(n, SchubertFilter::All)) {
      CollectionItem it;
      it.polytope = independence_polytope(m);
      if (!seen.emplace(canon_vertices(it.polytope), true).second) continue;
      it.source = family_source("IP", m.bases(), n);
      it.matroid = m;
      c.items.push_back(std::move(it));
    }
  } else {
    c.fan = FanFamily::type_b(n);
    for (const DeltaMatroid& d :
         enumerate_delta_schubert(n, SchubertFilter::Loopless)) {
      CollectionItem it;
      it.polytope = feasible_polytope(d);
      it.source = family_source("FP", d.feasible(), n);
      it.delta = d;
      c.items.push_back(std::move(it));
    }
  }

  for (CollectionItem& it : c.items) it.lattice_count = it.polytope.lattice_count();
  std::sort(c.items.begin(), c.items.end(), item_less);
  for (size_t i = 1; i < c.items.size(); ++i)
    if (c.items[i - 1].polytope.translate_equal(c.items[i].polytope))
      throw internal_error("collection items collide up to translation");
  return c;
}

ExceptionalityReport verify_strong_exceptionality(const Collection& c) {
  ExceptionalityReport rep;
  const int k = (int)c.items.size();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      BettiTable t =
          ext_table(c.items[i].polytope, c.items[j].polytope, false);
      if (has_higher_ext(t)) {
        rep.strongly_exceptional = false;
        rep.violations.push_back({i, j, t, "higher ext group is nonzero"});
      }
      long hom = hom_dimension(t);
      if (i == j && hom != 1) {
        rep.exceptional_order = false;
        rep.violations.push_back({i, j, t, "diagonal hom is not one"});
      }
      if (i > j && hom != 0) {
        rep.exceptional_order = false;
        rep.violations.push_back({i, j, t, "hom against the order"});
      }
    }
  return rep;
}

std::vector<std::vector<long>> euler_pairing_matrix(const Collection& c) {
  const int k = (int)c.items.size();
  std::vector<std::vector<long>> m(k, std::vector<long>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      BettiTable t =
          ext_table(c.items[i].polytope, c.items[j].polytope, false);
      long e = 0;
      for (const auto& [key, dim] : t.entries)
        e += (key.second % 2 == 0 ? dim : -dim);
      m[i][j] = e;
    }
  return m;
}

bool is_unitriangular(const std::vector<std::vector<long>>& m) {
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i][i] != 1) return false;
    for (size_t j = 0; j < i; ++j)
      if (m[i][j] != 0) return false;
  }
  return true;
}

Collection cuspidal_subcollection(const Collection& c) {
  Collection out;
  out.family = c.family;
  out.n = c.n;
  out.fan = c.fan;
  for (const CollectionItem& it : c.items) {
    const std::vector<QVec>& vs = it.polytope.vertices();
    bool generic = true;
    for (int k = 0; k < it.polytope.ambient() && generic; ++k) {
      bool varies = false;
      for (const QVec& v : vs)
        if (v[k] != vs[0][k]) {
          varies = true;
          break;
        }
      generic = varies;
    }
    if (generic) out.items.push_back(it);
  }
  std::stable_sort(out.items.begin(), out.items.end(),
                   [](const CollectionItem& a, const CollectionItem& b) {
                     if (a.lattice_count != b.lattice_count)
                       return a.lattice_count > b.lattice_count;
                     return qmat_lex_less(canon_vertices(a.polytope),
                                          canon_vertices(b.polytope));
                   });
  return out;
}

namespace {

Polyhedron apply_coordinate_map(const Polyhedron& p,
                                const std::vector<int>& perm,
                                const std::vector<int>& sign) {
  std::vector<QVec> vs;
  for (const QVec& v : p.vertices()) {
    QVec w(v.size(), Rat(0));
    for (size_t i = 0; i < v.size(); ++i)
      w[perm[i]] = sign[i] < 0 ? Rat(-v[i]) : v[i];
    vs.push_back(std::move(w));
  }
  return Polyhedron::from_vertices(p.ambient(), std::move(vs));
}

}  // namespace

OrbitCheck symmetry_orbit_check(const Collection& c, SymmetryGroup g) {
  const int n = c.n;
  bool compatible =
      (c.family == CollectionFamily::Perm &&
       (g == SymmetryGroup::Sn || g == SymmetryGroup::S2xSn)) ||
      (c.family == CollectionFamily::Stell && g == SymmetryGroup::Sn) ||
      (c.family == CollectionFamily::PermB &&
       (g == SymmetryGroup::Sn || g == SymmetryGroup::SnB));
  if (!compatible) throw input_error("group is not compatible with the family");

  std::vector<int> id_perm(n), plus(n, 1);
  for (int i = 0; i < n; ++i) id_perm[i] = i;

  struct Gen {
    std::string name;
    std::vector<int> perm, sign;
  };
  std::vector<Gen> gens{{"e", id_perm, plus}};
  for (int i = 0; i + 1 < n; ++i) {
    Gen s{"s" + std::to_string(i + 1), id_perm, plus};
    std::swap(s.perm[i], s.perm[i + 1]);
    gens.push_back(std::move(s));
  }
  if (g == SymmetryGroup::S2xSn) {
    Gen cr{"cr", id_perm, std::vector<int>(n, -1)};
    gens.push_back(std::move(cr));
  }
  if (g == SymmetryGroup::SnB) {
    Gen t{"t1", id_perm, plus};
    t.sign[0] = -1;
    gens.push_back(std::move(t));
  }

  OrbitCheck oc;
  for (const Gen& gen : gens) {
    std::vector<int> map(c.items.size(), -1);
    for (size_t i = 0; i < c.items.size(); ++i) {
      Polyhedron image =
          apply_coordinate_map(c.items[i].polytope, gen.perm, gen.sign);
      for (size_t j = 0; j < c.items.size(); ++j)
        if (image.translate_equal(c.items[j].polytope)) {
          map[i] = (int)j;
          break;
        }
      if (map[i] < 0) oc.ok = false;
    }
    oc.generator_names.push_back(gen.name);
    oc.maps.push_back(std::move(map));
  }
  return oc;
}

BettiTable type_c_counterexample() {
  Polyhedron square = Polyhedron::box(QVec(2, Rat(0)), QVec(2, Rat(2)));
  Polyhedron pt = Polyhedron::point(QVec(2, Rat(0)));
  BettiTable full = ext_table(square, pt, false);
  BettiTable even;
  for (const auto& [key, dim] : full.entries) {
    long s = 0;
    for (long x : key.first) s += x;
    if (s % 2 == 0) even.add(key.first, key.second, dim);
  }
  return even;
}

namespace {

struct CertBuilder {
  const Collection& c;
  FullnessCertificate cert;
  std::map<QMat, int> memo;

  explicit CertBuilder(const Collection& col) : c(col) {}

  int add_node(CertNode node, const QMat& key) {
    cert.nodes.push_back(std::move(node));
    memo[key] = (int)cert.nodes.size() - 1;
    return (int)cert.nodes.size() - 1;
  }

  // shift linking a term label to the node built for it
  static QVec shift_between(const Polyhedron& label, const Polyhedron& node_target) {
    QVec a = label.lexmin_vertex();
    QVec b = node_target.lexmin_vertex();
    return vsub(a, b);
  }

  int build(const Polyhedron& p) {
    QMat key = canon_vertices(p);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;

    Polyhedron canon = p.canonical_form();
    for (size_t idx = 0; idx < c.items.size(); ++idx)
      if (canon.translate_equal(c.items[idx].polytope)) {
        CertNode leaf;
        leaf.stage = 0;
        leaf.target = canon;
        leaf.item = (int)idx;
        return add_node(std::move(leaf), key);
      }

    std::vector<Int> lo, hi;
    canon.lattice_box(lo, hi);
    bool unit = true;
    for (size_t i = 0; i < lo.size(); ++i)
      if (hi[i] - lo[i] > 1) unit = false;
    return unit ? build_piece(canon, key) : build_slices(canon, key);
  }

  int build_slices(const Polyhedron& target, const QMat& key) {
    std::vector<Int> lo, hi;
    target.lattice_box(lo, hi);
    const int n = target.ambient();
    Int boxes = 1;
    for (int i = 0; i < n; ++i)
      boxes *= hi[i] - lo[i] > 1 ? hi[i] - lo[i] : Int(1);
    if (boxes > Int((unsigned long)Caps::global().max_pieces))
      throw cap_error("certificate slicing exceeds the piece cap");
    std::vector<Polyhedron> pieces;
    std::vector<Int> v = lo;
    for (;;) {
      QVec a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = Rat(v[i]);
        b[i] = Rat(Int(v[i] + 1));
      }
      Polyhedron piece = target.intersect(Polyhedron::box(a, b));
      if (!piece.is_empty()) pieces.push_back(std::move(piece));
      int i = 0;
      // flat directions get a single box
      while (i < n && v[i] >= hi[i] - 1) {
        v[i] = lo[i];
        ++i;
      }
      if (i == n) break;
      ++v[i];
    }
    if (pieces.size() < 2)
      throw internal_error("unit-box target reached the slicing stage");

    CertNode node;
    node.stage = 2;
    node.target = target;
    node.complex = subdivision_koszul(pieces, target);
    int top = node.complex->poset.size - 1;
    std::vector<std::pair<int, QVec>> children;
    for (int x : node.complex->alive) {
      if (x == top) continue;
      const Polyhedron& label = node.complex->labels[x];
      int child = build(label);
      children.push_back({child, shift_between(label, cert.nodes[child].target)});
    }
    node.children = std::move(children);
    return add_node(std::move(node), key);
  }

  int build_piece(const Polyhedron& canon, const QMat& key) {
    // normalize the piece into the unit cube
    std::vector<Int> lo, hi;
    canon.lattice_box(lo, hi);
    QVec off(canon.ambient());
    for (size_t i = 0; i < lo.size(); ++i) off[i] = Rat(Int(-lo[i]));
    Polyhedron q = canon.translate(off);
    const int n = q.ambient();

    IEComplex complex = piece_complex(q, n);
    CertNode node;
    node.stage = 1;
    node.target = q;
    std::vector<std::pair<int, QVec>> children;
    for (int x : complex.alive) {
      if (x == complex.poset.bottom) continue;
      const Polyhedron& label = complex.labels[x];
      int child = build(label);
      if (cert.nodes[child].stage != 0)
        throw internal_error("truncated BG leaf is not a collection member");
      children.push_back({child, shift_between(label, cert.nodes[child].target)});
    }
    node.complex = std::move(complex);
    node.children = std::move(children);
    return add_node(std::move(node), key);
  }

  IEComplex piece_complex(const Polyhedron& q, int n) {
    if (c.family == CollectionFamily::Perm) {
      std::vector<int> masks = vertex_masks(q);
      if (!is_matroid(SetFamily(n, masks)))
        throw internal_error("slice is not a matroid base polytope");
      Matroid m(n, masks);
      Polyhedron hyper = base_polytope(uniform_matroid(m.rank(), n));
      return truncated_bg(q, hyper, FanFamily::braid_a(n));
    }
    if (c.family == CollectionFamily::Stell) {
      std::vector<int> indep = point_masks(q);
      std::vector<int> bases = maximal_masks(indep);
      if (!is_matroid(SetFamily(n, bases)))
        throw input_error("stell certificate piece is not an independence polytope");
      Matroid m(n, bases);
      Polyhedron ip = independence_polytope(m);
      if (!ip.subset_of(q) || !q.subset_of(ip))
        throw input_error("stell certificate piece is not an independence polytope");
      Polyhedron hyper = base_polytope(uniform_matroid(m.rank(), n));
      IEComplex tbg =
          truncated_bg(base_polytope(m), hyper, FanFamily::braid_a(n));
      IEComplex shifted = tensor_translate(
          tbg, Polyhedron::box(QVec(n, Rat(-1)), QVec(n, Rat(0))),
          TensorDirection::Add);
      return truncate_complex(shifted, Polyhedron::unit_cube(n));
    }
    std::vector<int> feas = point_masks(q);
    if (!is_delta_matroid(SetFamily(n, feas)))
      throw input_error("permB certificate piece is not a delta matroid polytope");
    DeltaMatroid d(n, feas);
    Polyhedron fp = feasible_polytope(d);
    if (!fp.subset_of(q) || !q.subset_of(fp))
      throw input_error("permB certificate piece is not a delta matroid polytope");
    return truncated_bg(q, Polyhedron::unit_cube(n), FanFamily::type_b(n));
  }

  static std::vector<int> vertex_masks(const Polyhedron& q) {
    std::vector<int> out;
    for (const QVec& v : q.vertices()) {
      int mask = 0;
      for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0 && v[i] != 1)
          throw internal_error("slice is not a 01 polytope");
        if (v[i] == 1) mask |= 1 << i;
      }
      out.push_back(mask);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  static std::vector<int> point_masks(const Polyhedron& q) {
    std::vector<int> out;
    for (const QVec& z : q.lattice_points()) {
      int mask = 0;
      for (size_t i = 0; i < z.size(); ++i)
        if (z[i] == 1) mask |= 1 << i;
      out.push_back(mask);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  static std::vector<int> maximal_masks(const std::vector<int>& sets) {
    std::vector<int> out;
    for (int s : sets) {
      bool maximal = true;
      for (int t : sets)
        if (t != s && (s & t) == s) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(s);
    }
    return out;
  }
};

}  // namespace

FullnessCertificate fullness_certificate(const Collection& c,
                                         const Polyhedron& target) {
  if (c.family == CollectionFamily::Classical)
    throw input_error("certificates support perm, stell and permB");
  if (!c.fan) throw input_error("collection has no fan family");
  if (target.is_empty() || !target.bounded() || !target.is_lattice_polytope())
    throw input_error("certificate target must be a nonempty lattice polytope");
  if (!c.fan->in_deformation_cone(target))
    throw input_error("certificate target outside deformation cone");

  CertBuilder builder(c);
  builder.cert.target = target;
  builder.cert.root = builder.build(target);
  return builder.cert;
}

GalleryResult classical_gallery(GalleryKind kind, int param) {
  GalleryResult res;
  Collection& col = res.collection;
  col.family = CollectionFamily::Classical;
  col.n = param;

  if (kind == GalleryKind::Projective) {
    if (param < 1 || param > 4)
      throw input_error("projective gallery supports 1 <= n <= 4");
    const int n = param;
    QMat dirs;
    for (int i = 0; i < n; ++i) {
      QVec e(n, Rat(0));
      e[i] = 1;
      dirs.push_back(e);
      for (int j = i + 1; j < n; ++j) {
        QVec d(n, Rat(0));
        d[i] = 1;
        d[j] = -1;
        dirs.push_back(d);
      }
    }
    col.fan = FanFamily::custom(n, dirs);
    for (long k = 0; k <= n; ++k) {
      CollectionItem it;
      it.polytope = dilated_simplex(n, k);
      it.source = "O(" + std::to_string(k) + ")";
      it.lattice_count = it.polytope.lattice_count();
      col.items.push_back(std::move(it));
    }

    // Koszul witness: the (n+1) dilate subdivided by n dilates
    std::vector<Polyhedron> pieces{dilated_simplex(n, n)};
    for (int i = 0; i < n; ++i) {
      QVec e(n, Rat(0));
      e[i] = 1;
      pieces.push_back(pieces[0].translate(e));
    }
    IEComplex w = subdivision_koszul(pieces, dilated_simplex(n, n + 1));
    int top = w.poset.size - 1;
    for (int x : w.alive) {
      if (x == top) continue;
      bool matched = false;
      for (const CollectionItem& it : col.items)
        if (w.labels[x].translate_equal(it.polytope)) {
          matched = true;
          break;
        }
      if (!matched)
        throw internal_error("simplex cover leaf is not a dilated simplex");
    }
    res.witness_names.push_back("simplex cover of the (n+1) dilate");
    res.witnesses.push_back(std::move(w));
  } else {
    if (param < 0 || param > 3)
      throw input_error("hirzebruch gallery supports 0 <= a <= 3");
    const long a = param;
    Polyhedron p0 = Polyhedron::point(QVec(2, Rat(0)));
    Polyhedron p1 =
        Polyhedron::from_vertices(2, {QVec{Rat(0), Rat(0)}, QVec{Rat(1), Rat(0)}});
    Polyhedron p2 = Polyhedron::from_vertices(
        2, {QVec{Rat(0), Rat(0)}, QVec{Rat(a), Rat(0)}, QVec{Rat(0), Rat(1)}});
    Polyhedron p3 = Polyhedron::from_vertices(
        2, {QVec{Rat(0), Rat(0)}, QVec{Rat(a + 1), Rat(0)}, QVec{Rat(0), Rat(1)},
            QVec{Rat(1), Rat(1)}});
    QMat dirs{QVec{Rat(1), Rat(0)}, QVec{Rat(0), Rat(1)}};
    if (a > 0) dirs.push_back(QVec{Rat(a), Rat(-1)});
    col.fan = FanFamily::custom(2, dirs);
    const char* names[4] = {"P0", "P1", "P2", "P3"};
    int idx = 0;
    for (const Polyhedron& p : {p0, p1, p2, p3}) {
      CollectionItem it;
      it.polytope = p;
      it.source = names[idx++];
      it.lattice_count = p.lattice_count();
      col.items.push_back(std::move(it));
    }
    std::sort(col.items.begin(), col.items.end(), item_less);

    QVec e1{Rat(1), Rat(0)};
    res.witness_names.push_back("doubled edge");
    res.witnesses.push_back(
        subdivision_koszul({p1, p1.translate(e1)}, p1.minkowski_sum(p1)));
    res.witness_names.push_back("trapezoid pair");
    IEComplex pair =
        subdivision_koszul({p3, p3.translate(e1)}, p1.minkowski_sum(p3));
    bool found_p2 = false;
    for (int x : pair.alive)
      if (pair.labels[x].translate_equal(p2)) found_p2 = true;
    if (!found_p2)
      throw internal_error("trapezoid witness lost the triangle intersection");
    res.witnesses.push_back(std::move(pair));

    Polyhedron doubled = p2.minkowski_sum(p2);
    std::vector<Polyhedron> strips;
    for (long y = 0; y < 2; ++y) {
      Polyhedron strip = Polyhedron::from_hrep(
          2, {{QVec{Rat(0), Rat(-1)}, Rat(-y), Sense::LE},
              {QVec{Rat(0), Rat(1)}, Rat(y + 1), Sense::LE}});
      strips.push_back(doubled.intersect(strip));
    }
    res.witness_names.push_back("strip slices of the doubled triangle");
    res.witnesses.push_back(subdivision_koszul(strips, doubled));
  }

  res.report = verify_strong_exceptionality(col);
  return res;
}

}  // namespace polyext

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polyext/caps.hpp"
#include "polyext/fan.hpp"
#include "polyext/matroid.hpp"

using namespace polyext;

namespace {

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

// mask from 1-based element list, matching the JSON convention
int mk(std::initializer_list<int> els) {
  int m = 0;
  for (int e : els) m |= 1 << (e - 1);
  return m;
}

SubmodularFn from_coverage(const oracle::Coverage& c) {
  int n = (int)c.blocks.size();
  std::vector<Rat> v(1 << n);
  for (int a = 0; a < (1 << n); ++a) v[a] = Rat(c.value(a));
  return SubmodularFn(n, std::move(v));
}

// greedy vertex of B(mu) along the element order `ord`
QVec greedy_vertex(const SubmodularFn& mu, const std::vector<int>& ord) {
  QVec x(mu.n, Rat(0));
  int pre = 0;
  for (int e : ord) {
    x[e] = mu(pre | (1 << e)) - mu(pre);
    pre |= 1 << e;
  }
  return x;
}

QVec random_base_point(const SubmodularFn& mu, std::mt19937_64& rng) {
  std::vector<int> ord(mu.n);
  for (int i = 0; i < mu.n; ++i) ord[i] = i;
  std::shuffle(ord.begin(), ord.end(), rng);
  QVec a = greedy_vertex(mu, ord);
  std::shuffle(ord.begin(), ord.end(), rng);
  QVec b = greedy_vertex(mu, ord);
  QVec x(mu.n);
  Rat t(1 + (long)(rng() % 3), 4);  // 1/4, 1/2 or 3/4
  for (int i = 0; i < mu.n; ++i) x[i] = t * a[i] + (1 - t) * b[i];
  return x;
}

std::vector<int> perm_of(int n, int seed) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

bool same_polytope(const Polyhedron& a, const Polyhedron& b) {
  return a.ambient() == b.ambient() && a.vertices() == b.vertices();
}

}  // namespace

TEST_CASE("axiom checks match the spec examples") {
  CHECK(is_matroid(SetFamily(2, {mk({1}), mk({2})})));
  SetFamily f(2, {mk({1}), mk({1, 2})});
  CHECK(!is_matroid(f));
  CHECK(is_delta_matroid(f));
  CHECK(is_delta_matroid(SetFamily(2, {0, mk({1, 2})})));
  CHECK(!is_delta_matroid(SetFamily(3, {0, mk({1, 2, 3})})));
  CHECK(!is_matroid(SetFamily(4, {mk({1, 2}), mk({3, 4})})));
  CHECK_THROWS_AS(Matroid(4, {mk({1, 2}), mk({3, 4})}), input_error);
  CHECK_THROWS_AS(DeltaMatroid(3, {0, mk({1, 2, 3})}), input_error);
  CHECK(!is_matroid(SetFamily(2, {})));
  CHECK_THROWS_AS(SetFamily(2, {4}), input_error);
}

TEST_CASE("schubert matroids from the gale order") {
  Matroid u12 = schubert_matroid({0, 1}, mk({1}));
  CHECK(u12.bases() == std::vector<int>{mk({1}), mk({2})});
  Matroid top = schubert_matroid({0, 1}, mk({2}));
  CHECK(top.bases() == std::vector<int>{mk({2})});
  Matroid zero = schubert_matroid({0, 1}, 0);
  CHECK(zero.bases() == std::vector<int>{0});
  CHECK(zero.rank() == 0);
  // reversed order flips which singleton generates the up-set
  Matroid rev = schubert_matroid({1, 0}, mk({1}));
  CHECK(rev.bases() == std::vector<int>{mk({1})});
  CHECK_THROWS_AS(schubert_matroid({0, 0}, 0), input_error);
}

TEST_CASE("matroid rank loops coloops and independent sets") {
  Matroid m(2, {mk({2})});
  CHECK(m.rank() == 1);
  CHECK(m.loops() == mk({1}));
  CHECK(m.coloops() == mk({2}));
  CHECK(m.independent_sets() == std::vector<int>{0, mk({2})});
  CHECK(m.rank_of(mk({1})) == 0);
  CHECK(m.rank_of(mk({1, 2})) == 1);

  Matroid u23 = schubert_matroid({0, 1, 2}, mk({1, 2}));
  CHECK(u23.bases().size() == 3);
  CHECK(u23.rank_of(mk({1})) == 1);
  CHECK(u23.loops() == 0);
  CHECK(u23.coloops() == 0);
}

TEST_CASE("matroid operations") {
  Matroid u12(2, {mk({1}), mk({2})});
  CHECK(u12.dual() == u12);

  Matroid u23 = schubert_matroid({0, 1, 2}, mk({1, 2}));
  Matroid u13 = schubert_matroid({0, 1, 2}, mk({1}));
  CHECK(u23.truncate_to(1) == u13);
  CHECK(u23.dual() == u13);

  CHECK(u23.restrict_to(mk({1, 2})) == Matroid(2, {mk({1, 2})}));
  CHECK(u23.contract(mk({3})) == Matroid(2, {mk({1}), mk({2})}));
  CHECK_THROWS_AS(u12.contract(mk({1, 2})), input_error);

  Matroid sum = u12.direct_sum(u12);
  CHECK(sum.n() == 4);
  CHECK(sum.bases().size() == 4);
  CHECK(sum.rank() == 2);

  Matroid m(2, {mk({2})});
  Matroid flipped = m.flip_loops_to_coloops(mk({1}));
  CHECK(flipped.bases() == std::vector<int>{mk({1, 2})});
  CHECK_THROWS_AS(m.flip_loops_to_coloops(mk({2})), input_error);
  CHECK(same_polytope(base_polytope(flipped),
                      base_polytope(m).translate(qv({1, 0}))));
}

TEST_CASE("schubert class is closed under the matroid operations") {
  auto schubert_families = [](int n) {
    std::set<std::vector<int>> fams;
    for (const Matroid& m : enumerate_schubert(n, SchubertFilter::All))
      fams.insert(m.bases());
    return fams;
  };
  std::vector<std::set<std::vector<int>>> fams(5);
  for (int n = 1; n <= 4; ++n) fams[n] = schubert_families(n);

  auto is_schubert_iso = [&](const Matroid& m) {
    std::vector<int> p(m.n());
    for (int i = 0; i < m.n(); ++i) p[i] = i;
    do {
      std::vector<int> relabeled;
      for (int b : m.bases()) {
        int g = 0;
        for (int i = 0; i < m.n(); ++i)
          if ((b >> i) & 1) g |= 1 << p[i];
        relabeled.push_back(g);
      }
      std::sort(relabeled.begin(), relabeled.end());
      if (fams[m.n()].count(relabeled)) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  };

  for (const Matroid& m : enumerate_schubert(3, SchubertFilter::All)) {
    CHECK(is_schubert_iso(m.dual()));
    for (int k = 0; k <= m.rank(); ++k) CHECK(is_schubert_iso(m.truncate_to(k)));
    for (int mask = 1; mask < 8; ++mask) {
      CHECK(is_schubert_iso(m.restrict_to(mask)));
      if (m.rank_of(mask) == __builtin_popcount(mask) && mask != 7)
        CHECK(is_schubert_iso(m.contract(mask)));
    }
  }
  Matroid u12(2, {mk({1}), mk({2})});
  Matroid u11(1, {mk({1})});
  CHECK(is_schubert_iso(u12.direct_sum(u11)));
}

TEST_CASE("delta schubert families from the type b gale order") {
  CHECK(type_b_gale_leq(0, 0));
  CHECK(type_b_gale_leq(mk({1}), mk({2})));
  CHECK(!type_b_gale_leq(mk({2}), mk({1})));
  CHECK(type_b_gale_leq(mk({1, 2}), mk({1, 2})));
  CHECK(!type_b_gale_leq(mk({1, 2}), mk({2})));
  CHECK(type_b_gale_leq(mk({3}), mk({1, 3})));
  CHECK(!type_b_gale_leq(mk({2, 3}), mk({1, 3})));

  SignedPermutation id2({1, 2});
  DeltaMatroid d = delta_schubert(id2, mk({2}));
  CHECK(d.feasible() == std::vector<int>{0, mk({1}), mk({2})});
  CHECK(delta_schubert(id2, 0).feasible() == std::vector<int>{0});

  // reflected translate stays inside the unit cube
  SignedPermutation w({-1, 2});
  DeltaMatroid dw = delta_schubert(w, mk({1, 2}));
  Polyhedron fp = feasible_polytope(dw);
  CHECK(fp.subset_of(Polyhedron::unit_cube(2)));
  // w . FP(delta_S) + e_T with T = {1}: x1 -> 1 - x1
  DeltaMatroid plain = delta_schubert(id2, mk({1, 2}));
  std::vector<QVec> mapped;
  Polyhedron fp_plain = feasible_polytope(plain);
  for (const QVec& v : fp_plain.vertices())
    mapped.push_back(QVec{1 - v[0], v[1]});
  Polyhedron expect = Polyhedron::from_vertices(2, mapped);
  CHECK(same_polytope(fp, expect));

  CHECK_THROWS_AS(SignedPermutation({1, 1}), input_error);
  CHECK_THROWS_AS(SignedPermutation({3, 1}), input_error);
}

TEST_CASE("delta matroid operations") {
  DeltaMatroid d(2, {0, mk({1}), mk({2})});
  CHECK(d.loops() == 0);
  CHECK(d.coloops() == 0);
  DeltaMatroid r = d.restrict_to(mk({1}));
  CHECK(r.n() == 1);
  CHECK(r.feasible() == std::vector<int>{0, 1});

  DeltaMatroid ext = d.trivial_extend();
  CHECK(ext.n() == 3);
  CHECK(ext.loops() == mk({3}));
  DeltaMatroid back = ext.flip_loops(mk({3}));
  CHECK(back.coloops() == mk({3}));
  CHECK(same_polytope(feasible_polytope(back),
                      feasible_polytope(ext).translate(qv({0, 0, 1}))));
  CHECK_THROWS_AS(d.flip_loops(mk({1})), input_error);
}

TEST_CASE("polytopes of matroids and delta matroids") {
  Matroid u12(2, {mk({1}), mk({2})});
  CHECK(base_polytope(u12).vertices() ==
        std::vector<QVec>{qv({0, 1}), qv({1, 0})});

  Matroid u22(2, {mk({1, 2})});
  CHECK(same_polytope(independence_polytope(u22), Polyhedron::unit_cube(2)));

  DeltaMatroid full(2, {0, mk({1}), mk({2}), mk({1, 2})});
  CHECK(same_polytope(feasible_polytope(full), Polyhedron::unit_cube(2)));

  // vertex sets are exactly the indicator vectors
  for (const Matroid& m : enumerate_schubert(3, SchubertFilter::All)) {
    Polyhedron bp = base_polytope(m);
    CHECK((int)bp.vertices().size() == (int)m.bases().size());
    for (const QVec& v : bp.vertices()) {
      int mask = 0;
      for (int i = 0; i < 3; ++i) {
        CHECK((v[i] == 0 || v[i] == 1));
        if (v[i] == 1) mask |= 1 << i;
      }
      CHECK(std::binary_search(m.bases().begin(), m.bases().end(), mask));
    }
  }
}

TEST_CASE("base polytope of the dual is the point reflection") {
  for (int n : {3, 4}) {
    std::vector<Matroid> ms = enumerate_schubert(n, SchubertFilter::All);
    for (const Matroid& m : ms) {
      std::vector<QVec> reflected;
      Polyhedron bp = base_polytope(m);
      for (const QVec& v : bp.vertices()) {
        QVec w(n);
        for (int i = 0; i < n; ++i) w[i] = 1 - v[i];
        reflected.push_back(w);
      }
      std::sort(reflected.begin(), reflected.end(), lex_less);
      CHECK(base_polytope(m.dual()).vertices() == reflected);
    }
  }
}

TEST_CASE("independence polytope identity") {
  Polyhedron shift_box = Polyhedron::box(qv({-1, -1, -1}), qv({0, 0, 0}));
  Polyhedron cube = Polyhedron::unit_cube(3);
  for (const Matroid& m : enumerate_schubert(3, SchubertFilter::All)) {
    Polyhedron lhs = independence_polytope(m);
    Polyhedron rhs = base_polytope(m).minkowski_sum(shift_box).intersect(cube);
    CHECK(same_polytope(lhs, rhs));
  }
}

TEST_CASE("enumeration counts match the derangement combinatorics") {
  CHECK(enumerate_schubert(2, SchubertFilter::All).size() == 5);
  CHECK(enumerate_schubert(3, SchubertFilter::All).size() == 16);
  CHECK(enumerate_schubert(4, SchubertFilter::All).size() == 65);
  for (int n = 2; n <= 4; ++n) {
    long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    CHECK((long)enumerate_schubert(n, SchubertFilter::Loopless).size() == fact);
    CHECK((long)enumerate_schubert(n, SchubertFilter::LooplessAndColoopless)
              .size() == oracle::derangements(n));
  }
  CHECK(enumerate_delta_schubert(1, SchubertFilter::Loopless).size() == 2);
  CHECK(enumerate_delta_schubert(2, SchubertFilter::Loopless).size() == 8);
  CHECK(enumerate_delta_schubert(3, SchubertFilter::Loopless).size() == 48);
  for (int n = 1; n <= 2; ++n)
    CHECK((long)enumerate_delta_schubert(n, SchubertFilter::LooplessAndColoopless)
              .size() == oracle::signed_derangements(n));
  CHECK_THROWS_AS(enumerate_schubert(6, SchubertFilter::All), cap_error);
  CHECK_THROWS_AS(enumerate_delta_schubert(4, SchubertFilter::All), cap_error);

  // deterministic order: nondecreasing rank, then lex basis list
  std::vector<Matroid> all3 = enumerate_schubert(3, SchubertFilter::All);
  for (size_t i = 1; i < all3.size(); ++i)
    CHECK(all3[i - 1].rank() <= all3[i].rank());

  // independent exchange-axiom oracle over every enumerated family
  for (const Matroid& m : all3)
    CHECK(oracle::symmetric_exchange_ok(m.n(), m.bases()));
}

TEST_CASE("matroid polytopes live in the matching deformation cones") {
  FanFamily braid = FanFamily::braid_a(3);
  FanFamily stell = FanFamily::stellahedral(3);
  for (const Matroid& m : enumerate_schubert(3, SchubertFilter::All)) {
    CHECK(braid.in_deformation_cone(base_polytope(m)));
    CHECK(stell.in_deformation_cone(independence_polytope(m)));
  }
  FanFamily tb = FanFamily::type_b(2);
  for (const DeltaMatroid& d : enumerate_delta_schubert(2, SchubertFilter::All))
    CHECK(tb.in_deformation_cone(feasible_polytope(d)));
}

TEST_CASE("submodular functions") {
  CHECK_THROWS_AS(SubmodularFn(2, {Rat(0), Rat(0), Rat(0), Rat(5)}), input_error);
  CHECK_THROWS_AS(SubmodularFn(2, {Rat(1), Rat(1), Rat(1), Rat(1)}), input_error);

  Matroid u23 = schubert_matroid({0, 1, 2}, mk({1, 2}));
  SubmodularFn rk = SubmodularFn::rank_of(u23);
  CHECK(rk.is_monotone());
  CHECK(rk(mk({1, 2, 3})) == 2);
  CHECK(same_polytope(rk.base_polytope(), base_polytope(u23)));
  CHECK(same_polytope(rk.independence_polytope(), independence_polytope(u23)));
  Polyhedron bp23 = base_polytope(u23);
  for (const QVec& v : bp23.vertices()) {
    CHECK(rk.in_base_polytope(v));
    CHECK(rk.in_independence_polytope(v));
  }
  CHECK(!rk.in_base_polytope(qv({1, 1, 1})));
  CHECK(rk.in_independence_polytope(qv({1, 0, 0})));
  CHECK(!rk.in_independence_polytope(qv({-1, 1, 1})));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SubmodularFn mu = from_coverage(oracle::random_coverage(3, rng));
    CHECK(mu.is_monotone());
    QVec x = random_base_point(mu, rng);
    CHECK(mu.in_base_polytope(x));
  }
}

TEST_CASE("exchange capacity examples and lp oracle") {
  SubmodularFn u12 = SubmodularFn::rank_of(Matroid(2, {mk({1}), mk({2})}));
  CHECK(exchange_capacity(u12, qv({0, 1}), 0, 1) == 1);
  CHECK(exchange_capacity(u12, qv({1, 0}), 0, 1) == 0);
  CHECK_THROWS_AS(exchange_capacity(u12, qv({2, -1}), 0, 1), input_error);
  CHECK_THROWS_AS(exchange_capacity(u12, qv({0, 1}), 0, 0), input_error);

  SubmodularFn pi3(3, {Rat(0), Rat(3), Rat(3), Rat(5), Rat(3), Rat(5), Rat(5),
                       Rat(6)});
  CHECK(exchange_capacity(pi3, qv({2, 2, 2}), 0, 1) == 1);

  // the min formula equals the lp step length on random instances
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 200) {
    int n = 2 + (int)(rng() % 3);
    SubmodularFn mu = from_coverage(oracle::random_coverage(n, rng));
    QVec x = random_base_point(mu, rng);
    int i = (int)(rng() % n), j = (int)(rng() % n);
    if (i == j) continue;
    Rat cap = exchange_capacity(mu, x, i, j);
    std::vector<AffineForm> forms;
    for (int a = 1; a < (1 << n); ++a) {
      Rat coef = Rat(((a >> i) & 1) - ((a >> j) & 1));
      Rat xs = 0;
      for (int t = 0; t < n; ++t)
        if ((a >> t) & 1) xs += x[t];
      Sense s = a == (1 << n) - 1 ? Sense::EQ : Sense::LE;
      forms.push_back(AffineForm{QVec{coef}, mu(a) - xs, s});
    }
    forms.push_back(AffineForm{QVec{Rat(-1)}, Rat(0), Sense::LE});
    LPResult r = lp_optimize(1, QVec{Rat(1)}, forms);
    REQUIRE(r.status == LPStatus::Feasible);
    CHECK(r.value == cap);
    ++checked;
  }
}

TEST_CASE("greedy retract") {
  SubmodularFn pi3(3, {Rat(0), Rat(3), Rat(3), Rat(5), Rat(3), Rat(5), Rat(5),
                       Rat(6)});
  RetractPath p = greedy_retract(pi3, qv({2, 2, 2}));
  CHECK(p.endpoint == qv({3, 2, 1}));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(exchange_capacity(pi3, p.endpoint, i, j) == 0);

  // starting at the endpoint produces a pass of zero-length segments
  RetractPath q = greedy_retract(pi3, qv({3, 2, 1}));
  CHECK(q.endpoint == qv({3, 2, 1}));
  CHECK(q.segments.size() == 3);
  for (const RetractSegment& s : q.segments) CHECK(s.length == 0);

  SubmodularFn u12 = SubmodularFn::rank_of(Matroid(2, {mk({1}), mk({2})}));
  CHECK(greedy_retract(u12, QVec{Rat(1, 2), Rat(1, 2)}).endpoint == qv({1, 0}));

  // endpoint is a vertex, moves use i < j, prefix sums never decrease
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + (int)(rng() % 3);
    SubmodularFn mu = from_coverage(oracle::random_coverage(n, rng));
    QVec x = random_base_point(mu, rng);
    RetractPath path = greedy_retract(mu, x);
    QVec cur = x;
    QVec prefix_prev(n);
    for (const RetractSegment& s : path.segments) {
      CHECK(s.from == cur);
      CHECK(s.i < s.j);
      CHECK(s.length >= 0);
      cur[s.i] += s.length;
      cur[s.j] -= s.length;
    }
    CHECK(cur == path.endpoint);
    Polyhedron bmu = mu.base_polytope();
    const std::vector<QVec>& verts = bmu.vertices();
    CHECK(std::find(verts.begin(), verts.end(), path.endpoint) != verts.end());
  }
}

TEST_CASE("greedy retract stays outside upper translates") {
  // a prefix-sum violation of a standard schubert polytope persists along
  // the whole path, so the retract cannot enter B(nu)+m
  std::mt19937_64 rng(17);
  int with_cert = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 3;
    SubmodularFn mu = from_coverage(oracle::random_coverage(n, rng));
    QVec x = random_base_point(mu, rng);
    std::vector<int> idw = {0, 1, 2};
    SubmodularFn nu =
        SubmodularFn::rank_of(schubert_matroid(idw, (int)(rng() % 7) + 1));
    QVec m(n);
    Rat rest = mu((1 << n) - 1) - nu((1 << n) - 1);
    for (int i = 0; i + 1 < n; ++i) {
      m[i] = Rat((long)(rng() % 5) - 2);
      rest -= m[i];
    }
    m[n - 1] = rest;
    bool cert = false;
    for (int l = 1; l < n; ++l) {
      int pre = (1 << l) - 1;
      Rat xs = 0, ms = 0;
      for (int i = 0; i < l; ++i) {
        xs += x[i];
        ms += m[i];
      }
      if (xs > nu(pre) + ms) cert = true;
    }
    if (!cert) continue;
    ++with_cert;
    RetractPath path = greedy_retract(mu, x);
    QVec cur = x;
    auto outside = [&](const QVec& y) {
      QVec shifted(n);
      for (int i = 0; i < n; ++i) shifted[i] = y[i] - m[i];
      return !nu.in_base_polytope(shifted);
    };
    CHECK(outside(cur));
    for (const RetractSegment& s : path.segments) {
      cur[s.i] += s.length;
      cur[s.j] -= s.length;
      CHECK(outside(cur));
    }
  }
  CHECK(with_cert >= 25);
}

TEST_CASE("saturation and independence base retract") {
  SubmodularFn u12 = SubmodularFn::rank_of(Matroid(2, {mk({1}), mk({2})}));
  CHECK(saturation(u12, qv({0, 0}), 0) == 1);
  CHECK_THROWS_AS(saturation(u12, qv({2, 2}), 0), input_error);

  SubmodularFn u22 = SubmodularFn::rank_of(Matroid(2, {mk({1, 2})}));
  RetractPath p = ib_retract(u22, QVec{Rat(1, 2), Rat(0)});
  CHECK(p.endpoint == qv({1, 1}));
  CHECK(p.segments.size() == 2);
  CHECK(p.segments[0].length == Rat(1, 2));
  CHECK(p.segments[1].length == 1);

  // non-monotone functions are rejected
  SubmodularFn drop(1, {Rat(0), Rat(-1)});
  CHECK_THROWS_AS(saturation(drop, qv({-1}), 0), input_error);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + (int)(rng() % 3);
    SubmodularFn mu = from_coverage(oracle::random_coverage(n, rng));
    QVec x = random_base_point(mu, rng);
    Rat t(1 + (long)(rng() % 3), 3);
    for (Rat& c : x) c *= t;  // shrink into the independence polytope
    REQUIRE(mu.in_independence_polytope(x));
    RetractPath path = ib_retract(mu, x);
    CHECK(mu.in_base_polytope(path.endpoint));
    // points of the base polytope are fixed
    RetractPath fix = ib_retract(mu, path.endpoint);
    CHECK(fix.endpoint == path.endpoint);
    for (const RetractSegment& s : fix.segments) CHECK(s.length == 0);
  }
}

TEST_CASE("minkowski sums of base polytopes") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    SubmodularFn a = from_coverage(oracle::random_coverage(3, rng));
    SubmodularFn b = from_coverage(oracle::random_coverage(3, rng));
    std::vector<Rat> sum(8);
    for (int s = 0; s < 8; ++s) sum[s] = a(s) + b(s);
    SubmodularFn ab(3, std::move(sum));
    Polyhedron lhs = a.base_polytope().minkowski_sum(b.base_polytope());
    CHECK(same_polytope(lhs, ab.base_polytope()));
  }
}

TEST_CASE("schubert matroids against random permutation orders") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + (int)(rng() % 3);
    std::vector<int> w = perm_of(n, (int)(rng() % 100000));
    int smask = (int)(rng() % (1 << n));
    Matroid m = schubert_matroid(w, smask);
    CHECK(oracle::symmetric_exchange_ok(n, m.bases()));
    // S itself is always a basis, and the w-maximal completion too
    CHECK(std::binary_search(m.bases().begin(), m.bases().end(), smask));
  }
}

#include "polyext/cwposet.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"

namespace polyext {

std::vector<int> CWPoset::upper_covers(int x) const {
  std::vector<int> out;
  for (const auto& [l, u] : covers)
    if (l == x) out.push_back(u);
  return out;
}

std::vector<int> CWPoset::lower_covers(int x) const {
  std::vector<int> out;
  for (const auto& [l, u] : covers)
    if (u == x) out.push_back(l);
  return out;
}

int CWPoset::max_rank() const {
  int m = 0;
  for (int r : rank) m = std::max(m, r);
  return m;
}

CWPoset CWPoset::boolean_lattice(int k) {
  if (k < 0) throw input_error("boolean lattice needs k >= 0");
  if (k >= 30 || (std::size_t(1) << k) > Caps::global().max_poset)
    throw cap_error("boolean lattice exceeds the poset budget");
  CWPoset p;
  p.kind = PosetKind::Boolean;
  p.size = 1 << k;
  p.bottom = 0;
  p.rank.resize(p.size);
  for (int s = 0; s < p.size; ++s) {
    p.rank[s] = std::popcount((unsigned)s);
    for (int i = 0; i < k; ++i)
      if (!((s >> i) & 1)) p.covers.push_back({s, s | (1 << i)});
  }
  std::sort(p.covers.begin(), p.covers.end());
  return p;
}

CWPoset CWPoset::chain_pair() {
  CWPoset p;
  p.kind = PosetKind::ChainPair;
  p.size = 2;
  p.bottom = 0;
  p.rank = {0, 1};
  p.covers = {{0, 1}};
  return p;
}

CWPoset CWPoset::face_lattice(const Polyhedron& poly) {
  if (poly.is_empty() || !poly.bounded())
    throw input_error("face lattice needs a nonempty bounded polytope");
  const std::vector<QVec>& vs = poly.vertices();
  const int nv = (int)vs.size();

  // faces as sorted vertex-index sets, closed under pairwise intersection
  std::set<std::vector<int>> sets;
  std::vector<int> full(nv);
  std::iota(full.begin(), full.end(), 0);
  sets.insert(full);
  sets.insert(std::vector<int>{});
  for (const AffineForm& g : poly.facets()) {
    std::vector<int> tight;
    for (int i = 0; i < nv; ++i)
      if (dot(g.a, vs[i]) == g.b) tight.push_back(i);
    sets.insert(tight);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> cur(sets.begin(), sets.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> meet;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(),
                              cur[j].end(), std::back_inserter(meet));
        if (sets.insert(meet).second) grew = true;
        if (sets.size() > Caps::global().max_poset)
          throw cap_error("face lattice exceeds the poset budget");
      }
  }

  auto face_dim = [&](const std::vector<int>& f) {
    if (f.empty()) return -1;
    QMat rows;
    for (size_t i = 1; i < f.size(); ++i)
      rows.push_back(vsub(vs[f[i]], vs[f[0]]));
    return rows.empty() ? 0 : (int)mat_rank(rows);
  };
  std::vector<std::pair<int, std::vector<int>>> faces;
  for (const auto& f : sets) faces.push_back({face_dim(f), f});
  std::sort(faces.begin(), faces.end());

  CWPoset p;
  p.kind = PosetKind::FaceLattice;
  p.size = (int)faces.size();
  p.bottom = 0;
  for (const auto& [d, f] : faces) p.rank.push_back(d + 1);
  for (int i = 0; i < p.size; ++i)
    for (int j = 0; j < p.size; ++j)
      if (faces[i].first + 1 == faces[j].first &&
          std::includes(faces[j].second.begin(), faces[j].second.end(),
                        faces[i].second.begin(), faces[i].second.end()))
        p.covers.push_back({i, j});
  std::sort(p.covers.begin(), p.covers.end());
  return p;
}

CWPoset CWPoset::fan_face_poset(const FanFamily& f) {
  auto fanp = f.fan();
  const Fan& fan = *fanp;
  const int ncones = (int)fan.cones.size();
  if (std::size_t(ncones) + 1 > Caps::global().max_poset)
    throw cap_error("fan face poset exceeds the poset budget");
  const int mindim = fan.cones[fan.zero].dim;

  CWPoset p;
  p.kind = PosetKind::FanFacePoset;
  p.size = ncones + 1;
  p.bottom = fan.zero;
  p.rank.resize(p.size);
  int maxr = 0;
  for (int i = 0; i < ncones; ++i) {
    p.rank[i] = fan.cones[i].dim - mindim;
    maxr = std::max(maxr, p.rank[i]);
  }
  p.rank[ncones] = maxr + 1;
  for (int i = 0; i < ncones; ++i)
    for (int j = 0; j < ncones; ++j)
      if (p.rank[j] == p.rank[i] + 1 && fan.less_eq(i, j))
        p.covers.push_back({i, j});
  for (int i : fan.maximal) p.covers.push_back({i, ncones});
  std::sort(p.covers.begin(), p.covers.end());
  return p;
}

CWPoset CWPoset::custom(int size, std::vector<std::pair<int, int>> covers) {
  if (size <= 0) throw input_error("poset needs at least one element");
  if (std::size_t(size) > Caps::global().max_poset)
    throw cap_error("poset exceeds the poset budget");
  std::sort(covers.begin(), covers.end());
  CWPoset p;
  p.kind = PosetKind::Custom;
  p.size = size;
  p.covers = std::move(covers);
  std::vector<int> indeg(size, 0);
  for (const auto& [l, u] : p.covers) {
    if (l < 0 || l >= size || u < 0 || u >= size || l == u)
      throw input_error("cover indices out of range");
    ++indeg[u];
  }
  if (std::adjacent_find(p.covers.begin(), p.covers.end()) != p.covers.end())
    throw input_error("duplicate cover");

  int bottom = -1;
  for (int x = 0; x < size; ++x)
    if (indeg[x] == 0) {
      if (bottom >= 0) throw input_error("poset has more than one bottom");
      bottom = x;
    }
  if (bottom < 0) throw input_error("poset has a cycle");
  p.bottom = bottom;

  // ranks by topological propagation; every cover must climb exactly one
  p.rank.assign(size, -1);
  p.rank[bottom] = 0;
  std::vector<int> pending = indeg;
  std::vector<int> queue{bottom};
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (const auto& [l, u] : p.covers) {
      if (l != x) continue;
      if (p.rank[u] == -1)
        p.rank[u] = p.rank[x] + 1;
      else if (p.rank[u] != p.rank[x] + 1)
        throw input_error("poset is not graded");
      if (--pending[u] == 0) queue.push_back(u);
    }
  }
  if ((int)queue.size() != size)
    throw input_error("poset is not connected from the bottom");
  return p;
}

CWPoset CWPoset::opposite() const {
  const int maxr = max_rank();
  int tops = 0;
  for (int r : rank) tops += (r == maxr);
  if (tops != 1) throw input_error("opposite needs a unique top element");
  CWPoset p;
  p.kind = PosetKind::OppositeOf;
  p.size = size;
  p.rank.resize(size);
  for (int x = 0; x < size; ++x) {
    p.rank[x] = maxr - rank[x];
    if (p.rank[x] == 0) p.bottom = x;
  }
  for (const auto& [l, u] : covers) p.covers.push_back({u, l});
  std::sort(p.covers.begin(), p.covers.end());
  return p;
}

namespace {

// middles of every rank-two interval, keyed by (x, y)
std::map<std::pair<int, int>, std::vector<int>> two_step_middles(
    const CWPoset& p) {
  std::vector<std::vector<int>> up(p.size);
  for (const auto& [l, u] : p.covers) up[l].push_back(u);
  std::map<std::pair<int, int>, std::vector<int>> mid;
  for (int x = 0; x < p.size; ++x)
    for (int z : up[x])
      for (int y : up[z]) mid[{x, y}].push_back(z);
  return mid;
}

}  // namespace

void validate_cw_poset(const CWPoset& p) {
  if (p.size <= 0) throw input_error("poset needs at least one element");
  if (std::size_t(p.size) > Caps::global().max_poset)
    throw cap_error("poset exceeds the poset budget");
  if ((int)p.rank.size() != p.size) throw input_error("rank array size");
  if (p.bottom < 0 || p.bottom >= p.size || p.rank[p.bottom] != 0)
    throw input_error("bottom element must have rank zero");
  for (int x = 0; x < p.size; ++x)
    if (p.rank[x] == 0 && x != p.bottom)
      throw input_error("poset has more than one bottom");

  std::vector<int> indeg(p.size, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& [l, u] : p.covers) {
    if (l < 0 || l >= p.size || u < 0 || u >= p.size)
      throw input_error("cover indices out of range");
    if (p.rank[u] != p.rank[l] + 1)
      throw input_error("poset is not graded");
    if (!seen.insert({l, u}).second) throw input_error("duplicate cover");
    ++indeg[u];
  }
  for (int x = 0; x < p.size; ++x)
    if (x != p.bottom && indeg[x] == 0)
      throw input_error("element unreachable from the bottom");

  // thin: every rank-two interval is a diamond
  for (const auto& [xy, mids] : two_step_middles(p))
    if (mids.size() != 2) throw input_error("poset is not thin");

  // Eulerian from the bottom: mobius(0̂, x) = (-1)^rank(x)
  auto reach = reachability(p);
  std::vector<int> order(p.size);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return p.rank[a] < p.rank[b]; });
  std::vector<long> mob(p.size, 0);
  for (int x : order) {
    if (x == p.bottom) {
      mob[x] = 1;
      continue;
    }
    if (!((reach[p.bottom][x / 64] >> (x % 64)) & 1))
      throw input_error("element unreachable from the bottom");
    long s = 0;
    for (int z = 0; z < p.size; ++z)
      if (z != x && ((reach[p.bottom][z / 64] >> (z % 64)) & 1) &&
          ((reach[z][x / 64] >> (x % 64)) & 1))
        s += mob[z];
    mob[x] = -s;
    if (mob[x] != (p.rank[x] % 2 == 0 ? 1 : -1))
      throw input_error("poset interval is not Eulerian");
  }
}

std::vector<std::vector<std::uint64_t>> reachability(const CWPoset& p) {
  const size_t words = (p.size + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(
      p.size, std::vector<std::uint64_t>(words, 0));
  std::vector<int> order(p.size);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return p.rank[a] > p.rank[b]; });
  std::vector<std::vector<int>> up(p.size);
  for (const auto& [l, u] : p.covers) up[l].push_back(u);
  for (int x : order) {
    reach[x][x / 64] |= 1ull << (x % 64);
    for (int u : up[x])
      for (size_t w = 0; w < words; ++w) reach[x][w] |= reach[u][w];
  }
  return reach;
}

std::map<std::pair<int, int>, int> incidence_signs(const CWPoset& p) {
  validate_cw_poset(p);
  std::map<std::pair<int, int>, int> out;

  if (p.kind == PosetKind::Boolean) {
    for (const auto& [l, u] : p.covers) {
      int i = std::countr_zero((unsigned)(l ^ u));
      int below = std::popcount((unsigned)(l & ((1 << i) - 1)));
      out[{l, u}] = below % 2 == 0 ? 1 : -1;
    }
  } else {
    // GF(2) solve: one variable per cover, one equation per diamond
    std::map<std::pair<int, int>, int> var;
    for (const auto& c : p.covers) var[c] = (int)var.size();
    const int nv = (int)p.covers.size();
    const size_t words = (nv + 63) / 64;

    struct Row {
      std::vector<std::uint64_t> bits;
      bool rhs;
    };
    std::vector<Row> rows;
    auto make_row = [&](const std::vector<int>& vars, bool rhs) {
      Row r{std::vector<std::uint64_t>(words, 0), rhs};
      for (int v : vars) r.bits[v / 64] ^= 1ull << (v % 64);
      rows.push_back(std::move(r));
    };
    for (const auto& [xy, mids] : two_step_middles(p))
      make_row({var[{xy.first, mids[0]}], var[{mids[0], xy.second}],
                var[{xy.first, mids[1]}], var[{mids[1], xy.second}]},
               true);
    for (const auto& [l, u] : p.covers)
      if (l == p.bottom) make_row({var[{l, u}]}, false);

    std::map<int, Row> pivots;  // leading bit -> reduced row
    for (Row& r : rows) {
      for (;;) {
        int lead = -1;
        for (size_t w = 0; w < words && lead < 0; ++w)
          if (r.bits[w]) lead = (int)(w * 64 + std::countr_zero(r.bits[w]));
        if (lead < 0) {
          if (r.rhs) throw input_error("incidence sign system is unsolvable");
          break;
        }
        auto it = pivots.find(lead);
        if (it == pivots.end()) {
          pivots.emplace(lead, std::move(r));
          break;
        }
        for (size_t w = 0; w < words; ++w) r.bits[w] ^= it->second.bits[w];
        r.rhs ^= it->second.rhs;
      }
    }

    std::vector<bool> value(nv, false);  // free variables stay +1
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      bool v = it->second.rhs;
      for (size_t w = 0; w < words; ++w) {
        std::uint64_t bits = it->second.bits[w];
        while (bits) {
          int b = (int)(w * 64 + std::countr_zero(bits));
          bits &= bits - 1;
          if (b != it->first && value[b]) v = !v;
        }
      }
      value[it->first] = v;
    }
    for (const auto& [c, v] : var) out[c] = value[v] ? -1 : 1;
  }

  // audit: bottom covers positive, every diamond multiplies to -1
  for (const auto& [l, u] : p.covers)
    if (l == p.bottom && out[{l, u}] != 1)
      throw internal_error("bottom cover sign is not +1");
  for (const auto& [xy, mids] : two_step_middles(p)) {
    long prod = 1;
    for (int z : mids)
      prod *= out[{xy.first, z}] * out[{z, xy.second}];
    if (prod != -1) throw internal_error("diamond sign product is not -1");
  }
  return out;
}

}  // namespace polyext

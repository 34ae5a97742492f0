#include "polyext/fan.hpp"

#include <algorithm>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"

namespace polyext {

namespace {

QVec unit(int n, int i) {
  QVec e(n, Rat(0));
  e[i] = 1;
  return e;
}

QVec indicator(int n, int mask, int sign = 1) {
  QVec v(n, Rat(0));
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1) v[i] = sign;
  return v;
}

std::vector<int> bits_of(int mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if ((mask >> i) & 1) out.push_back(i);
  return out;
}

// Ascending nonempty submasks of mask.
std::vector<int> submasks(int mask) {
  std::vector<int> out;
  for (int s = mask; s; s = (s - 1) & mask) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

void ordered_partitions_rec(int rest, std::vector<int>& blocks,
                            std::vector<std::vector<int>>& out) {
  if (!rest) {
    out.push_back(blocks);
    return;
  }
  for (int first : submasks(rest)) {
    blocks.push_back(first);
    ordered_partitions_rec(rest & ~first, blocks, out);
    blocks.pop_back();
  }
}

std::vector<std::vector<int>> ordered_partitions(int mask) {
  std::vector<std::vector<int>> out;
  std::vector<int> blocks;
  ordered_partitions_rec(mask, blocks, out);
  return out;
}

AffineForm zform(QVec a, Sense s) { return AffineForm{std::move(a), Rat(0), s}; }

// Chain equalities tying the coordinates of a block together, with signs.
// signs omitted (empty) means all +1.
void block_chain_eqs(int n, int block, const std::vector<int>& neg,
                     std::vector<AffineForm>& hrep) {
  auto sgn = [&](int i) {
    return std::find(neg.begin(), neg.end(), i) != neg.end() ? -1 : 1;
  };
  std::vector<int> el = bits_of(block);
  for (size_t t = 0; t + 1 < el.size(); ++t) {
    QVec a(n, Rat(0));
    a[el[t]] = sgn(el[t]);
    a[el[t + 1]] = -sgn(el[t + 1]);
    hrep.push_back(zform(std::move(a), Sense::EQ));
  }
}

void finish_fan(Fan& f) {
  const Caps& caps = Caps::global();
  if (f.cones.size() > caps.max_arrangement_cells)
    throw cap_error("fan face count exceeds cap");
  for (Cone& c : f.cones) {
    QMat all = c.rays;
    for (const QVec& l : c.lineality) all.push_back(l);
    c.dim = (int)mat_rank(all);
  }
  size_t k = f.cones.size();
  f.leq.assign(k, std::vector<char>(k, 0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (f.cones[i].dim > f.cones[j].dim) continue;
      bool in = true;
      for (const QVec& r : f.cones[i].rays)
        if (!f.cones[j].contains(r)) {
          in = false;
          break;
        }
      if (in)
        for (const QVec& l : f.cones[i].lineality) {
          if (!f.cones[j].contains(l) ||
              !f.cones[j].contains(vscale(Rat(-1), l))) {
            in = false;
            break;
          }
        }
      f.leq[i][j] = in ? 1 : 0;
    }
  int zero = -1;
  for (size_t i = 0; i < k; ++i) {
    bool min = true;
    for (size_t j = 0; j < k && min; ++j) min = f.leq[i][j] != 0;
    if (min) {
      if (zero >= 0) throw internal_error("fan has two minimal cones");
      zero = (int)i;
    }
    for (size_t j = 0; j < k; ++j)
      if (f.leq[i][j] && f.leq[j][i] && i != j)
        throw internal_error("duplicate fan cones: " + f.cones[i].tag + " / " +
                             f.cones[j].tag);
  }
  if (zero < 0) throw internal_error("fan has no minimum cone");
  f.zero = zero;
  for (size_t i = 0; i < k; ++i)
    if (f.cones[i].dim == f.ambient) f.maximal.push_back((int)i);
  if (f.maximal.empty()) throw internal_error("fan has no maximal cones");
  for (size_t i = 0; i < k; ++i) {
    bool under_max = false;
    for (int m : f.maximal) under_max |= f.leq[i][m] != 0;
    if (!under_max) throw internal_error("fan cone not under any maximal cone");
  }
}

Fan build_braid(int n) {
  Fan f;
  f.ambient = n;
  f.name = "braid_a(" + std::to_string(n) + ")";
  int full = (1 << n) - 1;
  for (const auto& blocks : ordered_partitions(full)) {
    // region: x constant on blocks, decreasing along the block order
    Cone c;
    std::string tag;
    for (size_t t = 0; t < blocks.size(); ++t) {
      if (t) tag += "|";
      for (int i : bits_of(blocks[t])) tag += std::to_string(i + 1);
      block_chain_eqs(n, blocks[t], {}, c.hrep);
      if (t + 1 < blocks.size()) {
        QVec a(n, Rat(0));
        a[bits_of(blocks[t + 1])[0]] = 1;
        a[bits_of(blocks[t])[0]] -= 1;
        c.hrep.push_back(zform(std::move(a), Sense::LE));
      }
    }
    c.tag = tag;
    int prefix = 0;
    for (size_t t = 0; t + 1 < blocks.size(); ++t) {
      prefix |= blocks[t];
      c.rays.push_back(indicator(n, prefix));
    }
    c.lineality.push_back(QVec(n, Rat(1)));
    f.cones.push_back(std::move(c));
  }
  finish_fan(f);
  return f;
}

Fan build_type_b(int n) {
  Fan f;
  f.ambient = n;
  f.name = "type_b(" + std::to_string(n) + ")";
  int full = (1 << n) - 1;
  for (int z = 0; z <= full; ++z) {
    int zero_set = z, rest = full & ~z;
    for (const auto& blocks : ordered_partitions(rest)) {
      // region: x_Z = 0 <= |first block| <= ... ; signs say which coords
      // are negated. Enumerate sign masks over rest.
      for (int negmask = rest;; negmask = (negmask - 1) & rest) {
        Cone c;
        std::vector<int> neg = bits_of(negmask);
        auto sgn = [&](int i) { return (negmask >> i) & 1 ? -1 : 1; };
        std::string tag = "z{";
        for (int i : bits_of(zero_set)) tag += std::to_string(i + 1);
        tag += "}";
        for (int i : bits_of(zero_set)) c.hrep.push_back(zform(unit(n, i), Sense::EQ));
        for (size_t t = 0; t < blocks.size(); ++t) {
          tag += "|";
          for (int i : bits_of(blocks[t]))
            tag += (sgn(i) < 0 ? "-" : "+") + std::to_string(i + 1);
          block_chain_eqs(n, blocks[t], neg, c.hrep);
          int lo = bits_of(blocks[t])[0];
          if (t == 0) {
            QVec a(n, Rat(0));
            a[lo] = -sgn(lo);
            c.hrep.push_back(zform(std::move(a), Sense::LE));
          }
          if (t + 1 < blocks.size()) {
            int hi = bits_of(blocks[t + 1])[0];
            QVec a(n, Rat(0));
            a[lo] = sgn(lo);
            a[hi] = -sgn(hi);
            c.hrep.push_back(zform(std::move(a), Sense::LE));
          }
        }
        // suffix rays, innermost block last
        for (size_t t = 0; t < blocks.size(); ++t) {
          QVec r(n, Rat(0));
          for (size_t u = t; u < blocks.size(); ++u)
            for (int i : bits_of(blocks[u])) r[i] = sgn(i);
          c.rays.push_back(std::move(r));
        }
        c.tag = tag;
        f.cones.push_back(std::move(c));
        if (negmask == 0) break;
      }
    }
  }
  finish_fan(f);
  return f;
}

Fan build_product_p1(int n) {
  Fan f;
  f.ambient = n;
  f.name = "product_p1(" + std::to_string(n) + ")";
  std::vector<int> s(n, -1);
  for (;;) {
    Cone c;
    std::string tag;
    for (int i = 0; i < n; ++i) {
      tag += (s[i] < 0 ? "-" : (s[i] ? "+" : "0"));
      if (s[i] == 0) {
        c.hrep.push_back(zform(unit(n, i), Sense::EQ));
      } else {
        QVec a(n, Rat(0));
        a[i] = -s[i];
        c.hrep.push_back(zform(std::move(a), Sense::LE));
        c.rays.push_back(indicator(n, 1 << i, s[i]));
      }
    }
    c.tag = tag;
    f.cones.push_back(std::move(c));
    int i = n - 1;
    while (i >= 0 && s[i] == 1) s[i--] = -1;
    if (i < 0) break;
    ++s[i];
  }
  finish_fan(f);
  return f;
}

void flags_rec(int n, int full, std::vector<int>& flag,
               std::vector<std::vector<int>>& out) {
  out.push_back(flag);  // current (possibly empty) flag
  int start = flag.empty() ? -1 : flag.back();
  for (int next = 0; next < full; ++next) {  // proper subsets of [n] only
    if (start >= 0 && ((next & start) != start || next == start)) continue;
    flag.push_back(next);
    flags_rec(n, full, flag, out);
    flag.pop_back();
  }
}

Fan build_stellahedral(int n) {
  Fan f;
  f.ambient = n;
  f.name = "stellahedral(" + std::to_string(n) + ")";
  int full = (1 << n) - 1;
  std::vector<std::vector<int>> flags;
  std::vector<int> flag;
  flags_rec(n, full, flag, flags);
  for (const auto& fl : flags) {
    int imax = fl.empty() ? full : fl.front();
    std::vector<int> isubs = submasks(imax);
    isubs.insert(isubs.begin(), 0);
    for (int Imask : isubs) {
      Cone c;
      QMat gens;
      for (int i : bits_of(Imask)) gens.push_back(unit(n, i));
      for (int F : fl) gens.push_back(indicator(n, full & ~F, -1));
      std::string tag = "I={";
      for (int i : bits_of(Imask)) tag += std::to_string(i + 1);
      tag += "};F=";
      for (size_t t = 0; t < fl.size(); ++t) {
        if (t) tag += ",";
        tag += "{";
        for (int i : bits_of(fl[t])) tag += std::to_string(i + 1);
        tag += "}";
      }
      c.tag = tag;
      c.rays = gens;
      // simplicial: span equalities plus dual-basis inequalities
      if (!gens.empty()) {
        QMat normals = nullspace(gens);
        for (QVec& a : normals) c.hrep.push_back(zform(std::move(a), Sense::EQ));
        size_t m = gens.size();
        QMat gram(m, QVec(m));
        for (size_t i = 0; i < m; ++i)
          for (size_t j = 0; j < m; ++j) gram[i][j] = dot(gens[i], gens[j]);
        for (size_t i = 0; i < m; ++i) {
          QVec e(m, Rat(0));
          e[i] = 1;
          QVec y = solve_linear(gram, e).value();
          QVec d(n, Rat(0));
          for (size_t j = 0; j < m; ++j) d = vadd(d, vscale(y[j], gens[j]));
          c.hrep.push_back(zform(vscale(Rat(-1), d), Sense::LE));
        }
      } else {
        for (int i = 0; i < n; ++i) c.hrep.push_back(zform(unit(n, i), Sense::EQ));
      }
      f.cones.push_back(std::move(c));
    }
  }
  finish_fan(f);
  return f;
}

}  // namespace

bool Cone::contains(const QVec& x) const {
  for (const AffineForm& g : hrep) {
    Rat v = dot(g.a, x);
    if (g.sense == Sense::EQ ? v != 0 : v > 0) return false;
  }
  return true;
}

FanFamily FanFamily::braid_a(int n) {
  const Caps& caps = Caps::global();
  if (n < 1 || n > caps.max_ground) throw input_error("bad braid_a parameter");
  if (n > caps.max_n_a) throw cap_error("braid_a parameter exceeds cap");
  FanFamily fam;
  fam.tag_ = FanTag::BraidA;
  fam.n_ = n;
  fam.ambient_ = n;
  fam.name_ = "braid_a(" + std::to_string(n) + ")";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QVec d(n, Rat(0));
      d[i] = 1;
      d[j] = -1;
      fam.dirs_.push_back(d);
    }
  std::sort(fam.dirs_.begin(), fam.dirs_.end(), lex_less);
  fam.fan_ = std::make_shared<Fan>(build_braid(n));
  return fam;
}

FanFamily FanFamily::stellahedral(int n) {
  const Caps& caps = Caps::global();
  if (n < 1 || n > caps.max_ground) throw input_error("bad stellahedral parameter");
  if (n > caps.max_n_a) throw cap_error("stellahedral parameter exceeds cap");
  FanFamily fam;
  fam.tag_ = FanTag::Stellahedral;
  fam.n_ = n;
  fam.ambient_ = n;
  fam.name_ = "stellahedral(" + std::to_string(n) + ")";
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    fam.dirs_.push_back(e);
    for (int j = i + 1; j < n; ++j) {
      QVec d(n, Rat(0));
      d[i] = 1;
      d[j] = -1;
      fam.dirs_.push_back(d);
    }
  }
  std::sort(fam.dirs_.begin(), fam.dirs_.end(), lex_less);
  fam.fan_ = std::make_shared<Fan>(build_stellahedral(n));
  return fam;
}

FanFamily FanFamily::type_b(int n) {
  const Caps& caps = Caps::global();
  if (n < 1 || n > caps.max_ground) throw input_error("bad type_b parameter");
  if (n > caps.max_n_b) throw cap_error("type_b parameter exceeds cap");
  FanFamily fam;
  fam.tag_ = FanTag::TypeB;
  fam.n_ = n;
  fam.ambient_ = n;
  fam.name_ = "type_b(" + std::to_string(n) + ")";
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    fam.dirs_.push_back(e);
    for (int j = i + 1; j < n; ++j) {
      QVec d(n, Rat(0));
      d[i] = 1;
      d[j] = -1;
      fam.dirs_.push_back(d);
      d[j] = 1;
      fam.dirs_.push_back(d);
    }
  }
  std::sort(fam.dirs_.begin(), fam.dirs_.end(), lex_less);
  fam.fan_ = std::make_shared<Fan>(build_type_b(n));
  return fam;
}

FanFamily FanFamily::product_p1(int n) {
  const Caps& caps = Caps::global();
  if (n < 1 || n > caps.max_ground) throw input_error("bad product_p1 parameter");
  if (n > caps.max_n_a) throw cap_error("product_p1 parameter exceeds cap");
  FanFamily fam;
  fam.tag_ = FanTag::ProductP1;
  fam.n_ = n;
  fam.ambient_ = n;
  fam.name_ = "product_p1(" + std::to_string(n) + ")";
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    fam.dirs_.push_back(e);
  }
  std::sort(fam.dirs_.begin(), fam.dirs_.end(), lex_less);
  fam.fan_ = std::make_shared<Fan>(build_product_p1(n));
  return fam;
}

FanFamily FanFamily::custom(int ambient, QMat dirs) {
  if (ambient < 1) throw input_error("bad custom ambient dimension");
  FanFamily fam;
  fam.tag_ = FanTag::Custom;
  fam.n_ = ambient;
  fam.ambient_ = ambient;
  fam.name_ = "custom";
  for (QVec& d : dirs) {
    if ((int)d.size() != ambient) throw input_error("direction arity mismatch");
    QVec p = primitive_signed(d);
    if (is_zero(p)) throw input_error("zero admissible direction");
    fam.dirs_.push_back(p);
  }
  std::sort(fam.dirs_.begin(), fam.dirs_.end(), lex_less);
  fam.dirs_.erase(std::unique(fam.dirs_.begin(), fam.dirs_.end()),
                  fam.dirs_.end());
  return fam;
}

bool FanFamily::in_deformation_cone(const Polyhedron& P) const {
  if (P.is_empty() || !P.bounded())
    throw input_error("deformation test needs a nonempty polytope");
  if (P.ambient() != ambient_) throw input_error("ambient mismatch");
  if (!P.is_lattice_polytope())
    throw input_error("deformation test needs integral vertices");
  for (const QVec& d : P.edge_directions())
    if (!std::binary_search(dirs_.begin(), dirs_.end(), d, lex_less))
      return false;
  return true;
}

std::shared_ptr<const Fan> FanFamily::fan() const {
  if (!fan_) throw input_error("custom family has no cone complex");
  return fan_;
}

}  // namespace polyext

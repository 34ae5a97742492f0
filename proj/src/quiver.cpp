#include "polyext/quiver.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <json.hpp>

#include "polyext/caps.hpp"

namespace polyext {

MorphismKind kind_for(CollectionFamily f) {
  switch (f) {
    case CollectionFamily::Perm:
      return MorphismKind::Inclusion;
    case CollectionFamily::Stell:
      return MorphismKind::WeakMap;
    case CollectionFamily::PermB:
      return MorphismKind::Delta;
    default:
      throw input_error("classical collections carry no morphism kind");
  }
}

const char* family_name(CollectionFamily f) {
  switch (f) {
    case CollectionFamily::Perm:
      return "perm";
    case CollectionFamily::Stell:
      return "stell";
    case CollectionFamily::PermB:
      return "permB";
    default:
      return "classical";
  }
}

namespace {

std::string label_str(int mask, int n) {
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

bool closure_holds(const Quiver& q, const QuiverNode& a, const QuiverNode& b,
                   int s) {
  switch (q.kind) {
    case MorphismKind::Inclusion:
      for (int base : a.matroid->bases()) {
        const std::vector<int>& bs = b.matroid->bases();
        if (!std::count(bs.begin(), bs.end(), base | s)) return false;
      }
      return true;
    case MorphismKind::WeakMap:
      for (int ind : a.matroid->independent_sets()) {
        int t = ind | s;
        if (b.matroid->rank_of(t) != std::popcount((unsigned)t)) return false;
      }
      return true;
    case MorphismKind::Delta:
      for (int f : a.delta->feasible()) {
        const std::vector<int>& fs = b.delta->feasible();
        if (!std::count(fs.begin(), fs.end(), f | s)) return false;
      }
      return true;
  }
  return false;
}

Polyhedron shift_by_mask(const Polyhedron& p, int mask) {
  QVec e(p.ambient(), Rat(0));
  for (int i = 0; i < p.ambient(); ++i)
    if ((mask >> i) & 1) e[i] = Rat(1);
  return p.translate(e);
}

}  // namespace

std::vector<int> augmented_morphisms(const Quiver& q, int src, int dst) {
  const QuiverNode& a = q.nodes[src];
  const QuiverNode& b = q.nodes[dst];
  std::vector<int> out;
  for (int s = a.loops;; s = (s - 1) & a.loops) {
    bool alg = closure_holds(q, a, b, s);
    bool geom = shift_by_mask(a.rep, s).subset_of(b.rep);
    if (alg != geom)
      throw internal_error("morphism closure disagrees with containment");
    if (alg) out.push_back(s);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool indecomposable(const Quiver& q, const AugMorphism& m) {
  for (int k = 0; k < (int)q.nodes.size(); ++k) {
    std::vector<int> head = augmented_morphisms(q, m.src, k);
    std::vector<int> tail = augmented_morphisms(q, k, m.dst);
    for (int s1 = m.label;; s1 = (s1 - 1) & m.label) {
      int s2 = m.label ^ s1;
      bool id1 = k == m.src && s1 == 0;
      bool id2 = k == m.dst && s2 == 0;
      if (!id1 && !id2 &&
          std::count(head.begin(), head.end(), s1) &&
          std::count(tail.begin(), tail.end(), s2))
        return false;
      if (s1 == 0) break;
    }
  }
  return true;
}

Quiver tilting_quiver(const Collection& c) {
  if (c.family == CollectionFamily::Classical)
    throw input_error("tilting quivers support perm, stell and permB");

  Quiver q;
  q.family = c.family;
  q.kind = kind_for(c.family);
  q.n = c.n;
  for (const CollectionItem& it : c.items) {
    QuiverNode node;
    if (c.family == CollectionFamily::Perm) {
      int co = it.matroid->coloops();
      std::vector<int> bases;
      for (int b : it.matroid->bases()) bases.push_back(b & ~co);
      std::sort(bases.begin(), bases.end());
      node.matroid = Matroid(c.n, std::move(bases));
      node.loops = node.matroid->loops();
      node.rep = base_polytope(*node.matroid);
    } else if (c.family == CollectionFamily::Stell) {
      node.matroid = it.matroid;
      node.loops = node.matroid->loops();
      node.rep = it.polytope;
    } else {
      int co = it.delta->coloops();
      std::vector<int> feas;
      for (int f : it.delta->feasible()) feas.push_back(f ^ co);
      std::sort(feas.begin(), feas.end());
      node.delta = DeltaMatroid(c.n, std::move(feas));
      node.loops = node.delta->loops();
      node.rep = feasible_polytope(*node.delta);
    }
    if (!node.rep.translate_equal(it.polytope))
      throw internal_error("quiver representative left the translation class");
    q.nodes.push_back(std::move(node));
  }

  for (int src = 0; src < (int)q.nodes.size(); ++src)
    for (int dst = 0; dst < (int)q.nodes.size(); ++dst) {
      if (src == dst) continue;
      for (int s : augmented_morphisms(q, src, dst)) {
        AugMorphism m{src, dst, s};
        if (indecomposable(q, m)) q.arrows.push_back(m);
      }
    }
  std::sort(q.arrows.begin(), q.arrows.end());
  return q;
}

std::string export_dot(const Quiver& q) {
  std::ostringstream os;
  os << "digraph " << family_name(q.family) << q.n << " {\n";
  os << "  rankdir=LR;\n";
  for (size_t i = 0; i < q.nodes.size(); ++i) os << "  v" << i + 1 << ";\n";
  for (const AugMorphism& m : q.arrows) {
    os << "  v" << m.src + 1 << " -> v" << m.dst + 1;
    if (m.label) os << " [label=\"" << label_str(m.label, q.n) << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const Quiver& q) {
  nlohmann::ordered_json j;
  j["family"] = family_name(q.family);
  j["n"] = q.n;
  std::vector<int> nodes;
  for (size_t i = 0; i < q.nodes.size(); ++i) nodes.push_back((int)i + 1);
  j["nodes"] = nodes;
  j["arrows"] = nlohmann::ordered_json::array();
  for (const AugMorphism& m : q.arrows) {
    nlohmann::ordered_json a;
    a["src"] = m.src + 1;
    a["dst"] = m.dst + 1;
    std::vector<int> label;
    for (int i = 0; i < q.n; ++i)
      if ((m.label >> i) & 1) label.push_back(i + 1);
    a["label"] = label;
    j["arrows"].push_back(std::move(a));
  }
  return j.dump(2) + "\n";
}

std::set<int> path_label_census(const Quiver& q, int i, int j) {
  if (i < 0 || j < 0 || i >= (int)q.nodes.size() || j >= (int)q.nodes.size())
    throw input_error("census node out of range");
  std::vector<char> state(q.nodes.size(), 0);  // 1 on stack, 2 done
  std::vector<std::set<int>> memo(q.nodes.size());

  auto rec = [&](auto&& self, int at) -> const std::set<int>& {
    if (state[at] == 1) throw internal_error("quiver has a cycle");
    if (state[at] == 2) return memo[at];
    state[at] = 1;
    if (at == j) memo[at].insert(0);
    for (const AugMorphism& m : q.arrows) {
      if (m.src != at) continue;
      for (int u : self(self, m.dst)) memo[at].insert(m.label | u);
    }
    state[at] = 2;
    return memo[at];
  };
  return rec(rec, i);
}

}  // namespace polyext

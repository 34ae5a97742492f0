#include "polyext/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "polyext/caps.hpp"
#include "polyext/linalg.hpp"

namespace polyext {

namespace {

constexpr const char* kRatPattern = "^-?[0-9]+(/[0-9]+)?$";

Json coords_to_json(const QVec& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(rat_to_string(x));
  return a;
}

Rat coord_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat((long long)j.get<long long>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw input_error("coordinate must be an integer or a rational string");
}

QVec coords_from_json(const Json& j, int ambient) {
  if (!j.is_array() || (int)j.size() != ambient)
    throw input_error("coordinate vector does not match the ambient");
  QVec v;
  v.reserve(ambient);
  for (const Json& c : j) v.push_back(coord_from_json(c));
  return v;
}

AffineForm form_from_json(const Json& j, int ambient, Sense sense) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b"))
    throw input_error("constraint must be an object with keys a and b");
  AffineForm f;
  f.a = coords_from_json(j.at("a"), ambient);
  f.b = coord_from_json(j.at("b"));
  f.sense = sense;
  if (std::all_of(f.a.begin(), f.a.end(),
                  [](const Rat& x) { return x == 0; }))
    throw input_error("constraint with zero normal vector");
  return f;
}

Json form_to_json(const AffineForm& f) {
  Json j;
  j["a"] = coords_to_json(f.a);
  j["b"] = rat_to_string(f.b);
  return j;
}

int mask_from_elements(const Json& j, int n, const char* what) {
  if (!j.is_array()) throw input_error(std::string(what) + " must be arrays");
  int mask = 0;
  for (const Json& e : j) {
    if (!e.is_number_integer())
      throw input_error(std::string(what) + " entries must be integers");
    long long v = e.get<long long>();
    if (v < 1 || v > n)
      throw input_error(std::string(what) + " element out of range");
    int bit = 1 << (int)(v - 1);
    if (mask & bit)
      throw input_error(std::string(what) + " element repeated");
    mask |= bit;
  }
  return mask;
}

Json elements_from_mask(int mask, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1) a.push_back(i + 1);
  return a;
}

Json mask_list_to_json(const std::vector<int>& masks, int n) {
  Json a = Json::array();
  for (int m : masks) a.push_back(elements_from_mask(m, n));
  return a;
}

std::string mask_set_str(int mask, int n) {
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

std::string source_string(const char* tag, const std::vector<int>& masks,
                          int n) {
  std::ostringstream os;
  os << tag << "[";
  for (size_t i = 0; i < masks.size(); ++i) {
    if (i) os << ",";
    os << mask_set_str(masks[i], n);
  }
  os << "]";
  return os.str();
}

Json betti_row(const std::pair<std::vector<long>, int>& key, long dim) {
  Json row;
  if (!key.first.empty()) {
    Json m = Json::array();
    for (long x : key.first) m.push_back(x);
    row["m"] = std::move(m);
  }
  row["p"] = key.second;
  row["dim"] = dim;
  return row;
}

struct ListingEntry {
  Polyhedron polytope;
  std::string source;
  Json sets;  // bases or feasible, already 1-based
  long count = 0;
  QMat canon;
};

Json records_from_entries(std::vector<ListingEntry>& entries,
                          const char* sets_key) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ListingEntry& a, const ListingEntry& b) {
                     if (a.count != b.count) return a.count < b.count;
                     return std::lexicographical_compare(
                         a.canon.begin(), a.canon.end(), b.canon.begin(),
                         b.canon.end(), lex_less);
                   });
  Json recs = Json::array();
  for (size_t i = 0; i < entries.size(); ++i) {
    Json r;
    r["id"] = (int)i + 1;
    r["source"] = entries[i].source;
    r[sets_key] = entries[i].sets;
    r["lattice_count"] = entries[i].count;
    r["polytope"] = polyhedron_to_json(entries[i].polytope);
    recs.push_back(std::move(r));
  }
  return recs;
}

// One record for the listing of any family at n = 0: the empty matroid.
Json empty_ground_listing(CollectionFamily family, const std::string& filter) {
  const bool is_b = family == CollectionFamily::PermB;
  const char* tag = family == CollectionFamily::Stell ? "IP"
                    : is_b                            ? "FP"
                                                      : "BP";
  Json rec;
  rec["id"] = 1;
  rec["source"] = source_string(tag, {0}, 0);
  rec[is_b ? "feasible" : "bases"] = Json::array({Json::array()});
  rec["lattice_count"] = 1;
  rec["polytope"] = Json{{"ambient", 0}, {"vertices", {Json::array()}}};
  Json j;
  j["family"] = family_to_string(family);
  j["n"] = 0;
  j["filter"] = filter;
  j["records"] = Json::array({std::move(rec)});
  return j;
}

Json schema_rational() {
  return Json{{"type", "string"}, {"pattern", kRatPattern}};
}

Json schema_coordinate() {
  return Json{{"anyOf", {Json{{"type", "integer"}}, schema_rational()}}};
}

Json schema_coord_vector() {
  return Json{{"type", "array"}, {"items", schema_coordinate()}};
}

Json schema_constraint() {
  return Json{{"type", "object"},
              {"properties",
               {{"a", schema_coord_vector()}, {"b", schema_coordinate()}}},
              {"required", {"a", "b"}},
              {"additionalProperties", false}};
}

Json schema_ambient() { return Json{{"type", "integer"}, {"minimum", 0}}; }

Json schema_polytope() {
  Json vrep{{"type", "object"},
            {"properties",
             {{"ambient", schema_ambient()},
              {"vertices",
               {{"type", "array"}, {"items", schema_coord_vector()}}}}},
            {"required", {"ambient", "vertices"}},
            {"additionalProperties", false}};
  Json constraints{{"type", "array"}, {"items", schema_constraint()}};
  Json hrep{{"type", "object"},
            {"properties",
             {{"ambient", schema_ambient()},
              {"ineq", constraints},
              {"eq", constraints}}},
            {"required", {"ambient"}},
            {"additionalProperties", false}};
  return Json{{"title", "polytope"}, {"anyOf", {vrep, hrep}}};
}

Json schema_set_list() {
  return Json{{"type", "array"},
              {"items",
               {{"type", "array"},
                {"items", {{"type", "integer"}, {"minimum", 1}}}}}};
}

Json schema_matroid() {
  return Json{{"title", "matroid"},
              {"type", "object"},
              {"properties",
               {{"n", schema_ambient()}, {"bases", schema_set_list()}}},
              {"required", {"n", "bases"}},
              {"additionalProperties", false}};
}

Json schema_delta_matroid() {
  return Json{{"title", "delta_matroid"},
              {"type", "object"},
              {"properties",
               {{"n", schema_ambient()}, {"feasible", schema_set_list()}}},
              {"required", {"n", "feasible"}},
              {"additionalProperties", false}};
}

Json schema_submodular() {
  return Json{{"title", "submodular"},
              {"type", "object"},
              {"properties",
               {{"n", schema_ambient()},
                {"values", {{"type", "array"}, {"items", schema_coordinate()}}}}},
              {"required", {"n", "values"}},
              {"additionalProperties", false}};
}

Json schema_betti() {
  Json row{{"type", "object"},
           {"properties",
            {{"m", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
             {"p", {{"type", "integer"}}},
             {"dim", {{"type", "integer"}, {"minimum", 1}}}}},
           {"required", {"p", "dim"}},
           {"additionalProperties", false}};
  Json total{{"type", "object"},
             {"properties",
              {{"p", {{"type", "integer"}}},
               {"dim", {{"type", "integer"}, {"minimum", 1}}}}},
             {"required", {"p", "dim"}},
             {"additionalProperties", false}};
  return Json{{"title", "betti"},
              {"type", "object"},
              {"properties",
               {{"ext", {{"type", "array"}, {"items", row}}},
                {"totals", {{"type", "array"}, {"items", total}}}}},
              {"required", {"ext", "totals"}},
              {"additionalProperties", false}};
}

Json schema_family() {
  return Json{{"type", "string"}, {"enum", {"perm", "stell", "permB"}}};
}

Json schema_listing() {
  Json record{{"type", "object"},
              {"properties",
               {{"id", {{"type", "integer"}, {"minimum", 1}}},
                {"source", {{"type", "string"}}},
                {"bases", schema_set_list()},
                {"feasible", schema_set_list()},
                {"lattice_count", {{"type", "integer"}, {"minimum", 1}}},
                {"polytope", schema_polytope()}}},
              {"required", {"id", "source", "lattice_count", "polytope"}},
              {"additionalProperties", false}};
  return Json{{"title", "listing"},
              {"type", "object"},
              {"properties",
               {{"family", schema_family()},
                {"n", schema_ambient()},
                {"filter", {{"type", "string"}, {"enum", {"loopless", "all"}}}},
                {"records", {{"type", "array"}, {"items", record}}}}},
              {"required", {"family", "n", "filter", "records"}},
              {"additionalProperties", false}};
}

Json schema_quiver() {
  Json arrow{{"type", "object"},
             {"properties",
              {{"src", {{"type", "integer"}, {"minimum", 1}}},
               {"dst", {{"type", "integer"}, {"minimum", 1}}},
               {"label",
                {{"type", "array"},
                 {"items", {{"type", "integer"}, {"minimum", 1}}}}}}},
             {"required", {"src", "dst", "label"}},
             {"additionalProperties", false}};
  return Json{{"title", "quiver"},
              {"type", "object"},
              {"properties",
               {{"family", schema_family()},
                {"n", schema_ambient()},
                {"nodes",
                 {{"type", "array"},
                  {"items", {{"type", "integer"}, {"minimum", 1}}}}},
                {"arrows", {{"type", "array"}, {"items", arrow}}}}},
              {"required", {"family", "n", "nodes", "arrows"}},
              {"additionalProperties", false}};
}

Json schema_verify() {
  Json violation{{"type", "object"},
                 {"properties",
                  {{"i", {{"type", "integer"}, {"minimum", 1}}},
                   {"j", {{"type", "integer"}, {"minimum", 1}}},
                   {"reason", {{"type", "string"}}},
                   {"table", schema_betti()}}},
                 {"required", {"i", "j", "reason", "table"}},
                 {"additionalProperties", false}};
  Json orbit{{"type", "object"},
             {"properties",
              {{"group", {{"type", "string"}, {"enum", {"Sn", "S2xSn", "SnB"}}}},
               {"ok", {{"type", "boolean"}}},
               {"generators",
                {{"type", "array"}, {"items", {{"type", "string"}}}}},
               {"maps",
                {{"type", "array"},
                 {"items",
                  {{"type", "array"},
                   {"items", {{"type", "integer"}, {"minimum", 1}}}}}}}}},
             {"required", {"group", "ok", "generators", "maps"}},
             {"additionalProperties", false}};
  return Json{{"title", "verify"},
              {"type", "object"},
              {"properties",
               {{"family", schema_family()},
                {"n", schema_ambient()},
                {"items", {{"type", "integer"}, {"minimum", 0}}},
                {"strongly_exceptional", {{"type", "boolean"}}},
                {"exceptional_order", {{"type", "boolean"}}},
                {"unitriangular", {{"type", "boolean"}}},
                {"orbits", {{"type", "array"}, {"items", orbit}}},
                {"violations", {{"type", "array"}, {"items", violation}}},
                {"pass", {{"type", "boolean"}}}}},
              {"required",
               {"family", "n", "items", "strongly_exceptional",
                "exceptional_order", "unitriangular", "orbits", "violations",
                "pass"}},
              {"additionalProperties", false}};
}

Json schema_certificate() {
  Json child{{"type", "object"},
             {"properties",
              {{"node", {{"type", "integer"}, {"minimum", 1}}},
               {"shift", schema_coord_vector()}}},
             {"required", {"node", "shift"}},
             {"additionalProperties", false}};
  Json complex{{"type", "object"},
               {"properties",
                {{"elements", {{"type", "integer"}, {"minimum", 1}}},
                 {"alive", {{"type", "integer"}, {"minimum", 1}}}}},
               {"required", {"elements", "alive"}},
               {"additionalProperties", false}};
  Json node{{"type", "object"},
            {"properties",
             {{"stage", {{"type", "integer"}, {"minimum", 0}}},
              {"target", schema_polytope()},
              {"item", {{"type", "integer"}, {"minimum", 1}}},
              {"complex", complex},
              {"children", {{"type", "array"}, {"items", child}}}}},
            {"required", {"stage", "target", "children"}},
            {"additionalProperties", false}};
  return Json{{"title", "certificate"},
              {"type", "object"},
              {"properties",
               {{"family", schema_family()},
                {"n", schema_ambient()},
                {"target", schema_polytope()},
                {"root", {{"type", "integer"}, {"minimum", 1}}},
                {"nodes", {{"type", "array"}, {"items", node}}}}},
              {"required", {"family", "n", "target", "root", "nodes"}},
              {"additionalProperties", false}};
}

std::vector<std::pair<std::string, Json>> make_schemas() {
  std::vector<std::pair<std::string, Json>> v;
  v.emplace_back("polytope", schema_polytope());
  v.emplace_back("matroid", schema_matroid());
  v.emplace_back("delta_matroid", schema_delta_matroid());
  v.emplace_back("submodular", schema_submodular());
  v.emplace_back("betti", schema_betti());
  v.emplace_back("listing", schema_listing());
  v.emplace_back("quiver", schema_quiver());
  v.emplace_back("verify", schema_verify());
  v.emplace_back("certificate", schema_certificate());
  return v;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON input");
  return j;
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << text;
  if (!out) throw input_error("cannot write file: " + path);
}

Json polyhedron_to_json(const Polyhedron& p) {
  Json j;
  j["ambient"] = p.ambient();
  if (p.is_empty() || p.bounded()) {
    Json verts = Json::array();
    if (!p.is_empty())
      for (const QVec& v : p.vertices()) verts.push_back(coords_to_json(v));
    j["vertices"] = std::move(verts);
  } else {
    Json ineq = Json::array();
    for (const AffineForm& f : p.facets()) ineq.push_back(form_to_json(f));
    Json eq = Json::array();
    for (const AffineForm& f : p.equalities()) eq.push_back(form_to_json(f));
    j["ineq"] = std::move(ineq);
    j["eq"] = std::move(eq);
  }
  return j;
}

Polyhedron polyhedron_from_json(const Json& j) {
  validate_input(j, "polytope");
  int ambient = j.at("ambient").get<int>();
  if (ambient > Caps::global().max_ground)
    throw cap_error("ambient dimension exceeds the ground cap");
  if (j.contains("vertices")) {
    std::vector<QVec> pts;
    for (const Json& row : j.at("vertices"))
      pts.push_back(coords_from_json(row, ambient));
    if (pts.empty()) return Polyhedron::empty(ambient);
    return Polyhedron::from_vertices(ambient, std::move(pts));
  }
  std::vector<AffineForm> forms;
  if (j.contains("ineq"))
    for (const Json& row : j.at("ineq"))
      forms.push_back(form_from_json(row, ambient, Sense::LE));
  if (j.contains("eq"))
    for (const Json& row : j.at("eq"))
      forms.push_back(form_from_json(row, ambient, Sense::EQ));
  return Polyhedron::from_hrep(ambient, std::move(forms));
}

Json matroid_to_json(const Matroid& m) {
  Json j;
  j["n"] = m.n();
  j["bases"] = mask_list_to_json(m.bases(), m.n());
  return j;
}

Matroid matroid_from_json(const Json& j) {
  validate_input(j, "matroid");
  int n = j.at("n").get<int>();
  if (n > Caps::global().max_ground)
    throw cap_error("ground set exceeds the cap");
  std::vector<int> bases;
  for (const Json& b : j.at("bases"))
    bases.push_back(mask_from_elements(b, n, "bases"));
  return Matroid(n, std::move(bases));
}

Json delta_matroid_to_json(const DeltaMatroid& d) {
  Json j;
  j["n"] = d.n();
  j["feasible"] = mask_list_to_json(d.feasible(), d.n());
  return j;
}

DeltaMatroid delta_matroid_from_json(const Json& j) {
  validate_input(j, "delta_matroid");
  int n = j.at("n").get<int>();
  if (n > Caps::global().max_ground)
    throw cap_error("ground set exceeds the cap");
  std::vector<int> feas;
  for (const Json& f : j.at("feasible"))
    feas.push_back(mask_from_elements(f, n, "feasible"));
  return DeltaMatroid(n, std::move(feas));
}

Json submodular_to_json(const SubmodularFn& f) {
  Json j;
  j["n"] = f.n;
  Json vals = Json::array();
  for (const Rat& x : f.v) vals.push_back(rat_to_string(x));
  j["values"] = std::move(vals);
  return j;
}

SubmodularFn submodular_from_json(const Json& j) {
  validate_input(j, "submodular");
  int n = j.at("n").get<int>();
  if (n > Caps::global().max_ground)
    throw cap_error("ground set exceeds the cap");
  const Json& vals = j.at("values");
  if ((int)vals.size() != (1 << n))
    throw input_error("values must list 2^n entries indexed by bitmask");
  std::vector<Rat> v;
  for (const Json& x : vals) v.push_back(coord_from_json(x));
  return SubmodularFn(n, std::move(v));
}

Json betti_to_json(const BettiTable& t) {
  Json j;
  Json rows = Json::array();
  std::map<int, long> totals;
  for (const auto& [key, dim] : t.entries) {
    rows.push_back(betti_row(key, dim));
    totals[key.second] += dim;
  }
  j["ext"] = std::move(rows);
  Json trows = Json::array();
  for (const auto& [p, dim] : totals)
    trows.push_back(Json{{"p", p}, {"dim", dim}});
  j["totals"] = std::move(trows);
  return j;
}

std::string family_to_string(CollectionFamily f) {
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

CollectionFamily family_from_string(const std::string& s) {
  if (s == "perm") return CollectionFamily::Perm;
  if (s == "stell") return CollectionFamily::Stell;
  if (s == "permB") return CollectionFamily::PermB;
  throw input_error("unknown family: " + s);
}

std::string default_filter(CollectionFamily f) {
  return f == CollectionFamily::Stell ? "all" : "loopless";
}

Json enumerate_listing(CollectionFamily family, int n,
                       const std::string& filter) {
  if (filter != "loopless" && filter != "all")
    throw input_error("filter must be loopless or all");
  if (n < 0) throw input_error("n must be nonnegative");
  if (n == 0) return empty_ground_listing(family, filter);
  Json j;
  j["family"] = family_to_string(family);
  j["n"] = n;
  j["filter"] = filter;
  SchubertFilter sf = filter == "loopless" ? SchubertFilter::Loopless
                                           : SchubertFilter::All;
  std::vector<ListingEntry> entries;
  if (family == CollectionFamily::PermB) {
    for (const DeltaMatroid& d : enumerate_delta_schubert(n, sf)) {
      ListingEntry e;
      e.polytope = feasible_polytope(d);
      e.source = source_string("FP", d.feasible(), n);
      e.sets = mask_list_to_json(d.feasible(), n);
      e.count = e.polytope.lattice_count();
      e.canon = e.polytope.canonical_form().vertices();
      entries.push_back(std::move(e));
    }
    j["records"] = records_from_entries(entries, "feasible");
    return j;
  }
  const bool stell = family == CollectionFamily::Stell;
  for (const Matroid& m : enumerate_schubert(n, sf)) {
    ListingEntry e;
    e.polytope = stell ? independence_polytope(m) : base_polytope(m);
    e.source = source_string(stell ? "IP" : "BP", m.bases(), n);
    e.sets = mask_list_to_json(m.bases(), n);
    e.count = e.polytope.lattice_count();
    e.canon = e.polytope.canonical_form().vertices();
    entries.push_back(std::move(e));
  }
  j["records"] = records_from_entries(entries, "bases");
  return j;
}

Json verify_report_to_json(const Collection& c, const ExceptionalityReport& r,
                           bool unitriangular,
                           const std::vector<OrbitCheck>& orbits,
                           const std::vector<std::string>& orbit_groups) {
  Json j;
  j["family"] = family_to_string(c.family);
  j["n"] = c.n;
  j["items"] = (int)c.items.size();
  j["strongly_exceptional"] = r.strongly_exceptional;
  j["exceptional_order"] = r.exceptional_order;
  j["unitriangular"] = unitriangular;
  Json os = Json::array();
  bool orbits_ok = true;
  for (size_t k = 0; k < orbits.size(); ++k) {
    os.push_back(orbit_check_to_json(orbits[k], orbit_groups[k]));
    orbits_ok = orbits_ok && orbits[k].ok;
  }
  j["orbits"] = std::move(os);
  Json vs = Json::array();
  for (const ExtViolation& v : r.violations) {
    Json row;
    row["i"] = v.i + 1;
    row["j"] = v.j + 1;
    row["reason"] = v.reason;
    row["table"] = betti_to_json(v.table);
    vs.push_back(std::move(row));
  }
  j["violations"] = std::move(vs);
  j["pass"] = r.pass() && unitriangular && orbits_ok;
  return j;
}

Json full_verify_report(const Collection& c) {
  ExceptionalityReport rep = verify_strong_exceptionality(c);
  bool unitri = is_unitriangular(euler_pairing_matrix(c));
  std::vector<std::string> groups;
  std::vector<SymmetryGroup> ids;
  if (c.family == CollectionFamily::Stell) {
    groups = {"Sn"};
    ids = {SymmetryGroup::Sn};
  } else if (c.family == CollectionFamily::PermB) {
    groups = {"Sn", "SnB"};
    ids = {SymmetryGroup::Sn, SymmetryGroup::SnB};
  } else if (c.family == CollectionFamily::Perm) {
    groups = {"Sn", "S2xSn"};
    ids = {SymmetryGroup::Sn, SymmetryGroup::S2xSn};
  }
  std::vector<OrbitCheck> orbits;
  for (SymmetryGroup g : ids) orbits.push_back(symmetry_orbit_check(c, g));
  return verify_report_to_json(c, rep, unitri, orbits, groups);
}

Json certificate_to_json(const FullnessCertificate& cert,
                         const Collection& c) {
  Json j;
  j["family"] = family_to_string(c.family);
  j["n"] = c.n;
  j["target"] = polyhedron_to_json(cert.target);
  j["root"] = cert.root + 1;
  Json nodes = Json::array();
  for (const CertNode& nd : cert.nodes) {
    Json n;
    n["stage"] = nd.stage;
    n["target"] = polyhedron_to_json(nd.target);
    if (nd.stage == 0) n["item"] = nd.item + 1;
    if (nd.complex) {
      Json cx;
      cx["elements"] = nd.complex->poset.size;
      cx["alive"] = (int)nd.complex->alive.size();
      n["complex"] = std::move(cx);
    }
    Json ch = Json::array();
    for (const auto& [node, shift] : nd.children) {
      Json e;
      e["node"] = node + 1;
      e["shift"] = coords_to_json(shift);
      ch.push_back(std::move(e));
    }
    n["children"] = std::move(ch);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Json orbit_check_to_json(const OrbitCheck& oc, const std::string& group) {
  Json j;
  j["group"] = group;
  j["ok"] = oc.ok;
  Json gens = Json::array();
  for (const std::string& g : oc.generator_names) gens.push_back(g);
  j["generators"] = std::move(gens);
  Json maps = Json::array();
  for (const std::vector<int>& m : oc.maps) {
    Json row = Json::array();
    for (int x : m) row.push_back(x + 1);
    maps.push_back(std::move(row));
  }
  j["maps"] = std::move(maps);
  return j;
}

Json pairing_matrix_to_json(const std::vector<std::vector<long>>& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (long x : r) row.push_back(x);
    rows.push_back(std::move(row));
  }
  return Json{{"matrix", std::move(rows)}};
}

std::string pairing_matrix_to_csv(const std::vector<std::vector<long>>& m) {
  std::ostringstream os;
  for (const auto& r : m) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) os << ",";
      os << r[i];
    }
    os << "\n";
  }
  return os.str();
}

const std::vector<std::pair<std::string, std::string>>& builtin_schemas() {
  static const std::vector<std::pair<std::string, std::string>> texts = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (const auto& [name, s] : make_schemas())
      v.emplace_back(name, dump_json(s));
    return v;
  }();
  return texts;
}

const Json& schema(const std::string& name) {
  static const std::vector<std::pair<std::string, Json>> all = make_schemas();
  for (const auto& [k, s] : all)
    if (k == name) return s;
  throw internal_error("unknown schema: " + name);
}

void validate_against_schema(const Json& value, const Json& s,
                             const std::string& path) {
  if (s.contains("anyOf")) {
    for (const Json& alt : s.at("anyOf")) {
      try {
        validate_against_schema(value, alt, path);
        return;
      } catch (const input_error&) {
      }
    }
    throw input_error(path + ": no schema alternative matches");
  }
  if (s.contains("type")) {
    const std::string t = s.at("type").get<std::string>();
    bool ok = (t == "object" && value.is_object()) ||
              (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "boolean" && value.is_boolean()) ||
              (t == "number" && value.is_number());
    if (!ok) throw input_error(path + ": expected " + t);
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const Json& e : s.at("enum")) ok = ok || e == value;
    if (!ok) throw input_error(path + ": value not in enum");
  }
  if (s.contains("pattern") && value.is_string()) {
    std::regex re(s.at("pattern").get<std::string>());
    if (!std::regex_match(value.get<std::string>(), re))
      throw input_error(path + ": string does not match pattern");
  }
  if (s.contains("minimum") && value.is_number_integer()) {
    if (value.get<long long>() < s.at("minimum").get<long long>())
      throw input_error(path + ": below minimum");
  }
  if (value.is_object()) {
    if (s.contains("required"))
      for (const Json& r : s.at("required"))
        if (!value.contains(r.get<std::string>()))
          throw input_error(path + ": missing key " + r.get<std::string>());
    const bool extra = !s.contains("additionalProperties") ||
                       s.at("additionalProperties").get<bool>();
    for (const auto& [k, sub] : value.items()) {
      if (s.contains("properties") && s.at("properties").contains(k))
        validate_against_schema(sub, s.at("properties").at(k),
                                path + "." + k);
      else if (!extra)
        throw input_error(path + ": unexpected key " + k);
    }
  }
  if (value.is_array() && s.contains("items")) {
    for (size_t i = 0; i < value.size(); ++i)
      validate_against_schema(value[i], s.at("items"),
                              path + "[" + std::to_string(i) + "]");
  }
}

void validate_input(const Json& value, const std::string& schema_name) {
  validate_against_schema(value, schema(schema_name), "$");
}

}  // namespace polyext

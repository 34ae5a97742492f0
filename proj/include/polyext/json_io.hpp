#pragma once

#include <string>

#include "json.hpp"
#include "polyext/collections.hpp"
#include "polyext/homology.hpp"
#include "polyext/matroid.hpp"

namespace polyext {

// All emitters use nlohmann's ordered_json so that key order is fixed by the
// construction site and identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Deterministic text form: two-space indent plus a trailing newline.
std::string dump_json(const Json& j);

Json parse_json_text(const std::string& text);   // input_error on bad JSON
Json parse_json_file(const std::string& path);   // input_error on IO failure
void write_text_file(const std::string& path, const std::string& text);

// Polytopes: bounded ones emit the V-rep {"ambient", "vertices"}, unbounded
// ones the H-rep {"ambient", "ineq", "eq"}. Readers accept either (but not
// both); vertex coordinates may be JSON integers or rational strings.
Json polyhedron_to_json(const Polyhedron& p);
Polyhedron polyhedron_from_json(const Json& j);

// Set families serialize as sorted 1-based element arrays.
Json matroid_to_json(const Matroid& m);
Matroid matroid_from_json(const Json& j);
Json delta_matroid_to_json(const DeltaMatroid& d);
DeltaMatroid delta_matroid_from_json(const Json& j);
Json submodular_to_json(const SubmodularFn& f);
SubmodularFn submodular_from_json(const Json& j);

// {"ext": [{"m": [...], "p": k, "dim": d}, ...], "totals": [{"p", "dim"}]}
// in map order; "m" is omitted on rows with the empty translation key.
Json betti_to_json(const BettiTable& t);

std::string family_to_string(CollectionFamily f);
CollectionFamily family_from_string(const std::string& s);
// The filter each collection is built with: loopless except stell.
std::string default_filter(CollectionFamily f);

// Enumeration listing: one record per enumerated matroid or delta matroid
// with source tag, defining sets, lattice count and polytope, sorted like
// collection items but never deduplicated. n = 0 lists the empty matroid.
Json enumerate_listing(CollectionFamily family, int n,
                       const std::string& filter);

Json verify_report_to_json(const Collection& c, const ExceptionalityReport& r,
                           bool unitriangular,
                           const std::vector<OrbitCheck>& orbits,
                           const std::vector<std::string>& orbit_groups);

// Exceptionality, unitriangularity and the orbit checks of every compatible
// symmetry group, assembled into one report; "pass" ands them all.
Json full_verify_report(const Collection& c);

Json certificate_to_json(const FullnessCertificate& cert,
                         const Collection& c);
Json orbit_check_to_json(const OrbitCheck& oc, const std::string& group);

Json pairing_matrix_to_json(const std::vector<std::vector<long>>& m);
std::string pairing_matrix_to_csv(const std::vector<std::vector<long>>& m);

// Shipped schema documents, keyed by basename without extension. The
// embedded copies are the ones validated against; the files under schemas/
// must match them byte for byte.
const std::vector<std::pair<std::string, std::string>>& builtin_schemas();
const Json& schema(const std::string& name);

// Minimal JSON Schema checker covering the subset the shipped schemas use:
// type, enum, pattern, minimum, properties, required, additionalProperties,
// items, anyOf. Throws input_error naming the offending path.
void validate_against_schema(const Json& value, const Json& schema,
                             const std::string& path = "$");
void validate_input(const Json& value, const std::string& schema_name);

}  // namespace polyext

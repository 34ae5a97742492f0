#include "polyext/caps.hpp"

#include <cstdlib>
#include <sstream>

namespace polyext {

namespace {

long long parse_ll(const std::string& s) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw input_error("bad cap value: " + s);
  }
  if (pos != s.size() || v < 0) throw input_error("bad cap value: " + s);
  return v;
}

}  // namespace

Caps Caps::from_env(const Caps& base) {
  Caps c = base;
  const char* env = std::getenv("POLYEXT_CAPS");
  if (!env || !*env) return c;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw input_error("POLYEXT_CAPS entry without '=': " + item);
    std::string key = item.substr(0, eq);
    long long v = parse_ll(item.substr(eq + 1));
    if (key == "max_ground")
      c.max_ground = (int)v;
    else if (key == "max_n_a")
      c.max_n_a = (int)v;
    else if (key == "max_n_b")
      c.max_n_b = (int)v;
    else if (key == "max_vertices")
      c.max_vertices = (std::size_t)v;
    else if (key == "max_facet_subsets")
      c.max_facet_subsets = (std::size_t)v;
    else if (key == "max_lattice_scan")
      c.max_lattice_scan = (std::size_t)v;
    else if (key == "max_nerve_simplices")
      c.max_nerve_simplices = (std::size_t)v;
    else if (key == "max_arrangement_cells")
      c.max_arrangement_cells = (std::size_t)v;
    else if (key == "max_pieces")
      c.max_pieces = (std::size_t)v;
    else if (key == "max_poset")
      c.max_poset = (std::size_t)v;
    else if (key == "max_stalk_points")
      c.max_stalk_points = (std::size_t)v;
    else
      throw input_error("unknown cap key: " + key);
  }
  if (c.max_ground > 16) throw input_error("max_ground cannot exceed 16");
  return c;
}

Caps& Caps::global() {
  static Caps caps = from_env(Caps{});
  return caps;
}

}  // namespace polyext

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyext {

// Raised on malformed user input. CLI maps it to exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a resource cap is exceeded. CLI maps it to exit code 3.
struct cap_error : std::runtime_error {
  explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal invariant violation. Never expected on valid input.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

// Resource caps. Defaults are desk scale; POLYEXT_CAPS overrides single
// fields with a "key=value,key=value" list, e.g.
//   POLYEXT_CAPS="max_n_a=4,max_nerve_simplices=50000"
struct Caps {
  int max_ground = 16;                  // hard bitmask bound
  int max_n_a = 5;                      // A-side families (perm, stell)
  int max_n_b = 3;                      // B-side family
  std::size_t max_vertices = 4096;      // per polyhedron
  std::size_t max_facet_subsets = 40000000;  // brute enumeration budget
  std::size_t max_lattice_scan = 8000000;    // bounding box grid size
  std::size_t max_nerve_simplices = 200000;
  std::size_t max_arrangement_cells = 200000;
  std::size_t max_pieces = 12;          // subdivision Koszul Boolean exponent
  std::size_t max_poset = 8192;
  std::size_t max_stalk_points = 2000000;

  static Caps& global();                // process-wide, env applied once
  static Caps from_env(const Caps& base);
};

}  // namespace polyext

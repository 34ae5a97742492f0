#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace polyext {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

// Parses "p" or "p/q" with optional sign. Throws input_error on anything else.
Rat rat_from_string(const std::string& s);

// "p" when integral, "p/q" otherwise, q > 0 canonical.
std::string rat_to_string(const Rat& r);

bool rat_is_integer(const Rat& r);

// Largest integer <= r and smallest integer >= r.
Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

long int_to_long(const Int& z);  // pre: fits
long rat_to_long(const Rat& r);  // pre: integral and fits

}  // namespace polyext

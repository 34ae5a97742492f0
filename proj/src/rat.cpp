#include "polyext/rat.hpp"

#include <cctype>
#include <limits>

#include "polyext/caps.hpp"

namespace polyext {

namespace {

bool valid_int_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int_token(s)) throw input_error("bad rational literal: '" + s + "'");
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int_token(num) || !valid_int_token(den))
    throw input_error("bad rational literal: '" + s + "'");
  Int d(den);
  if (d == 0) throw input_error("zero denominator: '" + s + "'");
  return Rat(Int(num), d);
}

std::string rat_to_string(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

Int rat_floor(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

long int_to_long(const Int& z) {
  if (z > std::numeric_limits<long>::max() || z < std::numeric_limits<long>::min())
    throw internal_error("integer out of long range");
  return z.convert_to<long>();
}

long rat_to_long(const Rat& r) {
  if (!rat_is_integer(r)) throw internal_error("rat_to_long on non-integer");
  return int_to_long(numerator(r));
}

}  // namespace polyext

#pragma once

#include <optional>

#include "polyext/rat.hpp"

namespace polyext {

Rat dot(const QVec& a, const QVec& b);
QVec vadd(const QVec& a, const QVec& b);
QVec vsub(const QVec& a, const QVec& b);
QVec vscale(const Rat& c, const QVec& a);
bool is_zero(const QVec& a);

// Lexicographic compare, -1 / 0 / +1.
int lex_cmp(const QVec& a, const QVec& b);
bool lex_less(const QVec& a, const QVec& b);

// In-place reduced row echelon; returns the pivot column per pivot row.
std::vector<std::size_t> echelon(QMat& m);

// Exact row reduction. All sizes are desk scale; dense mpq arithmetic.
std::size_t mat_rank(QMat m);

// One solution of A x = b, or nullopt if inconsistent.
std::optional<QVec> solve_linear(QMat a, QVec b);

// Basis of { x : A x = 0 }, deterministic (free columns in index order).
QMat nullspace(const QMat& a);

// Scales a rational vector to a primitive integer vector (gcd 1). Direction
// is preserved; the zero vector maps to itself.
QVec primitive(const QVec& v);

// primitive() then sign normalization: first nonzero entry positive.
QVec primitive_signed(const QVec& v);

}  // namespace polyext

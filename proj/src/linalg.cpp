#include "polyext/linalg.hpp"

#include <algorithm>

#include "polyext/caps.hpp"

namespace polyext {

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec vadd(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("vadd: size mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec vsub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("vsub: size mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec vscale(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool is_zero(const QVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

int lex_cmp(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("lex_cmp: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

bool lex_less(const QVec& a, const QVec& b) { return lex_cmp(a, b) < 0; }

// In-place row echelon; returns pivot column per pivot row.
std::vector<std::size_t> echelon(QMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    Rat inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t mat_rank(QMat m) { return echelon(m).size(); }

std::optional<QVec> solve_linear(QMat a, QVec b) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : b.size() ? 0 : 0;
  if (rows == 0) return QVec(cols, Rat(0));
  cols = a[0].size();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = echelon(a);
  // Inconsistent iff a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVec x(cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

QMat nullspace(const QMat& a) {
  if (a.empty()) return {};
  QMat m = a;
  std::size_t cols = m[0].size();
  auto pivots = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  QMat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

QVec primitive(const QVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, denominator(x));
  Int g = 0;
  std::vector<Int> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = numerator(v[i]) * (l / denominator(v[i]));
    g = gcd(g, w[i]);
  }
  if (g == 0) return QVec(v.size(), Rat(0));
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(w[i] / g);
  return r;
}

QVec primitive_signed(const QVec& v) {
  QVec r = primitive(v);
  for (const auto& x : r) {
    if (x > 0) return r;
    if (x < 0) return vscale(Rat(-1), r);
  }
  return r;
}

}  // namespace polyext

#include "polyext/lp.hpp"

#include <algorithm>

#include "polyext/caps.hpp"

namespace polyext {

Rat AffineForm::slack(const QVec& x) const { return b - dot(a, x); }

bool AffineForm::satisfied(const QVec& x) const {
  Rat s = slack(x);
  switch (sense) {
    case Sense::LE: return s >= 0;
    case Sense::LT: return s > 0;
    case Sense::EQ: return s == 0;
  }
  throw internal_error("bad sense");
}

AffineForm AffineForm::translated(const QVec& m) const {
  return AffineForm{a, b + dot(a, m), sense};
}

AffineForm AffineForm::negated_arg() const {
  QVec na(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
  return AffineForm{na, b, sense};
}

namespace {

// Overflow escape for the fast integer path.
struct Bail {};

constexpr __int128 kLim = static_cast<__int128>(1) << 62;

// Guarded 128-bit integer. All stored values stay within kLim so that
// products and 2-term sums of products fit in __int128.
struct I128 {
  __int128 v = 0;
  I128() = default;
  I128(long x) : v(x) {}
  static I128 from_int(const Int& z) {
    if (z > std::numeric_limits<long long>::max() || z < std::numeric_limits<long long>::min())
      throw Bail{};
    I128 r;
    r.v = z.convert_to<long long>();
    if (r.v > kLim || r.v < -kLim) throw Bail{};
    return r;
  }
  int sign() const { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
  I128 neg() const {
    I128 r;
    r.v = -v;
    return r;
  }
};

__int128 mulg(const I128& a, const I128& b) { return a.v * b.v; }

// (a*b - c*d) / den, exact; result must stay within kLim.
I128 pivot_cell(const I128& a, const I128& b, const I128& c, const I128& d, const I128& den) {
  __int128 num = mulg(a, b) - mulg(c, d);
  if (num % den.v != 0) throw internal_error("fraction-free pivot: inexact division");
  __int128 q = num / den.v;
  if (q > kLim || q < -kLim) throw Bail{};
  I128 r;
  r.v = q;
  return r;
}

// ratio compare: a1/b1 vs a2/b2 with b1,b2 > 0; returns -1/0/1
int ratio_cmp(const I128& a1, const I128& b1, const I128& a2, const I128& b2) {
  __int128 l = mulg(a1, b2), r = mulg(a2, b1);
  return l < r ? -1 : (l > r ? 1 : 0);
}

Int to_int(const I128& x) {
  long long lo = static_cast<long long>(x.v);  // |v| <= 2^62 fits
  return Int(lo);
}

// Same interface over boost mpz_int; never bails.
struct IBig {
  Int v;
  IBig() : v(0) {}
  IBig(long x) : v(x) {}
  static IBig from_int(const Int& z) {
    IBig r;
    r.v = z;
    return r;
  }
  int sign() const { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
  IBig neg() const {
    IBig r;
    r.v = -v;
    return r;
  }
};

IBig pivot_cell(const IBig& a, const IBig& b, const IBig& c, const IBig& d, const IBig& den) {
  Int num = a.v * b.v - c.v * d.v;
  if (num % den.v != 0) throw internal_error("fraction-free pivot: inexact division");
  IBig r;
  r.v = num / den.v;
  return r;
}

int ratio_cmp(const IBig& a1, const IBig& b1, const IBig& a2, const IBig& b2) {
  Int l = a1.v * b2.v, r = a2.v * b1.v;
  return l < r ? -1 : (l > r ? 1 : 0);
}

Int to_int(const IBig& x) { return x.v; }

// Integerized standard-form problem:
//   maximize c.s  over  A s = b, s >= 0
// with column layout [u(n) | v(n) | slack(#LE)], x = u - v.
struct Problem {
  int n = 0;       // ambient dimension
  int ncols = 0;   // structural + slack columns
  std::vector<std::vector<Int>> rows;  // coefficients, size ncols
  std::vector<Int> rhs;
  std::vector<Int> obj;  // size ncols
  Int obj_scale{1};
};

Problem build_problem(int n, const QVec& c, const std::vector<AffineForm>& forms) {
  Problem p;
  p.n = n;
  int nle = 0;
  for (const auto& f : forms) {
    if (f.sense == Sense::LT) throw internal_error("LT form reached solver core");
    if (static_cast<int>(f.a.size()) != n) throw internal_error("form arity mismatch");
    if (f.sense == Sense::LE) ++nle;
  }
  p.ncols = 2 * n + nle;
  int slack_at = 2 * n;
  for (const auto& f : forms) {
    Int l = denominator(f.b);
    for (const auto& x : f.a) l = lcm(l, denominator(x));
    std::vector<Int> row(p.ncols, Int(0));
    for (int j = 0; j < n; ++j) {
      Int aj = numerator(f.a[j]) * (l / denominator(f.a[j]));
      row[j] = aj;
      row[n + j] = -aj;
    }
    if (f.sense == Sense::LE) row[slack_at++] = 1;
    p.rows.push_back(std::move(row));
    p.rhs.push_back(numerator(f.b) * (l / denominator(f.b)));
  }
  // objective: scale to integers
  Int l = 1;
  for (const auto& x : c) l = lcm(l, denominator(x));
  p.obj.assign(p.ncols, Int(0));
  for (int j = 0; j < n; ++j) {
    Int cj = numerator(c[j]) * (l / denominator(c[j]));
    p.obj[j] = cj;
    p.obj[n + j] = -cj;
  }
  p.obj_scale = l;
  return p;
}

template <class Z>
class Simplex {
 public:
  explicit Simplex(const Problem& p) : n_(p.n) {
    m_ = static_cast<int>(p.rows.size());
    nart_ = 0;
    std::vector<int> art_row;
    // decide artificials: rows negated to rhs >= 0; LE rows with original
    // rhs >= 0 use their slack as the initial basic variable
    std::vector<int> slack_col(m_, -1);
    for (int i = 0; i < m_; ++i) {
      for (int j = 2 * p.n; j < p.ncols; ++j)
        if (p.rows[i][j] != 0) slack_col[i] = j;
    }
    for (int i = 0; i < m_; ++i) {
      bool neg = p.rhs[i] < 0;
      bool has_slack_basis = (slack_col[i] >= 0) && !neg;
      if (!has_slack_basis) art_row.push_back(i);
    }
    nart_ = static_cast<int>(art_row.size());
    ncols_ = p.ncols + nart_;
    rhs_ = ncols_;
    den_ = Z(1);
    t_.assign(m_, std::vector<Z>(ncols_ + 1));
    basis_.assign(m_, -1);
    banned_.assign(ncols_, 0);
    int art_at = p.ncols;
    for (int i = 0; i < m_; ++i) {
      bool neg = p.rhs[i] < 0;
      for (int j = 0; j < p.ncols; ++j) {
        Int cij = neg ? Int(-p.rows[i][j]) : p.rows[i][j];
        t_[i][j] = Z::from_int(cij);
      }
      t_[i][rhs_] = Z::from_int(neg ? Int(-p.rhs[i]) : p.rhs[i]);
      bool has_slack_basis = (slack_col[i] >= 0) && !neg;
      if (has_slack_basis) {
        basis_[i] = slack_col[i];
      } else {
        int col = art_at++;
        t_[i][col] = Z(1);
        basis_[i] = col;
        banned_[col] = 1;
      }
    }
    obj_.assign(ncols_ + 1, Z(0));
    for (int j = 0; j < p.ncols; ++j) obj_[j] = Z::from_int(Int(-p.obj[j]));
    if (nart_ > 0) {
      w_.assign(ncols_ + 1, Z(0));
      for (int i : art_row)
        for (int j = 0; j <= ncols_; ++j)
          if (j != basis_[i]) w_[j] = Z::from_int(to_int(w_[j]) + to_int(t_[i][j]));
    }
  }

  // returns false on infeasible
  bool phase1() {
    if (nart_ == 0) return true;
    run(w_, true);
    if (w_[rhs_].sign() != 0) return false;
    // drive leftover artificial basics out
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < 0 || !banned_[basis_[i]]) continue;
      int c = -1;
      for (int j = 0; j < ncols_; ++j)
        if (!banned_[j] && t_[i][j].sign() != 0) { c = j; break; }
      if (c < 0) {
        dead_.push_back(i);  // redundant equation
        basis_[i] = -1;
        continue;
      }
      if (t_[i][c].sign() < 0)
        for (int j = 0; j <= ncols_; ++j) t_[i][j] = t_[i][j].neg();
      pivot(i, c);
    }
    return true;
  }

  // returns false on unbounded
  bool phase2() { return run(obj_, false); }

  Rat value() const {
    return Rat(to_int(obj_[rhs_])) / Rat(to_int(den_));
  }

  QVec witness() const {
    QVec x(n_, Rat(0));
    Rat d(to_int(den_));
    for (int i = 0; i < m_; ++i) {
      int b = basis_[i];
      if (b < 0) continue;
      if (b < n_) x[b] += Rat(to_int(t_[i][rhs_])) / d;
      else if (b < 2 * n_) x[b - n_] -= Rat(to_int(t_[i][rhs_])) / d;
    }
    return x;
  }

 private:
  bool row_dead(int i) const {
    return std::find(dead_.begin(), dead_.end(), i) != dead_.end();
  }

  // Bland's rule; returns false if unbounded (only meaningful in phase 2).
  bool run(std::vector<Z>& objrow, bool phase_one) {
    for (;;) {
      int c = -1;
      for (int j = 0; j < ncols_; ++j) {
        if (banned_[j]) continue;
        int s = objrow[j].sign();
        if ((phase_one && s > 0) || (!phase_one && s < 0)) { c = j; break; }
      }
      if (c < 0) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < 0 || row_dead(i)) continue;
        if (t_[i][c].sign() <= 0) continue;
        if (r < 0) { r = i; continue; }
        int cmp = ratio_cmp(t_[i][rhs_], t_[i][c], t_[r][rhs_], t_[r][c]);
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[r])) r = i;
      }
      if (r < 0) {
        if (phase_one) throw internal_error("phase 1 unbounded");
        return false;
      }
      pivot(r, c);
    }
  }

  void pivot(int r, int c) {
    if (t_[r][c].sign() <= 0) throw internal_error("pivot element not positive");
    Z nd = t_[r][c];
    auto upd = [&](std::vector<Z>& row) {
      Z rc = row[c];
      for (int j = 0; j <= ncols_; ++j) {
        if (j == c) continue;
        row[j] = pivot_cell(row[j], nd, rc, t_[r][j], den_);
      }
      row[c] = Z(0);
    };
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      upd(t_[i]);
    }
    upd(obj_);
    if (!w_.empty()) upd(w_);
    // Row r keeps its entries; the tableau denominator becomes its pivot.
    den_ = nd;
    basis_[r] = c;
  }

  int n_, m_, ncols_, nart_, rhs_;
  Z den_;
  std::vector<std::vector<Z>> t_;
  std::vector<Z> obj_, w_;
  std::vector<int> basis_;
  std::vector<char> banned_;
  std::vector<int> dead_;
};

template <class Z>
LPResult solve_with(const Problem& p) {
  Simplex<Z> s(p);
  LPResult res;
  if (!s.phase1()) {
    res.status = LPStatus::Infeasible;
    return res;
  }
  if (!s.phase2()) {
    res.status = LPStatus::Unbounded;
    return res;
  }
  res.status = LPStatus::Feasible;
  res.value = s.value() / Rat(p.obj_scale);
  res.x = s.witness();
  return res;
}

LPResult solve(const Problem& p) {
  try {
    return solve_with<I128>(p);
  } catch (const Bail&) {
    return solve_with<IBig>(p);
  }
}

}  // namespace

LPResult lp_optimize(int n, const QVec& c, const std::vector<AffineForm>& forms) {
  if (static_cast<int>(c.size()) != n) throw internal_error("objective arity mismatch");
  if (n == 0) {
    // only constant forms: check consistency directly
    LPResult r;
    for (const auto& f : forms) {
      if (!f.satisfied(QVec{})) {
        r.status = LPStatus::Infeasible;
        return r;
      }
    }
    r.status = LPStatus::Feasible;
    r.value = 0;
    return r;
  }
  return solve(build_problem(n, c, forms));
}

LPResult lp_minimize(int n, const QVec& c, const std::vector<AffineForm>& forms) {
  QVec nc(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) nc[i] = -c[i];
  LPResult r = lp_optimize(n, nc, forms);
  if (r.status == LPStatus::Feasible) r.value = -r.value;
  return r;
}

std::optional<QVec> lp_feasible(int n, const std::vector<AffineForm>& forms) {
  bool has_strict = false;
  for (const auto& f : forms)
    if (f.sense == Sense::LT) has_strict = true;
  if (!has_strict) {
    LPResult r = lp_optimize(n, QVec(n, Rat(0)), forms);
    if (r.status == LPStatus::Feasible) return r.x;
    return std::nullopt;
  }
  // maximize s over { a.x + s <= b (strict), a.x <= / == b (others), s <= 1 }
  std::vector<AffineForm> ext;
  ext.reserve(forms.size() + 1);
  for (const auto& f : forms) {
    AffineForm g;
    g.a = f.a;
    g.a.push_back(f.sense == Sense::LT ? Rat(1) : Rat(0));
    g.b = f.b;
    g.sense = f.sense == Sense::LT ? Sense::LE : f.sense;
    ext.push_back(std::move(g));
  }
  AffineForm cap;
  cap.a = QVec(n + 1, Rat(0));
  cap.a[n] = 1;
  cap.b = 1;
  cap.sense = Sense::LE;
  ext.push_back(cap);
  QVec c(n + 1, Rat(0));
  c[n] = 1;
  LPResult r = lp_optimize(n + 1, c, ext);
  if (r.status != LPStatus::Feasible || r.value <= 0) return std::nullopt;
  QVec x(r.x.begin(), r.x.begin() + n);
  return x;
}

}  // namespace polyext

#pragma once

#include <optional>
#include <vector>

#include "polyext/linalg.hpp"
#include "polyext/rat.hpp"

namespace polyext {

enum class Sense { LE, LT, EQ };

// a . x  (sense)  b   over ambient dimension a.size().
// Trivial forms (a = 0) are rejected at the JSON boundary; internal code may
// carry them transiently but never feeds them to the solvers.
struct AffineForm {
  QVec a;
  Rat b;
  Sense sense = Sense::LE;

  // b - a.x; satisfaction is value >= 0 (LE), > 0 (LT), == 0 (EQ).
  Rat slack(const QVec& x) const;
  bool satisfied(const QVec& x) const;
  AffineForm translated(const QVec& m) const;  // same set shifted by +m
  AffineForm negated_arg() const;              // form for { -x : form(x) }
};

enum class LPStatus { Feasible, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat value;  // optimum when Feasible
  QVec x;     // witness when Feasible
};

// Exact feasibility of a mixed LE/LT/EQ system; witness satisfies strict
// inequalities strictly. Slack-maximization simplex, fraction-free integer
// fast path with big-integer fallback.
std::optional<QVec> lp_feasible(int n, const std::vector<AffineForm>& forms);

// Exact maximize c.x subject to LE/EQ forms (LT not allowed here).
LPResult lp_optimize(int n, const QVec& c, const std::vector<AffineForm>& forms);

LPResult lp_minimize(int n, const QVec& c, const std::vector<AffineForm>& forms);

}  // namespace polyext

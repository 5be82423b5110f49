#pragma once

#include "delaysl/expression.hpp"

namespace delaysl {

// One instance of the two-piece boundary value problem
//
//   p(x) y'' + q(x) y(x - Delta(x)) + lambda y = 0   on [0,pi/2) u (pi/2,pi],
//
// with p(x) = p1^2 on the left piece and p2^2 on the right piece,
// eigenparameter-dependent boundary conditions
//
//   sqrt(lambda) y(0) + p1 y'(0) = 0,     d lambda y(pi) + y'(pi) = 0,
//
// and transmission conditions across x = pi/2:
//
//   gamma1 y(pi/2-0) = delta1 y(pi/2+0),  gamma2 y'(pi/2-0) = delta2 y'(pi/2+0).
//
// The coefficients must satisfy gamma1*delta2*p1 = gamma2*delta1*p2.
struct ProblemSpec {
  double p1 = 1.0;
  double p2 = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double delta1 = 1.0;
  double delta2 = 1.0;
  double d = 1.0;
  Expr q;      // potential q(x)
  Expr delay;  // retardation Delta(x) >= 0
};

// Grid check of the smoothness and delay-range assumptions.
struct AdmissibilityReport {
  bool delay_nonneg = false;
  bool range_left_ok = false;   // x - Delta(x) >= 0 on the left piece
  bool range_right_ok = false;  // x - Delta(x) >= pi/2 on the right piece
  bool cond_a_ok = false;       // q' and Delta'' bounded (finite differences)
  bool cond_b_ok = false;       // Delta' <= 1, Delta(0) = 0, Delta(pi/2+0) = 0
  int grid_size = 0;
  double worst_margin = 0.0;    // most-violated slack across all checks

  bool all_ok() const {
    return delay_nonneg && range_left_ok && range_right_ok && cond_a_ok && cond_b_ok;
  }
};

// Returns the spec unchanged when all invariants hold. Throws
// NonpositiveStiffness, DegenerateTransmission or ConstraintViolation.
ProblemSpec validate(const ProblemSpec& spec);

// Evaluates the admissibility flags on >= grid_size uniformly spaced points
// per subinterval (grid_size is clamped up to 512). Throws
// ExpressionEvalError when q or Delta cannot be evaluated at a grid point.
AdmissibilityReport check_admissibility(const ProblemSpec& spec, int grid_size = 512);

}  // namespace delaysl

#pragma once

#include <array>
#include <span>
#include <utility>

#include "delaysl/integrator.hpp"

namespace delaysl {

// Oscillatory moments of the potential against the retardation,
//
//   A(x,s) = int_0^x (sqrt2 q/2) sin(s Delta(tau)/p1 - pi/4) dtau   (B: cos)
//   C(x,s) = int_{pi/2}^x (sqrt2 q/2) sin(s Delta(tau)/p2 - pi/4) dtau (D: cos)
//
// evaluated at the canonical endpoints x = pi/2 and x = pi. Each is bounded
// by (sqrt2/2) int |q| over its piece, uniformly in s.
struct OscFunctionals {
  double s = 0.0;
  double A_half = 0.0;
  double B_half = 0.0;
  double C_pi = 0.0;
  double D_pi = 0.0;
  int panels = 0;
};

enum class SignConvention { paper, corrected };

// Eigenvalue prediction: leading term plus the O(1/n) correction built from
// the oscillatory functionals at the leading abscissa.
struct AsymEstimate {
  int n = 0;
  double s_leading = 0.0;
  double delta_n = 0.0;
  double s_refined = 0.0;
  std::array<double, 3> bracket_terms{};  // gamma2/delta2 term, B term, D term
  SignConvention sign = SignConvention::corrected;
};

// Scale data for the uniform solution bounds: thresholds 4*q1^2, 4*q2^2 and
// the amplitude constants 2*sqrt2*|p1| (left) and
// 4*sqrt2*|p1|*(|gamma1/delta1| + |p2 gamma2/(4 p1 delta2)|) (right).
struct BoundReport {
  double q1 = 0.0;         // (1/p1) int_0^{pi/2} |q|
  double q2 = 0.0;         // (1/p2) int_{pi/2}^{pi} |q|  (absolute value)
  double q2_signed = 0.0;  // same integral without the absolute value
  double lambda_threshold = 0.0;
  double bound14 = 0.0;
  double bound15 = 0.0;
  double observed_sup_left = 0.0;
  double observed_sup_right = 0.0;
};

// p1 p2 (4n-3) / (2 (p1+p2)).
double leading_s(const ProblemSpec& spec, int n);

// Simpson panel count resolving oscillation at frequency ~ s.
int default_osc_panels(double s);

double osc_A(const ProblemSpec& spec, double x, double s, int panels);
double osc_B(const ProblemSpec& spec, double x, double s, int panels);
double osc_C(const ProblemSpec& spec, double x, double s, int panels);
double osc_D(const ProblemSpec& spec, double x, double s, int panels);

// All four functionals at x = pi/2 (A, B) and x = pi (C, D).
OscFunctionals functionals(const ProblemSpec& spec, double s, int panels);

// delta_n = sign * (4/((4n-3) pi)) [gamma2/delta2 + d gamma1 B/(p1 delta1)
//           + d gamma1 D/(p2 delta1)], functionals taken at s = leading_s(n).
// The corrected sign (negative bracket) is the default; see README.
AsymEstimate refined_s(const ProblemSpec& spec, int n, int panels,
                       SignConvention sign = SignConvention::corrected);

// Log-log decay rate of one of the four oscillatory integrals with phase
// s(2 tau - Delta(tau))/p_i + pi/4 (which = 1: cos left, 2: sin left,
// 3: cos right, 4: sin right) over the given s grid. Returns (slope, r2);
// (NaN, NaN) when every value sits below 1e-14.
std::pair<double, double> decay_check(const ProblemSpec& spec, int which,
                                      std::span<const double> s_grid, int panels);

// Leading-order eigenfunction: the pure cosine profile each piece approaches
// as n grows, normalized by u_n(0) = p1.
double leading_eigenfunction(const ProblemSpec& spec, int n, double x,
                             Side side = Side::left);

// First-order profile of the left piece at spectral parameter s:
// cos(sx/p1 + pi/4) [sqrt2 p1 + A(x,s)/(s p1)] - sin(sx/p1 + pi/4) B(x,s)/(s p1).
double refined_w1_asym(const ProblemSpec& spec, double s, double x, int panels);

// As-published refined eigenfunction formulas, evaluated verbatim with all
// functionals at s = leading_s(n). Diagnostic evaluators: their x-dependent
// first-order terms are not the exact expansion (see README), so they are
// reported, not asserted against the solver.
double paper_u1n(const ProblemSpec& spec, int n, double x, int panels);
double paper_u2n(const ProblemSpec& spec, int n, double x, int panels);

// Bound constants plus the observed node-grid sups of |w1| and |w2|.
BoundReport lemma2_report(const ProblemSpec& spec, double s, const PiecewiseSolution& sol,
                          int panels);

}  // namespace delaysl

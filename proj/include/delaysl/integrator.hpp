#pragma once

#include <array>
#include <utility>
#include <vector>

#include "delaysl/problem.hpp"

namespace delaysl {

struct IntegratorConfig {
  int steps_per_piece = 2000;        // uniform RK4 steps per subinterval (>= 16)
  int delay_correction_passes = 2;   // fixed-point passes when the retarded
                                     // argument falls inside the current step
  int residual_quadrature_panels = 512;
};

enum class Piece { left, right };
enum class Side { left, right };

struct PointValue {
  double y = 0.0;
  double yp = 0.0;
};

// Dense numerical solution of one piece: node values plus per-interval cubic
// Hermite coefficients (in the local variable t = (x - x_i)/h), so evaluation
// anywhere in [a,b] is O(1) and exact at the nodes.
struct SolutionTrace {
  Piece piece = Piece::left;
  double s = 0.0;
  double a = 0.0, b = 0.0, h = 0.0;
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> derivs;
  std::vector<std::array<double, 4>> hermite;

  PointValue eval(double x) const;  // throws OutOfDomain outside [a,b]
  double front_value() const { return values.front(); }
  double back_value() const { return values.back(); }
  double front_deriv() const { return derivs.front(); }
  double back_deriv() const { return derivs.back(); }
};

// w(x, lambda) assembled from the two pieces, lambda = s^2.
struct PiecewiseSolution {
  SolutionTrace left;
  SolutionTrace right;
  double s = 0.0;
  double lambda = 0.0;
};

// Integrates y'' = -(q(x) y(x - Delta(x)) + s^2 y)/p1^2 on [0, pi/2] from
// y(0) = p1, y'(0) = -s. The delayed value is read from the trace's own
// dense output; the retarded argument never looks forward.
SolutionTrace integrate_left(const ProblemSpec& spec, double s, const IntegratorConfig& cfg);

// Transmitted initial values for the right piece:
// (gamma1/delta1) w1(pi/2) and (gamma2/delta2) w1'(pi/2).
std::pair<double, double> transmit(const SolutionTrace& left, const ProblemSpec& spec);

// Same equation with p2 on [pi/2, pi], started from the transmitted values.
SolutionTrace integrate_right(const ProblemSpec& spec, double s,
                              std::pair<double, double> ics, const IntegratorConfig& cfg);

// integrate_left + transmit + integrate_right.
PiecewiseSolution solve_w(const ProblemSpec& spec, double s, const IntegratorConfig& cfg);

// Dense evaluation; at x = pi/2 the side flag picks the one-sided limit.
PointValue eval_solution(const PiecewiseSolution& sol, double x, Side side = Side::left);

// Max deviation, over a test grid per piece, of the trace from its
// variation-of-parameters integral form (cosine data plus a sin-kernel
// integral of q times the delayed solution), with the integral evaluated by
// composite Simpson. Small residuals certify the integration independently.
std::pair<double, double> integral_residuals(const PiecewiseSolution& sol,
                                             const ProblemSpec& spec,
                                             const IntegratorConfig& cfg);

}  // namespace delaysl

#include "delaysl/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "delaysl/util.hpp"

namespace delaysl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

// Cap on finite-difference magnitudes of q' and Delta''. A kink in Delta'
// shows up as a second difference of order (slope jump)/h, far above this.
constexpr double kDerivativeCap = 1e4;

double eval_or_rethrow(const Expr& e, double x, const char* what) {
  try {
    return e.eval(x);
  } catch (const DomainError& err) {
    throw ExpressionEvalError(std::string(what) + " failed at x = " + format_double(x) +
                              ": " + err.what());
  }
}

}  // namespace

ProblemSpec validate(const ProblemSpec& spec) {
  if (!(spec.p1 > 0.0) || !(spec.p2 > 0.0))
    throw NonpositiveStiffness("p1 and p2 must be positive, got p1 = " +
                               format_double(spec.p1) + ", p2 = " + format_double(spec.p2));
  if (std::fabs(spec.gamma1) + std::fabs(spec.delta1) == 0.0 ||
      std::fabs(spec.gamma2) + std::fabs(spec.delta2) == 0.0)
    throw DegenerateTransmission("|gamma_i| + |delta_i| must be nonzero for i = 1, 2");
  if (spec.delta1 == 0.0 || spec.delta2 == 0.0)
    throw DegenerateTransmission(
        "delta1 and delta2 must be nonzero (the transmitted initial values divide by them)");
  const double lhs = spec.gamma1 * spec.delta2 * spec.p1;
  const double rhs = spec.gamma2 * spec.delta1 * spec.p2;
  if (std::fabs(lhs - rhs) > 1e-12 * std::max(1.0, std::fabs(lhs)))
    throw ConstraintViolation("coupling identity gamma1*delta2*p1 = gamma2*delta1*p2 fails: " +
                              format_double(lhs) + " != " + format_double(rhs));
  return spec;
}

AdmissibilityReport check_admissibility(const ProblemSpec& spec, int grid_size) {
  AdmissibilityReport rep;
  const int n = std::max(grid_size, 512);
  rep.grid_size = n;

  double min_delay = std::numeric_limits<double>::infinity();
  double min_range_left = std::numeric_limits<double>::infinity();
  double min_range_right = std::numeric_limits<double>::infinity();
  double max_fd = 0.0;        // worst |q'| or |Delta''| finite difference
  double max_delay_slope = -std::numeric_limits<double>::infinity();

  const double pieces[2][2] = {{0.0, kHalfPi}, {kHalfPi, kPi}};
  for (int piece = 0; piece < 2; ++piece) {
    const double a = pieces[piece][0], b = pieces[piece][1];
    const double dx = (b - a) / (n - 1);
    const double h = std::min(1e-5, dx / 2.0);
    for (int i = 0; i < n; ++i) {
      const double x = (i == n - 1) ? b : a + i * dx;
      const double delta = eval_or_rethrow(spec.delay, x, "delay");
      min_delay = std::min(min_delay, delta);
      if (piece == 0)
        min_range_left = std::min(min_range_left, x - delta);
      else
        min_range_right = std::min(min_range_right, x - delta - kHalfPi);
      if (x - h > a && x + h < b) {
        try {
          max_fd = std::max(max_fd, std::fabs(numeric_derivative(spec.q, x, 1, h)));
          max_fd = std::max(max_fd, std::fabs(numeric_derivative(spec.delay, x, 2, h)));
          max_delay_slope = std::max(max_delay_slope, numeric_derivative(spec.delay, x, 1, h));
        } catch (const DomainError& err) {
          throw ExpressionEvalError(std::string("derivative check failed at x = ") +
                                    format_double(x) + ": " + err.what());
        }
      }
    }
  }

  const double delay_at_0 = eval_or_rethrow(spec.delay, 0.0, "delay");
  const double delay_at_mid = eval_or_rethrow(spec.delay, kHalfPi, "delay");

  rep.delay_nonneg = min_delay >= -1e-12;
  rep.range_left_ok = min_range_left >= -1e-12;
  rep.range_right_ok = min_range_right >= -1e-12;
  rep.cond_a_ok = max_fd <= kDerivativeCap;
  const double slope_margin = 1.0 - max_delay_slope;
  rep.cond_b_ok = slope_margin >= -1e-9 && std::fabs(delay_at_0) <= 1e-12 &&
                  std::fabs(delay_at_mid) <= 1e-9;

  rep.worst_margin = std::min({min_delay, min_range_left, min_range_right,
                               kDerivativeCap - max_fd, slope_margin});
  return rep;
}

}  // namespace delaysl

#include "delaysl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "delaysl/fit.hpp"
#include "delaysl/quadrature.hpp"
#include "delaysl/util.hpp"

namespace delaysl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kQuarterPi = kPi / 4.0;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_panels(int panels) {
  if (panels < 64 || panels % 2 != 0)
    throw std::invalid_argument("oscillatory quadrature needs an even panel count >= 64");
}

double osc_moment(const ProblemSpec& spec, double from, double x, double s, double p,
                  bool use_sin, int panels) {
  require_panels(panels);
  if (x == from) return 0.0;
  return simpson(from, x, panels, [&](double tau) {
    const double phase = s * spec.delay.eval(tau) / p - kQuarterPi;
    return 0.5 * kSqrt2 * spec.q.eval(tau) * (use_sin ? std::sin(phase) : std::cos(phase));
  });
}

}  // namespace

double leading_s(const ProblemSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("leading_s: n must be >= 1");
  return spec.p1 * spec.p2 * (4.0 * n - 3.0) / (2.0 * (spec.p1 + spec.p2));
}

int default_osc_panels(double s) {
  const int by_freq = 16 * static_cast<int>(std::ceil(std::max(s, 1.0)));
  return std::max(512, by_freq + (by_freq % 2));
}

double osc_A(const ProblemSpec& spec, double x, double s, int panels) {
  return osc_moment(spec, 0.0, x, s, spec.p1, true, panels);
}

double osc_B(const ProblemSpec& spec, double x, double s, int panels) {
  return osc_moment(spec, 0.0, x, s, spec.p1, false, panels);
}

double osc_C(const ProblemSpec& spec, double x, double s, int panels) {
  return osc_moment(spec, kHalfPi, x, s, spec.p2, true, panels);
}

double osc_D(const ProblemSpec& spec, double x, double s, int panels) {
  return osc_moment(spec, kHalfPi, x, s, spec.p2, false, panels);
}

OscFunctionals functionals(const ProblemSpec& spec, double s, int panels) {
  if (!(s > 0.0)) throw std::invalid_argument("functionals: s must be positive");
  OscFunctionals f;
  f.s = s;
  f.panels = panels;
  f.A_half = osc_A(spec, kHalfPi, s, panels);
  f.B_half = osc_B(spec, kHalfPi, s, panels);
  f.C_pi = osc_C(spec, kPi, s, panels);
  f.D_pi = osc_D(spec, kPi, s, panels);
  return f;
}

AsymEstimate refined_s(const ProblemSpec& spec, int n, int panels, SignConvention sign) {
  if (n < 2) throw std::invalid_argument("refined_s: n must be >= 2");
  AsymEstimate est;
  est.n = n;
  est.sign = sign;
  est.s_leading = leading_s(spec, n);
  const OscFunctionals f = functionals(spec, est.s_leading, panels);
  est.bracket_terms = {spec.gamma2 / spec.delta2,
                       spec.d * spec.gamma1 * f.B_half / (spec.p1 * spec.delta1),
                       spec.d * spec.gamma1 * f.D_pi / (spec.p2 * spec.delta1)};
  const double bracket = est.bracket_terms[0] + est.bracket_terms[1] + est.bracket_terms[2];
  const double sigma = sign == SignConvention::paper ? 1.0 : -1.0;
  est.delta_n = sigma * 4.0 / ((4.0 * n - 3.0) * kPi) * bracket;
  est.s_refined = est.s_leading + est.delta_n;
  return est;
}

std::pair<double, double> decay_check(const ProblemSpec& spec, int which,
                                      std::span<const double> s_grid, int panels) {
  if (which < 1 || which > 4) throw std::invalid_argument("decay_check: which must be 1..4");
  if (s_grid.size() < 6) throw std::invalid_argument("decay_check: need >= 6 s values");
  for (std::size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1]))
      throw std::invalid_argument("decay_check: s grid must be increasing");
  require_panels(panels);

  const bool left = which <= 2;
  const bool use_sin = (which == 2 || which == 4);
  const double from = left ? 0.0 : kHalfPi;
  const double to = left ? kHalfPi : kPi;
  const double p = left ? spec.p1 : spec.p2;

  std::vector<std::pair<double, double>> pts;
  bool any_significant = false;
  for (double s : s_grid) {
    const double v = simpson(from, to, panels, [&](double tau) {
      const double phase = s * (2.0 * tau - spec.delay.eval(tau)) / p + kQuarterPi;
      return 0.5 * kSqrt2 * spec.q.eval(tau) * (use_sin ? std::sin(phase) : std::cos(phase));
    });
    if (std::fabs(v) > 1e-14) {
      any_significant = true;
      pts.emplace_back(s, std::fabs(v));
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!any_significant || pts.size() < 4) return {nan, nan};
  const SlopeFit fit = slope_fit(pts);
  return {fit.slope, fit.r2};
}

double leading_eigenfunction(const ProblemSpec& spec, int n, double x, Side side) {
  if (n < 1) throw std::invalid_argument("leading_eigenfunction: n must be >= 1");
  const double tol = 1e-12 * (1.0 + kPi);
  if (x < -tol || x > kPi + tol)
    throw OutOfDomain("leading_eigenfunction: x = " + format_double(x) + " outside [0, pi]");
  x = std::clamp(x, 0.0, kPi);
  const double m = 4.0 * n - 3.0;
  const double psum = spec.p1 + spec.p2;
  const bool left_piece = x < kHalfPi || (x == kHalfPi && side == Side::left);
  if (left_piece)
    return kSqrt2 * spec.p1 * std::cos(spec.p2 * m * x / (2.0 * psum) + kQuarterPi);
  // Right-piece phase constant: substitute the leading abscissa into the
  // transmitted cosine profile; the phase offset is
  // (pi/4) (1 + (p2 - p1) m / (p1 + p2)).
  const double phase = spec.p1 * m * x / (2.0 * psum) +
                       kQuarterPi * (1.0 + (spec.p2 - spec.p1) * m / psum);
  return kSqrt2 * spec.p1 * spec.gamma1 / spec.delta1 * std::cos(phase);
}

double refined_w1_asym(const ProblemSpec& spec, double s, double x, int panels) {
  if (x < 0.0 || x > kHalfPi + 1e-12)
    throw OutOfDomain("refined_w1_asym: x outside [0, pi/2]");
  x = std::min(x, kHalfPi);
  const double theta = s * x / spec.p1 + kQuarterPi;
  const double a = osc_A(spec, x, s, panels);
  const double b = osc_B(spec, x, s, panels);
  return std::cos(theta) * (kSqrt2 * spec.p1 + a / (s * spec.p1)) -
         std::sin(theta) * b / (s * spec.p1);
}

double paper_u1n(const ProblemSpec& spec, int n, double x, int panels) {
  if (x < 0.0 || x > kHalfPi + 1e-12) throw OutOfDomain("paper_u1n: x outside [0, pi/2]");
  x = std::min(x, kHalfPi);
  const double m = 4.0 * n - 3.0;
  const double psum = spec.p1 + spec.p2;
  const double s0 = leading_s(spec, n);
  const double theta = spec.p2 * m * x / (2.0 * psum) + kQuarterPi;
  const double a_x = osc_A(spec, x, s0, panels);
  const double b_half = osc_B(spec, kHalfPi, s0, panels);
  const double d_pi = osc_D(spec, kPi, s0, panels);
  const double cos_coeff =
      kSqrt2 * spec.p1 + 2.0 * psum * a_x / (spec.p1 * spec.p1 * spec.p2 * m);
  const double sin_coeff =
      4.0 * kSqrt2 / (m * kPi) *
      (spec.p1 * spec.gamma2 / spec.delta2 + spec.d * spec.gamma1 * b_half / spec.delta1 +
       spec.d * spec.p1 * spec.gamma1 * d_pi / (spec.p2 * spec.delta1));
  return std::cos(theta) * cos_coeff - std::sin(theta) * sin_coeff;
}

double paper_u2n(const ProblemSpec& spec, int n, double x, int panels) {
  if (x < kHalfPi - 1e-12 || x > kPi + 1e-12)
    throw OutOfDomain("paper_u2n: x outside [pi/2, pi]");
  x = std::clamp(x, kHalfPi, kPi);
  const double m = 4.0 * n - 3.0;
  const double psum = spec.p1 + spec.p2;
  const double s0 = leading_s(spec, n);
  const double psi = m * spec.p1 * x / (2.0 * psum);
  const double phi = m * (spec.p2 - spec.p1) * kPi / (4.0 * psum) + psi + kQuarterPi;
  const double sgn_a = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n+1)
  const double sgn_b = -sgn_a;                     // (-1)^n

  const double a_half = osc_A(spec, kHalfPi, s0, panels);
  const double b_half = osc_B(spec, kHalfPi, s0, panels);
  const double c_x = osc_C(spec, x, s0, panels);
  const double d_x = osc_D(spec, x, s0, panels);
  const double d_pi = osc_D(spec, kPi, s0, panels);

  const double sin_psi = std::sin(psi), cos_psi = std::cos(psi);
  const double sin_phi = std::sin(phi), cos_phi = std::cos(phi);
  const double p1sq_p2_m = spec.p1 * spec.p1 * spec.p2 * m;
  const double p1cu_m = spec.p1 * spec.p1 * spec.p1 * m;

  const double bracket = spec.gamma2 / spec.delta2 +
                         spec.d * spec.gamma1 * b_half / (spec.p1 * spec.delta1) +
                         spec.d * spec.gamma1 * d_pi / (spec.p2 * spec.delta1);

  double u = spec.gamma1 / (2.0 * spec.delta1) *
             ((sgn_a * sin_psi + cos_phi) * (kSqrt2 * spec.p1 + 2.0 * psum * a_half / p1sq_p2_m) +
              (sgn_b * cos_psi - sin_phi) * (2.0 * psum * b_half / p1sq_p2_m));
  u -= kSqrt2 * spec.gamma2 * spec.p2 / (2.0 * spec.delta2) *
       (sgn_a * sin_psi + 4.0 / (m * kPi) * (sgn_b * cos_psi + sin_phi) * bracket + cos_phi);
  u += spec.gamma2 * psum / (spec.delta2 * p1cu_m) * b_half * (sgn_b * cos_psi - sin_phi);
  u += 2.0 * spec.gamma2 * psum * a_half / (spec.delta2 * p1cu_m) *
       (sgn_b * sin_psi + cos_phi);
  u -= 2.0 * spec.gamma1 * psum / (m * spec.delta1 * spec.p2 * spec.p2) *
       (sin_phi * d_x - c_x * cos_phi);
  return u;
}

BoundReport lemma2_report(const ProblemSpec& spec, double s, const PiecewiseSolution& sol,
                          int panels) {
  require_panels(panels);
  BoundReport rep;
  rep.q1 = simpson(0.0, kHalfPi, panels, [&](double t) { return std::fabs(spec.q.eval(t)); }) /
           spec.p1;
  rep.q2 = simpson(kHalfPi, kPi, panels, [&](double t) { return std::fabs(spec.q.eval(t)); }) /
           spec.p2;
  rep.q2_signed =
      simpson(kHalfPi, kPi, panels, [&](double t) { return spec.q.eval(t); }) / spec.p2;
  rep.lambda_threshold = std::max(4.0 * rep.q1 * rep.q1, 4.0 * rep.q2 * rep.q2);
  rep.bound14 = 2.0 * kSqrt2 * std::fabs(spec.p1);
  rep.bound15 = 4.0 * kSqrt2 * std::fabs(spec.p1) *
                (std::fabs(spec.gamma1 / spec.delta1) +
                 std::fabs(spec.p2 * spec.gamma2 / (4.0 * spec.p1 * spec.delta2)));
  for (double v : sol.left.values) rep.observed_sup_left = std::max(rep.observed_sup_left, std::fabs(v));
  for (double v : sol.right.values)
    rep.observed_sup_right = std::max(rep.observed_sup_right, std::fabs(v));
  (void)s;
  return rep;
}

}  // namespace delaysl

#include "delaysl/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "delaysl/quadrature.hpp"
#include "delaysl/util.hpp"

namespace delaysl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kSqrt2 = std::numbers::sqrt2;

std::array<double, 4> hermite_coeffs(double h, double ya, double va, double yb, double vb) {
  const double dy = yb - ya;
  return {ya, h * va, 3.0 * dy - h * (2.0 * va + vb), -2.0 * dy + h * (va + vb)};
}

double hermite_value(const std::array<double, 4>& c, double t) {
  return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

double hermite_deriv(const std::array<double, 4>& c, double t, double h) {
  return ((3.0 * c[3] * t + 2.0 * c[2]) * t + c[1]) / h;
}

// One RK4 integration of y'' = -(q(x) y(x - Delta(x)) + s^2 y)/p^2 over [a,b].
//
// q and Delta are sampled once on the half-step grid (all RK4 stage abscissae
// live there). The delayed value comes from committed Hermite intervals; when
// x - Delta(x) falls inside the step being formed, the step is recomputed
// delay_correction_passes times against its own provisional interpolant
// (first pass: extrapolation of the previous interval, or a second-order
// Taylor start). Delta(x) == 0 short-circuits to the stage value itself.
SolutionTrace integrate_piece(Piece piece, double a, double b, double p,
                              const ProblemSpec& spec, double s, double y0, double v0,
                              const IntegratorConfig& cfg) {
  const int n = std::max(cfg.steps_per_piece, 16);
  const int passes = std::max(cfg.delay_correction_passes, 1);
  const double h = (b - a) / n;
  const double s2 = s * s;
  const double p2 = p * p;

  SolutionTrace tr;
  tr.piece = piece;
  tr.s = s;
  tr.a = a;
  tr.b = b;
  tr.h = h;
  tr.nodes.resize(n + 1);
  tr.values.resize(n + 1);
  tr.derivs.resize(n + 1);
  tr.hermite.reserve(n);
  for (int i = 0; i <= n; ++i) tr.nodes[i] = a + i * h;
  tr.nodes[n] = b;
  tr.values[0] = y0;
  tr.derivs[0] = v0;

  std::vector<double> qs(2 * n + 1), ds(2 * n + 1);
  for (int j = 0; j <= 2 * n; ++j) {
    const double x = (j == 2 * n) ? b : a + 0.5 * j * h;
    qs[j] = spec.q.eval(x);
    ds[j] = spec.delay.eval(x);
  }

  // Second derivative at the left endpoint, used by the Taylor predictor of
  // the first step. Delta(a) > 0 would put the delayed argument outside the
  // piece, which integrate rejects anyway.
  double acc0 = 0.0;
  if (ds[0] == 0.0) acc0 = -(qs[0] * y0 + s2 * y0) / p2;

  bool used_provisional = false;
  const std::array<double, 4>* prov = nullptr;
  int step = 0;

  auto delayed_value = [&](double x, int half_idx, double stage_y,
                           const std::array<double, 4>* prov_coeffs) -> double {
    const double delta = ds[half_idx];
    if (delta == 0.0) return stage_y;  // no retardation at this abscissa
    double xi = x - delta;
    const double xk = tr.nodes[step];
    if (xi < a) {
      if (xi < a - 1e-9 * (1.0 + std::fabs(a)))
        throw DelayOutOfRange("retarded argument " + format_double(xi) +
                              " left of piece start " + format_double(a));
      xi = a;
    }
    if (xi <= xk) {
      int j = std::min(static_cast<int>((xi - a) / h), step - 1);
      j = std::max(j, 0);
      if (step == 0) {  // only xi == a possible here
        return y0;
      }
      const double t = (xi - tr.nodes[j]) / h;
      return hermite_value(tr.hermite[j], t);
    }
    used_provisional = true;
    const double t = (xi - xk) / h;
    if (prov_coeffs != nullptr) return hermite_value(*prov_coeffs, t);
    if (step > 0) return hermite_value(tr.hermite[step - 1], t + 1.0);  // extrapolate
    const double dx = xi - a;
    return y0 + v0 * dx + 0.5 * acc0 * dx * dx;  // Taylor start
  };

  for (step = 0; step < n; ++step) {
    const double xk = tr.nodes[step];
    const double yk = tr.values[step];
    const double vk = tr.derivs[step];
    const int j0 = 2 * step;

    std::array<double, 4> prov_storage;
    prov = nullptr;
    double yn = 0.0, vn = 0.0;
    for (int iter = 0;; ++iter) {
      used_provisional = false;
      auto accel = [&](double x, int half_idx, double y) {
        const double yd = delayed_value(x, half_idx, y, prov);
        return -(qs[half_idx] * yd + s2 * y) / p2;
      };
      const double k1y = vk;
      const double k1v = accel(xk, j0, yk);
      const double k2y = vk + 0.5 * h * k1v;
      const double k2v = accel(xk + 0.5 * h, j0 + 1, yk + 0.5 * h * k1y);
      const double k3y = vk + 0.5 * h * k2v;
      const double k3v = accel(xk + 0.5 * h, j0 + 1, yk + 0.5 * h * k2y);
      const double k4y = vk + h * k3v;
      const double k4v = accel(xk + h, j0 + 2, yk + h * k3y);
      yn = yk + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      vn = vk + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      if (!used_provisional || iter == passes) break;
      prov_storage = hermite_coeffs(h, yk, vk, yn, vn);
      prov = &prov_storage;
    }
    if (!std::isfinite(yn) || !std::isfinite(vn))
      throw NonfiniteState("state overflow at x = " + format_double(xk + h) +
                           " (s = " + format_double(s) + ")");
    tr.values[step + 1] = yn;
    tr.derivs[step + 1] = vn;
    tr.hermite.push_back(hermite_coeffs(h, yk, vk, yn, vn));
  }
  return tr;
}

}  // namespace

PointValue SolutionTrace::eval(double x) const {
  const double tol = 1e-12 * (1.0 + std::fabs(b));
  if (x < a - tol || x > b + tol)
    throw OutOfDomain("x = " + format_double(x) + " outside [" + format_double(a) + ", " +
                      format_double(b) + "]");
  x = std::clamp(x, a, b);
  const int n = static_cast<int>(hermite.size());
  int j = std::clamp(static_cast<int>((x - a) / h), 0, n - 1);
  if (x == nodes[j]) return {values[j], derivs[j]};
  if (x == nodes[j + 1]) return {values[j + 1], derivs[j + 1]};
  const double t = (x - nodes[j]) / h;
  return {hermite_value(hermite[j], t), hermite_deriv(hermite[j], t, h)};
}

SolutionTrace integrate_left(const ProblemSpec& spec, double s, const IntegratorConfig& cfg) {
  if (!(s > 0.0)) throw std::invalid_argument("integrate_left: s must be positive");
  return integrate_piece(Piece::left, 0.0, kHalfPi, spec.p1, spec, s, spec.p1, -s, cfg);
}

std::pair<double, double> transmit(const SolutionTrace& left, const ProblemSpec& spec) {
  return {spec.gamma1 / spec.delta1 * left.back_value(),
          spec.gamma2 / spec.delta2 * left.back_deriv()};
}

SolutionTrace integrate_right(const ProblemSpec& spec, double s,
                              std::pair<double, double> ics, const IntegratorConfig& cfg) {
  if (!(s > 0.0)) throw std::invalid_argument("integrate_right: s must be positive");
  return integrate_piece(Piece::right, kHalfPi, kPi, spec.p2, spec, s, ics.first, ics.second,
                         cfg);
}

PiecewiseSolution solve_w(const ProblemSpec& spec, double s, const IntegratorConfig& cfg) {
  PiecewiseSolution sol;
  sol.s = s;
  sol.lambda = s * s;
  sol.left = integrate_left(spec, s, cfg);
  sol.right = integrate_right(spec, s, transmit(sol.left, spec), cfg);
  return sol;
}

PointValue eval_solution(const PiecewiseSolution& sol, double x, Side side) {
  if (x == kHalfPi) {
    const SolutionTrace& tr = side == Side::left ? sol.left : sol.right;
    return tr.eval(x);
  }
  if (x < kHalfPi) return sol.left.eval(x);
  return sol.right.eval(x);
}

std::pair<double, double> integral_residuals(const PiecewiseSolution& sol,
                                             const ProblemSpec& spec,
                                             const IntegratorConfig& cfg) {
  const double s = sol.s;
  const int panels = std::max(cfg.residual_quadrature_panels, 8) & ~1;
  constexpr int kTestPoints = 64;

  auto delayed = [&](const SolutionTrace& tr, double tau) {
    double xi = tau - spec.delay.eval(tau);
    if (xi < tr.a) {
      if (xi < tr.a - 1e-9) throw DelayOutOfRange("retarded argument left of piece");
      xi = tr.a;
    }
    return tr.eval(xi).y;
  };

  double r1 = 0.0;
  for (int i = 0; i <= kTestPoints; ++i) {
    const double x = kHalfPi * i / kTestPoints;
    double integral = 0.0;
    if (x > 0.0) {
      integral = simpson(0.0, x, panels, [&](double tau) {
        return spec.q.eval(tau) * std::sin(s * (x - tau) / spec.p1) * delayed(sol.left, tau);
      });
    }
    const double model =
        kSqrt2 * spec.p1 * std::cos(s * x / spec.p1 + kPi / 4.0) - integral / (s * spec.p1);
    r1 = std::max(r1, std::fabs(sol.left.eval(x).y - model));
  }

  const double y_mid = spec.gamma1 / spec.delta1 * sol.left.back_value();
  const double v_mid = spec.gamma2 / spec.delta2 * sol.left.back_deriv();
  double r2 = 0.0;
  for (int i = 0; i <= kTestPoints; ++i) {
    const double x = kHalfPi + kHalfPi * i / kTestPoints;
    double integral = 0.0;
    if (x > kHalfPi) {
      integral = simpson(kHalfPi, x, panels, [&](double tau) {
        return spec.q.eval(tau) * std::sin(s * (x - tau) / spec.p2) * delayed(sol.right, tau);
      });
    }
    const double arg = s * (x - kHalfPi) / spec.p2;
    const double model = y_mid * std::cos(arg) + spec.p2 * v_mid / s * std::sin(arg) -
                         integral / (s * spec.p2);
    r2 = std::max(r2, std::fabs(sol.right.eval(x).y - model));
  }
  return {r1, r2};
}

}  // namespace delaysl

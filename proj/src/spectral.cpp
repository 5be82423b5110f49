#include "delaysl/spectral.hpp"

#include <cmath>

#include "delaysl/util.hpp"

namespace delaysl {

namespace {

// Treat |G| below this scale as an exact zero when classifying grid samples.
double zero_scale(double s) { return 1e-9 * (1.0 + s * s) * std::max(1.0, s); }

}  // namespace

double characteristic(const ProblemSpec& spec, double s, const IntegratorConfig& cfg) {
  PiecewiseSolution sol = solve_w(spec, s, cfg);
  return sol.right.back_deriv() + spec.d * s * s * sol.right.back_value();
}

Window window_for(const ProblemSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("window_for: n must be >= 1");
  const double m = 4.0 * n - 3.0;
  return {spec.p1 * spec.p2 * m / (2.0 * (spec.p1 + spec.p2)),
          spec.p1 * spec.p2 / (spec.p1 + spec.p2)};
}

EigenRecord find_root_in_window(const ProblemSpec& spec, int n, double lo, double hi,
                                const IntegratorConfig& cfg, int scan_points, double tol) {
  if (scan_points < 16) throw std::invalid_argument("find_root_in_window: scan_points < 16");
  if (!(tol > 0.0)) throw std::invalid_argument("find_root_in_window: tol must be positive");
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("find_root_in_window: window must satisfy 0 < lo < hi");

  std::vector<double> ss(scan_points + 1), gs(scan_points + 1);
  for (int i = 0; i <= scan_points; ++i) {
    ss[i] = lo + (hi - lo) * i / scan_points;
    gs[i] = characteristic(spec, ss[i], cfg);
  }

  int exact_hits = 0, exact_idx = -1, brackets = 0, bracket_idx = -1;
  for (int i = 0; i <= scan_points; ++i) {
    if (gs[i] == 0.0) {
      ++exact_hits;
      exact_idx = i;
    }
  }
  for (int i = 0; i < scan_points; ++i) {
    if (gs[i] * gs[i + 1] < 0.0) {
      ++brackets;
      bracket_idx = i;
    }
  }

  const int total = brackets + exact_hits;
  if (total == 0)
    throw NoRootInWindow("no sign change of the characteristic function in [" +
                         format_double(lo) + ", " + format_double(hi) + "] (n = " +
                         std::to_string(n) + ")");
  if (total > 1)
    throw MultipleRootsInWindow(std::to_string(total) + " sign changes in [" +
                                format_double(lo) + ", " + format_double(hi) + "] (n = " +
                                std::to_string(n) + ")");

  EigenRecord rec;
  rec.n = n;
  rec.window_lo = lo;
  rec.window_hi = hi;
  if (exact_hits == 1) {
    rec.s_n = ss[exact_idx];
    rec.bracket_lo = rec.bracket_hi = ss[exact_idx];
    rec.bisection_iters = 0;
  } else {
    double a = ss[bracket_idx], b = ss[bracket_idx + 1];
    double ga = gs[bracket_idx];
    rec.bracket_lo = a;
    rec.bracket_hi = b;
    int iters = 0;
    while (b - a > tol && iters < 200) {
      const double mid = 0.5 * (a + b);
      const double gm = characteristic(spec, mid, cfg);
      if (gm == 0.0) {
        a = b = mid;
        ++iters;
        break;
      }
      if ((ga < 0.0) == (gm < 0.0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
      ++iters;
    }
    rec.s_n = 0.5 * (a + b);
    rec.bisection_iters = iters;
  }
  rec.lambda_n = rec.s_n * rec.s_n;

  const double fd_h = 1e-5 * std::max(1.0, rec.s_n);
  const double gp = (characteristic(spec, rec.s_n + fd_h, cfg) -
                     characteristic(spec, rec.s_n - fd_h, cfg)) /
                    (2.0 * fd_h);
  rec.simplicity_margin = std::fabs(gp) / (1.0 + rec.s_n * rec.s_n);
  return rec;
}

EigenRecord find_eigenvalue(const ProblemSpec& spec, int n, const IntegratorConfig& cfg,
                            int scan_points, double tol) {
  const Window w = window_for(spec, n);
  if (!(w.lo() > 0.0))
    throw std::invalid_argument("find_eigenvalue: window for n = " + std::to_string(n) +
                                " is not positive (lo = " + format_double(w.lo()) + ")");
  return find_root_in_window(spec, n, w.lo(), w.hi(), cfg, scan_points, tol);
}

SpectrumReport spectrum(const ProblemSpec& spec, int n_min, int n_max,
                        const IntegratorConfig& cfg, int scan_points, double tol) {
  if (n_min < 1 || n_min > n_max)
    throw std::invalid_argument("spectrum: need 1 <= n_min <= n_max");
  SpectrumReport report;
  for (int n = n_min; n <= n_max; ++n) {
    try {
      report.records.push_back(find_eigenvalue(spec, n, cfg, scan_points, tol));
    } catch (const std::exception& e) {
      report.failures.push_back({n, e.what()});
    }
  }
  return report;
}

int count_in_range(const ProblemSpec& spec, double s_max, const IntegratorConfig& cfg) {
  if (!(s_max > 1.0)) throw std::invalid_argument("count_in_range: s_max must exceed 1");
  const double spacing = window_for(spec, 1).halfwidth / 4.0;
  const int m = std::max(1, static_cast<int>(std::ceil((s_max - 1.0) / spacing)));
  int count = 0;
  int prev_sign = 0;
  for (int i = 0; i <= m; ++i) {
    const double s = 1.0 + (s_max - 1.0) * i / m;
    const double g = characteristic(spec, s, cfg);
    if (std::fabs(g) <= zero_scale(s)) {
      ++count;        // root at (or straddling) the grid point itself
      prev_sign = 0;  // suppress the adjacent sign change
      continue;
    }
    const int sign = g > 0.0 ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign) ++count;
    prev_sign = sign;
  }
  return count;
}

PiecewiseSolution eigenfunction(const ProblemSpec& spec, const EigenRecord& rec,
                                const IntegratorConfig& cfg) {
  PiecewiseSolution sol = solve_w(spec, rec.s_n, cfg);
  const double residual =
      sol.right.back_deriv() + spec.d * rec.lambda_n * sol.right.back_value();
  if (std::fabs(residual) > 1e-4 * (1.0 + rec.lambda_n))
    throw Error("eigenfunction: boundary residual " + format_double(residual) +
                " too large at s = " + format_double(rec.s_n));
  return sol;
}

}  // namespace delaysl

#pragma once

#include <string>
#include <vector>

#include "delaysl/integrator.hpp"

namespace delaysl {

// One localized eigenvalue: lambda_n = s_n^2 with G(s_n) = 0, where
// G(s) = w'(pi, s^2) + d s^2 w(pi, s^2) is the boundary-condition residual
// of the shot solution.
struct EigenRecord {
  int n = 0;
  double s_n = 0.0;
  double lambda_n = 0.0;
  double window_lo = 0.0, window_hi = 0.0;    // search window
  double bracket_lo = 0.0, bracket_hi = 0.0;  // scan bracket with sign change
  double simplicity_margin = 0.0;             // |G'(s_n)| / (1 + s_n^2)
  int bisection_iters = 0;
};

struct SpectrumFailure {
  int n = 0;
  std::string error;
};

struct SpectrumReport {
  std::vector<EigenRecord> records;    // ordered by n, s_n strictly increasing
  std::vector<SpectrumFailure> failures;
};

struct Window {
  double center = 0.0;
  double halfwidth = 0.0;
  double lo() const { return center - halfwidth; }
  double hi() const { return center + halfwidth; }
};

// G(s) = F(s^2); its positive roots are the eigenvalues.
double characteristic(const ProblemSpec& spec, double s, const IntegratorConfig& cfg);

// Localization window for the n-th eigenvalue: center
// p1 p2 (4n-3) / (2 (p1+p2)), halfwidth p1 p2 / (p1+p2) (half the spacing
// between consecutive centers, so windows tile the s-axis).
Window window_for(const ProblemSpec& spec, int n);

// Scans G at scan_points+1 equispaced abscissae over [lo, hi], requires
// exactly one sign-change bracket, and bisects it to width <= tol.
// Throws NoRootInWindow / MultipleRootsInWindow.
EigenRecord find_root_in_window(const ProblemSpec& spec, int n, double lo, double hi,
                                const IntegratorConfig& cfg, int scan_points = 64,
                                double tol = 1e-8);

// find_root_in_window over window_for(spec, n). The window must be positive
// (center - halfwidth > 0); small n fail this precondition by design.
EigenRecord find_eigenvalue(const ProblemSpec& spec, int n, const IntegratorConfig& cfg,
                            int scan_points = 64, double tol = 1e-8);

// Per-n find_eigenvalue over [n_min, n_max]; failures are recorded, not thrown.
SpectrumReport spectrum(const ProblemSpec& spec, int n_min, int n_max,
                        const IntegratorConfig& cfg, int scan_points = 64, double tol = 1e-8);

// Number of roots of G on [1, s_max], counted as sign changes on a uniform
// grid of spacing <= halfwidth/4; a numerically zero G at a grid point
// counts as one root (the first eigenvalue can sit exactly at s = 1).
int count_in_range(const ProblemSpec& spec, double s_max, const IntegratorConfig& cfg);

// The solution w(x, lambda_n) for an accepted record (eigenfunctions are
// unique up to scale; this one carries w(0) = p1).
PiecewiseSolution eigenfunction(const ProblemSpec& spec, const EigenRecord& rec,
                                const IntegratorConfig& cfg);

}  // namespace delaysl

#include "delaysl/fit.hpp"

#include <cmath>

#include "delaysl/errors.hpp"

namespace delaysl {

SlopeFit slope_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4)
    throw DegenerateFit("slope_fit: need at least 4 points, got " +
                        std::to_string(points.size()));
  const auto n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, err] : points) {
    if (!(err > 0.0)) throw DegenerateFit("slope_fit: non-positive error value");
    if (!(x > 0.0)) throw DegenerateFit("slope_fit: non-positive abscissa");
    double lx = std::log(x), ly = std::log(err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw DegenerateFit("slope_fit: all abscissae equal");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean_y = sy / n;
  for (auto [x, err] : points) {
    double ly = std::log(err);
    double pred = fit.intercept + fit.slope * std::log(x);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_y) * (ly - mean_y);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace delaysl

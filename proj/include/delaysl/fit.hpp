#pragma once

#include <span>
#include <utility>

namespace delaysl {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of log(err) against log(x) over (x, err) points.
// Throws DegenerateFit for fewer than 4 points, any err <= 0, or all x equal.
SlopeFit slope_fit(std::span<const std::pair<double, double>> points);

}  // namespace delaysl

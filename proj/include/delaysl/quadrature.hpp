#pragma once

#include <stdexcept>
#include <utility>

namespace delaysl {

// Composite Simpson rule over [a,b] with an even number of panels.
template <class F>
double simpson(double a, double b, int panels, F&& f) {
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("simpson: panel count must be even and >= 2");
  const double h = (b - a) / panels;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < panels; i += 2) odd += f(a + i * h);
  for (int i = 2; i < panels; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace delaysl

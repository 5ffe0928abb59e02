#pragma once

// Gamma function via the Lanczos approximation (g = 7, 9 coefficients),
// relative error < 5e-15 on the positive axis. Arguments are restricted to
// x > 0 — every order arising here is of the form alpha, 1 - alpha,
// sigma + 1, ... with alpha in (0,1).

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracslice {

inline double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
  static constexpr double kCoef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection keeps the series argument >= 0.5.
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double a = kCoef[0];
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

inline double log_gamma(double x) { return std::log(gamma_fn(x)); }

}  // namespace fracslice

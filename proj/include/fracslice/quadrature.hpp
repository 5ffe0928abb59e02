#pragma once

// Quadrature and finite-difference building blocks:
//  - Gauss-Legendre rules (Newton on the recurrence)
//  - Gauss-Jacobi rules for weight (1-t)^A (1+t)^B (Golub-Welsch: symmetric
//    tridiagonal QL with implicit shifts, tracking first eigenvector rows)
//  - tanh-sinh nodes on [0,1] carrying stable distances to both endpoints
//  - 5-point finite differences with Richardson extrapolation; the stencil
//    shifts to one-sided automatically near domain edges.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "gamma.hpp"

namespace fracslice {

struct FdPolicy {
  double h0 = 1e-3;      // base step, scaled by max(1, |x|)
  int richardson = 2;    // extrapolation levels (>= 1)
};

enum class QuadScheme { GaussJacobi, GradedComposite };

struct QuadratureSpec {
  QuadScheme scheme = QuadScheme::GaussJacobi;
  int order = 64;  // nodes per rule (per panel for the graded scheme)
  FdPolicy fd{};

  void validate() const {
    if (order < 4 || order > 512) throw std::invalid_argument("quadrature order must be in [4,512]");
    if (!(fd.h0 > 0.0) || fd.h0 > 0.1) throw std::invalid_argument("fd h0 must be in (0, 0.1]");
    if (fd.richardson < 1 || fd.richardson > 4)
      throw std::invalid_argument("fd richardson levels must be in [1,4]");
  }
};

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

namespace quad_detail {

// Eigenvalues of a symmetric tridiagonal matrix together with the first
// component of each eigenvector (QL with implicit shifts). d = diagonal,
// e = subdiagonal (e[i] couples i and i+1), z starts as (1,0,...,0).
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::domain_error("tridiag_ql: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

inline void sort_rule(QuadRule& r) {
  std::vector<int> idx(r.x.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return r.x[a] < r.x[b]; });
  QuadRule s;
  s.x.reserve(idx.size());
  s.w.reserve(idx.size());
  for (int i : idx) {
    s.x.push_back(r.x[i]);
    s.w.push_back(r.w[i]);
  }
  r = std::move(s);
}

}  // namespace quad_detail

// Gauss-Legendre on [-1,1].
inline const QuadRule& gauss_legendre(int n) {
  thread_local std::map<int, QuadRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");

  QuadRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = -p1 / dp;
      t += dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    r.x[i] = -t;
    r.x[n - 1 - i] = t;
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(r)).first->second;
}

// Gauss-Jacobi on [-1,1] for weight (1-t)^A (1+t)^B, A,B > -1.
inline const QuadRule& gauss_jacobi(int n, double A, double B) {
  thread_local std::map<std::tuple<int, double, double>, QuadRule> cache;
  const auto key = std::make_tuple(n, A, B);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (n < 1 || !(A > -1.0) || !(B > -1.0))
    throw std::invalid_argument("gauss_jacobi: need n >= 1 and A,B > -1");

  std::vector<double> d(n), e(n - 1 >= 0 ? n : 0, 0.0), z(n, 0.0);
  z[0] = 1.0;
  e.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double den = (2.0 * k + A + B) * (2.0 * k + A + B + 2.0);
    d[k] = den == 0.0 ? (B - A) / (A + B + 2.0) : (B * B - A * A) / den;
    if (k >= 1) {
      const double s = 2.0 * k + A + B;
      e[k - 1] = std::sqrt(4.0 * k * (k + A) * (k + B) * (k + A + B) /
                           (s * s * (s + 1.0) * (s - 1.0)));
    }
  }
  e.resize(n - 1 > 0 ? n - 1 : 0);
  quad_detail::tridiag_ql(d, e, z);

  const double mu0 = std::pow(2.0, A + B + 1.0) * gamma_fn(A + 1.0) * gamma_fn(B + 1.0) /
                     gamma_fn(A + B + 2.0);
  QuadRule r;
  r.x = d;
  r.w.resize(n);
  for (int i = 0; i < n; ++i) r.w[i] = mu0 * z[i] * z[i];
  quad_detail::sort_rule(r);
  return cache.emplace(key, std::move(r)).first->second;
}

// tanh-sinh nodes for integrals over [0,1]: sum_i w[i] f(x_i) with the node
// position available as a stable distance from either endpoint.
struct TanhSinhRule {
  std::vector<double> from_left;   // x_i
  std::vector<double> from_right;  // 1 - x_i, computed without cancellation
  std::vector<double> w;
};

inline const TanhSinhRule& tanh_sinh(int n) {
  thread_local std::map<int, TanhSinhRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 4) throw std::invalid_argument("tanh_sinh: n >= 4 required");

  const double tmax = 3.8;
  const double h = 2.0 * tmax / (n - 1);
  TanhSinhRule r;
  r.from_left.resize(n);
  r.from_right.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = -tmax + i * h;
    const double wu = 0.5 * std::numbers::pi * std::sinh(u);
    const double ex = std::exp(-2.0 * wu);
    const double denom = 1.0 + ex;
    r.from_left[i] = 1.0 / denom;
    r.from_right[i] = ex / denom;
    r.w[i] = h * std::numbers::pi * std::cosh(u) * ex / (denom * denom);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

namespace fd_detail {

// 5-point derivative stencils of order 4, indexed by shift in [-2, 2]:
// nodes at offsets (shift-2 .. shift+2) * h, weights / (12 h).
inline const double* stencil_weights(int shift) {
  static constexpr double kW[5][5] = {
      {3.0, -16.0, 36.0, -48.0, 25.0},   // shift -2: offsets -4..0
      {-1.0, 6.0, -18.0, 10.0, 3.0},     // shift -1: offsets -3..1
      {1.0, -8.0, 0.0, 8.0, -1.0},       // shift  0: offsets -2..2
      {-3.0, -10.0, 18.0, -6.0, 1.0},    // shift +1: offsets -1..3
      {-25.0, 48.0, -36.0, 16.0, -3.0},  // shift +2: offsets  0..4
  };
  return kW[shift + 2];
}

}  // namespace fd_detail

// d/dx of a V-valued function (V: double, complex, Multivector - anything with
// +, -, double scaling). The 5-point stencil recenters near [lo, hi] edges;
// Richardson levels halve the step. Throws if even the one-sided stencil
// cannot fit.
template <class V, class Fn>
V fd_derivative(Fn&& f, double x, const FdPolicy& pol, double lo, double hi) {
  const double h_base = pol.h0 * std::max(1.0, std::fabs(x));
  const int levels = std::max(1, pol.richardson);

  // The stencil shape is fixed at the coarsest step so that every Richardson
  // level shares one error expansion; mixing centered and shifted stencils
  // would void the extrapolation.
  int shift = 0;
  if (x - 2.0 * h_base < lo) shift = (x - h_base < lo) ? 2 : 1;
  if (x + 2.0 * h_base > hi) shift = (x + h_base > hi) ? -2 : -1;
  if (x + (shift - 2.0) * h_base < lo - 1e-15 * std::max(1.0, std::fabs(lo)) ||
      x + (shift + 2.0) * h_base > hi + 1e-15 * std::max(1.0, std::fabs(hi)))
    throw std::domain_error("fd_derivative: stencil does not fit in domain");
  const bool shifted = shift != 0;

  auto eval_fd = [&](double h) -> V {
    const double* w = fd_detail::stencil_weights(shift);
    V acc = f(x + (shift - 2.0) * h) * (w[0] / (12.0 * h));
    for (int j = 1; j < 5; ++j) acc += f(x + (shift - 2.0 + j) * h) * (w[j] / (12.0 * h));
    return acc;
  };

  std::vector<V> row;
  row.reserve(levels);
  for (int j = 0; j < levels; ++j) row.push_back(eval_fd(h_base / (1 << j)));
  // Error exponents: 4,6,8,... for centered stencils; 4,5,6,... once shifted.
  for (int k = 1; k < levels; ++k) {
    const double p = shifted ? (3.0 + k) : (2.0 + 2.0 * k);
    const double r = std::pow(2.0, p);
    for (int j = 0; j + k < levels; ++j) row[j] = (row[j + 1] * r - row[j]) * (1.0 / (r - 1.0));
  }
  return row[0];
}

template <class V, class Fn>
V fd_derivative(Fn&& f, double x, const FdPolicy& pol) {
  return fd_derivative<V>(std::forward<Fn>(f), x, pol, -1e300, 1e300);
}

}  // namespace fracslice

#pragma once

// Discretized contours inside a slice plane C_I and the slice-plane integrals
// built on them. A contour carries nodes (u, v, du, dv, w): position, unit
// tangent components, and quadrature weight, oriented counterclockwise.
// Circles use the periodic trapezoid rule (spectrally accurate); straight
// edges use per-edge Gauss-Legendre.
//
// The surface element of the slice plane pairs with the complex line element
// as d_sigma = -dw I, so every integral below accumulates terms
//   W(w) (du + I dv) (-I) f(w) weight
// with W complex-valued in C_I.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "multivector.hpp"
#include "quadrature.hpp"
#include "slice_fn.hpp"

namespace fracslice::slicefn {

struct ContourNode {
  double u, v;    // position in slice coordinates
  double du, dv;  // tangent (direction of traversal), not normalized
  double w;       // parameter weight: integral ~ sum w * integrand * (du,dv)
};

struct Contour {
  UnitImaginary I;
  std::vector<ContourNode> nodes;

  static Contour circle(double u0, double v0, double rho, int count, const UnitImaginary& I) {
    if (!(rho > 0.0) || count < 8) throw std::invalid_argument("circle: need rho > 0, count >= 8");
    Contour c{I, {}};
    c.nodes.reserve(count);
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * std::numbers::pi * k / count;
      c.nodes.push_back({u0 + rho * std::cos(th), v0 + rho * std::sin(th), -rho * std::sin(th),
                         rho * std::cos(th), 2.0 * std::numbers::pi / count});
    }
    return c;
  }

  static Contour rectangle(double ulo, double uhi, double vlo, double vhi, int per_edge,
                           const UnitImaginary& I) {
    if (!(uhi > ulo) || !(vhi > vlo) || per_edge < 2)
      throw std::invalid_argument("rectangle: degenerate edges");
    Contour c{I, {}};
    const QuadRule& gl = gauss_legendre(per_edge);
    auto edge = [&](double ua, double va, double ub, double vb) {
      const double mu = 0.5 * (ua + ub), hu = 0.5 * (ub - ua);
      const double mv = 0.5 * (va + vb), hv = 0.5 * (vb - va);
      for (int i = 0; i < per_edge; ++i)
        c.nodes.push_back(
            {mu + hu * gl.x[i], mv + hv * gl.x[i], hu, hv, gl.w[i]});
    };
    edge(ulo, vlo, uhi, vlo);
    edge(uhi, vlo, uhi, vhi);
    edge(uhi, vhi, ulo, vhi);
    edge(ulo, vhi, ulo, vlo);
    return c;
  }
};

// sum_k w_k * [W(w_k) dz_k (-i)] f(w_k), the complex bracket lifted into C_I
// and multiplied onto f from the left.
template <class WeightFn>
Multivector weighted_contour_integral(WeightFn&& W, const Contour& contour,
                                      const SliceFunction& f) {
  const int n = f.box.n;
  const Multivector Imv = contour.I.as_multivector();
  Multivector acc(n);
  for (const ContourNode& nd : contour.nodes) {
    const std::complex<double> dz(nd.du, nd.dv);
    const std::complex<double> factor =
        W(nd.u, nd.v) * dz * std::complex<double>(0.0, -1.0) * nd.w;
    const Multivector lift = Multivector::scalar(n, factor.real()) + Imv * factor.imag();
    acc += lift * eval_point(f, nd.u, nd.v, contour.I);
  }
  return acc;
}

// (1/2pi) * integral of e^{lambda(Re w - Re z)} (w - z)^{-1} d_sigma f(w)
// over a circle around z: reproduces f(z) for functions annihilated by the
// rate-lambda slice Cauchy-Riemann operator.
inline Multivector cauchy_value(const SliceFunction& f, double u0, double v0, double rho,
                                int count, const UnitImaginary& I, double zu, double zv,
                                double lambda) {
  const double dist = std::hypot(zu - u0, zv - v0);
  if (dist > 0.97 * rho)
    throw std::domain_error("cauchy_value: evaluation point too close to the contour");
  Contour c = Contour::circle(u0, v0, rho, count, I);
  auto W = [&](double wu, double wv) {
    const std::complex<double> dz(wu - zu, wv - zv);
    return std::exp(lambda * (wu - zu)) / dz;
  };
  return weighted_contour_integral(W, c, f) * (1.0 / (2.0 * std::numbers::pi));
}

// || integral of e^{lambda Re w} d_sigma f(w) || over a closed contour:
// vanishes on the rate-lambda kernel.
inline double cauchy_theorem_residual(const SliceFunction& f, const Contour& contour,
                                      double lambda) {
  auto W = [lambda](double wu, double) { return std::complex<double>(std::exp(lambda * wu), 0.0); };
  return weighted_contour_integral(W, contour, f).norm_inf();
}

struct MoreraReport {
  double max_residual = 0.0;
  int trials = 0;
  bool pass = false;
};

// Seeded random closed contours (circles and rectangles on random slices)
// inside the box, mirrored into v < 0 when they dip below the axis. pass <=>
// every weighted loop integral vanishes within tol.
inline MoreraReport morera_check(const SliceFunction& f, double lambda, int trials,
                                 std::uint64_t seed, double tol, int nodes_per_contour) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  const AxialBox& box = f.box;

  MoreraReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::array<double, clifford::kMaxN> d{};
    for (int i = 0; i < box.n; ++i) d[i] = gauss(rng);
    UnitImaginary I(box.n, d);

    double resid = 0.0;
    if (t % 2 == 0) {
      const double rho = (0.08 + 0.3 * unit(rng)) * std::min(box.b - box.a, box.c);
      const double u0 = box.a + rho + unit(rng) * (box.b - box.a - 2.0 * rho);
      const double v0 = -box.c + rho + unit(rng) * 2.0 * (box.c - rho);
      Contour c = Contour::circle(u0, v0, rho, nodes_per_contour, I);
      resid = cauchy_theorem_residual(f, c, lambda);
    } else {
      const double w = (0.1 + 0.5 * unit(rng)) * (box.b - box.a);
      const double h = (0.1 + 0.5 * unit(rng)) * box.c;
      const double ulo = box.a + unit(rng) * (box.b - box.a - w);
      const double vlo = -box.c + unit(rng) * (2.0 * box.c - h);
      Contour c = Contour::rectangle(ulo, ulo + w, vlo, vlo + h, nodes_per_contour / 4 + 4, I);
      resid = cauchy_theorem_residual(f, c, lambda);
    }
    rep.max_residual = std::max(rep.max_residual, resid);
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace fracslice::slicefn

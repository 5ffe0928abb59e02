#pragma once

// Slice-plane function machinery. A SliceFunction evaluates on the upper
// half-plane of every slice C_I = span{1, I}: arguments (u, v, I) with
// v >= 0; the lower half-plane is reached through the mirror
// f(u - I v) = f(u + (-I) v). Analytic partial derivatives are optional;
// finite differences fill in when they are absent.
//
// The slice Cauchy-Riemann operator with decay rate lambda is
//   cr(f) = 1/2 (d_u f + I d_v f + lambda f),
// whose kernel contains e^{-lambda u} (a0 + z a1 + z^2 a2 + ...) with
// z = u + I v. Multiplying by e^{lambda u} intertwines cr at rate lambda
// with cr at rate 0 exactly.

#include <complex>
#include <functional>
#include <vector>

#include "multivector.hpp"
#include "quadrature.hpp"
#include "splitting.hpp"

namespace fracslice::slicefn {

using clifford::Multivector;
using clifford::SplittingBasis;
using clifford::UnitImaginary;

struct AxialBox {
  double a = 0.0, b = 1.0, c = 1.0;  // u in [a,b], v in [0,c]
  int n = 3;

  void validate() const {
    if (!(b > a)) throw std::invalid_argument("AxialBox: requires b > a");
    if (!(c > 0.0)) throw std::invalid_argument("AxialBox: requires c > 0");
    if (n < 1 || n > clifford::kMaxN) throw std::invalid_argument("AxialBox: n out of range");
  }
};

using SliceEval = std::function<Multivector(double, double, const UnitImaginary&)>;

struct SliceFunction {
  AxialBox box;
  SliceEval eval;      // defined for v >= 0
  SliceEval du, dv;    // optional analytic partials (same domain)
};

// Evaluate anywhere in the slice plane, mirroring negative v.
inline Multivector eval_point(const SliceFunction& f, double u, double v,
                              const UnitImaginary& I) {
  return v >= 0.0 ? f.eval(u, v, I) : f.eval(u, -v, -I);
}

inline Multivector partial_u(const SliceFunction& f, double u, double v, const UnitImaginary& I,
                             const FdPolicy& pol) {
  if (f.du) return f.du(u, v, I);
  auto line = [&](double t) { return eval_point(f, t, v, I); };
  return fd_derivative<Multivector>(line, u, pol, f.box.a, f.box.b);
}

inline Multivector partial_v(const SliceFunction& f, double u, double v, const UnitImaginary& I,
                             const FdPolicy& pol) {
  if (f.dv) return f.dv(u, v, I);
  // The mirror extends every slice function to v in [-c, c], so the stencil
  // may cross v = 0 freely.
  auto line = [&](double t) { return eval_point(f, u, t, I); };
  return fd_derivative<Multivector>(line, v, pol, -f.box.c, f.box.c);
}

// cr(f)(u + I v) = 1/2 (d_u f + I d_v f + lambda f).
inline Multivector cr_residual(const SliceFunction& f, double u, double v,
                               const UnitImaginary& I, double lambda, const FdPolicy& pol) {
  Multivector out = partial_u(f, u, v, I, pol);
  out += I.as_multivector() * partial_v(f, u, v, I, pol);
  out += eval_point(f, u, v, I) * lambda;
  return out * 0.5;
}

// Residual of the intertwining identity
//   dbar[e^{lambda u} f] = e^{lambda u} (dbar f + (lambda/2) f),
// with both sides differentiated through the same finite-difference path so
// the identity is bitwise exact at lambda = 0.
inline Multivector exp_conjugation_residual(const SliceFunction& f, double u, double v,
                                            const UnitImaginary& I, double lambda,
                                            const FdPolicy& pol) {
  SliceFunction bare{f.box, f.eval, nullptr, nullptr};
  SliceFunction wrapped{f.box,
                        [&f, lambda](double uu, double vv, const UnitImaginary& J) {
                          return eval_point(f, uu, vv, J) * std::exp(lambda * uu);
                        },
                        nullptr, nullptr};
  // dbar of the wrapped function = cr at rate 0.
  Multivector lhs = cr_residual(wrapped, u, v, I, 0.0, pol);
  Multivector rhs = cr_residual(bare, u, v, I, lambda, pol) * std::exp(lambda * u);
  return lhs - rhs;
}

// 1/2 (1 - Ix I) f(u + I v) + 1/2 (1 + Ix I) f(u - I v): for slice functions
// this recovers the value on the slice through Ix from values on the slice
// through I.
inline Multivector representation_combine(const SliceFunction& f, double u, double v,
                                          const UnitImaginary& I, const UnitImaginary& Ix) {
  const int n = f.box.n;
  const Multivector one = Multivector::scalar(n, 1.0);
  const Multivector ixi = Ix.as_multivector() * I.as_multivector();
  Multivector plus = eval_point(f, u, v, I);
  Multivector minus = eval_point(f, u, -v, I);
  return ((one - ixi) * plus + (one + ixi) * minus) * 0.5;
}

inline double representation_residual(const SliceFunction& f, double u, double v,
                                      const UnitImaginary& I, const UnitImaginary& Ix) {
  return (representation_combine(f, u, v, I, Ix) - eval_point(f, u, v, Ix)).norm_inf();
}

// Component-wise holomorphy through the splitting: the frame components of
// e^{lambda u} f on the slice through frame[0] must satisfy the classical
// Cauchy-Riemann system. Returns the largest component residual
// |1/2 (d_u G_A + i d_v G_A)|. This is an independent path from cr_residual:
// the derivatives act on scalar complex components after splitting.
inline double splitting_holomorphy_residual(const SliceFunction& f, const SplittingBasis& basis,
                                            double u, double v, double lambda,
                                            const FdPolicy& pol) {
  const UnitImaginary& I = basis.frame[0];
  const int half = 1 << (f.box.n - 1);
  double worst = 0.0;
  for (int a = 0; a < half; ++a) {
    auto comp_u = [&](double t) {
      return clifford::split(eval_point(f, t, v, I) * std::exp(lambda * t), basis)[a];
    };
    auto comp_v = [&](double t) {
      return clifford::split(eval_point(f, u, t, I) * std::exp(lambda * u), basis)[a];
    };
    const std::complex<double> gu =
        fd_derivative<std::complex<double>>(comp_u, u, pol, f.box.a, f.box.b);
    const std::complex<double> gv =
        fd_derivative<std::complex<double>>(comp_v, v, pol, -f.box.c, f.box.c);
    const std::complex<double> res = 0.5 * (gu + std::complex<double>(0.0, 1.0) * gv);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

// Slice-regular building block: e^{-lambda u} sum_k (u + I v)^k a_k with
// right-side multivector coefficients. Analytic partials included.
inline SliceFunction slice_poly(const AxialBox& box, std::vector<Multivector> coeffs,
                                double lambda) {
  box.validate();
  const int n = box.n;
  auto lift = [n](std::complex<double> w, const UnitImaginary& I) {
    return Multivector::scalar(n, w.real()) + I.as_multivector() * w.imag();
  };
  auto series = [coeffs, lift, n](std::complex<double> z, const UnitImaginary& I) {
    Multivector acc(n);
    std::complex<double> zk(1.0, 0.0);
    for (const auto& a : coeffs) {
      acc += lift(zk, I) * a;
      zk *= z;
    }
    return acc;
  };
  auto dseries = [coeffs, lift, n](std::complex<double> z, const UnitImaginary& I) {
    Multivector acc(n);
    std::complex<double> zk(1.0, 0.0);
    for (size_t k = 1; k < coeffs.size(); ++k) {
      acc += lift(static_cast<double>(k) * zk, I) * coeffs[k];
      zk *= z;
    }
    return acc;
  };

  SliceFunction f;
  f.box = box;
  f.eval = [series, lambda](double u, double v, const UnitImaginary& I) {
    return series({u, v}, I) * std::exp(-lambda * u);
  };
  f.du = [series, dseries, lambda](double u, double v, const UnitImaginary& I) {
    return (dseries({u, v}, I) - series({u, v}, I) * lambda) * std::exp(-lambda * u);
  };
  f.dv = [dseries, lambda, n](double u, double v, const UnitImaginary& I) {
    return I.as_multivector() * dseries({u, v}, I) * std::exp(-lambda * u);
  };
  return f;
}

}  // namespace fracslice::slicefn

#pragma once

// Strictly increasing C^1 weight functions on a closed interval, used as the
// integration scale of the fractional operators. Two closed-form families:
//   Affine : g(u) = m u + q          (lambda = 0)
//   ExpODE : g(u) = d1 e^{-2 L u} + d2, -2 d1 L > 0   (lambda = L)
// both solving y'' + 2 lambda y' = 0, plus a Custom escape hatch. The family
// carries its lambda so configurations can cross-check operator parameters
// against the weight pair.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace fracslice::realfrac {

enum class WeightFamily { Affine, ExpODE, Custom };

struct FracOrder {
  double v;
  explicit FracOrder(double a) : v(a) {
    if (!(a > 0.0) || !(a < 1.0)) throw std::invalid_argument("FracOrder: requires 0 < a < 1");
  }
};

class WeightFunction {
 public:
  static WeightFunction affine(double slope, double intercept, double lo, double hi) {
    if (!(slope > 0.0)) throw std::invalid_argument("affine weight: slope must be > 0");
    WeightFunction g(WeightFamily::Affine, lo, hi, 0.0);
    g.p1_ = slope;
    g.p2_ = intercept;
    g.check_increasing();
    return g;
  }

  static WeightFunction exp_ode(double d1, double d2, double lambda, double lo, double hi) {
    if (lambda == 0.0) throw std::invalid_argument("exp_ode weight: lambda must be nonzero");
    if (!(-2.0 * d1 * lambda > 0.0))
      throw std::invalid_argument("exp_ode weight: requires -2*d1*lambda > 0");
    WeightFunction g(WeightFamily::ExpODE, lo, hi, lambda);
    g.p1_ = d1;
    g.p2_ = d2;
    g.check_increasing();
    return g;
  }

  static WeightFunction custom(std::function<double(double)> f, std::function<double(double)> df,
                               double lo, double hi, double lambda = 0.0,
                               std::function<double(double)> inverse = nullptr) {
    WeightFunction g(WeightFamily::Custom, lo, hi, lambda);
    g.f_ = std::move(f);
    g.df_ = std::move(df);
    g.inv_ = std::move(inverse);
    g.check_increasing();
    return g;
  }

  WeightFamily family() const { return family_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double lambda() const { return lambda_; }

  double value(double u) const {
    switch (family_) {
      case WeightFamily::Affine:
        return p1_ * u + p2_;
      case WeightFamily::ExpODE:
        return p1_ * std::exp(-2.0 * lambda_ * u) + p2_;
      default:
        return f_(u);
    }
  }

  double deriv(double u) const {
    switch (family_) {
      case WeightFamily::Affine:
        return p1_;
      case WeightFamily::ExpODE:
        return -2.0 * lambda_ * p1_ * std::exp(-2.0 * lambda_ * u);
      default:
        return df_(u);
    }
  }

  // g(x) - g(t), cancellation-free for the closed-form families.
  double diff(double x, double t) const {
    switch (family_) {
      case WeightFamily::Affine:
        return p1_ * (x - t);
      case WeightFamily::ExpODE:
        return p1_ * std::exp(-2.0 * lambda_ * t) * std::expm1(-2.0 * lambda_ * (x - t));
      default:
        return f_(x) - f_(t);
    }
  }

  // Inverse on [g(lo), g(hi)]: closed form when available, else bisection.
  double inverse(double s) const {
    switch (family_) {
      case WeightFamily::Affine:
        return (s - p2_) / p1_;
      case WeightFamily::ExpODE:
        return std::log((s - p2_) / p1_) / (-2.0 * lambda_);
      default: {
        if (inv_) return inv_(s);
        double a = lo_, b = hi_;
        if (s <= f_(a)) return a;
        if (s >= f_(b)) return b;
        while (b - a > 1e-13 * std::max(1.0, std::fabs(a) + std::fabs(b))) {
          const double m = 0.5 * (a + b);
          (f_(m) < s ? a : b) = m;
        }
        return 0.5 * (a + b);
      }
    }
  }

 private:
  WeightFunction(WeightFamily fam, double lo, double hi, double lambda)
      : family_(fam), lo_(lo), hi_(hi), lambda_(lambda) {
    if (!(hi > lo)) throw std::invalid_argument("weight: domain must satisfy hi > lo");
  }

  void check_increasing() const {
    for (int i = 0; i <= 64; ++i) {
      const double u = lo_ + (hi_ - lo_) * i / 64.0;
      if (!(deriv(u) > 0.0))
        throw std::invalid_argument("weight: derivative must be positive on the domain");
    }
  }

  WeightFamily family_;
  double lo_, hi_;
  double lambda_;
  double p1_ = 1.0, p2_ = 0.0;
  std::function<double(double)> f_, df_, inv_;
};

}  // namespace fracslice::realfrac

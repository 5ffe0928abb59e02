#pragma once
// Caputo and mixed corner fractional Cauchy-Riemann operators on an axial box,
// companions to the Riemann-Liouville operators of frac_slice_rl.hpp.
//
// The Caputo corner operator reads the same two cross lines through (r, s) but
// differentiates each line in the Caputo sense, so additive constants along
// the lines are annihilated exactly. Mixed variants choose Riemann-Liouville
// or Caputo per direction. Alongside the operators this header provides the
// Caputo membership sweep, the anchored integral transform
//
//   H f (u, v) = I^{1-alpha,g}_{a+}[u-line](u) + I^{1-beta,h}_{0+}[v-line](v)
//
// (unweighted, low edges only), the exchange identity linking the Caputo
// corner operator of H f to H of the Riemann-Liouville corner output of f with
// two anchored-power corrections, and the membership characterization
// residuals built from that identity.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracslice/frac_slice_rl.hpp"
#include "fracslice/gamma.hpp"
#include "fracslice/multivector.hpp"
#include "fracslice/quadrature.hpp"
#include "fracslice/realfrac.hpp"
#include "fracslice/slice_fn.hpp"
#include "fracslice/weight.hpp"

namespace fracslice::corner {

// ---------------------------------------------------------------------------
// Mixed variants and line partials
// ---------------------------------------------------------------------------

enum class DerivKind { RL, Caputo };

// Per-direction choice of derivative sense and anchoring edge. The harness
// only emits variants with at least one Caputo direction (the pure
// Riemann-Liouville corner lives in frac_slice_rl.hpp), but the operator
// accepts every combination so the pure reductions stay testable.
struct MixedVariant {
  DerivKind u_kind = DerivKind::Caputo;
  USide u_side = USide::LowPlus;
  DerivKind v_kind = DerivKind::Caputo;
  VSide v_side = VSide::LowPlus;
  MultSide mult = MultSide::Left;
};

inline std::string to_string(const MixedVariant& v) {
  std::string s = (v.u_kind == DerivKind::RL) ? "rl-" : "cap-";
  s += (v.u_side == USide::LowPlus) ? "ulo/" : "uhi/";
  s += (v.v_kind == DerivKind::RL) ? "rl-" : "cap-";
  s += (v.v_side == VSide::LowPlus) ? "vlo" : "vhi";
  s += (v.mult == MultSide::Left) ? "-L" : "-R";
  return s;
}

// Analytic derivatives of f along the two cross lines on one slice; either
// entry may be empty, in which case the Caputo line derivative falls back to
// finite differences of the line itself.
struct LinePartials {
  std::function<Multivector(double)> du;  // d/dt f(t + I s) along v = s
  std::function<Multivector(double)> dv;  // d/dt f(r + I t) along u = r
};

// Pull line partials out of a slice function's attached partial derivatives
// (empty entries when the function does not carry them).
inline LinePartials partials_from(const SliceFunction& f, const FracSliceConfig& cfg,
                                  const UnitImaginary& I) {
  LinePartials out;
  if (f.du) {
    auto du = f.du;
    const double s = cfg.s;
    out.du = [du, s, I](double t) { return du(t, s, I); };
  }
  if (f.dv) {
    auto dv = f.dv;
    const double r = cfg.r;
    out.dv = [dv, r, I](double t) { return dv(r, t, I); };
  }
  return out;
}

namespace detail {

// Caputo line derivative with the same raw d/dx orientation convention as the
// Riemann-Liouville line derivative: the high-edge variant is the negative of
// the classical right-sided Caputo derivative.
template <class Side>
Multivector line_caputo_derivative(const std::function<Multivector(double)>& line,
                                   const std::function<Multivector(double)>& line_deriv,
                                   FracOrder order, const WeightFunction& w, double x, Side side,
                                   const QuadratureSpec& quad) {
  const bool low = side == Side::LowPlus;
  if (low)
    return realfrac::caputo_derivative_left<Multivector>(line, line_deriv, order, w, x, quad);
  return -realfrac::caputo_derivative_right<Multivector>(line, line_deriv, order, w, x, quad);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mixed and Caputo corner operators
// ---------------------------------------------------------------------------

// Corner operator with a per-direction choice of derivative sense. The
// Riemann-Liouville branches call the exact same line-derivative helpers as
// rl_operator, so a both-RL variant reproduces it bit for bit; likewise the
// both-Caputo variant and caputo_operator.
inline Multivector mixed_operator(const SliceFunction& f, const LinePartials& partials,
                                  const MixedVariant& variant, const SlicePoint& p,
                                  const FracSliceConfig& cfg) {
  auto uline = detail::u_line(f, cfg.s, p.I);
  auto vline = detail::v_line(f, cfg.r, p.I);
  Multivector du =
      (variant.u_kind == DerivKind::RL)
          ? detail::line_rl_derivative(uline, cfg.alpha, cfg.g, p.u, variant.u_side, cfg.quad)
          : detail::line_caputo_derivative(uline, partials.du, cfg.alpha, cfg.g, p.u,
                                           variant.u_side, cfg.quad);
  Multivector dv =
      (variant.v_kind == DerivKind::RL)
          ? detail::line_rl_derivative(vline, cfg.beta, cfg.h, p.v, variant.v_side, cfg.quad)
          : detail::line_caputo_derivative(vline, partials.dv, cfg.beta, cfg.h, p.v,
                                           variant.v_side, cfg.quad);
  return du + detail::apply_unit(dv, p.I, variant.mult);
}

inline Multivector mixed_operator(const SliceFunction& f, const MixedVariant& variant,
                                  const SlicePoint& p, const FracSliceConfig& cfg) {
  return mixed_operator(f, partials_from(f, cfg, p.I), variant, p, cfg);
}

// Caputo corner operator: both directions in the Caputo sense. Annihilates
// additive constants along the cross lines exactly, so (unlike the
// Riemann-Liouville corner) its kernel does not pin the cross point to the
// member's anchors.
inline Multivector caputo_operator(const SliceFunction& f, const LinePartials& partials,
                                   const CornerVariant& variant, const SlicePoint& p,
                                   const FracSliceConfig& cfg) {
  return mixed_operator(f, partials,
                        MixedVariant{DerivKind::Caputo, variant.u_side, DerivKind::Caputo,
                                     variant.v_side, variant.mult},
                        p, cfg);
}

inline Multivector caputo_operator(const SliceFunction& f, const CornerVariant& variant,
                                   const SlicePoint& p, const FracSliceConfig& cfg) {
  return caputo_operator(f, partials_from(f, cfg, p.I), variant, p, cfg);
}

// ---------------------------------------------------------------------------
// Caputo membership sweep
// ---------------------------------------------------------------------------

// Sweep |Caputo D f| for the low-low corner over an interior grid and the
// given slices, mirroring is_frac_slice_monogenic. Analytic line partials are
// used when f carries them; otherwise the finite-difference fallback runs and
// the report's used_fd_fallback flag is set.
inline MembershipReport is_caputo_member(const SliceFunction& f, const FracSliceConfig& cfg,
                                         int nu, int nv,
                                         const std::vector<UnitImaginary>& slices, double tol,
                                         MultSide mult = MultSide::Left) {
  if (nu < 2 || nv < 2) throw std::invalid_argument("is_caputo_member: need nu, nv >= 2");
  MembershipReport rep;
  rep.variant = CornerVariant{USide::LowPlus, VSide::LowPlus, mult};
  rep.tolerance = tol;
  rep.used_fd_fallback = !(f.du && f.dv);
  const double mu = 0.1 * (cfg.box.b - cfg.box.a), mv = 0.1 * cfg.box.c;
  for (const auto& I : slices) {
    const LinePartials partials = partials_from(f, cfg, I);
    for (int i = 0; i < nu; ++i) {
      const double u = cfg.box.a + mu + (cfg.box.b - cfg.box.a - 2 * mu) * i / (nu - 1.0);
      for (int j = 0; j < nv; ++j) {
        const double v = mv + (cfg.box.c - 2 * mv) * j / (nv - 1.0);
        SlicePoint p(u, v, I);
        MembershipSample smp(u, v, I,
                             caputo_operator(f, partials, rep.variant, p, cfg).norm_inf());
        rep.max_residual = std::max(rep.max_residual, smp.residual);
        rep.samples.push_back(std::move(smp));
      }
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// The anchored integral transform H and the exchange identity
// ---------------------------------------------------------------------------

// H f (u, v) = I^{1-alpha,g}_{a+}[u-line](u) + I^{1-beta,h}_{0+}[v-line](v):
// the unweighted low-edge restricted integrals of the two cross lines.
inline Multivector h_operator(const SliceFunction& f, const SlicePoint& p,
                              const FracSliceConfig& cfg) {
  return restricted_integral(f, RestrictedKind::u_low, p, cfg) +
         restricted_integral(f, RestrictedKind::v_low, p, cfg);
}

inline SliceFunction h_function(const SliceFunction& f, const FracSliceConfig& cfg) {
  SliceFunction out;
  out.box = cfg.box;
  out.eval = [f, cfg](double u, double v, const UnitImaginary& I) {
    return h_operator(f, SlicePoint(u, v, I), cfg);
  };
  return out;
}

namespace detail {

// Shared pieces of the exchange identity at one point: the low-edge RL line
// derivatives P (u-direction) and Q (v-direction) of f, their cross values,
// H applied to the corner output w(x + I y) = P(x) + I Q(y), and the two
// anchored-power corrections.
struct ExchangePieces {
  std::function<Multivector(double)> P, Q;  // low-edge RL derivatives of the cross lines
  std::function<Multivector(double)> wline_u, wline_v;  // lines of w through (r, s)
  Multivector Hw;           // H[w] at (p.u, p.v)
  Multivector corrections;  // G_alpha(u) I Q(s) + G_beta(v) P(r)
  ExchangePieces(const SliceFunction& f, const SlicePoint& p, const FracSliceConfig& cfg)
      : Hw(cfg.box.n), corrections(cfg.box.n) {
    const UnitImaginary I = p.I;
    const Multivector Im = I.as_multivector();
    P = [&f, I, &cfg](double x) {
      return detail::line_rl_derivative(detail::u_line(f, cfg.s, I), cfg.alpha, cfg.g, x,
                                        USide::LowPlus, cfg.quad);
    };
    Q = [&f, I, &cfg](double y) {
      return detail::line_rl_derivative(detail::v_line(f, cfg.r, I), cfg.beta, cfg.h, y,
                                        VSide::LowPlus, cfg.quad);
    };
    const Multivector Qs = Q(cfg.s);
    const Multivector Pr = P(cfg.r);
    const Multivector IQs = Im * Qs;
    auto Pfn = P;  // copies for the closures below
    auto Qfn = Q;
    wline_u = [Pfn, IQs](double x) { return Pfn(x) + IQs; };
    wline_v = [Qfn, Pr, Im](double y) { return Pr + Im * Qfn(y); };
    Hw = realfrac::frac_integral_left<Multivector>(wline_u, FracOrder(1.0 - cfg.alpha.v), cfg.g,
                                                   p.u, cfg.quad) +
         realfrac::frac_integral_left<Multivector>(wline_v, FracOrder(1.0 - cfg.beta.v), cfg.h,
                                                   p.v, cfg.quad);
    const double Ga =
        std::pow(cfg.g.diff(p.u, cfg.box.a), 1.0 - cfg.alpha.v) / gamma_fn(2.0 - cfg.alpha.v);
    const double Gb = std::pow(cfg.h.diff(p.v, 0.0), 1.0 - cfg.beta.v) / gamma_fn(2.0 - cfg.beta.v);
    corrections = IQs * Ga + Pr * Gb;
  }
};

}  // namespace detail

// Residual of the exchange identity
//   Caputo D_{a+,0+}[H f] = H[w] - G_alpha(u) I Q(s) - G_beta(v) P(r),
// where w(x + I y) = P(x) + I Q(y) is the low-low Riemann-Liouville corner
// output of f, P and Q are the RL line derivatives of f's cross lines, and
// G_alpha(u) = (g(u) - g(a))^{1-alpha} / Gamma(2 - alpha) is the closed-form
// low-edge integral of 1 (likewise G_beta with h). The left side runs the
// Caputo operator on the transform with its finite-difference fallback (the
// transform carries no analytic partials), keeping the two sides numerically
// independent. Holds for every sufficiently smooth f, not only kernel members.
// The correction factors are the cross values Q(s), P(r): they arise as the
// constant parts of w's lines through (r, s).
inline Multivector caputo_h_identity_residual(const SliceFunction& f, const SlicePoint& p,
                                              const FracSliceConfig& cfg) {
  const CornerVariant lowlow{};
  const Multivector lhs = caputo_operator(h_function(f, cfg), LinePartials{}, lowlow, p, cfg);
  detail::ExchangePieces pieces(f, p, cfg);
  return lhs - (pieces.Hw - pieces.corrections);
}

// ---------------------------------------------------------------------------
// Membership characterization residuals
// ---------------------------------------------------------------------------

struct CharacterizationResult {
  double eq_residual = 0.0;  // |H[w] - corrections| at the probe point
  double dd_residual = 0.0;  // second display: nested (1-alpha, 1-beta) derivatives
};

// Two residuals probing the membership characterization built on the exchange
// identity.
//
// (i) eq_residual: |H[w] - G_alpha(u) I Q(s) - G_beta(v) P(r)|. Zero for every
// f whose two cross lines vanish identically (then w has no line content at
// all); nonzero otherwise -- including on the explicit corner-kernel members,
// whose lines are nonzero even though the Caputo corner operator annihilates
// them. Callers should treat membership and this residual as related but not
// equivalent verdicts.
//
// (ii) dd_residual: apply D_u^{1-alpha,g} then D_v^{1-beta,h} to both sides of
// (i). The left side uses the additive structure H[w](u,v) = A(u) + B(v) of
// the transform output, giving k_beta(v) D^{1-alpha}[A](u) +
// k_alpha(u) D^{1-beta}[B](v) with the closed-form power-rule factors
// k_alpha(u) = (g(u)-g(a))^{alpha-1}/Gamma(alpha). The right side nests the
// raw composed derivative over P and Q (they are singular at the anchors, so
// the anchor-split form is unavailable).
inline CharacterizationResult caputo_characterization_check(const SliceFunction& f,
                                                            const SlicePoint& p,
                                                            const FracSliceConfig& cfg) {
  detail::ExchangePieces pieces(f, p, cfg);
  CharacterizationResult out;
  out.eq_residual = (pieces.Hw - pieces.corrections).norm_inf();

  const FracOrder ou(1.0 - cfg.alpha.v), ov(1.0 - cfg.beta.v);
  // Explicit zero at the anchor: the generic integral would shape its zero by
  // evaluating the integrand there, and P/Q are undefined at their anchors.
  auto A = [&](double x) {
    if (x <= cfg.box.a) return Multivector(cfg.box.n);
    return realfrac::frac_integral_left<Multivector>(pieces.wline_u, ou, cfg.g, x, cfg.quad);
  };
  auto B = [&](double y) {
    if (y <= 0.0) return Multivector(cfg.box.n);
    return realfrac::frac_integral_left<Multivector>(pieces.wline_v, ov, cfg.h, y, cfg.quad);
  };
  const double ka =
      std::pow(cfg.g.diff(p.u, cfg.box.a), cfg.alpha.v - 1.0) / gamma_fn(cfg.alpha.v);
  const double kb = std::pow(cfg.h.diff(p.v, 0.0), cfg.beta.v - 1.0) / gamma_fn(cfg.beta.v);
  Multivector lhs = realfrac::rl_derivative_left<Multivector>(A, ou, cfg.g, p.u, cfg.quad) * kb;
  lhs += realfrac::rl_derivative_left<Multivector>(B, ov, cfg.h, p.v, cfg.quad) * ka;

  Multivector rhs =
      realfrac::rl_derivative_left_raw<Multivector>(pieces.P, ou, cfg.g, p.u, cfg.quad);
  rhs += p.I.as_multivector() *
         realfrac::rl_derivative_left_raw<Multivector>(pieces.Q, ov, cfg.h, p.v, cfg.quad);
  out.dd_residual = (lhs - rhs).norm_inf();
  return out;
}

}  // namespace fracslice::corner

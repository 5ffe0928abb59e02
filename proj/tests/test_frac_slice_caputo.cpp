#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "fracslice/frac_slice_caputo.hpp"

using namespace fracslice;
using namespace fracslice::corner;

namespace {

const slicefn::AxialBox kBox{0.25, 1.25, 1.0, 3};

UnitImaginary random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::array<double, clifford::kMaxN> d{};
  double norm = 0.0;
  while (norm < 1e-3) {
    norm = 0.0;
    for (int i = 0; i < kBox.n; ++i) {
      d[i] = gauss(rng);
      norm += d[i] * d[i];
    }
    norm = std::sqrt(norm);
  }
  for (int i = 0; i < kBox.n; ++i) d[i] /= norm;
  return UnitImaginary(kBox.n, d);
}

Multivector random_mv(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Multivector m(kBox.n);
  for (unsigned mask = 0; mask < (1u << kBox.n); ++mask) m[mask] = coeff(rng);
  return m;
}

FracSliceConfig affine_cfg(double r, double s, QuadratureSpec q = {}) {
  return FracSliceConfig(kBox, FracOrder(0.6), FracOrder(0.4),
                         realfrac::WeightFunction::affine(1.1, 0.3, kBox.a, kBox.b),
                         realfrac::WeightFunction::affine(1.1, 0.0, 0.0, kBox.c), r, s, q);
}

FracSliceConfig expode_cfg(double r, double s, QuadratureSpec q = {}) {
  return FracSliceConfig(kBox, FracOrder(0.6), FracOrder(0.4),
                         realfrac::WeightFunction::exp_ode(-1.0, 2.5, 0.4, kBox.a, kBox.b),
                         realfrac::WeightFunction::exp_ode(-1.0, 2.5, 0.4, 0.0, kBox.c), r, s, q);
}

// A generic smooth slice-plane function with no kernel structure.
SliceFunction random_smooth(std::mt19937_64& rng) {
  const Multivector A = random_mv(rng), B = random_mv(rng), C = random_mv(rng),
                    D = random_mv(rng);
  SliceFunction f;
  f.box = kBox;
  f.eval = [=](double u, double v, const UnitImaginary& I) {
    Multivector out = A + B * u + C * (v * v) + D * std::sin(u + 2.0 * v);
    out += I.as_multivector() * A * (0.3 * u * v);
    return out;
  };
  return f;
}

SliceFunction perturb(const SliceFunction& f, const Multivector& C0, double eps) {
  SliceFunction out;
  out.box = f.box;
  auto base = f.eval;
  out.eval = [base, C0, eps](double u, double v, const UnitImaginary& I) {
    return base(u, v, I) + C0 * (eps * (u + 0.5 * v));
  };
  return out;
}

SliceFunction constant_fn(const Multivector& C) {
  SliceFunction f;
  f.box = kBox;
  f.eval = [C](double, double, const UnitImaginary&) { return C; };
  return f;
}

// Vanishes identically on both cross lines through (r, s) while being a
// genuinely two-variable, slice-dependent function elsewhere.
SliceFunction cross_vanishing(double r, double s, const Multivector& C) {
  SliceFunction f;
  f.box = kBox;
  f.eval = [=](double u, double v, const UnitImaginary& I) {
    return (C + I.as_multivector() * C * 0.2) *
           ((u - r) * (v - s) * (1.0 + 0.3 * u + 0.1 * v * v));
  };
  return f;
}

}  // namespace

TEST_CASE("caputo operator annihilates constants at every corner") {
  std::mt19937_64 rng(11);
  const UnitImaginary I = random_dir(rng);
  const Multivector C = random_mv(rng);
  const SliceFunction f = constant_fn(C);
  auto cfg = affine_cfg(0.7, 0.45);
  SlicePoint p(0.85, 0.6, I);

  // Through the finite-difference fallback (no partials attached).
  for (const auto& var : corner_variants(MultSide::Left))
    CHECK(caputo_operator(f, var, p, cfg).norm_inf() < 1e-10);
  CHECK(caputo_operator(f, CornerVariant{USide::HighMinus, VSide::HighMinus, MultSide::Right},
                        p, cfg).norm_inf() < 1e-10);
  CHECK(caputo_operator(f, CornerVariant{}, p, expode_cfg(0.7, 0.45)).norm_inf() < 1e-10);
  CHECK(caputo_operator(f, CornerVariant{}, SlicePoint(0.4, 0.2, I), cfg).norm_inf() < 1e-10);

  // With exact zero partials the whole pipeline is exact.
  SliceFunction fz = f;
  fz.du = [](double, double, const UnitImaginary&) { return Multivector(kBox.n); };
  fz.dv = [](double, double, const UnitImaginary&) { return Multivector(kBox.n); };
  CHECK(caputo_operator(fz, CornerVariant{}, p, cfg).norm_inf() == 0.0);

  // The Riemann-Liouville corner does not kill constants: its kernel carries
  // the anchored power profiles instead.
  CHECK(rl_operator(f, CornerVariant{}, p, cfg).norm_inf() > 1e-1);
}

TEST_CASE("matched kernel members pass the caputo sweep at any cross point") {
  std::mt19937_64 rng(22);
  const UnitImaginary I1 = random_dir(rng), I2 = random_dir(rng);
  const Multivector C0 = random_mv(rng);
  // Interior cross point, far from every member's anchors: the Caputo kernel,
  // unlike the Riemann-Liouville one, is cross-independent.
  auto cfg = affine_cfg(0.7, 0.45);
  SlicePoint p(0.85, 0.6, I1);

  for (const auto& var : corner_variants(MultSide::Left)) {
    SliceFunction mem = member_construct(cfg, var, C0);
    INFO("variant " << to_string(var));
    // High-anchored profiles pay a representability floor near the anchor
    // (the integrand is evaluated through double coordinates), so the bound
    // is looser than for the low-anchored sides.
    CHECK(caputo_operator(mem, var, p, cfg).norm_inf() < 5e-6);
    // Same member under the Riemann-Liouville corner at this cross: O(1).
    CHECK(rl_operator(mem, var, p, cfg).norm_inf() > 1e-1);
  }
  auto cfgE = expode_cfg(0.7, 0.45);
  SliceFunction memE = member_construct(cfgE, CornerVariant{}, C0);
  CHECK(caputo_operator(memE, CornerVariant{}, p, cfgE).norm_inf() < 5e-6);

  SliceFunction mem = member_construct(cfg, CornerVariant{}, C0);
  auto rep = is_caputo_member(mem, cfg, 3, 3, {I1, I2}, 1e-8);
  CHECK(rep.pass);
  CHECK_FALSE(rep.used_fd_fallback);  // members carry analytic partials
  CHECK(rep.samples.size() == 18);
}

TEST_CASE("caputo sweep rejects mismatched corners and perturbations") {
  std::mt19937_64 rng(33);
  const UnitImaginary I1 = random_dir(rng);
  const Multivector C0 = random_mv(rng);
  auto cfg = affine_cfg(0.7, 0.45);

  // A high-high member is not in the low-low Caputo kernel: its profiles are
  // anchored at the opposite edges.
  SliceFunction mem_hh =
      member_construct(cfg, CornerVariant{USide::HighMinus, VSide::HighMinus, MultSide::Left}, C0);
  auto rep = is_caputo_member(mem_hh, cfg, 3, 3, {I1}, 1e-6);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_residual > 1e-1);

  SliceFunction mem = member_construct(cfg, CornerVariant{}, C0);
  auto repP = is_caputo_member(perturb(mem, C0, 0.1), cfg, 3, 3, {I1}, 1e-6);
  CHECK_FALSE(repP.pass);
  CHECK(repP.max_residual > 1e-2);
  CHECK(repP.used_fd_fallback);  // the perturbed wrapper drops the partials
}

TEST_CASE("constants pass the caputo sweep but not the riemann-liouville corner") {
  std::mt19937_64 rng(44);
  const UnitImaginary I1 = random_dir(rng);
  const Multivector C = random_mv(rng);
  const SliceFunction f = constant_fn(C);
  auto cfg = affine_cfg(0.7, 0.45);

  auto rep = is_caputo_member(f, cfg, 2, 2, {I1}, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.used_fd_fallback);
  CHECK(rl_operator(f, CornerVariant{}, SlicePoint(0.85, 0.6, I1), cfg).norm_inf() > 1e-1);
}

TEST_CASE("right members are annihilated by the right caputo operator") {
  std::mt19937_64 rng(22);
  const UnitImaginary I1 = random_dir(rng), I2 = random_dir(rng);
  const Multivector C0 = random_mv(rng);
  auto cfg = affine_cfg(0.7, 0.45);
  const CornerVariant right{USide::LowPlus, VSide::LowPlus, MultSide::Right};

  SliceFunction memR = member_construct(cfg, right, C0);
  CHECK(caputo_operator(memR, right, SlicePoint(0.85, 0.6, I1), cfg).norm_inf() < 1e-9);
  CHECK(is_caputo_member(memR, cfg, 2, 2, {I2}, 1e-8, MultSide::Right).pass);
}

TEST_CASE("mixed variants reduce bitwise to the pure corner operators") {
  std::mt19937_64 rng(55);
  const UnitImaginary I1 = random_dir(rng);
  SliceFunction f = random_smooth(rng);
  const Multivector C0 = random_mv(rng);
  auto cfg = affine_cfg(0.7, 0.45);
  SlicePoint p(0.85, 0.6, I1);

  const MixedVariant capcap{DerivKind::Caputo, USide::LowPlus, DerivKind::Caputo, VSide::LowPlus,
                            MultSide::Left};
  const MixedVariant rlrl{DerivKind::RL, USide::HighMinus, DerivKind::RL, VSide::HighMinus,
                          MultSide::Right};
  CHECK((mixed_operator(f, capcap, p, cfg) -
         caputo_operator(f, CornerVariant{}, p, cfg)).norm_inf() == 0.0);
  CHECK((mixed_operator(f, rlrl, p, cfg) -
         rl_operator(f, CornerVariant{USide::HighMinus, VSide::HighMinus, MultSide::Right}, p,
                     cfg)).norm_inf() == 0.0);
  // Same through the analytic-partials path.
  SliceFunction mem = member_construct(cfg, CornerVariant{}, C0);
  CHECK((mixed_operator(mem, capcap, p, cfg) -
         caputo_operator(mem, CornerVariant{}, p, cfg)).norm_inf() == 0.0);
}

TEST_CASE("mixed-sense gap matches the anchor-value power term") {
  std::mt19937_64 rng(66);
  const UnitImaginary I1 = random_dir(rng);
  SliceFunction f = random_smooth(rng);
  auto cfg = affine_cfg(0.7, 0.45);
  SlicePoint p(0.85, 0.6, I1);

  // Switching one direction from Caputo to Riemann-Liouville adds the line's
  // anchor value times the kernel power (g(x) - g(anchor))^{-order} / Gamma(1
  // - order); everything else cancels.
  const MixedVariant base{DerivKind::Caputo, USide::LowPlus, DerivKind::Caputo, VSide::LowPlus,
                          MultSide::Left};
  MixedVariant uRL = base;
  uRL.u_kind = DerivKind::RL;
  MixedVariant vRL = base;
  vRL.v_kind = DerivKind::RL;
  const Multivector at = mixed_operator(f, base, p, cfg);

  Multivector gap_u = mixed_operator(f, uRL, p, cfg) - at;
  Multivector want_u = f.eval(kBox.a, cfg.s, I1) *
                       (std::pow(cfg.g.diff(p.u, kBox.a), -0.6) / gamma_fn(0.4));
  CHECK((gap_u - want_u).norm_inf() < 1e-9);

  Multivector gap_v = mixed_operator(f, vRL, p, cfg) - at;
  Multivector want_v = I1.as_multivector() * f.eval(cfg.r, 0.0, I1) *
                       (std::pow(cfg.h.diff(p.v, 0.0), -0.4) / gamma_fn(0.6));
  CHECK((gap_v - want_v).norm_inf() < 1e-9);

  // High edge, raw orientation: the classical right-sided gap enters negated.
  const MixedVariant baseH{DerivKind::Caputo, USide::HighMinus, DerivKind::Caputo, VSide::LowPlus,
                           MultSide::Left};
  MixedVariant uRLH = baseH;
  uRLH.u_kind = DerivKind::RL;
  Multivector gap_uh = mixed_operator(f, uRLH, p, cfg) - mixed_operator(f, baseH, p, cfg);
  Multivector want_uh = f.eval(kBox.b, cfg.s, I1) *
                        (-std::pow(cfg.g.diff(kBox.b, p.u), -0.6) / gamma_fn(0.4));
  CHECK((gap_uh - want_uh).norm_inf() < 1e-9);
}

TEST_CASE("anchored transform has the closed form on constants") {
  std::mt19937_64 rng(77);
  const UnitImaginary I1 = random_dir(rng);
  const SliceFunction one = constant_fn(Multivector::scalar(kBox.n, 1.0));
  SlicePoint p(0.85, 0.6, I1);

  auto cfgU = FracSliceConfig(kBox, FracOrder(0.6), FracOrder(0.4),
                              realfrac::WeightFunction::affine(1.0, 0.0, kBox.a, kBox.b),
                              realfrac::WeightFunction::affine(1.0, 0.0, 0.0, kBox.c), 0.7, 0.45);
  const double wantU =
      std::pow(p.u - kBox.a, 0.4) / gamma_fn(1.4) + std::pow(p.v, 0.6) / gamma_fn(1.6);
  CHECK((h_operator(one, p, cfgU) - Multivector::scalar(kBox.n, wantU)).norm_inf() < 1e-12);

  auto cfg = affine_cfg(0.7, 0.45);
  const double want = std::pow(cfg.g.diff(p.u, kBox.a), 0.4) / gamma_fn(1.4) +
                      std::pow(cfg.h.diff(p.v, 0.0), 0.6) / gamma_fn(1.6);
  CHECK((h_operator(one, p, cfg) - Multivector::scalar(kBox.n, want)).norm_inf() < 1e-12);

  // The function wrapper is the same computation.
  CHECK((h_function(one, cfg).eval(p.u, p.v, I1) - h_operator(one, p, cfg)).norm_inf() == 0.0);
}

TEST_CASE("exchange identity holds for smooth functions") {
  std::mt19937_64 rng(88);
  const UnitImaginary I1 = random_dir(rng), I2 = random_dir(rng);
  const Multivector C = random_mv(rng);
  SliceFunction fs = random_smooth(rng);
  const SliceFunction fc = constant_fn(C);

  // The left side differentiates the transform through the finite-difference
  // fallback; the transform's lines carry anchor powers of exponent 1 - order,
  // so the error of that zone scales like h0^{1-alpha} and wants a small base
  // step. Quadrature order 48 keeps the three nested integrals affordable.
  QuadratureSpec q;
  q.order = 48;
  q.fd.h0 = 1e-5;
  auto cfg = affine_cfg(0.7, 0.45, q);
  auto cfgE = expode_cfg(0.7, 0.45, q);
  SliceFunction mem = member_construct(cfg, CornerVariant{}, C);
  SlicePoint p(0.85, 0.6, I1), p2(0.5, 0.3, I2);

  CHECK(caputo_h_identity_residual(fc, p, cfg).norm_inf() < 1e-2);
  CHECK(caputo_h_identity_residual(fs, p, cfg).norm_inf() < 1e-2);
  CHECK(caputo_h_identity_residual(mem, p, cfg).norm_inf() < 1e-2);
  CHECK(caputo_h_identity_residual(fs, p2, cfg).norm_inf() < 1e-2);
  CHECK(caputo_h_identity_residual(fs, p, cfgE).norm_inf() < 1e-2);
  CHECK(caputo_h_identity_residual(mem, p, cfgE).norm_inf() < 1e-2);
}

TEST_CASE("characterization residuals vanish exactly when the cross lines do") {
  std::mt19937_64 rng(99);
  const UnitImaginary I1 = random_dir(rng);
  const Multivector C0 = random_mv(rng);
  QuadratureSpec q;
  q.order = 16;  // the nested double derivative is cubic in the order
  auto cfg = affine_cfg(0.7, 0.45, q);
  SlicePoint p(0.85, 0.6, I1);

  SliceFunction zf;
  zf.box = kBox;
  zf.eval = [](double, double, const UnitImaginary&) { return Multivector(kBox.n); };
  auto chk0 = caputo_characterization_check(zf, p, cfg);
  CHECK(chk0.eq_residual < 1e-12);
  CHECK(chk0.dd_residual < 1e-12);

  auto chkCV = caputo_characterization_check(cross_vanishing(0.7, 0.45, C0), p, cfg);
  CHECK(chkCV.eq_residual < 1e-12);
  CHECK(chkCV.dd_residual < 1e-12);

  // Kernel members are annihilated by the Caputo corner operator, yet their
  // cross lines are nonzero, so both characterization residuals stay O(1):
  // membership and these residuals are related but independent verdicts.
  SliceFunction mem = member_construct(cfg, CornerVariant{}, C0);
  CHECK(is_caputo_member(mem, cfg, 2, 2, {I1}, 1e-6).pass);
  auto chkM = caputo_characterization_check(mem, p, cfg);
  CHECK(chkM.eq_residual > 0.5);
  CHECK(chkM.dd_residual > 0.5);

  // Constants likewise: in the Caputo kernel, nonzero residuals.
  auto chkC = caputo_characterization_check(constant_fn(C0), p, cfg);
  CHECK(chkC.eq_residual > 0.5);
  CHECK(chkC.dd_residual > 0.5);

  auto chkS = caputo_characterization_check(random_smooth(rng), p, cfg);
  CHECK(chkS.eq_residual > 0.5);
  CHECK(chkS.dd_residual > 0.5);
}

TEST_CASE("nested inverse orders collapse to the weighted slope") {
  const auto g = realfrac::WeightFunction::affine(1.1, 0.3, kBox.a, kBox.b);
  QuadratureSpec q;

  // D^{1-a} after D^{a} is the weighted first derivative f' / g'. The outer
  // derivative must use the raw composed form: the inner derivative is
  // singular at the anchor, where the anchor-split form would evaluate it.
  auto w = [](double t) { return std::sin(t) + 1.3; };
  auto P = [&](double y) {
    return realfrac::rl_derivative_left<double>(w, FracOrder(0.6), g, y, q);
  };
  for (double x : {0.7, 1.0}) {
    const double got = realfrac::rl_derivative_left_raw<double>(P, FracOrder(0.4), g, x, q);
    CHECK(std::fabs(got - std::cos(x) / 1.1) < 2e-4);
  }

  // Constants: the inner derivative leaves the kernel power, whose composed
  // derivative is zero.
  auto wc = [](double) { return 2.2; };
  auto Pc = [&](double y) {
    return realfrac::rl_derivative_left<double>(wc, FracOrder(0.6), g, y, q);
  };
  CHECK(std::fabs(realfrac::rl_derivative_left_raw<double>(Pc, FracOrder(0.4), g, 0.7, q)) < 2e-4);
}

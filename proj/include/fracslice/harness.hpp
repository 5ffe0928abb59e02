#pragma once

// Scenario harness: a flat key=value configuration layer, a named registry of
// deterministic residual sweeps covering every layer of the library, and
// machine-readable CSV/JSON reports.
//
// Each scenario turns one library identity into rows of (slice, point,
// residual, tolerance). Two kinds of rows appear:
//   - bound rows: residual is a measured defect that must stay within its
//     tolerance;
//   - rejection rows (negative controls): a quantity that is REQUIRED to be
//     large (a perturbed function failing a sweep, a non-member exposed by a
//     loop integral). The recorded residual is the shortfall
//     max(0, floor - measured), so a healthy rejection records 0 and a
//     control that wrongly passes records how far below the floor it landed.
// With that convention one rule covers every row: a scenario passes exactly
// when all of its recorded residuals are within their tolerances.
//
// Reports are byte-deterministic for a fixed (config, seed): randomness is
// drawn from mt19937_64 seeded with seed ^ fnv1a(scenario name), sample order
// is the generation order, and wall-clock time is kept in memory only (it
// never enters a report file).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "frac_slice_caputo.hpp"

namespace fracslice::harness {

using clifford::Multivector;
using clifford::SlicePoint;
using clifford::UnitImaginary;
using corner::CornerVariant;
using corner::FracSliceConfig;
using corner::MultSide;
using corner::USide;
using corner::VSide;
using realfrac::FracOrder;
using realfrac::WeightFunction;
using slicefn::AxialBox;
using slicefn::SliceFunction;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  int n = 3;
  double box_a = 0.25, box_b = 1.25, box_c = 1.0;
  double alpha = 0.6, beta = 0.4;
  std::string family = "affine";  // "affine" | "expode"
  double lambda = 0.0;            // must be 0 for affine, nonzero for expode
  double g_slope = 1.1, g_intercept = 0.3;
  double h_slope = 1.1, h_intercept = 0.0;
  double g_delta1 = -1.0, g_delta2 = 2.5;  // expode params; require -2*d1*lambda > 0
  double h_delta1 = -1.0, h_delta2 = 2.5;
  double cross_r = 0.7, cross_s = 0.45;
  int quad_order = 64;
  std::string quad_scheme = "gauss-jacobi";  // "gauss-jacobi" | "graded"
  double fd_h0 = 1e-3;
  int fd_richardson = 2;
  int grid_nu = 5, grid_nv = 5, grid_slices = 3;
  std::uint64_t seed = 20240817;
  std::string out_dir = "reports";
  std::string format = "csv";  // "csv" | "json"
  std::map<std::string, double> tol_override;  // scenario name -> tolerance

  void validate() const;  // defined after the registry (checks override keys)
};

inline QuadratureSpec quad_of(const RunConfig& cfg) {
  QuadratureSpec q;
  q.scheme = cfg.quad_scheme == "graded" ? QuadScheme::GradedComposite : QuadScheme::GaussJacobi;
  q.order = cfg.quad_order;
  q.fd.h0 = cfg.fd_h0;
  q.fd.richardson = cfg.fd_richardson;
  return q;
}

inline AxialBox box_of(const RunConfig& cfg) {
  return AxialBox{cfg.box_a, cfg.box_b, cfg.box_c, cfg.n};
}

// A (g, h) pair sharing one decay rate, spanning the u- and v-edges of the box.
struct WeightPair {
  WeightFunction g;
  WeightFunction h;
  double lambda = 0.0;
};

// The pair described by the configuration (used by the Caputo-side scenarios).
inline WeightPair configured_pair(const RunConfig& cfg) {
  if (cfg.family == "expode") {
    return {WeightFunction::exp_ode(cfg.g_delta1, cfg.g_delta2, cfg.lambda, cfg.box_a, cfg.box_b),
            WeightFunction::exp_ode(cfg.h_delta1, cfg.h_delta2, cfg.lambda, 0.0, cfg.box_c),
            cfg.lambda};
  }
  return {WeightFunction::affine(cfg.g_slope, cfg.g_intercept, cfg.box_a, cfg.box_b),
          WeightFunction::affine(cfg.h_slope, cfg.h_intercept, 0.0, cfg.box_c), 0.0};
}

// Canonical pairs used by the multi-family scenarios, valid over any box.
// Equal slopes on the two axes keep the transform inside the rate-lambda
// kernel class, which several scenarios rely on.
inline WeightPair canonical_affine(const RunConfig& cfg) {
  return {WeightFunction::affine(1.1, 0.3, cfg.box_a, cfg.box_b),
          WeightFunction::affine(1.1, 0.0, 0.0, cfg.box_c), 0.0};
}
inline WeightPair canonical_exp_plus(const RunConfig& cfg) {
  return {WeightFunction::exp_ode(-1.0, 2.5, 0.4, cfg.box_a, cfg.box_b),
          WeightFunction::exp_ode(-1.0, 2.5, 0.4, 0.0, cfg.box_c), 0.4};
}
inline WeightPair canonical_exp_minus(const RunConfig& cfg) {
  return {WeightFunction::exp_ode(0.9, 0.4, -0.3, cfg.box_a, cfg.box_b),
          WeightFunction::exp_ode(0.9, 0.4, -0.3, 0.0, cfg.box_c), -0.3};
}

inline FracSliceConfig corner_cfg(const RunConfig& cfg, const WeightPair& w, double r, double s) {
  return FracSliceConfig(box_of(cfg), FracOrder(cfg.alpha), FracOrder(cfg.beta), w.g, w.h, r, s,
                         quad_of(cfg));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct SampleRecord {
  int index = 0;
  int n = 0;  // number of slice coordinates in use (coords are zero when no slice applies)
  std::array<double, clifford::kMaxN> I{};
  double u = 0.0, v = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::string> config_echo;  // canonical "key = value" lines
  std::vector<SampleRecord> samples;     // in generation order == sample_index order
  double max_residual = 0.0;
  double tolerance = 0.0;  // primary tolerance after overrides
  bool pass = false;
  double wall_ms = 0.0;  // in-memory only: never serialized, reports stay byte-deterministic
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Accumulates sample rows for one scenario run.
struct Collector {
  std::string name;
  double tol = 0.0;  // primary tolerance (after per-scenario override)
  int n = 3;
  std::vector<SampleRecord> samples;

  void add_tol(const UnitImaginary* I, double u, double v, double residual, double tolerance) {
    SampleRecord r;
    r.index = static_cast<int>(samples.size());
    r.n = n;
    if (I != nullptr) {
      const Multivector m = I->as_multivector();
      for (int i = 0; i < n; ++i) r.I[static_cast<size_t>(i)] = m[1u << i];
    }
    r.u = u;
    r.v = v;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual <= tolerance;  // NaN residual -> false
    samples.push_back(r);
  }
  void add(double u, double v, double residual) { add_tol(nullptr, u, v, residual, tol); }
  void add(const UnitImaginary& I, double u, double v, double residual) {
    add_tol(&I, u, v, residual, tol);
  }
  // Rejection row: `measured` must exceed `floor`; records the shortfall.
  void must_exceed(const UnitImaginary* I, double u, double v, double measured, double floor) {
    const double shortfall = std::isnan(measured) ? measured : std::max(0.0, floor - measured);
    add_tol(I, u, v, shortfall, 0.0);
  }
};

inline std::mt19937_64 scenario_rng(const RunConfig& cfg, std::string_view name) {
  return std::mt19937_64(cfg.seed ^ fnv1a(name));
}

inline UnitImaginary random_dir(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  std::array<double, clifford::kMaxN> d{};
  double norm = 0.0;
  while (norm < 1e-3) {
    norm = 0.0;
    for (int i = 0; i < n; ++i) {
      d[static_cast<size_t>(i)] = gauss(rng);
      norm += d[static_cast<size_t>(i)] * d[static_cast<size_t>(i)];
    }
    norm = std::sqrt(norm);
  }
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] /= norm;
  return UnitImaginary(n, d);
}

inline Multivector random_mv(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Multivector m(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) m[mask] = coeff(rng);
  return m;
}

inline std::vector<UnitImaginary> random_slices(std::mt19937_64& rng, int n, int count) {
  std::vector<UnitImaginary> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_dir(rng, n));
  return out;
}

// A generic smooth slice-plane function with no kernel structure.
inline SliceFunction random_smooth(std::mt19937_64& rng, const AxialBox& box) {
  const int n = box.n;
  const Multivector A = random_mv(rng, n), B = random_mv(rng, n), C = random_mv(rng, n),
                    D = random_mv(rng, n);
  SliceFunction f;
  f.box = box;
  f.eval = [=](double u, double v, const UnitImaginary& I) {
    Multivector out = A + B * u + C * (v * v) + D * std::sin(u + 2.0 * v);
    out += I.as_multivector() * A * (0.3 * u * v);
    return out;
  };
  return f;
}

inline SliceFunction perturb_linear(const SliceFunction& f, const Multivector& C0, double eps) {
  SliceFunction out;
  out.box = f.box;
  auto base = f.eval;
  out.eval = [base, C0, eps](double u, double v, const UnitImaginary& I) {
    return base(u, v, I) + C0 * (eps * (u + 0.5 * v));
  };
  return out;
}

inline SliceFunction constant_fn(const AxialBox& box, const Multivector& C, bool with_partials) {
  SliceFunction f;
  f.box = box;
  const int n = box.n;
  f.eval = [C](double, double, const UnitImaginary&) { return C; };
  if (with_partials) {
    f.du = [n](double, double, const UnitImaginary&) { return Multivector(n); };
    f.dv = [n](double, double, const UnitImaginary&) { return Multivector(n); };
  }
  return f;
}

inline SliceFunction random_slice_poly(std::mt19937_64& rng, const AxialBox& box, double lambda,
                                       int degree) {
  std::vector<Multivector> coeffs;
  coeffs.reserve(static_cast<size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) coeffs.push_back(random_mv(rng, box.n));
  return slicefn::slice_poly(box, std::move(coeffs), lambda);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct ScenarioInfo {
  const char* name;
  const char* description;
  double default_tol;
  void (*fill)(const RunConfig&, detail::Collector&);
};

namespace scenarios {

// --- real-line layer -------------------------------------------------------

inline void clifford_axioms(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  for (int n : {2, 3, 4}) {
    // Exhaustive generator anticommutation: e_i e_j + e_j e_i = -2 delta_ij.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Multivector ei(n), ej(n);
        ei[1u << i] = 1.0;
        ej[1u << j] = 1.0;
        Multivector want(n);
        want[0] = (i == j) ? -2.0 : 0.0;
        col.add(static_cast<double>(i), static_cast<double>(j),
                (ei * ej + ej * ei - want).norm_inf());
      }
    }
    // Associativity on random triples.
    for (int t = 0; t < 1000; ++t) {
      const Multivector a = detail::random_mv(rng, n), b = detail::random_mv(rng, n),
                        c = detail::random_mv(rng, n);
      col.add(0.0, 0.0, ((a * b) * c - a * (b * c)).norm_inf());
    }
  }
}

inline void power_law(const RunConfig& cfg, detail::Collector& col) {
  const QuadratureSpec quad = quad_of(cfg);
  const double a = cfg.box_a, b = cfg.box_b;
  const std::array<WeightFunction, 3> gs = {canonical_affine(cfg).g, canonical_exp_plus(cfg).g,
                                            canonical_exp_minus(cfg).g};
  for (const WeightFunction& g : gs) {
    for (double sigma : {0.0, 0.5, 1.0, 2.0}) {
      for (double ord : {0.25, 0.5, 0.75}) {
        const FracOrder al(ord);
        const double scale = gamma_fn(sigma + 1.0) / gamma_fn(sigma + ord + 1.0);
        auto fl = [&](double t) { return std::pow(g.diff(t, a), sigma); };
        auto fr = [&](double t) { return std::pow(g.diff(b, t), sigma); };
        for (int i = 0; i < 21; ++i) {
          const double x = a + (b - a) * i / 20.0;
          const double wl = realfrac::frac_integral_left<double>(fl, al, g, x, quad);
          const double el = scale * std::pow(g.diff(x, a), sigma + ord);
          col.add(x, 0.0, std::fabs(wl - el) / std::max(std::fabs(el), 1e-30));
          const double wr = realfrac::frac_integral_right<double>(fr, al, g, x, quad);
          const double er = scale * std::pow(g.diff(b, x), sigma + ord);
          col.add(x, 0.0, std::fabs(wr - er) / std::max(std::fabs(er), 1e-30));
        }
      }
    }
  }
}

inline void fund_theorem(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const QuadratureSpec quad = quad_of(cfg);
  const double a = cfg.box_a, b = cfg.box_b, w = b - a;
  std::uniform_real_distribution<double> cdist(-1.0, 1.0);
  std::array<std::function<double(double)>, 2> fns;
  fns[0] = [](double t) { return std::sin(2.0 * t) + 0.3 * t * t + 1.0; };
  {
    const double c0 = cdist(rng), c1 = cdist(rng), c2 = cdist(rng), ph = cdist(rng);
    fns[1] = [=](double t) { return c0 + c1 * t + 0.4 * c2 * t * t + std::sin(2.0 * t + ph); };
  }
  const std::array<WeightFunction, 3> gs = {canonical_affine(cfg).g, canonical_exp_plus(cfg).g,
                                            canonical_exp_minus(cfg).g};
  for (const WeightFunction& g : gs) {
    for (double ord : {0.35, 0.75}) {
      const FracOrder al(ord);
      for (const auto& f : fns) {
        for (int i = 0; i < 7; ++i) {
          const double x = a + w * (0.05 + 0.9 * i / 6.0);
          auto Il = [&](double y) { return realfrac::frac_integral_left<double>(f, al, g, y, quad); };
          const double dl = realfrac::rl_derivative_left<double>(Il, al, g, x, quad);
          col.add(x, 0.0, std::fabs(dl - f(x)));
          auto Ir = [&](double y) { return realfrac::frac_integral_right<double>(f, al, g, y, quad); };
          const double dr = realfrac::rl_derivative_right<double>(Ir, al, g, x, quad);
          col.add(x, 0.0, std::fabs(dr - f(x)));
        }
      }
    }
  }
}

inline void rl_caputo_bridge(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const QuadratureSpec quad = quad_of(cfg);
  const double a = cfg.box_a, b = cfg.box_b, w = b - a;
  const FracOrder al(cfg.alpha);
  std::uniform_real_distribution<double> cdist(-1.0, 1.0);
  std::array<std::function<double(double)>, 2> fns;
  fns[0] = [](double t) { return std::cos(1.5 * t) + 0.2 * t + 0.7; };
  {
    const double c0 = cdist(rng), c1 = cdist(rng), ph = cdist(rng);
    fns[1] = [=](double t) { return c0 + 0.5 * c1 * t * t + std::cos(t + ph); };
  }
  const std::array<WeightFunction, 3> gs = {canonical_affine(cfg).g, canonical_exp_plus(cfg).g,
                                            canonical_exp_minus(cfg).g};
  for (const WeightFunction& g : gs) {
    for (const auto& f : fns) {
      for (int i = 0; i < 9; ++i) {
        const double x = a + w * (0.06 + 0.88 * i / 8.0);
        // Left: RL = Caputo + f(a) (g(x) - g(a))^(-alpha) / Gamma(1 - alpha).
        const double rl = realfrac::rl_derivative_left<double>(f, al, g, x, quad);
        const double cl =
            realfrac::caputo_derivative_left<double>(f, {}, al, g, x, quad);
        const double anchor_l =
            f(a) * std::pow(g.diff(x, a), -cfg.alpha) / gamma_fn(1.0 - cfg.alpha);
        col.add(x, 0.0, std::fabs(rl - cl - anchor_l));
        // Right: same bridge anchored at b.
        const double rr = realfrac::rl_derivative_right<double>(f, al, g, x, quad);
        const double cr =
            realfrac::caputo_derivative_right<double>(f, {}, al, g, x, quad);
        const double anchor_r =
            f(b) * std::pow(g.diff(b, x), -cfg.alpha) / gamma_fn(1.0 - cfg.alpha);
        col.add(x, 0.0, std::fabs(rr - cr - anchor_r));
      }
    }
  }
}

// --- slice layer -----------------------------------------------------------

inline void exp_conjugation(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const FdPolicy fd = quad_of(cfg).fd;
  std::uniform_real_distribution<double> uu(box.a + 0.05 * (box.b - box.a),
                                            box.b - 0.05 * (box.b - box.a));
  std::uniform_real_distribution<double> vv(-0.85 * box.c, 0.85 * box.c);
  for (double lambda : {0.0, 0.4, -0.3}) {
    const SliceFunction f = detail::random_smooth(rng, box);
    const auto slices = detail::random_slices(rng, box.n, 8);
    for (const auto& I : slices) {
      for (int k = 0; k < 100; ++k) {
        const double u = uu(rng), v = vv(rng);
        col.add(I, u, v, slicefn::exp_conjugation_residual(f, u, v, I, lambda, fd).norm_inf());
      }
    }
  }
}

inline void representation(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  std::uniform_real_distribution<double> uu(box.a, box.b);
  std::uniform_real_distribution<double> vv(-0.9 * box.c, 0.9 * box.c);
  for (double lambda : {0.0, 0.4, -0.3}) {
    const SliceFunction f = detail::random_slice_poly(rng, box, lambda, 3);
    for (int k = 0; k < 50; ++k) {
      const UnitImaginary I = detail::random_dir(rng, box.n);
      const UnitImaginary Ix = detail::random_dir(rng, box.n);
      const double u = uu(rng), v = vv(rng);
      col.add(Ix, u, v, slicefn::representation_residual(f, u, v, I, Ix));
    }
  }
}

inline void splitting(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const FdPolicy fd = quad_of(cfg).fd;
  // Frame split/reassemble round trip on random values.
  for (int k = 0; k < 30; ++k) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    const auto basis = clifford::complete_basis(I, rng());
    const Multivector m = detail::random_mv(rng, box.n);
    const Multivector back = clifford::reassemble(clifford::split(m, basis), basis);
    col.add_tol(&I, 0.0, 0.0, (back - m).norm_inf(), 1e-10);
  }
  // Component-wise plane holomorphy of the kernel family through the split.
  std::uniform_real_distribution<double> uu(box.a + 0.05 * (box.b - box.a),
                                            box.b - 0.05 * (box.b - box.a));
  std::uniform_real_distribution<double> vv(-0.85 * box.c, 0.85 * box.c);
  for (double lambda : {0.0, 0.4, -0.3}) {
    const SliceFunction f = detail::random_slice_poly(rng, box, lambda, 3);
    for (int k = 0; k < 15; ++k) {
      const UnitImaginary I = detail::random_dir(rng, box.n);
      const auto basis = clifford::complete_basis(I, rng());
      const double u = uu(rng), v = vv(rng);
      col.add(I, u, v, slicefn::splitting_holomorphy_residual(f, basis, u, v, lambda, fd));
    }
  }
}

inline void cauchy_formula(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const double u0 = 0.5 * (box.a + box.b), v0 = 0.45 * box.c;
  const double rho = 0.8 * std::min({0.5 * (box.b - box.a), v0, box.c - v0});
  for (double lambda : {0.0, 0.4, -0.3}) {
    const SliceFunction f = detail::random_slice_poly(rng, box, lambda, 3);
    for (int si = 0; si < 2; ++si) {
      const UnitImaginary I = detail::random_dir(rng, box.n);
      for (int k = 0; k < 4; ++k) {
        const double th = 0.7 + 1.9 * k;
        const double zu = u0 + 0.45 * rho * std::cos(th), zv = v0 + 0.45 * rho * std::sin(th);
        const Multivector got = slicefn::cauchy_value(f, u0, v0, rho, 512, I, zu, zv, lambda);
        col.add(I, zu, zv, (got - slicefn::eval_point(f, zu, zv, I)).norm_inf());
      }
    }
  }
}

inline void cauchy_theorem(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double lambda : {0.0, 0.4, -0.3}) {
    const SliceFunction f = detail::random_slice_poly(rng, box, lambda, 3);
    for (int k = 0; k < 4; ++k) {
      const UnitImaginary I = detail::random_dir(rng, box.n);
      if (k % 2 == 0) {
        const double rho = (0.1 + 0.25 * unit(rng)) * std::min(box.b - box.a, box.c);
        const double cu = box.a + rho + unit(rng) * (box.b - box.a - 2.0 * rho);
        const double cv = -box.c + rho + unit(rng) * 2.0 * (box.c - rho);
        const auto c = slicefn::Contour::circle(cu, cv, rho, 512, I);
        col.add(I, cu, cv, slicefn::cauchy_theorem_residual(f, c, lambda));
      } else {
        const double wdt = (0.2 + 0.4 * unit(rng)) * (box.b - box.a);
        const double hgt = (0.2 + 0.4 * unit(rng)) * box.c;
        const double ulo = box.a + unit(rng) * (box.b - box.a - wdt);
        const double vlo = -box.c + unit(rng) * (2.0 * box.c - hgt);
        const auto c = slicefn::Contour::rectangle(ulo, ulo + wdt, vlo, vlo + hgt, 128, I);
        col.add(I, ulo, vlo, slicefn::cauchy_theorem_residual(f, c, lambda));
      }
    }
  }
}

inline void morera(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  for (double lambda : {0.0, 0.4, -0.3}) {
    const SliceFunction f = detail::random_slice_poly(rng, box, lambda, 3);
    const auto rep = slicefn::morera_check(f, lambda, 16, rng(), col.tol, 256);
    col.add(0.0, 0.0, rep.max_residual);
  }
  // Negative control: reversing the imaginary part breaks the plane equations,
  // so random loops must NOT vanish on it.
  const Multivector C = detail::random_mv(rng, box.n);
  SliceFunction bad;
  bad.box = box;
  bad.eval = [C, n = box.n](double u, double v, const UnitImaginary& I) {
    const Multivector zbar = Multivector::scalar(n, u) - I.as_multivector() * v;
    return zbar * zbar * C;
  };
  const auto rep = slicefn::morera_check(bad, 0.0, 8, rng(), col.tol, 256);
  col.must_exceed(nullptr, 0.0, 0.0, rep.max_residual, 1e-3);
}

// --- fractional corner layer (Riemann-Liouville) ---------------------------

inline void fracprop1(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  std::uniform_real_distribution<double> uu(box.a + 0.1 * (box.b - box.a),
                                            box.b - 0.1 * (box.b - box.a));
  std::uniform_real_distribution<double> vv(0.1 * box.c, 0.9 * box.c);
  for (const WeightPair& w : {canonical_affine(cfg), canonical_exp_plus(cfg)}) {
    const FracSliceConfig fsc = corner_cfg(cfg, w, cfg.cross_r, cfg.cross_s);
    const SliceFunction f = detail::random_smooth(rng, box);
    for (const CornerVariant& var : corner::corner_variants()) {
      const auto slices = detail::random_slices(rng, box.n, 4);
      for (const auto& I : slices) {
        for (int k = 0; k < 50; ++k) {
          const double u = uu(rng), v = vv(rng);
          const SlicePoint p(u, v, I);
          col.add(I, u, v, corner::fracprop1_residual(f, var, p, fsc).norm_inf());
        }
      }
    }
  }
}

inline void fracprop2(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};  // low/low anchors, left multiplication
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const Multivector C0 = detail::random_mv(rng, box.n);
  const SliceFunction member = corner::member_construct(fsc, var, C0);
  const auto slices = detail::random_slices(rng, box.n, cfg.grid_slices);

  // Positive control, operator side: the member sweeps to zero.
  const auto sweep = corner::is_frac_slice_monogenic(member, var, fsc, cfg.grid_nu, cfg.grid_nv,
                                                     slices, col.tol);
  for (const auto& smp : sweep.samples) col.add(smp.I, smp.u, smp.v, smp.residual);

  // Positive control, transform side: the transform lands in the rate-lambda
  // kernel class, certified through the slice operator and the two-slice
  // representation formula.
  const SliceFunction hf = corner::hmap_function(member, var, fsc);
  std::uniform_real_distribution<double> uu(box.a + 0.1 * (box.b - box.a),
                                            box.b - 0.1 * (box.b - box.a));
  std::uniform_real_distribution<double> vv(0.1 * box.c, 0.9 * box.c);
  for (int si = 0; si < 2; ++si) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    for (int k = 0; k < 6; ++k) {
      const double u = uu(rng), v = vv(rng);
      col.add(I, u, v, slicefn::cr_residual(hf, u, v, I, fsc.lambda(), fsc.quad.fd).norm_inf());
    }
  }
  for (int k = 0; k < 8; ++k) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    const UnitImaginary Ix = detail::random_dir(rng, box.n);
    const double u = uu(rng), v = vv(rng);
    col.add(Ix, u, v, slicefn::representation_residual(hf, u, v, I, Ix));
  }

  // Negative controls: the perturbed member must fail the sweep AND its
  // transform must fail the slice certification, at the same tolerance.
  const SliceFunction bad = detail::perturb_linear(member, C0, 0.1);
  const auto badsweep =
      corner::is_frac_slice_monogenic(bad, var, fsc, 3, 3, {slices[0]}, col.tol);
  col.must_exceed(&slices[0], 0.0, 0.0, badsweep.max_residual, col.tol);
  const SliceFunction badh = corner::hmap_function(bad, var, fsc);
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double u = uu(rng), v = vv(rng);
    worst = std::max(
        worst, slicefn::cr_residual(badh, u, v, slices[0], fsc.lambda(), fsc.quad.fd).norm_inf());
  }
  col.must_exceed(&slices[0], 0.0, 0.0, worst, col.tol);
}

inline void member_kernel(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const Multivector C0 = detail::random_mv(rng, box.n);
  const auto slices = detail::random_slices(rng, box.n, 2);
  for (const WeightPair& w : {canonical_affine(cfg), canonical_exp_plus(cfg)}) {
    for (MultSide mult : {MultSide::Left, MultSide::Right}) {
      for (const CornerVariant& var : corner::corner_variants(mult)) {
        const auto anchor = corner::member_cross(var, box);
        const FracSliceConfig fsc = corner_cfg(cfg, w, anchor.first, anchor.second);
        const SliceFunction member = corner::member_construct(fsc, var, C0);
        const auto sweep =
            corner::is_frac_slice_monogenic(member, var, fsc, 4, 4, slices, col.tol);
        for (const auto& smp : sweep.samples) col.add(smp.I, smp.u, smp.v, smp.residual);
      }
    }
  }
  // A member built for the opposite corner must fail the low/low sweep.
  const CornerVariant ll{}, hh{USide::HighMinus, VSide::HighMinus, MultSide::Left};
  const auto anchor = corner::member_cross(ll, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const FracSliceConfig fsc_hh =
      corner_cfg(cfg, canonical_affine(cfg), corner::member_cross(hh, box).first,
                 corner::member_cross(hh, box).second);
  const SliceFunction wrong = corner::member_construct(fsc_hh, hh, C0);
  const auto badsweep = corner::is_frac_slice_monogenic(wrong, ll, fsc, 3, 3, {slices[0]}, col.tol);
  col.must_exceed(&slices[0], 0.0, 0.0, badsweep.max_residual, 1e-2);
  // And the perturbed member fails its own sweep.
  const SliceFunction member = corner::member_construct(fsc, ll, C0);
  const auto pertsweep = corner::is_frac_slice_monogenic(detail::perturb_linear(member, C0, 0.1),
                                                         ll, fsc, 3, 3, {slices[0]}, col.tol);
  col.must_exceed(&slices[0], 0.0, 0.0, pertsweep.max_residual, 1e-2);
}

inline void frac_representation(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const SliceFunction member = corner::member_construct(fsc, var, detail::random_mv(rng, box.n));
  std::uniform_real_distribution<double> uu(box.a + 0.1 * (box.b - box.a),
                                            box.b - 0.1 * (box.b - box.a));
  std::uniform_real_distribution<double> vv(0.1 * box.c, 0.9 * box.c);
  for (int k = 0; k < 24; ++k) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    const UnitImaginary Ix = detail::random_dir(rng, box.n);
    const double u = uu(rng), v = vv(rng);
    col.add(Ix, u, v, corner::frac_representation_check(member, var, u, v, I, Ix, fsc));
  }
}

inline void frac_splitting(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const SliceFunction member = corner::member_construct(fsc, var, detail::random_mv(rng, box.n));
  std::uniform_real_distribution<double> uu(box.a + 0.1 * (box.b - box.a),
                                            box.b - 0.1 * (box.b - box.a));
  std::uniform_real_distribution<double> vv(0.1 * box.c, 0.9 * box.c);
  for (int si = 0; si < 2; ++si) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    const auto basis = clifford::complete_basis(I, rng());
    for (int k = 0; k < 10; ++k) {
      const double u = uu(rng), v = vv(rng);
      col.add(I, u, v, corner::frac_splitting_check(member, var, basis, u, v, fsc));
    }
  }
}

inline void frac_series(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_exp_plus(cfg), anchor.first, anchor.second);
  const SliceFunction member = corner::member_construct(fsc, var, detail::random_mv(rng, box.n));
  const double u0 = 0.5 * (box.a + box.b), v0 = 0.5 * box.c;
  const double rho = 0.22 * std::min(box.b - box.a, box.c);
  for (int si = 0; si < 2; ++si) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    // The least-squares misfit must decrease as the fitted degree grows; the
    // holdout ring must stay consistent with the fit samples.
    double prev = -1.0;
    for (int N : {2, 4, 6, 8}) {
      const auto fit = corner::frac_series_fit(member, var, I, u0, v0, rho, N, fsc);
      if (prev >= 0.0) {
        const double growth = fit.rms_residual - prev;
        col.add_tol(&I, static_cast<double>(N), 0.0, std::max(0.0, growth), 0.0);
      }
      col.add_tol(&I, static_cast<double>(N), 1.0,
                  std::max(0.0, fit.holdout_residual - 2.0 * fit.fit_residual - 1e-12), 0.0);
      prev = fit.rms_residual;
    }
  }
}

inline void frac_cauchy(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const SliceFunction member = corner::member_construct(fsc, var, detail::random_mv(rng, box.n));
  const double u0 = 0.5 * (box.a + box.b) - 0.03, v0 = 0.45 * box.c;
  const double rho = 0.2 * std::min(box.b - box.a, box.c);
  for (int si = 0; si < 2; ++si) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    for (int k = 0; k < 3; ++k) {
      const double th = 0.5 + 2.1 * k;
      const double zu = u0 + 0.4 * rho * std::cos(th), zv = v0 + 0.4 * rho * std::sin(th);
      col.add(I, zu, zv,
              corner::frac_cauchy_check(member, var, u0, v0, rho, zu, zv, I, 256, fsc));
    }
  }
}

inline void frac_cauchy_thm(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const SliceFunction member = corner::member_construct(fsc, var, detail::random_mv(rng, box.n));
  const double w = box.b - box.a;
  for (int si = 0; si < 2; ++si) {
    const UnitImaginary I = detail::random_dir(rng, box.n);
    const auto circle =
        slicefn::Contour::circle(box.a + 0.45 * w, 0.5 * box.c, 0.18 * std::min(w, box.c), 256, I);
    col.add(I, 0.0, 0.0, corner::frac_cauchy_theorem_check(member, var, circle, fsc));
    const auto rect = slicefn::Contour::rectangle(box.a + 0.25 * w, box.a + 0.7 * w, 0.25 * box.c,
                                                  0.7 * box.c, 64, I);
    col.add(I, 0.0, 0.0, corner::frac_cauchy_theorem_check(member, var, rect, fsc));
  }
}

inline void frac_morera(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const Multivector C0 = detail::random_mv(rng, box.n);
  const SliceFunction member = corner::member_construct(fsc, var, C0);
  const auto rep = corner::frac_morera_check(member, var, fsc, 8, rng(), col.tol, 128);
  col.add(0.0, 0.0, rep.max_residual);
  // The transform of a perturbed member leaves the kernel class: loops catch it.
  const auto bad = corner::frac_morera_check(detail::perturb_linear(member, C0, 0.1), var, fsc, 6,
                                             rng(), col.tol, 128);
  col.must_exceed(nullptr, 0.0, 0.0, bad.max_residual, 1e-4);
}

inline void cross_recovery(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const CornerVariant var{};
  const auto anchor = corner::member_cross(var, box);
  const FracSliceConfig fsc = corner_cfg(cfg, canonical_affine(cfg), anchor.first, anchor.second);
  const SliceFunction member = corner::member_construct(fsc, var, detail::random_mv(rng, box.n));
  const UnitImaginary I = detail::random_dir(rng, box.n);
  const UnitImaginary Ix = detail::random_dir(rng, box.n);
  const double u0 = 0.5 * (box.a + box.b), v0 = 0.5 * box.c;
  const double rho = 0.22 * std::min(box.b - box.a, box.c);
  const auto fit = corner::frac_series_fit(member, var, I, u0, v0, rho, 2, fsc);

  FracSliceConfig coarse = fsc, fine = fsc;
  coarse.quad.order = 16;
  coarse.quad.fd.h0 = 2e-3;
  fine.quad.order = 32;
  fine.quad.fd.h0 = 1e-3;
  const double w = box.b - box.a;
  for (int k = 0; k < 2; ++k) {
    const double u = box.a + w * (0.6 + 0.1 * k), v = box.c * (0.55 - 0.2 * k);
    const double rc =
        corner::cross_recovery_residual(member, fit.coeffs, I, Ix, u0, v0, u, v, coarse);
    const double rf =
        corner::cross_recovery_residual(member, fit.coeffs, I, Ix, u0, v0, u, v, fine);
    col.add(Ix, u, v, rf);
    // Self-convergence: doubling the quadrature order must shrink the
    // residual (or both sit at the numerical floor already).
    const double gate = (rf < rc || rf < 1e-10) ? 0.0 : rf - rc;
    col.add_tol(&Ix, u, v, gate, 0.0);
  }
}

// --- Caputo layer ----------------------------------------------------------

inline void caputo_kernel(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const FracSliceConfig fsc = corner_cfg(cfg, configured_pair(cfg), cfg.cross_r, cfg.cross_s);
  const Multivector C = detail::random_mv(rng, box.n);
  const auto slices = detail::random_slices(rng, box.n, 2);
  const double w = box.b - box.a;
  const std::array<std::pair<double, double>, 2> pts = {
      std::make_pair(box.a + 0.55 * w, 0.6 * box.c), std::make_pair(box.a + 0.8 * w, 0.35 * box.c)};

  // Constants are annihilated at every corner, with the derivative layer
  // running through finite differences (no analytic partials attached).
  const SliceFunction cnofd = detail::constant_fn(box, C, false);
  for (const CornerVariant& var : corner::corner_variants()) {
    for (const auto& [u, v] : pts) {
      const SlicePoint p(u, v, slices[0]);
      col.add(slices[0], u, v, corner::caputo_operator(cnofd, var, p, fsc).norm_inf());
    }
  }
  // With analytic zero partials the annihilation is exact.
  const SliceFunction cvp = detail::constant_fn(box, C, true);
  for (const CornerVariant& var : corner::corner_variants()) {
    const SlicePoint p(pts[0].first, pts[0].second, slices[1]);
    col.add_tol(&slices[1], p.u, p.v, corner::caputo_operator(cvp, var, p, fsc).norm_inf(), 0.0);
  }

  // Matched members: annihilated at the configured cross point (their
  // profiles vanish at their own anchors, so the anchor terms contribute
  // nothing). Tolerance reflects the t-space resolution floor of
  // anchor-singular profile derivatives, not the quadrature error.
  const double member_tol = std::max(col.tol, 5e-6);
  for (const CornerVariant& var : corner::corner_variants()) {
    const SliceFunction member = corner::member_construct(fsc, var, C);
    for (const auto& [u, v] : pts) {
      const SlicePoint p(u, v, slices[1]);
      col.add_tol(&slices[1], u, v, corner::caputo_operator(member, var, p, fsc).norm_inf(),
                  member_tol);
    }
  }
  // Sweep form for the low/low member.
  const SliceFunction mll = corner::member_construct(fsc, CornerVariant{}, C);
  const auto sweep = corner::is_caputo_member(mll, fsc, 3, 3, slices, member_tol);
  for (const auto& smp : sweep.samples) col.add_tol(&smp.I, smp.u, smp.v, smp.residual, member_tol);

  // Contrast rows: the unanchored corner operator does NOT annihilate
  // constants, and a member built for the opposite corner is not in the
  // kernel.
  const SlicePoint p0(pts[0].first, pts[0].second, slices[0]);
  col.must_exceed(&slices[0], p0.u, p0.v,
                  corner::rl_operator(cnofd, CornerVariant{}, p0, fsc).norm_inf(), 1e-2);
  const CornerVariant hh{USide::HighMinus, VSide::HighMinus, MultSide::Left};
  const SliceFunction mhh = corner::member_construct(fsc, hh, C);
  col.must_exceed(&slices[0], p0.u, p0.v,
                  corner::caputo_operator(mhh, CornerVariant{}, p0, fsc).norm_inf(), 1e-2);
}

inline void caputo_h_identity(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  // The identity pins its own accuracy knobs: the finite-difference fallback
  // mis-resolves the transform's anchor power over a zone of width ~h0, with
  // error growing like h0^alpha, so the step is fixed small and the
  // quadrature order raised to match.
  RunConfig acc = cfg;
  acc.quad_order = 48;
  acc.fd_h0 = 1e-5;
  const FracSliceConfig fsc = corner_cfg(acc, configured_pair(cfg), cfg.cross_r, cfg.cross_s);
  const UnitImaginary I = detail::random_dir(rng, box.n);
  const Multivector C = detail::random_mv(rng, box.n);
  const std::array<SliceFunction, 3> fns = {detail::constant_fn(box, C, false),
                                            detail::random_smooth(rng, box),
                                            corner::member_construct(fsc, CornerVariant{}, C)};
  const double w = box.b - box.a;
  for (const SliceFunction& f : fns) {
    for (int k = 0; k < 2; ++k) {
      const double u = box.a + w * (0.5 + 0.25 * k), v = box.c * (0.55 - 0.15 * k);
      const SlicePoint p(u, v, I);
      col.add(I, u, v, corner::caputo_h_identity_residual(f, p, fsc).norm_inf());
    }
  }
}

inline void caputo_characterization(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  RunConfig acc = cfg;
  acc.quad_order = 16;  // the nested double-derivative side is cubic in order
  const FracSliceConfig fsc = corner_cfg(acc, configured_pair(cfg), cfg.cross_r, cfg.cross_s);
  const UnitImaginary I = detail::random_dir(rng, box.n);
  const Multivector C = detail::random_mv(rng, box.n);
  const double w = box.b - box.a;
  const SlicePoint p(box.a + 0.62 * w, 0.58 * box.c, I);

  // Functions whose both cross lines vanish identically: every residual is
  // exactly zero.
  SliceFunction zero;
  zero.box = box;
  zero.eval = [n = box.n](double, double, const UnitImaginary&) { return Multivector(n); };
  const auto rz = corner::caputo_characterization_check(zero, p, fsc);
  col.add_tol(&I, p.u, p.v, rz.eq_residual, 1e-12);
  col.add_tol(&I, p.u, p.v, rz.dd_residual, 1e-12);

  SliceFunction crossv;
  crossv.box = box;
  crossv.eval = [C, r = fsc.r, s = fsc.s](double u, double v, const UnitImaginary& J) {
    const Multivector base = C + J.as_multivector() * C * 0.2;
    return base * ((u - r) * (v - s) * (1.0 + 0.3 * u + 0.1 * v * v));
  };
  const auto rc = corner::caputo_characterization_check(crossv, p, fsc);
  col.add_tol(&I, p.u, p.v, rc.eq_residual, 1e-12);
  col.add_tol(&I, p.u, p.v, rc.dd_residual, 1e-12);

  // Kernel members and constants pass the membership sweep yet leave nonzero
  // line content, so both exchange residuals stay ORDER-ONE on them: the
  // residual pair detects vanishing cross lines, not membership.
  const double member_tol = 5e-6;
  const SliceFunction member = corner::member_construct(fsc, CornerVariant{}, C);
  const auto sweep = corner::is_caputo_member(member, fsc, 3, 3, {I}, member_tol);
  for (const auto& smp : sweep.samples) col.add_tol(&smp.I, smp.u, smp.v, smp.residual, member_tol);
  const auto rm = corner::caputo_characterization_check(member, p, fsc);
  col.must_exceed(&I, p.u, p.v, rm.eq_residual, 0.5);
  col.must_exceed(&I, p.u, p.v, rm.dd_residual, 0.5);

  const SliceFunction cf = detail::constant_fn(box, C, false);
  col.add_tol(&I, p.u, p.v, corner::caputo_operator(cf, CornerVariant{}, p, fsc).norm_inf(), 1e-10);
  const auto rcst = corner::caputo_characterization_check(cf, p, fsc);
  col.must_exceed(&I, p.u, p.v, rcst.eq_residual, 0.5);
  col.must_exceed(&I, p.u, p.v, rcst.dd_residual, 0.5);

  // A generic smooth function is neither a member nor line-free: the operator
  // and both residuals are all order-one.
  const SliceFunction smooth = detail::random_smooth(rng, box);
  col.must_exceed(&I, p.u, p.v, corner::caputo_operator(smooth, CornerVariant{}, p, fsc).norm_inf(),
                  1e-3);
  const auto rs = corner::caputo_characterization_check(smooth, p, fsc);
  col.must_exceed(&I, p.u, p.v, rs.eq_residual, 0.5);
  col.must_exceed(&I, p.u, p.v, rs.dd_residual, 0.5);
}

inline void mixed_operators(const RunConfig& cfg, detail::Collector& col) {
  auto rng = detail::scenario_rng(cfg, col.name);
  const AxialBox box = box_of(cfg);
  const FracSliceConfig fsc = corner_cfg(cfg, configured_pair(cfg), cfg.cross_r, cfg.cross_s);
  const SliceFunction f = detail::random_smooth(rng, box);
  const UnitImaginary I = detail::random_dir(rng, box.n);
  const double w = box.b - box.a;

  // Pure reductions must be bitwise: both paths dispatch to the same
  // per-direction helpers, so the difference is exactly zero.
  for (const CornerVariant& var :
       {CornerVariant{}, CornerVariant{USide::HighMinus, VSide::HighMinus, MultSide::Right}}) {
    for (int k = 0; k < 2; ++k) {
      const double u = box.a + w * (0.55 + 0.2 * k), v = box.c * (0.6 - 0.2 * k);
      const SlicePoint p(u, v, I);
      const corner::MixedVariant mc{corner::DerivKind::Caputo, var.u_side,
                                    corner::DerivKind::Caputo, var.v_side, var.mult};
      col.add_tol(&I, u, v,
                  (corner::mixed_operator(f, mc, p, fsc) - corner::caputo_operator(f, var, p, fsc))
                      .norm_inf(),
                  0.0);
      const corner::MixedVariant mr{corner::DerivKind::RL, var.u_side, corner::DerivKind::RL,
                                    var.v_side, var.mult};
      col.add_tol(&I, u, v,
                  (corner::mixed_operator(f, mr, p, fsc) - corner::rl_operator(f, var, p, fsc))
                      .norm_inf(),
                  0.0);
    }
  }

  // Switching one direction between the two derivative senses adds exactly
  // the line's anchor value times the kernel power.
  const SlicePoint p(box.a + 0.6 * w, 0.6 * box.c, I);
  const corner::MixedVariant base{corner::DerivKind::Caputo, USide::LowPlus,
                                  corner::DerivKind::Caputo, VSide::LowPlus, MultSide::Left};
  const Multivector at = corner::mixed_operator(f, base, p, fsc);
  corner::MixedVariant uRL = base;
  uRL.u_kind = corner::DerivKind::RL;
  const Multivector gap_u = corner::mixed_operator(f, uRL, p, fsc) - at;
  const Multivector want_u =
      f.eval(box.a, fsc.s, I) *
      (std::pow(fsc.g.diff(p.u, box.a), -fsc.alpha.v) / gamma_fn(1.0 - fsc.alpha.v));
  col.add_tol(&I, p.u, p.v, (gap_u - want_u).norm_inf(), 1e-9);
  corner::MixedVariant vRL = base;
  vRL.v_kind = corner::DerivKind::RL;
  const Multivector gap_v = corner::mixed_operator(f, vRL, p, fsc) - at;
  const Multivector want_v =
      I.as_multivector() * f.eval(fsc.r, 0.0, I) *
      (std::pow(fsc.h.diff(p.v, 0.0), -fsc.beta.v) / gamma_fn(1.0 - fsc.beta.v));
  col.add_tol(&I, p.u, p.v, (gap_v - want_v).norm_inf(), 1e-9);
  // High edge: the raw orientation enters the gap with a negative sign.
  const corner::MixedVariant baseH{corner::DerivKind::Caputo, USide::HighMinus,
                                   corner::DerivKind::Caputo, VSide::LowPlus, MultSide::Left};
  corner::MixedVariant uRLH = baseH;
  uRLH.u_kind = corner::DerivKind::RL;
  const Multivector gap_h =
      corner::mixed_operator(f, uRLH, p, fsc) - corner::mixed_operator(f, baseH, p, fsc);
  const Multivector want_h =
      f.eval(box.b, fsc.s, I) *
      (-std::pow(fsc.g.diff(box.b, p.u), -fsc.alpha.v) / gamma_fn(1.0 - fsc.alpha.v));
  col.add_tol(&I, p.u, p.v, (gap_h - want_h).norm_inf(), 1e-9);
}

}  // namespace scenarios

inline const std::array<ScenarioInfo, 24>& registry() {
  static const std::array<ScenarioInfo, 24> table = {{
      {"clifford-axioms",
       "Generator anticommutation and associativity of the geometric product.", 1e-12,
       scenarios::clifford_axioms},
      {"power-law",
       "Weighted fractional integrals of weight-increment powers against the power rule.", 1e-8,
       scenarios::power_law},
      {"fund-theorem",
       "Fractional derivative of the matching fractional integral returns the integrand.", 1e-4,
       scenarios::fund_theorem},
      {"rl-caputo-bridge",
       "The two derivative conventions differ by the anchor value times the kernel power.", 1e-4,
       scenarios::rl_caputo_bridge},
      {"exp-conjugation",
       "Multiplying by exp(lambda u) shifts the slice operator rate to zero exactly.", 1e-6,
       scenarios::exp_conjugation},
      {"representation",
       "Two mirrored slice values reproduce the function on every other slice.", 1e-8,
       scenarios::representation},
      {"splitting",
       "Frame splitting round-trips values and yields plane-holomorphic components.", 1e-8,
       scenarios::splitting},
      {"cauchy-formula",
       "Weighted circle integrals reproduce interior values of kernel functions.", 1e-6,
       scenarios::cauchy_formula},
      {"cauchy-theorem",
       "Weighted integrals over closed contours vanish on kernel functions.", 1e-8,
       scenarios::cauchy_theorem},
      {"morera",
       "Random closed loops vanish on kernel functions and expose a non-member.", 1e-8,
       scenarios::morera},
      {"fracprop1",
       "Corner operator equals the plain derivative sum of weighted edge integrals.", 1e-3,
       scenarios::fracprop1},
      {"fracprop2",
       "Corner membership and certified transform output agree on both controls.", 1e-3,
       scenarios::fracprop2},
      {"member-kernel",
       "Constructed corner members are annihilated at their own anchor cross.", 1e-3,
       scenarios::member_kernel},
      {"frac-representation",
       "Transform output satisfies the two-slice representation formula.", 1e-3,
       scenarios::frac_representation},
      {"frac-splitting",
       "Transform output splits into components satisfying the plane equations.", 1e-3,
       scenarios::frac_splitting},
      {"frac-series",
       "Series fits of the transform tighten as the fitted degree grows.", 1e-12,
       scenarios::frac_series},
      {"frac-cauchy",
       "Circle integrals reproduce the transform inside its disk.", 1e-3,
       scenarios::frac_cauchy},
      {"frac-cauchy-thm",
       "Closed-contour integrals of the transform vanish.", 1e-3,
       scenarios::frac_cauchy_thm},
      {"frac-morera",
       "Random closed loops vanish on the transform of a member and reject a perturbed one.", 1e-3,
       scenarios::frac_morera},
      {"cross-recovery",
       "Nested derivatives of a fitted series recover weighted cross-line values.", 1e-2,
       scenarios::cross_recovery},
      {"caputo-kernel",
       "Constants and matched members are annihilated by the anchored corner operator.", 1e-10,
       scenarios::caputo_kernel},
      {"caputo-h-identity",
       "Anchored operator of the edge-integral transform matches its exchange form.", 1e-2,
       scenarios::caputo_h_identity},
      {"caputo-characterization",
       "Exchange residuals vanish exactly when both cross lines vanish.", 1e-12,
       scenarios::caputo_characterization},
      {"mixed-operators",
       "Mixed corner operators reduce to pure forms; sense gaps match anchor terms.", 1e-9,
       scenarios::mixed_operators},
  }};
  return table;
}

inline const ScenarioInfo* find_scenario(std::string_view name) {
  for (const ScenarioInfo& s : registry())
    if (name == s.name) return &s;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Config validation, parsing, echo
// ---------------------------------------------------------------------------

inline void RunConfig::validate() const {
  box_of(*this).validate();
  quad_of(*this).validate();
  FracOrder check_alpha(alpha);
  FracOrder check_beta(beta);
  if (family != "affine" && family != "expode")
    throw std::invalid_argument("config: family must be affine or expode");
  if (family == "affine" && lambda != 0.0)
    throw std::invalid_argument("config: family=affine requires lambda = 0");
  if (quad_scheme != "gauss-jacobi" && quad_scheme != "graded")
    throw std::invalid_argument("config: quad.scheme must be gauss-jacobi or graded");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("config: format must be csv or json");
  if (grid_nu < 2 || grid_nv < 2 || grid_slices < 1)
    throw std::invalid_argument("config: grids need nu, nv >= 2 and slices >= 1");
  if (out_dir.empty()) throw std::invalid_argument("config: out must not be empty");
  // Weight and cross constraints surface through the constructors.
  FracSliceConfig probe = corner_cfg(*this, configured_pair(*this), cross_r, cross_s);
  (void)probe;
  for (const auto& [key, val] : tol_override) {
    if (find_scenario(key) == nullptr)
      throw std::invalid_argument("config: tolerance override for unknown scenario: " + key);
    if (!(val > 0.0))
      throw std::invalid_argument("config: tolerance override must be positive: " + key);
  }
}

namespace detail {

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double parse_double(const std::string& v, const std::string& key) {
  size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + v);
  }
  if (used != v.size()) throw std::invalid_argument("config: bad number for " + key + ": " + v);
  return out;
}

inline long long parse_int(const std::string& v, const std::string& key) {
  size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  }
  if (used != v.size()) throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  return out;
}

inline std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  size_t used = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad seed for " + key + ": " + v);
  }
  if (used != v.size()) throw std::invalid_argument("config: bad seed for " + key + ": " + v);
  return out;
}

}  // namespace detail

// Applies one `key = value` assignment. Shared by the file parser and the CLI
// override flags so both accept exactly the same keys.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  using detail::parse_double;
  using detail::parse_int;
  if (key == "n") cfg.n = static_cast<int>(parse_int(value, key));
  else if (key == "box.a") cfg.box_a = parse_double(value, key);
  else if (key == "box.b") cfg.box_b = parse_double(value, key);
  else if (key == "box.c") cfg.box_c = parse_double(value, key);
  else if (key == "alpha") cfg.alpha = parse_double(value, key);
  else if (key == "beta") cfg.beta = parse_double(value, key);
  else if (key == "family") cfg.family = value;
  else if (key == "lambda") cfg.lambda = parse_double(value, key);
  else if (key == "g.slope") cfg.g_slope = parse_double(value, key);
  else if (key == "g.intercept") cfg.g_intercept = parse_double(value, key);
  else if (key == "h.slope") cfg.h_slope = parse_double(value, key);
  else if (key == "h.intercept") cfg.h_intercept = parse_double(value, key);
  else if (key == "g.delta1") cfg.g_delta1 = parse_double(value, key);
  else if (key == "g.delta2") cfg.g_delta2 = parse_double(value, key);
  else if (key == "h.delta1") cfg.h_delta1 = parse_double(value, key);
  else if (key == "h.delta2") cfg.h_delta2 = parse_double(value, key);
  else if (key == "cross.r") cfg.cross_r = parse_double(value, key);
  else if (key == "cross.s") cfg.cross_s = parse_double(value, key);
  else if (key == "quad.order") cfg.quad_order = static_cast<int>(parse_int(value, key));
  else if (key == "quad.scheme") cfg.quad_scheme = value;
  else if (key == "fd.h0") cfg.fd_h0 = parse_double(value, key);
  else if (key == "fd.richardson") cfg.fd_richardson = static_cast<int>(parse_int(value, key));
  else if (key == "grid.nu") cfg.grid_nu = static_cast<int>(parse_int(value, key));
  else if (key == "grid.nv") cfg.grid_nv = static_cast<int>(parse_int(value, key));
  else if (key == "grid.slices") cfg.grid_slices = static_cast<int>(parse_int(value, key));
  else if (key == "seed") cfg.seed = detail::parse_u64(value, key);
  else if (key == "out") cfg.out_dir = value;
  else if (key == "format") cfg.format = value;
  else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    cfg.tol_override[name] = parse_double(value, key);
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

// Flat `key = value` grammar, `#` comments, no sections.
inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = detail::trim(stripped.substr(0, eq));
    const std::string value = detail::trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    apply_setting(cfg, key, value);
  }
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// Canonical serialization: every key in a fixed order, `%.17g` numbers, so
// identical configurations echo identically byte for byte.
inline std::vector<std::string> config_echo(const RunConfig& cfg) {
  using detail::fmt17;
  std::vector<std::string> out;
  auto put = [&](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
  put("n", std::to_string(cfg.n));
  put("box.a", fmt17(cfg.box_a));
  put("box.b", fmt17(cfg.box_b));
  put("box.c", fmt17(cfg.box_c));
  put("alpha", fmt17(cfg.alpha));
  put("beta", fmt17(cfg.beta));
  put("family", cfg.family);
  put("lambda", fmt17(cfg.lambda));
  put("g.slope", fmt17(cfg.g_slope));
  put("g.intercept", fmt17(cfg.g_intercept));
  put("h.slope", fmt17(cfg.h_slope));
  put("h.intercept", fmt17(cfg.h_intercept));
  put("g.delta1", fmt17(cfg.g_delta1));
  put("g.delta2", fmt17(cfg.g_delta2));
  put("h.delta1", fmt17(cfg.h_delta1));
  put("h.delta2", fmt17(cfg.h_delta2));
  put("cross.r", fmt17(cfg.cross_r));
  put("cross.s", fmt17(cfg.cross_s));
  put("quad.order", std::to_string(cfg.quad_order));
  put("quad.scheme", cfg.quad_scheme);
  put("fd.h0", fmt17(cfg.fd_h0));
  put("fd.richardson", std::to_string(cfg.fd_richardson));
  put("grid.nu", std::to_string(cfg.grid_nu));
  put("grid.nv", std::to_string(cfg.grid_nv));
  put("grid.slices", std::to_string(cfg.grid_slices));
  put("seed", std::to_string(cfg.seed));
  put("out", cfg.out_dir);
  put("format", cfg.format);
  for (const auto& [k, v] : cfg.tol_override) put("tol." + k, fmt17(v));
  return out;
}

// ---------------------------------------------------------------------------
// Running scenarios
// ---------------------------------------------------------------------------

inline ScenarioReport run_scenario(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  const ScenarioInfo* info = find_scenario(name);
  if (info == nullptr) throw std::invalid_argument("unknown scenario: " + name);

  detail::Collector col;
  col.name = name;
  col.n = cfg.n;
  const auto ov = cfg.tol_override.find(name);
  col.tol = ov != cfg.tol_override.end() ? ov->second : info->default_tol;

  const auto t0 = std::chrono::steady_clock::now();
  info->fill(cfg, col);
  const auto t1 = std::chrono::steady_clock::now();

  ScenarioReport rep;
  rep.scenario = name;
  rep.config_echo = config_echo(cfg);
  rep.samples = std::move(col.samples);
  rep.tolerance = col.tol;
  rep.pass = true;
  for (const SampleRecord& s : rep.samples) {
    if (std::isnan(rep.max_residual)) break;
    if (std::isnan(s.residual) || s.residual > rep.max_residual) rep.max_residual = s.residual;
  }
  for (const SampleRecord& s : rep.samples) rep.pass = rep.pass && s.pass;
  rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

struct RunAllResult {
  std::vector<ScenarioReport> reports;
  bool all_pass = true;
  double wall_ms = 0.0;
};

inline RunAllResult run_all(const RunConfig& cfg) {
  RunAllResult out;
  for (const ScenarioInfo& s : registry()) {
    out.reports.push_back(run_scenario(s.name, cfg));
    out.all_pass = out.all_pass && out.reports.back().pass;
    out.wall_ms += out.reports.back().wall_ms;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline std::string coords_joined(const SampleRecord& s) {
  std::string out;
  for (int i = 0; i < s.n; ++i) {
    if (i) out += ';';
    out += detail::fmt17(s.I[static_cast<size_t>(i)]);
  }
  return out;
}

inline std::string to_csv(const ScenarioReport& rep) {
  std::string out = "scenario,sample_index,I_coords,u,v,residual,tolerance,pass\n";
  for (const SampleRecord& s : rep.samples) {
    out += rep.scenario;
    out += ',';
    out += std::to_string(s.index);
    out += ',';
    out += coords_joined(s);
    out += ',';
    out += detail::fmt17(s.u);
    out += ',';
    out += detail::fmt17(s.v);
    out += ',';
    out += detail::fmt17(s.residual);
    out += ',';
    out += detail::fmt17(s.tolerance);
    out += ',';
    out += s.pass ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const ScenarioReport& rep) {
  nlohmann::ordered_json j;
  j["scenario"] = rep.scenario;
  j["config"] = rep.config_echo;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SampleRecord& s : rep.samples) {
    nlohmann::ordered_json r;
    r["sample_index"] = s.index;
    std::vector<double> coords(s.I.begin(), s.I.begin() + s.n);
    r["I_coords"] = coords;
    r["u"] = s.u;
    r["v"] = s.v;
    r["residual"] = s.residual;
    r["tolerance"] = s.tolerance;
    r["pass"] = s.pass;
    rows.push_back(std::move(r));
  }
  j["samples"] = std::move(rows);
  j["summary"] = {{"samples", rep.samples.size()},
                  {"max_residual", rep.max_residual},
                  {"tolerance", rep.tolerance},
                  {"pass", rep.pass}};
  return j;
}

inline std::string render_report(const ScenarioReport& rep, const std::string& format) {
  if (format == "json") return to_json(rep).dump(2) + "\n";
  return to_csv(rep);
}

// Writes out_dir/<scenario>.<fmt>; returns the path written.
inline std::string write_report(const ScenarioReport& rep, const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::string ext = cfg.format == "json" ? ".json" : ".csv";
  const std::string path = (std::filesystem::path(cfg.out_dir) / (rep.scenario + ext)).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << render_report(rep, cfg.format);
  return path;
}

inline std::string render_summary(const RunAllResult& all, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ScenarioReport& r : all.reports)
      rows.push_back({{"scenario", r.scenario},
                      {"samples", r.samples.size()},
                      {"max_residual", r.max_residual},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
    j["scenarios"] = std::move(rows);
    j["all_pass"] = all.all_pass;
    return j.dump(2) + "\n";
  }
  std::string out = "scenario,samples,max_residual,tolerance,pass\n";
  for (const ScenarioReport& r : all.reports) {
    out += r.scenario;
    out += ',';
    out += std::to_string(r.samples.size());
    out += ',';
    out += detail::fmt17(r.max_residual);
    out += ',';
    out += detail::fmt17(r.tolerance);
    out += ',';
    out += r.pass ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline std::string write_summary(const RunAllResult& all, const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::string ext = cfg.format == "json" ? ".json" : ".csv";
  const std::string path = (std::filesystem::path(cfg.out_dir) / ("summary" + ext)).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary: " + path);
  out << render_summary(all, cfg.format);
  return path;
}

}  // namespace fracslice::harness

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fracslice/gamma.hpp"
#include "fracslice/multivector.hpp"
#include "fracslice/quadrature.hpp"

using namespace fracslice;

TEST_CASE("gamma function on half-integers and known values") {
  CHECK(std::fabs(gamma_fn(1.0) - 1.0) < 1e-14);
  CHECK(std::fabs(gamma_fn(2.0) - 1.0) < 1e-14);
  CHECK(std::fabs(gamma_fn(5.0) - 24.0) / 24.0 < 1e-14);
  CHECK(std::fabs(gamma_fn(0.5) - std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(std::fabs(gamma_fn(1.5) - 0.5 * std::sqrt(std::numbers::pi)) < 1e-14);
  // Recurrence Gamma(x+1) = x Gamma(x) across the reflection boundary.
  for (double x : {0.1, 0.3, 0.47, 0.9, 1.7, 3.3}) {
    CHECK(std::fabs(gamma_fn(x + 1.0) - x * gamma_fn(x)) / gamma_fn(x + 1.0) < 5e-15);
  }
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.2), std::domain_error);
}

TEST_CASE("gauss-legendre integrates monomials exactly") {
  const int N = 8;
  const QuadRule& r = gauss_legendre(N);
  for (int k = 0; k < 2 * N; ++k) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += r.w[i] * std::pow(r.x[i], k);
    const double expect = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(std::fabs(s - expect) < 1e-13);
  }
}

TEST_CASE("gauss-legendre on a smooth transcendental integrand") {
  const QuadRule& r = gauss_legendre(64);
  double s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::exp(r.x[i]);
  CHECK(std::fabs(s - (std::exp(1.0) - std::exp(-1.0))) < 1e-14);
}

namespace {

// Moments int_{-1}^{1} (1-t)^{A+l} t^k dt by the two-index recurrence
// T(l,k) = T(l,k-1) - T(l+1,k-1), T(l,0) = 2^{A+l+1}/(A+l+1). Each difference
// can double the absolute error, so the table is built in extended precision.
std::vector<std::vector<double>> jacobi_moments(double A, int kmax) {
  std::vector<std::vector<long double>> T(kmax + 1);
  for (int l = 0; l <= kmax; ++l) {
    T[l].assign(kmax + 1 - l, 0.0L);
    T[l][0] = std::pow(2.0L, static_cast<long double>(A) + l + 1.0L) /
              (static_cast<long double>(A) + l + 1.0L);
  }
  for (int k = 1; k <= kmax; ++k)
    for (int l = 0; l + k <= kmax; ++l) T[l][k] = T[l][k - 1] - T[l + 1][k - 1];
  std::vector<std::vector<double>> out(T.size());
  for (size_t l = 0; l < T.size(); ++l) out[l].assign(T[l].begin(), T[l].end());
  return out;
}

}  // namespace

TEST_CASE("gauss-jacobi integrates weighted monomials exactly") {
  const int N = 10;
  for (double A : {-0.75, -0.5, -0.25, 0.4}) {
    const QuadRule& r = gauss_jacobi(N, A, 0.0);
    auto T = jacobi_moments(A, 2 * N - 1);
    for (int k = 0; k < 2 * N; ++k) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += r.w[i] * std::pow(r.x[i], k);
      CHECK(std::fabs(s - T[0][k]) < 1e-12 * std::max(1.0, std::fabs(T[0][k])));
    }
  }
}

TEST_CASE("gauss-jacobi with unit weight matches gauss-legendre") {
  const int N = 24;
  const QuadRule& gj = gauss_jacobi(N, 0.0, 0.0);
  const QuadRule& gl = gauss_legendre(N);
  for (int i = 0; i < N; ++i) {
    CHECK(std::fabs(gj.x[i] - gl.x[i]) < 1e-12);
    CHECK(std::fabs(gj.w[i] - gl.w[i]) < 1e-12);
  }
}

TEST_CASE("gauss-jacobi weights are positive and sum to the weight mass") {
  for (double A : {-0.9, -0.5, -0.1}) {
    const QuadRule& r = gauss_jacobi(64, A, 0.0);
    double s = 0.0;
    for (double w : r.w) {
      CHECK(w > 0.0);
      s += w;
    }
    CHECK(std::fabs(s - std::pow(2.0, A + 1.0) / (A + 1.0)) < 1e-11);
  }
}

TEST_CASE("tanh-sinh handles endpoint singularities on [0,1]") {
  const TanhSinhRule& r = tanh_sinh(64);

  double s1 = 0.0;  // int_0^1 1 dx
  for (size_t i = 0; i < r.w.size(); ++i) s1 += r.w[i];
  CHECK(std::fabs(s1 - 1.0) < 1e-12);

  double s2 = 0.0;  // int_0^1 x^{-1/2} dx = 2, singular at the left end
  for (size_t i = 0; i < r.w.size(); ++i) s2 += r.w[i] / std::sqrt(r.from_left[i]);
  CHECK(std::fabs(s2 - 2.0) < 1e-11);

  // int_0^1 (1-x)^{-3/4} dx = 4, singular at the right end. The node window
  // truncates at distance ~4e-31, leaving a ~1e-7 tail for this exponent.
  double s3 = 0.0;
  for (size_t i = 0; i < r.w.size(); ++i) s3 += r.w[i] * std::pow(r.from_right[i], -0.75);
  CHECK(std::fabs(s3 - 4.0) < 3e-7);

  double s4 = 0.0;  // int_0^1 log(x) dx = -1
  for (size_t i = 0; i < r.w.size(); ++i) s4 += r.w[i] * std::log(r.from_left[i]);
  CHECK(std::fabs(s4 + 1.0) < 1e-12);
}

TEST_CASE("finite differences with Richardson extrapolation") {
  FdPolicy pol;
  auto f = [](double x) { return std::exp(x) * std::sin(2.0 * x); };
  auto df = [](double x) { return std::exp(x) * (std::sin(2.0 * x) + 2.0 * std::cos(2.0 * x)); };
  for (double x : {0.3, 1.1, -0.7}) {
    CHECK(std::fabs(fd_derivative<double>(f, x, pol) - df(x)) < 1e-10);
  }

  // Richardson refinement beats the single-step stencil.
  FdPolicy coarse{1e-2, 1};
  FdPolicy fine{1e-2, 3};
  const double e1 = std::fabs(fd_derivative<double>(f, 0.3, coarse) - df(0.3));
  const double e2 = std::fabs(fd_derivative<double>(f, 0.3, fine) - df(0.3));
  CHECK(e2 < e1 * 1e-2);
}

TEST_CASE("finite differences shift the stencil near domain edges") {
  FdPolicy pol;
  auto f = [](double x) { return std::sin(3.0 * x); };
  // x so close to the edge that even h/4 stencils must shift.
  for (double x : {0.0, 5e-4, 1e-3, 0.9995, 1.0}) {
    const double got = fd_derivative<double>(f, x, pol, 0.0, 1.0);
    CHECK(std::fabs(got - 3.0 * std::cos(3.0 * x)) < 1e-7);
  }
  // Domain too narrow for any 5-point stencil.
  CHECK_THROWS_AS(fd_derivative<double>(f, 0.5, pol, 0.499, 0.501), std::domain_error);
}

TEST_CASE("finite differences apply to multivector-valued curves") {
  using namespace fracslice::clifford;
  FdPolicy pol;
  auto f = [](double t) {
    Multivector m(2);
    m[0] = std::cos(t);
    m[1] = t * t;
    m[2] = std::exp(t);
    return m;
  };
  Multivector d = fd_derivative<Multivector>(f, 0.4, pol);
  CHECK(std::fabs(d[0] + std::sin(0.4)) < 1e-10);
  CHECK(std::fabs(d[1] - 0.8) < 1e-10);
  CHECK(std::fabs(d[2] - std::exp(0.4)) < 1e-10);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.order = 2;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.order = 64;
  s.fd.h0 = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.fd.h0 = 1e-3;
  s.fd.richardson = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "fracslice/multivector.hpp"

using namespace fracslice::clifford;

namespace {

Multivector random_mv(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(n);
  for (int i = 0; i < m.dim(); ++i) m[i] = u(rng);
  return m;
}

UnitImaginary random_dir(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::array<double, kMaxN> d{};
  for (int i = 0; i < n; ++i) d[i] = gauss(rng);
  return UnitImaginary(n, d);
}

}  // namespace

TEST_CASE("generators square to -1 and anticommute") {
  for (int n : {2, 3, 4, 6}) {
    for (int i = 1; i <= n; ++i) {
      Multivector ei = Multivector::basis_vector(n, i);
      Multivector sq = ei * ei;
      REQUIRE(std::fabs(sq[0] + 1.0) < 1e-15);
      REQUIRE((sq - Multivector::scalar(n, -1.0)).norm_inf() < 1e-15);
      for (int j = i + 1; j <= n; ++j) {
        Multivector ej = Multivector::basis_vector(n, j);
        REQUIRE((ei * ej + ej * ei).norm_inf() < 1e-15);
      }
    }
  }
}

TEST_CASE("reordering signs on low blades") {
  const int n = 3;
  Multivector e1 = Multivector::basis_vector(n, 1);
  Multivector e2 = Multivector::basis_vector(n, 2);
  Multivector e12 = Multivector::blade(n, 0b11, 1.0);
  CHECK((e1 * e2 - e12).norm_inf() == 0.0);
  CHECK((e2 * e1 + e12).norm_inf() == 0.0);
  // e12 * e12 = e1 e2 e1 e2 = -e1 e1 e2 e2 = -1
  CHECK((e12 * e12 + Multivector::scalar(n, 1.0)).norm_inf() == 0.0);
  // e123 squares to +... e123*e123 = (-1)^{3*2/2} * (-1)^3 = -1*-1 ... verify numerically
  Multivector e123 = Multivector::blade(n, 0b111, 1.0);
  Multivector sq = e123 * e123;
  CHECK(std::fabs(sq[0] - 1.0) < 1e-15);  // (e123)^2 = +1 in signature (-,-,-)
}

TEST_CASE("associativity on all basis blades") {
  for (int n : {2, 3, 4}) {
    const int dim = 1 << n;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) {
          Multivector A = Multivector::blade(n, a, 1.0);
          Multivector B = Multivector::blade(n, b, 1.0);
          Multivector C = Multivector::blade(n, c, 1.0);
          REQUIRE(((A * B) * C - A * (B * C)).norm_inf() == 0.0);
        }
  }
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(991);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 25; ++trial) {
      Multivector a = random_mv(n, rng), b = random_mv(n, rng), c = random_mv(n, rng);
      CHECK(((a * b) * c - a * (b * c)).norm_inf() < 1e-12);
      CHECK((a * (b + c) - (a * b + a * c)).norm_inf() < 1e-13);
      CHECK(((a + b) * c - (a * c + b * c)).norm_inf() < 1e-13);
      Multivector one = Multivector::scalar(n, 1.0);
      CHECK((a * one - a).norm_inf() == 0.0);
      CHECK((one * a - a).norm_inf() == 0.0);
    }
  }
}

TEST_CASE("grade projection partitions the element") {
  std::mt19937_64 rng(17);
  Multivector a = random_mv(4, rng);
  Multivector sum(4);
  for (int k = 0; k <= 4; ++k) sum += a.grade(k);
  CHECK((sum - a).norm_inf() == 0.0);
  CHECK(a.grade(1).grade(2).norm_inf() == 0.0);
}

TEST_CASE("mixed algebra dimensions are rejected") {
  Multivector a(2), b(3);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(Multivector(7), std::invalid_argument);
  CHECK_THROWS_AS(Multivector(0), std::invalid_argument);
}

TEST_CASE("norms propagate NaN instead of masking it") {
  // Regression: a max-based sup-norm drops NaN (NaN comparisons are false), so
  // a broken computation reported norm 0 and vacuously passed residual checks.
  Multivector a(3);
  a[0] = 1.0;
  a[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK(std::isnan(a.norm_inf()));
  CHECK(std::isnan(a.norm2()));
  a[5] = -3.0;
  CHECK(a.norm_inf() == 3.0);
}

TEST_CASE("paravector embedding roundtrip") {
  Paravector x;
  x.n = 3;
  x.x0 = 0.7;
  x.xv = {0.3, -0.4, 1.2, 0, 0, 0};
  Multivector m = x.as_multivector();
  CHECK(m[0] == 0.7);
  CHECK(m[0b010] == -0.4);
  CHECK(m.grade(2).norm_inf() == 0.0);
}

TEST_CASE("unit imaginary directions") {
  std::array<double, kMaxN> d{3.0, 4.0, 0.0, 0.0, 0.0, 0.0};
  UnitImaginary I(2, d);
  CHECK(std::fabs(I.component(0) - 0.6) < 1e-15);
  CHECK(std::fabs(I.component(1) - 0.8) < 1e-15);
  Multivector m = I.as_multivector();
  CHECK((m * m + Multivector::scalar(2, 1.0)).norm_inf() < 1e-15);
  UnitImaginary J = -I;
  CHECK(std::fabs(J.component(0) + 0.6) < 1e-15);
  std::array<double, kMaxN> tiny{1e-15, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(UnitImaginary(2, tiny), std::invalid_argument);
}

TEST_CASE("slice points") {
  std::mt19937_64 rng(5);
  UnitImaginary I = random_dir(3, rng);
  CHECK_THROWS_AS(SlicePoint(0.0, -0.1, I), std::invalid_argument);

  SlicePoint p(0.4, 0.9, I);
  Paravector x = slice_embed(p);
  SlicePoint q = to_slice(x, I);
  CHECK(std::fabs(q.u - 0.4) < 1e-14);
  CHECK(std::fabs(q.v - 0.9) < 1e-14);
  CHECK(std::fabs(q.I.dot(I) - 1.0) < 1e-14);

  // Real-axis points adopt the fallback slice.
  Paravector r;
  r.n = 3;
  r.x0 = 1.3;
  SlicePoint s = to_slice(r, I);
  CHECK(s.v == 0.0);
  CHECK(std::fabs(s.I.dot(I) - 1.0) < 1e-14);
}

TEST_CASE("slice inverse difference inverts w - z") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    UnitImaginary I = random_dir(3, rng);
    SlicePoint w(0.8, 1.1, I), z(0.1, 0.4, I);
    Multivector inv = slice_inverse_difference(w, z);
    Multivector diff = Multivector::scalar(3, w.u - z.u) + I.as_multivector() * (w.v - z.v);
    CHECK((diff * inv - Multivector::scalar(3, 1.0)).norm_inf() < 1e-13);
    CHECK((inv * diff - Multivector::scalar(3, 1.0)).norm_inf() < 1e-13);
  }
  UnitImaginary I1 = random_dir(3, rng), I2 = random_dir(3, rng);
  SlicePoint w(0.8, 1.1, I1), z(0.1, 0.4, I2);
  CHECK_THROWS_AS(slice_inverse_difference(w, z), std::invalid_argument);
}

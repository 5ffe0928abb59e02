#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fracslice/splitting.hpp"

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

TEST_CASE("completed frame is orthonormal and anticommutes") {
  std::mt19937_64 rng(101);
  for (int n : {2, 3, 4}) {
    UnitImaginary I = random_dir(n, rng);
    SplittingBasis basis = complete_basis(I, 777);
    REQUIRE(static_cast<int>(basis.frame.size()) == n);
    CHECK(std::fabs(basis.frame[0].dot(I) - 1.0) < 1e-14);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        Multivector ir = basis.frame[r].as_multivector();
        Multivector is = basis.frame[s].as_multivector();
        Multivector anti = ir * is + is * ir;
        Multivector expect = Multivector::scalar(n, r == s ? -2.0 : 0.0);
        CHECK((anti - expect).norm_inf() < 1e-13);
      }
  }
}

TEST_CASE("frame completion is deterministic in the seed") {
  std::mt19937_64 rng(2);
  UnitImaginary I = random_dir(4, rng);
  SplittingBasis b1 = complete_basis(I, 42);
  SplittingBasis b2 = complete_basis(I, 42);
  for (size_t k = 0; k < b1.frame.size(); ++k)
    for (int i = 0; i < 4; ++i)
      CHECK(b1.frame[k].component(i) == b2.frame[k].component(i));
}

TEST_CASE("split/reassemble roundtrip") {
  std::mt19937_64 rng(303);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      UnitImaginary I = random_dir(n, rng);
      SplittingBasis basis = complete_basis(I, 1000 + trial);
      Multivector m = random_mv(n, rng);
      auto coeffs = split(m, basis);
      REQUIRE(static_cast<int>(coeffs.size()) == (1 << (n - 1)));
      Multivector back = reassemble(coeffs, basis);
      CHECK((back - m).norm_inf() < 1e-12);
    }
  }
}

TEST_CASE("split against the canonical frame, n = 2") {
  // Frame (e1, e2): value = a + b e1 + c e2 + d e12 has components
  // F_{} = a + i b   and   F_{2} = c + i d.
  UnitImaginary e1(2, {1.0, 0.0});
  SplittingBasis basis;
  basis.frame.push_back(e1);
  basis.frame.emplace_back(2, std::array<double, kMaxN>{0.0, 1.0});

  Multivector m(2);
  m[0b00] = 1.5;
  m[0b01] = -0.25;
  m[0b10] = 2.0;
  m[0b11] = 0.75;
  auto c = split(m, basis);
  CHECK(std::fabs(c[0].real() - 1.5) < 1e-14);
  CHECK(std::fabs(c[0].imag() + 0.25) < 1e-14);
  CHECK(std::fabs(c[1].real() - 2.0) < 1e-14);
  CHECK(std::fabs(c[1].imag() - 0.75) < 1e-14);
}

TEST_CASE("left multiplication by exp(I theta) is complex rotation of every component") {
  std::mt19937_64 rng(404);
  const int n = 3;
  UnitImaginary I = random_dir(n, rng);
  SplittingBasis basis = complete_basis(I, 5);
  Multivector m = random_mv(n, rng);
  const double th = 0.6;
  Multivector rot = Multivector::scalar(n, std::cos(th)) + I.as_multivector() * std::sin(th);
  auto before = split(m, basis);
  auto after = split(rot * m, basis);
  const std::complex<double> phase(std::cos(th), std::sin(th));
  for (size_t k = 0; k < before.size(); ++k) CHECK(std::abs(after[k] - phase * before[k]) < 1e-12);
}

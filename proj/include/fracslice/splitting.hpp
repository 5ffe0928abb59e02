#pragma once

// Splitting of R_n along an orthonormal anticommuting frame I_1..I_n of unit
// grade-1 directions: every multivector decomposes uniquely as
//   sum over A subset of {2..n} of (F_A^0 + I_1 F_A^1) I_A,
// i.e. 2^{n-1} complex coefficients over the commutative plane C_{I_1}. The
// change of basis is a dense 2^n x 2^n real linear system solved by LU.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "multivector.hpp"

namespace fracslice::clifford {

struct SplittingBasis {
  std::vector<UnitImaginary> frame;  // frame[0] = I_1 (the slice direction)

  int n() const { return frame.empty() ? 0 : frame[0].n(); }
};

// Extend I to an orthonormal frame I_1 = I, I_2, ..., I_n by Gram-Schmidt on
// seeded Gaussian directions. Orthonormal grade-1 directions automatically
// anticommute: I_r I_s + I_s I_r = -2 <I_r, I_s>.
inline SplittingBasis complete_basis(const UnitImaginary& I, std::uint64_t seed) {
  const int n = I.n();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::array<double, kMaxN>> dirs;
  dirs.push_back(I.components());
  while (static_cast<int>(dirs.size()) < n) {
    std::array<double, kMaxN> cand{};
    for (int i = 0; i < n; ++i) cand[i] = gauss(rng);
    for (const auto& d : dirs) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += cand[i] * d[i];
      for (int i = 0; i < n; ++i) cand[i] -= dot * d[i];
    }
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += cand[i] * cand[i];
    if (s < 1e-8) continue;  // nearly dependent draw; resample
    s = std::sqrt(s);
    for (int i = 0; i < n; ++i) cand[i] /= s;
    dirs.push_back(cand);
  }

  SplittingBasis basis;
  for (const auto& d : dirs) basis.frame.emplace_back(n, d);
  return basis;
}

namespace detail {

// Partial-pivot LU solve of a dense column-major dim x dim system.
inline void lu_solve(std::vector<double>& m, std::vector<double>& rhs, int dim) {
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i) piv[i] = i;
  for (int k = 0; k < dim; ++k) {
    int p = k;
    double best = std::fabs(m[piv[k] + k * dim]);
    for (int i = k + 1; i < dim; ++i) {
      double v = std::fabs(m[piv[i] + k * dim]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < 1e-300) throw std::domain_error("lu_solve: singular splitting matrix");
    std::swap(piv[k], piv[p]);
    const int rk = piv[k];
    for (int i = k + 1; i < dim; ++i) {
      const int ri = piv[i];
      const double f = m[ri + k * dim] / m[rk + k * dim];
      m[ri + k * dim] = f;
      for (int j = k + 1; j < dim; ++j) m[ri + j * dim] -= f * m[rk + j * dim];
      rhs[ri] -= f * rhs[rk];
    }
  }
  std::vector<double> x(dim);
  for (int k = dim - 1; k >= 0; --k) {
    double s = rhs[piv[k]];
    for (int j = k + 1; j < dim; ++j) s -= m[piv[k] + j * dim] * x[j];
    x[k] = s / m[piv[k] + k * dim];
  }
  rhs = x;
}

// Product of frame elements selected by mask bits (ascending index order).
inline Multivector frame_product(const SplittingBasis& basis, unsigned mask) {
  const int n = basis.n();
  Multivector p = Multivector::scalar(n, 1.0);
  for (int k = 0; k < n; ++k)
    if (mask & (1u << k)) p = p * basis.frame[k].as_multivector();
  return p;
}

}  // namespace detail

// Coefficients F_A = F_A^0 + i F_A^1 indexed by the mask of A over frame
// indices {2..n} (bit k-2 of the index set <-> frame[k-1]).
inline std::vector<std::complex<double>> split(const Multivector& value,
                                               const SplittingBasis& basis) {
  const int n = value.n();
  if (basis.n() != n) throw std::invalid_argument("split: basis/value mismatch");
  const int dim = 1 << n;
  const int half = dim / 2;

  // Column 2*A   : coordinates of I_A
  // Column 2*A+1 : coordinates of I_1 I_A
  std::vector<double> m(static_cast<size_t>(dim) * dim, 0.0);
  for (int a = 0; a < half; ++a) {
    const unsigned maskA = static_cast<unsigned>(a) << 1;  // subsets of {2..n}
    Multivector ia = detail::frame_product(basis, maskA);
    Multivector i1a = basis.frame[0].as_multivector() * ia;
    for (int r = 0; r < dim; ++r) {
      m[r + (2 * a) * dim] = ia[r];
      m[r + (2 * a + 1) * dim] = i1a[r];
    }
  }
  std::vector<double> rhs(dim);
  for (int r = 0; r < dim; ++r) rhs[r] = value[r];
  detail::lu_solve(m, rhs, dim);

  std::vector<std::complex<double>> out(half);
  for (int a = 0; a < half; ++a) out[a] = {rhs[2 * a], rhs[2 * a + 1]};
  return out;
}

inline Multivector reassemble(const std::vector<std::complex<double>>& coeffs,
                              const SplittingBasis& basis) {
  const int n = basis.n();
  const int half = 1 << (n - 1);
  if (static_cast<int>(coeffs.size()) != half)
    throw std::invalid_argument("reassemble: coefficient count mismatch");
  Multivector out(n);
  const Multivector i1 = basis.frame[0].as_multivector();
  for (int a = 0; a < half; ++a) {
    Multivector ia = detail::frame_product(basis, static_cast<unsigned>(a) << 1);
    out += ia * coeffs[a].real() + (i1 * ia) * coeffs[a].imag();
  }
  return out;
}

}  // namespace fracslice::clifford

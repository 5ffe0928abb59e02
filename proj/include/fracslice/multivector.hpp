#pragma once

// Real Clifford algebra R_n with negative-definite signature (e_i^2 = -1),
// n <= 6. Elements are stored densely: coefficient c[A] multiplies the blade
// e_A, where the bitmask A over {1..n} lists the generators in ascending
// order. The +/- sign of e_A * e_B is a pure function of the two masks and is
// tabulated at compile time.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracslice::clifford {

inline constexpr int kMaxN = 6;
inline constexpr int kMaxDim = 1 << kMaxN;

// Sign of e_A * e_B = sign(A,B) e_{A xor B}: count transpositions needed to
// interleave the two ascending generator lists, plus one factor -1 per common
// generator (the metric).
constexpr int blade_sign(unsigned a, unsigned b) {
  int count = 0;
  unsigned t = a >> 1;
  while (t) {
    count += std::popcount(t & b);
    t >>= 1;
  }
  count += std::popcount(a & b);
  return (count & 1) ? -1 : 1;
}

struct SignTable {
  std::array<std::array<int8_t, kMaxDim>, kMaxDim> s{};
};

consteval SignTable make_sign_table() {
  SignTable t{};
  for (unsigned a = 0; a < kMaxDim; ++a)
    for (unsigned b = 0; b < kMaxDim; ++b)
      t.s[a][b] = static_cast<int8_t>(blade_sign(a, b));
  return t;
}

inline constexpr SignTable kSignTable = make_sign_table();

class Multivector {
 public:
  explicit Multivector(int n) : n_(check_n(n)), dim_(1 << n) { c_.fill(0.0); }

  static Multivector scalar(int n, double s) {
    Multivector m(n);
    m.c_[0] = s;
    return m;
  }
  // e_i, 1-based index.
  static Multivector basis_vector(int n, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("basis_vector: index out of range");
    Multivector m(n);
    m.c_[1u << (i - 1)] = 1.0;
    return m;
  }
  static Multivector blade(int n, unsigned mask, double coeff) {
    Multivector m(n);
    if (mask >= (1u << n)) throw std::invalid_argument("blade: mask out of range");
    m.c_[mask] = coeff;
    return m;
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  double operator[](unsigned mask) const { return c_[mask]; }
  double& operator[](unsigned mask) { return c_[mask]; }

  Multivector& operator+=(const Multivector& o) {
    require_same(o);
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same(o);
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }

  // Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.require_same(b);
    Multivector r(a.n_);
    for (int i = 0; i < a.dim_; ++i) {
      const double ai = a.c_[i];
      if (ai == 0.0) continue;
      for (int j = 0; j < a.dim_; ++j) {
        const double bj = b.c_[j];
        if (bj == 0.0) continue;
        r.c_[i ^ j] += kSignTable.s[i][j] * ai * bj;
      }
    }
    return r;
  }

  double norm_inf() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double a = std::fabs(c_[i]);
      // Propagate NaN: std::max would silently drop it and report 0, turning a
      // broken computation into a vacuous pass of any residual check.
      if (std::isnan(a)) return a;
      if (a > m) m = a;
    }
    return m;
  }
  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
    return std::sqrt(s);
  }

  // Projection onto blades of the given grade.
  Multivector grade(int k) const {
    Multivector r(n_);
    for (int i = 0; i < dim_; ++i)
      if (std::popcount(static_cast<unsigned>(i)) == k) r.c_[i] = c_[i];
    return r;
  }

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("Multivector: n must be in [1,6]");
    return n;
  }
  void require_same(const Multivector& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Multivector: mixed algebra dimensions");
  }

  int n_;
  int dim_;
  std::array<double, kMaxDim> c_;
};

// Point x0 + x1 e_1 + ... + xn e_n.
struct Paravector {
  int n = 0;
  double x0 = 0.0;
  std::array<double, kMaxN> xv{};

  Multivector as_multivector() const {
    Multivector m(n);
    m[0] = x0;
    for (int i = 0; i < n; ++i) m[1u << i] = xv[i];
    return m;
  }
  double vector_norm() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += xv[i] * xv[i];
    return std::sqrt(s);
  }
};

// Unit grade-1 direction I (I^2 = -1). Constructor normalizes; a near-zero
// direction is rejected.
class UnitImaginary {
 public:
  UnitImaginary(int n, const std::array<double, kMaxN>& dir) : n_(n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("UnitImaginary: n out of range");
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += dir[i] * dir[i];
    s = std::sqrt(s);
    if (!(s > 1e-12)) throw std::invalid_argument("UnitImaginary: direction too small");
    dir_.fill(0.0);
    for (int i = 0; i < n; ++i) dir_[i] = dir[i] / s;
  }

  int n() const { return n_; }
  double component(int i) const { return dir_[i]; }  // 0-based
  const std::array<double, kMaxN>& components() const { return dir_; }

  Multivector as_multivector() const {
    Multivector m(n_);
    for (int i = 0; i < n_; ++i) m[1u << i] = dir_[i];
    return m;
  }
  UnitImaginary operator-() const {
    std::array<double, kMaxN> d{};
    for (int i = 0; i < n_; ++i) d[i] = -dir_[i];
    return UnitImaginary(n_, d);
  }
  double dot(const UnitImaginary& o) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += dir_[i] * o.dir_[i];
    return s;
  }

 private:
  int n_;
  std::array<double, kMaxN> dir_{};
};

// Point u + I v of the slice plane spanned by 1 and I, with v >= 0. The lower
// half-plane is reached by flipping I.
struct SlicePoint {
  double u = 0.0;
  double v = 0.0;
  UnitImaginary I;

  SlicePoint(double u_, double v_, UnitImaginary I_) : u(u_), v(v_), I(std::move(I_)) {
    if (v < 0.0) throw std::invalid_argument("SlicePoint: v must be >= 0");
  }
};

// Decompose a paravector as u + I v. A zero vector part adopts the fallback
// direction (every slice contains the real axis).
inline SlicePoint to_slice(const Paravector& x, const UnitImaginary& fallback) {
  const double r = x.vector_norm();
  if (r <= 1e-14) return SlicePoint(x.x0, 0.0, fallback);
  std::array<double, kMaxN> d{};
  for (int i = 0; i < x.n; ++i) d[i] = x.xv[i] / r;
  return SlicePoint(x.x0, r, UnitImaginary(x.n, d));
}

inline Paravector slice_embed(const SlicePoint& p) {
  Paravector x;
  x.n = p.I.n();
  x.x0 = p.u;
  for (int i = 0; i < x.n; ++i) x.xv[i] = p.v * p.I.component(i);
  return x;
}

// (w - z)^{-1} within the complex plane C_I: both points must lie on the same
// slice. Returned as a multivector of R_n.
inline Multivector slice_inverse_difference(const SlicePoint& w, const SlicePoint& z) {
  if (w.I.n() != z.I.n()) throw std::invalid_argument("slice_inverse_difference: mixed algebras");
  double align = w.I.dot(z.I);
  // Allow the degenerate v = 0 cases where the direction is immaterial.
  if (w.v > 1e-14 && z.v > 1e-14 && std::fabs(align - 1.0) > 1e-10)
    throw std::invalid_argument("slice_inverse_difference: points on different slices");
  const double du = w.u - z.u;
  const double dv = w.v - z.v;
  const double q = du * du + dv * dv;
  if (q < 1e-300) throw std::domain_error("slice_inverse_difference: coincident points");
  Multivector r = Multivector::scalar(w.I.n(), du / q) - w.I.as_multivector() * (dv / q);
  return r;
}

}  // namespace fracslice::clifford

#ifndef PHOTAM_COMPLEX3_HPP
#define PHOTAM_COMPLEX3_HPP

/// Dense complex linear algebra fixed at dimension 3: vectors, matrices,
/// a deterministic Hermitian eigensolver and the anti-Hermitian matrix
/// exponential. Everything is value semantics and allocation-free.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "photam/errors.hpp"

namespace photam {

using cplx = std::complex<double>;

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  Vec3 operator+(const Vec3& o) const { return {{v[0] + o[0], v[1] + o[1], v[2] + o[2]}}; }
  Vec3 operator-(const Vec3& o) const { return {{v[0] - o[0], v[1] - o[1], v[2] - o[2]}}; }
  Vec3 operator*(double s) const { return {{v[0] * s, v[1] * s, v[2] * s}}; }
  double dot(const Vec3& o) const { return v[0] * o[0] + v[1] * o[1] + v[2] * o[2]; }
  Vec3 cross(const Vec3& o) const {
    return {{v[1] * o[2] - v[2] * o[1], v[2] * o[0] - v[0] * o[2], v[0] * o[1] - v[1] * o[0]}};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

struct Vec3c {
  std::array<cplx, 3> v{};

  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }

  static Vec3c from_real(const Vec3& r) { return {{cplx(r[0]), cplx(r[1]), cplx(r[2])}}; }

  Vec3c operator+(const Vec3c& o) const { return {{v[0] + o[0], v[1] + o[1], v[2] + o[2]}}; }
  Vec3c operator-(const Vec3c& o) const { return {{v[0] - o[0], v[1] - o[1], v[2] - o[2]}}; }
  Vec3c operator*(cplx s) const { return {{v[0] * s, v[1] * s, v[2] * s}}; }
  Vec3c operator*(double s) const { return {{v[0] * s, v[1] * s, v[2] * s}}; }

  /// Inner product, conjugate-linear in *this*.
  cplx dot(const Vec3c& o) const {
    return std::conj(v[0]) * o[0] + std::conj(v[1]) * o[1] + std::conj(v[2]) * o[2];
  }
  double norm2() const { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }
  double norm() const { return std::sqrt(norm2()); }
  double max_abs() const {
    return std::max(std::abs(v[0]), std::max(std::abs(v[1]), std::abs(v[2])));
  }
};

struct Mat3c {
  // Row-major 3x3.
  std::array<cplx, 9> a{};

  cplx& operator()(std::size_t r, std::size_t c) { return a[3 * r + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a[3 * r + c]; }

  static Mat3c zero() { return {}; }
  static Mat3c identity() {
    Mat3c m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3c diag(cplx d0, cplx d1, cplx d2) {
    Mat3c m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    return m;
  }
  /// Rank-one u v† (outer product, second factor conjugated).
  static Mat3c outer(const Vec3c& u, const Vec3c& w) {
    Mat3c m;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = u[r] * std::conj(w[c]);
    return m;
  }

  Mat3c operator+(const Mat3c& o) const {
    Mat3c m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  Mat3c operator-(const Mat3c& o) const {
    Mat3c m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  Mat3c operator*(cplx s) const {
    Mat3c m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] * s;
    return m;
  }
  Mat3c operator*(double s) const {
    Mat3c m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] * s;
    return m;
  }
  Mat3c operator*(const Mat3c& o) const {
    Mat3c m;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        m(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) + (*this)(r, 2) * o(2, c);
    return m;
  }
  Vec3c operator*(const Vec3c& x) const {
    Vec3c y;
    for (std::size_t r = 0; r < 3; ++r)
      y[r] = (*this)(r, 0) * x[0] + (*this)(r, 1) * x[1] + (*this)(r, 2) * x[2];
    return y;
  }

  Mat3c adjoint() const {
    Mat3c m;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  double max_abs() const {
    double x = 0.0;
    for (const cplx& z : a) x = std::max(x, std::abs(z));
    return x;
  }
  double frobenius() const {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return std::sqrt(s);
  }
  /// max |M - M†|
  double hermitian_defect() const { return ((*this) - adjoint()).max_abs(); }
  /// max |M†M - 1|
  double unitary_defect() const { return (adjoint() * (*this) - identity()).max_abs(); }
  double max_imag() const {
    double x = 0.0;
    for (const cplx& z : a) x = std::max(x, std::abs(z.imag()));
    return x;
  }
};

inline Mat3c matmul(const Mat3c& x, const Mat3c& y) { return x * y; }

/// AB - BA.
inline Mat3c commutator(const Mat3c& x, const Mat3c& y) { return x * y - y * x; }

struct EigenSystem3 {
  std::array<double, 3> values{};   // ascending
  std::array<Vec3c, 3> vectors{};   // orthonormal, phase-fixed
};

/// Eigendecomposition of a 3x3 Hermitian matrix by cyclic complex Jacobi
/// rotations. Deterministic: fixed sweep order, eigenvalues ascending, each
/// eigenvector's largest-magnitude component made real positive (ties broken
/// by lowest index), degenerate clusters (gap < 1e-9) re-orthonormalized by
/// Gram-Schmidt in index order.
EigenSystem3 hermitian_eigensystem(const Mat3c& m);

/// exp(M) for anti-Hermitian M, computed through the eigendecomposition of iM.
/// The result is unitary to ~1e-12.
Mat3c matrix_exponential_antihermitian(const Mat3c& m);

}  // namespace photam

#endif

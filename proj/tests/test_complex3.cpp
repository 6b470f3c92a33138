#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "photam/complex3.hpp"
#include "photam/pointwise.hpp"
#include "photam/spin.hpp"
#include "photam/testfield.hpp"

using namespace photam;

namespace {

Mat3c random_hermitian(Rng& rng) {
  Mat3c m;
  for (int r = 0; r < 3; ++r) {
    m(r, r) = rng.uniform(-2.0, 2.0);
    for (int c = r + 1; c < 3; ++c) {
      m(r, c) = cplx(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

// Independent eigenvalue oracle: roots of the characteristic cubic of a
// Hermitian 3x3 matrix by the trigonometric method (all roots real).
std::array<double, 3> char_poly_eigenvalues(const Mat3c& m) {
  const double tr = (m(0, 0) + m(1, 1) + m(2, 2)).real();
  auto minor2 = [&](int i, int j) { return (m(i, i) * m(j, j) - m(i, j) * m(j, i)).real(); };
  const double c1 = minor2(0, 1) + minor2(0, 2) + minor2(1, 2);
  const cplx det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  // lambda^3 - tr lambda^2 + c1 lambda - det = 0; substitute lambda = x + tr/3
  const double p = c1 - tr * tr / 3.0;
  const double q = -2.0 * tr * tr * tr / 27.0 + tr * c1 / 3.0 - det.real();
  std::array<double, 3> roots;
  if (std::abs(p) < 1e-300) {
    const double r = std::cbrt(-q);
    roots = {r, r, r};
  } else {
    const double rr = std::sqrt(-p * p * p / 27.0);
    const double arg = std::clamp(-q / (2.0 * rr), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    const double mag = 2.0 * std::sqrt(-p / 3.0);
    roots = {mag * std::cos(phi), mag * std::cos(phi - 2.0 * M_PI / 3.0),
             mag * std::cos(phi - 4.0 * M_PI / 3.0)};
  }
  for (auto& r : roots) r += tr / 3.0;
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TEST_SUITE_BEGIN("complex3");

TEST_CASE("matmul identity and unitarity of V") {
  Rng rng(11);
  const Mat3c m = random_hermitian(rng);
  CHECK((Mat3c::identity() * m - m).max_abs() == 0.0);
  const Mat3c& V = spin_representation(SpinRep::SzDiagonal).v_matrix;
  CHECK((V * V.adjoint() - Mat3c::identity()).max_abs() <= 1e-14);
}

TEST_CASE("so(3) generator commutators") {
  // [A_i, A_j] = -eps_ijk A_k for (A_k)_{ml} = eps_{kml}
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Mat3c rhs = Mat3c::zero();
      for (int k = 0; k < 3; ++k) rhs = rhs + so3_generator(k) * (-levi_civita(i, j, k));
      CHECK((commutator(so3_generator(i), so3_generator(j)) - rhs).max_abs() == 0.0);
    }
}

TEST_CASE("commutator basics") {
  Rng rng(12);
  const Mat3c m = random_hermitian(rng);
  CHECK(commutator(m, m).max_abs() == 0.0);
  for (SpinRep tag : {SpinRep::SzDiagonal, SpinRep::Cartesian}) {
    const SpinRepresentation& rep = spin_representation(tag);
    CHECK((commutator(rep[0], rep[1]) - rep[2] * cplx(0.0, 1.0)).max_abs() <= 1e-14);
  }
}

TEST_CASE("S'_z commutes with the projector pointwise") {
  const double r = 1.0 / std::sqrt(3.0);
  const MomentumPoint x = MomentumPoint::from_cartesian(Vec3{{r, r, r}});
  const SpinRepresentation& rep = spin_representation(SpinRep::Cartesian);
  const Mat3c c = commutator(s_prime_matrix(x, 2, rep), transversal_projector(x));
  CHECK(c.max_abs() <= 1e-14);
}

TEST_CASE("eigensystem: diagonal case") {
  const EigenSystem3 es = hermitian_eigensystem(Mat3c::diag(-1.0, 0.0, 1.0));
  CHECK(std::abs(es.values[0] + 1.0) <= 1e-15);
  CHECK(std::abs(es.values[1]) <= 1e-15);
  CHECK(std::abs(es.values[2] - 1.0) <= 1e-15);
  CHECK(std::abs(es.vectors[0][0]) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors[2][2]) == doctest::Approx(1.0));
}

TEST_CASE("eigensystem of the polar matrix") {
  // eigenvalues are {-sin, 0, sin}; at theta = pi/2 they are {-1, 0, 1}
  {
    const EigenSystem3 es = hermitian_eigensystem(h_matrix(M_PI / 2, 0.0));
    CHECK(std::abs(es.values[0] + 1.0) <= 1e-14);
    CHECK(std::abs(es.values[1]) <= 1e-14);
    CHECK(std::abs(es.values[2] - 1.0) <= 1e-14);
  }
  {
    const Mat3c h = h_matrix(M_PI / 4, 1.3);
    const EigenSystem3 es = hermitian_eigensystem(h);
    const double s = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(es.values[0] + s) <= 1e-12);
    CHECK(std::abs(es.values[1]) <= 1e-12);
    CHECK(std::abs(es.values[2] - s) <= 1e-12);
    const auto roots = char_poly_eigenvalues(h);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(roots[i] - es.values[i]) <= 1e-12);
  }
}

TEST_CASE("eigensystem properties on random Hermitian input") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3c m = random_hermitian(rng);
    const EigenSystem3 es = hermitian_eigensystem(m);
    const double scale = std::max(1.0, m.max_abs());
    Mat3c rec = Mat3c::zero();
    for (int k = 0; k < 3; ++k)
      rec = rec + Mat3c::outer(es.vectors[k], es.vectors[k]) * es.values[k];
    CHECK((rec - m).max_abs() <= 1e-12 * scale);
    for (int k = 0; k < 3; ++k) {
      const Vec3c res = m * es.vectors[k] - es.vectors[k] * es.values[k];
      CHECK(res.max_abs() <= 1e-12 * scale);
      for (int l = k + 1; l < 3; ++l)
        CHECK(std::abs(es.vectors[k].dot(es.vectors[l])) <= 1e-12);
      CHECK(es.vectors[k].norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(es.values[0] <= es.values[1]);
    CHECK(es.values[1] <= es.values[2]);
    const auto roots = char_poly_eigenvalues(m);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(roots[i] - es.values[i]) <= 1e-11 * scale);
  }
}

TEST_CASE("eigensystem is deterministic bit for bit") {
  Rng rng(14);
  const Mat3c m = random_hermitian(rng);
  const EigenSystem3 a = hermitian_eigensystem(m);
  const EigenSystem3 b = hermitian_eigensystem(m);
  for (int k = 0; k < 3; ++k) {
    CHECK(a.values[k] == b.values[k]);
    for (int c = 0; c < 3; ++c) {
      CHECK(a.vectors[k][c].real() == b.vectors[k][c].real());
      CHECK(a.vectors[k][c].imag() == b.vectors[k][c].imag());
    }
  }
}

TEST_CASE("eigensystem rejects non-Hermitian input") {
  Mat3c m = Mat3c::identity();
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(hermitian_eigensystem(m), NonHermitianInput);
}

TEST_CASE("matrix exponential: identity, rotations, inverses") {
  CHECK((matrix_exponential_antihermitian(Mat3c::zero()) - Mat3c::identity()).max_abs() == 0.0);

  // exp(-i (pi/2) S_z) in the Cartesian representation rotates e_x to e_y
  const SpinRepresentation& cart = spin_representation(SpinRep::Cartesian);
  const Mat3c r = matrix_exponential_antihermitian(cart[2] * cplx(0.0, -M_PI / 2));
  const Vec3c ey = r * Vec3c{{1.0, 0.0, 0.0}};
  CHECK(std::abs(ey[0]) <= 1e-14);
  CHECK(std::abs(ey[1] - 1.0) <= 1e-14);
  CHECK(std::abs(ey[2]) <= 1e-14);
  CHECK(r.max_imag() <= 1e-14);

  // full rotations about random unit axes are the identity (integer spin)
  Rng rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    Vec3 n{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    n = n * (1.0 / n.norm());
    for (SpinRep tag : {SpinRep::SzDiagonal, SpinRep::Cartesian}) {
      const SpinRepresentation& rep = spin_representation(tag);
      const Mat3c gen = (rep[0] * n[0] + rep[1] * n[1] + rep[2] * n[2]) * cplx(0.0, -2 * M_PI);
      CHECK((matrix_exponential_antihermitian(gen) - Mat3c::identity()).max_abs() <= 1e-12);
    }
  }

  // exp(M) exp(-M) = 1 and unitarity, on random anti-Hermitian input
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3c h = random_hermitian(rng);
    const Mat3c m = h * cplx(0.0, 1.0);
    const Mat3c e = matrix_exponential_antihermitian(m);
    const Mat3c einv = matrix_exponential_antihermitian(m * (-1.0));
    CHECK((e * einv - Mat3c::identity()).max_abs() <= 1e-12);
    CHECK(e.unitary_defect() <= 1e-12);
  }
}

TEST_CASE("matrix exponential rejects non-anti-Hermitian input") {
  CHECK_THROWS_AS(matrix_exponential_antihermitian(Mat3c::diag(1.0, 0.0, 0.0)),
                  NonAntiHermitianInput);
}

TEST_SUITE_END();

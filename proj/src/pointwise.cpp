#include "photam/pointwise.hpp"

#include <cmath>

namespace photam {

Mat3c transversal_projector(const MomentumPoint& x) {
  if (!(x.p > 0.0)) throw ZeroMomentum();
  const Vec3 n = x.unit();
  Mat3c m = Mat3c::identity();
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) -= n[r] * n[c];
  return m;
}

Mat3c helicity_matrix(const MomentumPoint& x, const SpinRepresentation& rep) {
  if (!(x.p > 0.0)) throw ZeroMomentum();
  const Vec3 n = x.unit();
  return rep[0] * n[0] + rep[1] * n[1] + rep[2] * n[2];
}

Mat3c rotation_from_spin(const SpinRepresentation& rep, const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw NonUnitAxis();
  const Mat3c gen =
      (rep[0] * axis[0] + rep[1] * axis[1] + rep[2] * axis[2]) * cplx(0.0, -angle);
  const Mat3c r = rep.v_matrix.adjoint() * matrix_exponential_antihermitian(gen) * rep.v_matrix;
  return r;
}

Mat3c s_prime_matrix(const MomentumPoint& x, int k, const SpinRepresentation& rep) {
  if (!(x.p > 0.0)) throw ZeroMomentum();
  const Vec3 n = x.unit();
  return helicity_matrix(x, rep) * n[static_cast<std::size_t>(k)];
}

Mat3c h_matrix(double theta, double phi) {
  const MomentumPoint x = MomentumPoint::from_spherical(1.0, theta, phi);
  return h_matrix_in(x, spin_representation(SpinRep::SzDiagonal));
}

Mat3c h_matrix_in(const MomentumPoint& x, const SpinRepresentation& rep) {
  return rep[2] - helicity_matrix(x, rep) * std::cos(x.theta);
}

Vec3c commutator_S_pi_analytic(const MomentumPoint& x, int k, const Vec3c& f) {
  if (!(x.p > 0.0)) throw ZeroMomentum();
  const Vec3 p = x.cartesian;
  const double p2 = p.dot(p);
  // (p x f)_k with complex f
  const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  const cplx pxf_k = p[static_cast<std::size_t>(k1)] * f[static_cast<std::size_t>(k2)] -
                     p[static_cast<std::size_t>(k2)] * f[static_cast<std::size_t>(k1)];
  const cplx pdotf = f[0] * p[0] + f[1] * p[1] + f[2] * p[2];
  const Vec3c akp = so3_generator(k) * Vec3c::from_real(p);
  Vec3c out;
  const cplx ih(0.0, 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    out[i] = ih * (pxf_k * p[i] - pdotf * akp[i]) / p2;
  return out;
}

Mat3c commutator_Lp_Sp_analytic(const MomentumPoint& x, int i, int j,
                                const SpinRepresentation& rep) {
  if (!(x.p > 0.0)) throw ZeroMomentum();
  const Vec3 n = x.unit();
  Mat3c out = Mat3c::zero();
  for (int k = 0; k < 3; ++k) {
    const double e = levi_civita(i, j, k);
    if (e == 0.0) continue;
    out = out + helicity_matrix(x, rep) * (e * n[static_cast<std::size_t>(k)]);
  }
  return out * cplx(0.0, 1.0);
}

}  // namespace photam

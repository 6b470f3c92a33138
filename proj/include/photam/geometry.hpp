#ifndef PHOTAM_GEOMETRY_HPP
#define PHOTAM_GEOMETRY_HPP

/// Momentum-space points, the intrinsic frame and the helicity basis fields.

#include "photam/complex3.hpp"

namespace photam {

/// A point of momentum space, kept in both spherical and Cartesian form.
/// Momenta are nondimensionalized by p0 (p0 = 1).
struct MomentumPoint {
  double p = 1.0;       // |p| > 0
  double theta = 0.0;   // [0, pi]
  double phi = 0.0;     // [0, 2 pi)
  Vec3 cartesian{};

  static MomentumPoint from_spherical(double p, double theta, double phi);
  static MomentumPoint from_cartesian(const Vec3& v);

  Vec3 unit() const { return cartesian * (1.0 / p); }
};

/// Right-handed orthonormal triad with e3 along p: e1 = e_theta, e2 = e_phi.
struct FrameTriad {
  Vec3 e1, e2, e3;
};

/// Throws PolarSingularity when sin(theta) < 1e-12; quadrature grids never
/// place nodes at the poles.
FrameTriad intrinsic_frame(const MomentumPoint& x);

struct HelicityPair {
  Vec3c plus;   // helicity +1 eigenvector of (S.p)/|p|
  Vec3c minus;  // helicity -1
};

/// Transverse circular basis built on the intrinsic frame:
///   plus = (e1 + i e2)/sqrt(2),  minus = (e1 - i e2)/sqrt(2).
/// These are the actual +1/-1 helicity eigenvectors of the spin matrices in
/// use (the opposite inner sign pairs them with the opposite eigenvalues).
HelicityPair helicity_vectors(const MomentumPoint& x);

}  // namespace photam

#endif

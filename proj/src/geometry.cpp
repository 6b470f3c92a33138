#include "photam/geometry.hpp"

#include <cmath>

namespace photam {

MomentumPoint MomentumPoint::from_spherical(double p, double theta, double phi) {
  if (!(p > 0.0)) throw ZeroMomentum("need |p| > 0");
  MomentumPoint x;
  x.p = p;
  x.theta = theta;
  x.phi = phi;
  const double st = std::sin(theta);
  x.cartesian = {{p * st * std::cos(phi), p * st * std::sin(phi), p * std::cos(theta)}};
  return x;
}

MomentumPoint MomentumPoint::from_cartesian(const Vec3& v) {
  const double p = v.norm();
  if (!(p > 0.0)) throw ZeroMomentum("need |p| > 0");
  MomentumPoint x;
  x.p = p;
  x.theta = std::acos(std::clamp(v[2] / p, -1.0, 1.0));
  x.phi = std::atan2(v[1], v[0]);
  if (x.phi < 0.0) x.phi += 2.0 * M_PI;
  x.cartesian = v;
  return x;
}

FrameTriad intrinsic_frame(const MomentumPoint& x) {
  const double st = std::sin(x.theta);
  if (st < 1e-12) throw PolarSingularity("sin(theta) < 1e-12");
  const double ct = std::cos(x.theta);
  const double cp = std::cos(x.phi);
  const double sp = std::sin(x.phi);
  FrameTriad f;
  f.e1 = {{ct * cp, ct * sp, -st}};  // e_theta
  f.e2 = {{-sp, cp, 0.0}};           // e_phi
  f.e3 = {{st * cp, st * sp, ct}};   // p/|p|
  return f;
}

HelicityPair helicity_vectors(const MomentumPoint& x) {
  const FrameTriad f = intrinsic_frame(x);
  const double r = 1.0 / std::sqrt(2.0);
  HelicityPair h;
  for (std::size_t i = 0; i < 3; ++i) {
    h.plus[i] = cplx(f.e1[i], f.e2[i]) * r;
    h.minus[i] = cplx(f.e1[i], -f.e2[i]) * r;
  }
  return h;
}

}  // namespace photam

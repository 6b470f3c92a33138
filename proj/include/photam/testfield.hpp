#ifndef PHOTAM_TESTFIELD_HPP
#define PHOTAM_TESTFIELD_HPP

/// Smooth compactly-concentrated vector test fields for the operator
/// verification suite: a radial Gaussian bump times a complex cubic
/// polynomial in the Cartesian momentum components. Values and gradients are
/// closed-form, so finite-difference oracles can be cross-checked.

#include <cstdint>
#include <functional>

#include "photam/complex3.hpp"

namespace photam {

/// Deterministic, platform-independent uniforms from splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

class SmoothTestField {
 public:
  static SmoothTestField random(Rng& rng);

  Vec3c value(const Vec3& p) const;
  /// grad[c][a] = d f_c / d p_a
  std::array<std::array<cplx, 3>, 3> gradient(const Vec3& p) const;

 private:
  // f_c(p) = exp(-(|p| - 1)^2 / width) * sum over monomials of degree <= 3
  std::array<std::array<cplx, 20>, 3> coeff_{};
  double width_ = 0.35;

  static int monomial_count();
};

using VectorField = std::function<Vec3c(const Vec3&)>;

/// L_k g = -i hbar (p x grad)_k g by central differences with one Richardson
/// step (steps h and h/2).
Vec3c apply_L_fd(const VectorField& g, int k, const Vec3& p, double h = 1e-5);

/// Same operator through the field's analytic gradient.
Vec3c apply_L_analytic(const SmoothTestField& f, int k, const Vec3& p);

}  // namespace photam

#endif

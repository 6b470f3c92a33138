#ifndef PHOTAM_GRID_HPP
#define PHOTAM_GRID_HPP

/// Spherical quadrature grids realizing the measure d^3p/|p| = p dp dcos dphi:
/// Gauss-Legendre nodes in p over a radial window, Gauss-Legendre nodes in
/// cos(theta) on (-1,1), and a uniform (trapezoidal) azimuthal rule.

#include <memory>
#include <vector>

#include "photam/geometry.hpp"

namespace photam {

struct GridSpec {
  int n_radial = 48;
  int n_polar = 48;
  int n_azimuthal = 64;
  double p_min = 0.0;
  double p_max = 2.0;

  bool operator==(const GridSpec&) const = default;
};

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on P_n; deterministic).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Row-major n x n spectral matrix for d/dphi on a uniform periodic grid of n
/// points (even n, Nyquist mode dropped).
std::vector<cplx> spectral_derivative_matrix(int n);

class SphericalGrid {
 public:
  static std::shared_ptr<const SphericalGrid> build(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::size_t n_nodes() const {
    return static_cast<std::size_t>(spec_.n_radial) * spec_.n_polar * spec_.n_azimuthal;
  }
  std::size_t n_rings() const {
    return static_cast<std::size_t>(spec_.n_radial) * spec_.n_polar;
  }
  int n_phi() const { return spec_.n_azimuthal; }

  double radial_node(int ip) const { return p_[ip]; }
  double radial_weight(int ip) const { return wp_[ip]; }
  double cos_node(int ic) const { return cos_[ic]; }
  double cos_weight(int ic) const { return wc_[ic]; }
  double theta_node(int ic) const { return theta_[ic]; }
  double sin_node(int ic) const { return sin_[ic]; }
  double phi_node(int iphi) const { return phi_[iphi]; }
  double phi_weight() const { return wphi_; }

  const std::vector<double>& cos_nodes() const { return cos_; }

  /// Quadrature weight of the (p, theta) ring under p dp dcos (phi weight
  /// excluded).
  double ring_weight(std::size_t ring) const {
    const int ip = static_cast<int>(ring) / spec_.n_polar;
    const int ic = static_cast<int>(ring) % spec_.n_polar;
    return p_[ip] * wp_[ip] * wc_[ic];
  }
  /// Full node weight p dp dcos dphi.
  double node_weight(std::size_t node) const {
    return ring_weight(node / spec_.n_azimuthal) * wphi_;
  }

  std::size_t node_index(int ip, int ic, int iphi) const {
    return (static_cast<std::size_t>(ip) * spec_.n_polar + ic) * spec_.n_azimuthal + iphi;
  }
  MomentumPoint point(std::size_t node) const {
    const int iphi = static_cast<int>(node % spec_.n_azimuthal);
    const std::size_t ring = node / spec_.n_azimuthal;
    const int ip = static_cast<int>(ring) / spec_.n_polar;
    const int ic = static_cast<int>(ring) % spec_.n_polar;
    return MomentumPoint::from_spherical(p_[ip], theta_[ic], phi_[iphi]);
  }

  /// Integral of 1 under the measure (used by the constant-function check).
  double measure_total() const;

  /// Dense spectral matrix for d/dphi on the azimuthal ring (row-major
  /// n_phi x n_phi), Nyquist mode dropped. Built once per grid.
  const std::vector<cplx>& phi_derivative_matrix() const { return dphi_; }

 private:
  GridSpec spec_;
  std::vector<double> p_, wp_, cos_, wc_, theta_, sin_, phi_;
  std::vector<cplx> dphi_;
  double wphi_ = 0.0;
};

/// Grid sizing for gaussian_state(a): radial window covering +-10 sigma and a
/// polar count resolving the exp(p p0 cos/2ap0^2) integrand spectrally.
GridSpec auto_grid_spec(double a);

}  // namespace photam

#endif

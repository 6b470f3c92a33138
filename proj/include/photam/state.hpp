#ifndef PHOTAM_STATE_HPP
#define PHOTAM_STATE_HPP

/// Photon states on spherical grids: the circular Gaussian family, the inner
/// product, pointwise/spectral operator application and the first two
/// cumulants in both measurement modes.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "photam/grid.hpp"
#include "photam/pointwise.hpp"

namespace photam {

struct StateMeta {
  std::string kind = "custom";
  double a = 0.0;            // gaussian spread parameter; 0 when n/a
  bool normalized = false;
  bool extended = false;     // true when transversality is not assumed
};

/// 3-component complex amplitudes sampled on a SphericalGrid, stored in the
/// Cartesian component basis (V = identity representation).
class PhotonState {
 public:
  PhotonState() = default;
  PhotonState(std::shared_ptr<const SphericalGrid> grid, StateMeta meta = {});

  const SphericalGrid& grid() const { return *grid_; }
  const std::shared_ptr<const SphericalGrid>& grid_ptr() const { return grid_; }
  const StateMeta& meta() const { return meta_; }
  StateMeta& meta() { return meta_; }

  cplx& amp(std::size_t node, int c) { return amp_[3 * node + c]; }
  const cplx& amp(std::size_t node, int c) const { return amp_[3 * node + c]; }
  std::vector<cplx>& raw() { return amp_; }
  const std::vector<cplx>& raw() const { return amp_; }

  PhotonState& operator+=(const PhotonState& o);
  PhotonState& operator-=(const PhotonState& o);
  PhotonState& operator*=(cplx s);
  PhotonState operator+(const PhotonState& o) const { PhotonState r(*this); r += o; return r; }
  PhotonState operator-(const PhotonState& o) const { PhotonState r(*this); r -= o; return r; }

 private:
  std::shared_ptr<const SphericalGrid> grid_;
  std::vector<cplx> amp_;
  StateMeta meta_;
};

/// Circularly polarized Gaussian state (p0 = 1):
///   psi(p) = sqrt(p) (4 pi a)^{-3/4} exp(-|p - p0 e_z|^2 / 8a) u_+(theta,phi)
/// with u_+ = e^{i phi} (e1 + i e2)/sqrt(2), the transverse circular
/// polarization that matches the uniform (e_x + i e_y)/sqrt(2) beam in the
/// paraxial limit and carries J_z = +hbar.
PhotonState gaussian_state(double a, std::shared_ptr<const SphericalGrid> grid);

/// gaussian_state on its auto-sized grid.
PhotonState gaussian_state(double a);

cplx inner_product(const PhotonState& lhs, const PhotonState& rhs);
double norm2(const PhotonState& s);

/// max over nodes of |p.psi| / (|p| ||psi(p)||), ignoring nodes with
/// negligible amplitude.
double transversality_residual(const PhotonState& s);

using MatrixField = std::function<Mat3c(const MomentumPoint&)>;

/// Amplitude-wise matrix application; the result is flagged extended.
PhotonState apply_pointwise(const MatrixField& field, const PhotonState& s);

/// pi(p) applied pointwise (result flagged physical).
PhotonState apply_projector(const PhotonState& s);

/// L_z = -i hbar d/dphi by spectral differentiation per (p, theta) ring.
PhotonState apply_Lz(const PhotonState& s);

/// L'_z = J_z - S'_z = -i hbar d/dphi + (S_z - cos(theta) p_hat.S); maps
/// physical states to physical states.
PhotonState apply_Lz_prime(const PhotonState& s);

enum class Observable { Lz, Sz, LzPrime, SzPrime, Jz, Helicity };
const char* observable_name(Observable o);

PhotonState apply_observable(Observable o, const PhotonState& s);

enum class VarianceMode { Unsharp, Sharp };

struct CumulantRecord {
  std::string observable;
  double a = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = <psi, O psi>; Unsharp variance uses pi O^2 pi, Sharp uses (pi O pi)^2.
/// Their difference is <phi, (1 - pi) phi> >= 0 with phi = O pi psi.
CumulantRecord mean_and_variance(Observable o, const PhotonState& s, VarianceMode mode);

/// The Unsharp - Sharp gap <phi, (1-pi) phi>, phi = O pi psi.
double variance_excess(Observable o, const PhotonState& s);

/// Columnar text serialization (one row per node: p theta phi and six reals);
/// bit-exact round trip.
void save_state(const PhotonState& s, const std::string& path);
PhotonState load_state(const std::string& path);

}  // namespace photam

#endif

#ifndef PHOTAM_SPIN_HPP
#define PHOTAM_SPIN_HPP

/// Spin-1 representations and the unitary relating them. hbar = 1 throughout;
/// all angular momenta are reported in units of hbar.

#include <array>

#include "photam/complex3.hpp"

namespace photam {

enum class SpinRep {
  SzDiagonal,  // S_z = diag(1, 0, -1); paired with the nontrivial V below
  Cartesian    // (S_k)_{ml} = -i eps_{kml}; V = identity
};

struct SpinRepresentation {
  SpinRep tag;
  std::array<Mat3c, 3> S;  // S_x, S_y, S_z
  Mat3c v_matrix;          // V with V† S^{SzDiagonal} V = S^{Cartesian}

  const Mat3c& operator[](int k) const { return S[static_cast<std::size_t>(k)]; }
};

/// The two fixed representations (built once).
const SpinRepresentation& spin_representation(SpinRep tag);

/// so(3) generator (A_k)_{ml} = eps_{kml}.
const Mat3c& so3_generator(int k);

/// Levi-Civita symbol.
double levi_civita(int i, int j, int k);

}  // namespace photam

#endif

#ifndef PHOTAM_POINTWISE_HPP
#define PHOTAM_POINTWISE_HPP

/// Pointwise (multiplication-operator) matrix constructions: the transversal
/// projector, helicity, the non-canonical spin components, the polar matrix
/// entering L'_z, rotations, and the closed-form commutator kernels.
///
/// Commutators with the projector are written in the gauge [V† S_k V, pi]
/// (all matrices conjugated next to pi); this is unitarily equivalent to
/// [S_k, V pi V†].

#include "photam/geometry.hpp"
#include "photam/spin.hpp"

namespace photam {

/// pi_jk = delta_jk - p_j p_k / |p|^2. Hermitian, idempotent, rank 2.
Mat3c transversal_projector(const MomentumPoint& x);

/// (S.p)/(hbar |p|); eigenvalues {-1, 0, +1}.
Mat3c helicity_matrix(const MomentumPoint& x, const SpinRepresentation& rep);

/// R = V† exp(-(i/hbar) angle axis.S) V; real orthogonal with det +1,
/// independent of the representation.
Mat3c rotation_from_spin(const SpinRepresentation& rep, const Vec3& axis, double angle);

/// S'_k = hbar (p_k/|p|) eps_hat. Commutes with the projector pointwise.
Mat3c s_prime_matrix(const MomentumPoint& x, int k, const SpinRepresentation& rep);

/// Pointwise matrix part of L'_z in the SzDiagonal representation:
///   H(theta, phi) = S_z - cos(theta) (p_hat . S),
/// so that L'_z = -i hbar d/dphi + H. Hermitian, eigenvalues {-sin, 0, sin}.
Mat3c h_matrix(double theta, double phi);

/// Same matrix in an arbitrary representation (used when applying L'_z to
/// amplitudes stored in the Cartesian basis).
Mat3c h_matrix_in(const MomentumPoint& x, const SpinRepresentation& rep);

/// The closed-form projector-commutator kernel
///   K_k(p, f) = i hbar ( (p x f)_k p - (p.f) A_k p ) / |p|^2.
/// Pointwise identities (Cartesian storage): [L_k, pi] f = +K_k(p, f) and
/// [V† S_k V, pi] f = -K_k(p, f); their sum [J_k, pi] f vanishes.
Vec3c commutator_S_pi_analytic(const MomentumPoint& x, int k, const Vec3c& f);

/// Closed form of [L'_i, S'_j] as a pointwise matrix:
///   i hbar eps_ijk (p_k/|p|) (p_hat . S)  ( = i hbar eps_ijk S'_k ).
Mat3c commutator_Lp_Sp_analytic(const MomentumPoint& x, int i, int j,
                                const SpinRepresentation& rep);

}  // namespace photam

#endif

#ifndef PHOTAM_SPECTRA_HPP
#define PHOTAM_SPECTRA_HPP

/// Probability distributions of the canonical joint (L_z, S_z) POVM and of
/// the non-canonical S'_z / L'_z PVMs, the L'_z ring eigenbasis, the f(a)
/// closed form and the cumulant sweep.

#include <string>
#include <vector>

#include "photam/special.hpp"
#include "photam/state.hpp"

namespace photam {

enum class TableKind { DiscretePair, Discrete, Binned };

struct DistributionTable {
  TableKind kind = TableKind::Discrete;
  std::string observable;
  double a = 0.0;

  // DiscretePair: parallel (m, ms); Discrete: outcome only.
  std::vector<int> m_label;
  std::vector<int> ms_label;
  std::vector<int> outcome;

  // Binned: nbins+1 edges; per-bin mass-weighted outcome mean and square mean
  // (so table moments are quadrature-exact, not bin-center approximations).
  std::vector<double> edges;
  std::vector<double> outcome_mean;
  std::vector<double> outcome_sqmean;

  std::vector<double> prob;   // clamped to >= 0
  double mass_deficit = 0.0;
  double j0_leakage = 0.0;    // L'_z only: mass found in the unphysical j = 0 channels

  double total() const;
  double moment(int k) const;  // k = 1 or 2; Discrete/Binned only
};

/// Joint POVM distribution p(m, m_s) of the canonical L_z, S_z for
/// m in [-m_max, m_max], m_s in {+1, 0, -1}. The azimuthal integral is a
/// discrete Fourier transform of V psi in the SzDiagonal basis.
DistributionTable joint_povm_Lz_Sz(const PhotonState& s, int m_max);

enum class MarginalKind { OAM, SAM };
DistributionTable marginal(const DistributionTable& joint, MarginalKind which);

struct SzPrimeResult {
  DistributionTable table;         // summed over helicity
  DistributionTable plus, minus;   // helicity-resolved sub-tables
};

/// PVM distribution of S'_z over bins of [-1, 1]; outcome at each node is
/// (helicity) * cos(theta).
SzPrimeResult pvm_Sz_prime(const PhotonState& s, const std::vector<double>& edges);

/// Per polar node: the H(theta, .) eigensystem, the connection matrix G, the
/// matrix M = -iG + Lambda with eigenvalues mu_j = 1 + j cos(theta), and the
/// labeled channel combinations c_j = sum_s (m_j)_s v_s(theta, 0).
struct LzPrimeBasis {
  struct Node {
    double cos_theta = 0.0;
    std::array<double, 3> lambda{};       // ascending: -sin, 0, +sin
    std::array<Vec3c, 3> v{};             // H eigenvectors at phi = 0
    Mat3c G, M;
    std::array<double, 3> mu{};           // indexed by j + 1 (j = -1, 0, +1)
    std::array<Vec3c, 3> m_hat{};         // M eigenvectors, same indexing
    std::array<Vec3c, 3> channel{};       // c_j, same indexing
    bool degenerate = false;              // |cos| below the matching window
  };
  std::vector<Node> nodes;
};

LzPrimeBasis build_Lz_prime_basis(const std::vector<double>& cos_nodes);
LzPrimeBasis build_Lz_prime_basis(const SphericalGrid& grid);

struct LzPrimeOptions {
  int n_max = 8;
  double leakage_tolerance = 1e-10;   // allowed j = 0 channel mass
  double deficit_tolerance = 1e-6;    // allowed out-of-band mass
};

/// PVM distribution of L'_z: channel (q, j) carries outcome q + j cos(theta),
/// binned over the given edges. The j = 0 channel is unphysical and its mass
/// is required to stay below the leakage tolerance.
DistributionTable pvm_Lz_prime(const PhotonState& s, const LzPrimeOptions& opt,
                               const std::vector<double>& edges);

/// Uniform bin edges, 64 bins per unit interval.
std::vector<double> default_edges(double lo, double hi);

// --- measurement effects (used by the idempotence checks) ---

/// F_{L_z,S_z}(m, m_s) applied to a state (Eq. pi V† e_s Fourier projection).
PhotonState apply_joint_effect(const PhotonState& s, int m, int ms);

/// F_{S'_z}([lo, hi)) applied to a state (pointwise helicity-resolved
/// indicator projector).
PhotonState apply_szprime_effect(const PhotonState& s, double lo, double hi);

/// F_{L'_z}([lo, hi)) applied to a state (ring projector onto the retained
/// (q, j = +-1) channels whose outcome lies in the window).
PhotonState apply_lzprime_effect(const PhotonState& s, double lo, double hi, int n_max);

// --- cumulant sweep (Fig.-1 artifacts) ---

struct SweepEntry {
  double a = 0.0;
  bool ok = false;
  std::string error;
  std::vector<CumulantRecord> records;  // Lz, Sz, Lzprime, Szprime, Jz
  double f_value = 0.0;                 // analytic f(a) column
};

/// Node-count overrides applied on top of the auto-sized grid (0 = keep auto).
struct GridOverride {
  int n_radial = 0;
  int n_polar = 0;
  int n_azimuthal = 0;
};

/// For each a: gaussian state on its auto-sized grid (subject to overrides);
/// canonical observables in Unsharp mode, non-canonical (and J_z) in Sharp
/// mode. Per-entry failures are captured, not propagated.
std::vector<SweepEntry> sweep_a(const std::vector<double>& a_values,
                                const GridOverride& grid = {});

}  // namespace photam

#endif

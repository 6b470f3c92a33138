#ifndef PHOTAM_VERIFY_HPP
#define PHOTAM_VERIFY_HPP

/// Executable verification of the operator identities: so(3) algebra,
/// projector commutators, the non-canonical commutator closed form, the L'_z
/// ring eigensystem, the paraxial variance excess and the PVM/POVM
/// idempotence dichotomy. Derivative-bearing identities are checked against
/// finite-difference oracles on smooth random test fields.

#include <cstdint>
#include <string>
#include <vector>

#include "photam/spin.hpp"

namespace photam {

struct CheckReport {
  std::string name;
  bool pass = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::string witness;  // input where the worst residual occurred
  std::uint64_t seed = 0;
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 20240915;
  double tolerance_scale = 1.0;  // multiplies every tolerance
};

CheckReport check_so3_algebra(SpinRep rep, const VerifyOptions& opt = {});
CheckReport check_projector_commutators(const VerifyOptions& opt = {});
CheckReport check_noncanonical_commutators(const VerifyOptions& opt = {});
CheckReport check_Lz_prime_eigenfunctions(const VerifyOptions& opt = {});
CheckReport check_paraxial_extra_variance(const VerifyOptions& opt = {});
CheckReport check_povm_idempotence_dichotomy(const VerifyOptions& opt = {});
CheckReport check_grid_convergence(const VerifyOptions& opt = {});
CheckReport check_G_matrix_comparison(const VerifyOptions& opt = {});
CheckReport check_f_half_crossing(const VerifyOptions& opt = {});

/// Every check above; reports sorted by name. Aggregate passes iff all pass.
std::vector<CheckReport> run_all(const VerifyOptions& opt = {});
bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace photam

#endif

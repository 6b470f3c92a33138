// Acceptance gate: one pass/fail line per criterion, every tolerance pinned
// here. Exit status 0 iff all criteria pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "photam/spectra.hpp"
#include "photam/verify.hpp"

using namespace photam;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

struct Cumulants {
  double a;
  CumulantRecord lz, sz, lpz, spz, jz;
  double f;
};

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main() {
  const std::vector<double> avals = {0.01, 0.05, 0.1, 0.5, 1.0, 2.0};

  // --- criteria 1 + 2: mean reproduction and the TAM sum rule ---
  const double t0 = now_ms();
  std::vector<Cumulants> cums;
  for (double a : avals) {
    const PhotonState psi = gaussian_state(a);
    Cumulants c;
    c.a = a;
    c.lz = mean_and_variance(Observable::Lz, psi, VarianceMode::Unsharp);
    c.sz = mean_and_variance(Observable::Sz, psi, VarianceMode::Unsharp);
    c.lpz = mean_and_variance(Observable::LzPrime, psi, VarianceMode::Sharp);
    c.spz = mean_and_variance(Observable::SzPrime, psi, VarianceMode::Sharp);
    c.jz = mean_and_variance(Observable::Jz, psi, VarianceMode::Sharp);
    c.f = f_of_a(a);
    cums.push_back(c);
  }
  const double mean_runtime_s = (now_ms() - t0) / 1000.0;
  {
    double worst = 0.0;
    for (const auto& c : cums) {
      worst = std::max(worst, std::abs(c.sz.mean - c.f));
      worst = std::max(worst, std::abs(c.spz.mean - c.f));
      worst = std::max(worst, std::abs(c.lz.mean - (1.0 - c.f)));
      worst = std::max(worst, std::abs(c.lpz.mean - (1.0 - c.f)));
    }
    const bool pass = worst <= 1e-6 && mean_runtime_s < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "worst |mean - f(a) form| = %.3g, tol 1e-6; runtime %.2f s < 10 s",
                  worst, mean_runtime_s);
    report(1, "mean values reproduce f(a) and 1 - f(a) at six spreads", pass, buf);
  }
  {
    double worst = 0.0;
    for (const auto& c : cums) worst = std::max(worst, std::abs(c.jz.mean - 1.0));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "worst |<Jz> - 1| = %.3g, tol 1e-8", worst);
    report(2, "TAM sum rule <Jz> = 1", worst <= 1e-8, buf);
  }

  // --- criterion 3: variance pairing, ordering, paraxial limit, stability ---
  {
    double worst_eq = 0.0;
    bool ordered = true;
    for (const auto& c : cums) {
      worst_eq = std::max(worst_eq, std::abs(c.lz.variance - c.sz.variance));
      worst_eq = std::max(worst_eq, std::abs(c.lpz.variance - c.spz.variance));
      ordered = ordered && c.lz.variance >= c.lpz.variance && c.sz.variance >= c.spz.variance;
    }
    const PhotonState psi3 = gaussian_state(1e-3);
    double v3_max_canon = 0.0, v3_max_sharp = 0.0;
    for (Observable o : {Observable::Lz, Observable::Sz})
      v3_max_canon = std::max(
          v3_max_canon, mean_and_variance(o, psi3, VarianceMode::Unsharp).variance);
    for (Observable o : {Observable::LzPrime, Observable::SzPrime})
      v3_max_sharp =
          std::max(v3_max_sharp, mean_and_variance(o, psi3, VarianceMode::Sharp).variance);
    const CheckReport stab = check_grid_convergence();
    const bool pass =
        worst_eq <= 1e-6 && ordered && v3_max_canon < 1e-2 && v3_max_sharp < 1e-2 && stab.pass;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "worst pair gap %.3g (tol 1e-6); canonical >= non-canonical %s; "
                  "Var(a=1e-3): %.3g / %.3g < 1e-2; refinement drift %.3g < 1e-7",
                  worst_eq, ordered ? "yes" : "NO", v3_max_canon, v3_max_sharp,
                  stab.worst_residual);
    report(3, "variance pairing and ordering (Fig. 1b content)", pass, buf);
  }

  // --- criterion 4: projector commutator suite (matrix + finite difference) ---
  {
    const double t4 = now_ms();
    const CheckReport r = check_projector_commutators();
    const double dt = (now_ms() - t4) / 1000.0;
    const bool pass = r.pass && dt < 5.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s; runtime %.2f s < 5 s", r.note.c_str(), dt);
    report(4, "[S,pi] / [L,pi] / [J,pi] identities at 50 seeded points", pass, buf);
  }

  // --- criterion 5: non-canonical commutators ---
  {
    const CheckReport r = check_noncanonical_commutators();
    report(5, "[L'_i, S'_j] closed form and nonzero [L'_x, L'_y] witness", r.pass, r.note);
  }

  // --- criterion 6: polar matrix eigensystem and ring eigenfunctions ---
  {
    double worst_h = 0.0, worst_mu = 0.0, worst_herm = 0.0;
    std::vector<double> cos_nodes;
    for (int k = 0; k < 20; ++k) {
      const double theta = 0.08 + (M_PI - 0.16) * k / 19.0;
      cos_nodes.push_back(std::cos(theta));
      const EigenSystem3 es = hermitian_eigensystem(h_matrix(theta, 0.35 * k));
      const double st = std::sin(theta);
      worst_h = std::max({worst_h, std::abs(es.values[0] + st), std::abs(es.values[1]),
                          std::abs(es.values[2] - st)});
    }
    const LzPrimeBasis basis = build_Lz_prime_basis(cos_nodes);
    for (std::size_t i = 0; i < basis.nodes.size(); ++i) {
      worst_herm = std::max(worst_herm, basis.nodes[i].M.hermitian_defect());
      for (int j = -1; j <= 1; ++j)
        worst_mu = std::max(worst_mu,
                            std::abs(basis.nodes[i].mu[j + 1] - (1.0 + j * cos_nodes[i])));
    }
    const CheckReport ring = check_Lz_prime_eigenfunctions();
    const bool pass = worst_h <= 1e-12 && worst_mu <= 1e-8 && worst_herm <= 1e-12 && ring.pass;
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "H eigenvalues dev %.3g (tol 1e-12); mu affine-in-cos dev %.3g (tol 1e-8); "
                  "M hermiticity %.3g; ring residual %.3g (tol 1e-8); recorded: %s",
                  worst_h, worst_mu, worst_herm, ring.worst_residual,
                  ring.note.substr(0, 140).c_str());
    report(6, "polar-matrix eigensystem and empirical eigenvalue formula", pass, buf);
  }

  // --- criterion 7: measure properties, idempotence dichotomy ---
  {
    double worst_mass = 0.0;
    double min_prob = 0.0;
    for (double a : {0.1, 0.5}) {
      const PhotonState psi = gaussian_state(a);
      const DistributionTable joint = joint_povm_Lz_Sz(psi, 8);
      const SzPrimeResult sp = pvm_Sz_prime(psi, default_edges(-1.0, 1.0));
      LzPrimeOptions lopt;
      const DistributionTable lp = pvm_Lz_prime(psi, lopt, default_edges(-9.0, 9.0));
      for (const DistributionTable* t : {&joint, &sp.table, &lp}) {
        worst_mass = std::max(worst_mass, std::abs(t->total() - 1.0));
        for (double p : t->prob) min_prob = std::min(min_prob, p);
      }
    }
    const CheckReport dich = check_povm_idempotence_dichotomy();
    const bool pass = worst_mass <= 1e-6 && min_prob >= -1e-12 && dich.pass;
    char buf[320];
    std::snprintf(buf, sizeof(buf), "worst |mass - 1| = %.3g (tol 1e-6); min prob %.3g; %s",
                  worst_mass, min_prob, dich.note.substr(0, 200).c_str());
    report(7, "unit mass, non-negativity, PVM idempotence, POVM witness", pass, buf);
  }

  // --- criterion 8: variance-excess positivity and paraxial decay ---
  {
    double min_excess = 1e300, excess_small = 0.0;
    for (double a : avals) {
      const PhotonState psi = gaussian_state(a);
      min_excess = std::min(min_excess, variance_excess(Observable::Sz, psi));
      min_excess = std::min(min_excess, variance_excess(Observable::Lz, psi));
    }
    const PhotonState psi3 = gaussian_state(1e-3);
    excess_small = std::max(variance_excess(Observable::Sz, psi3),
                            variance_excess(Observable::Lz, psi3));
    const bool pass = min_excess >= -1e-12 && excess_small < 5e-3;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "min excess %.3g >= -1e-12; excess(a=1e-3) %.3g < 5e-3",
                  min_excess, excess_small);
    report(8, "variance excess <phi,(1-pi)phi> positivity and paraxial limit", pass, buf);
  }

  // --- criterion 9: distribution moments equal operator-quadrature moments ---
  {
    double worst = 0.0;
    for (double a : {0.1, 0.5}) {
      const PhotonState psi = gaussian_state(a);
      const DistributionTable joint = joint_povm_Lz_Sz(psi, 8);
      const DistributionTable oam = marginal(joint, MarginalKind::OAM);
      const DistributionTable sam = marginal(joint, MarginalKind::SAM);
      const SzPrimeResult sp = pvm_Sz_prime(psi, default_edges(-1.0, 1.0));
      LzPrimeOptions lopt;
      const DistributionTable lp = pvm_Lz_prime(psi, lopt, default_edges(-9.0, 9.0));
      const auto op_moments = [&](Observable o) {
        const PhotonState os = apply_observable(o, psi);
        return std::pair<double, double>(inner_product(psi, os).real(), norm2(os));
      };
      const std::pair<const DistributionTable*, Observable> pairs[4] = {
          {&oam, Observable::Lz},
          {&sam, Observable::Sz},
          {&sp.table, Observable::SzPrime},
          {&lp, Observable::LzPrime}};
      for (const auto& [table, obs] : pairs) {
        const auto [m1, m2] = op_moments(obs);
        worst = std::max(worst, std::abs(table->moment(1) - m1));
        worst = std::max(worst, std::abs(table->moment(2) - m2));
      }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst moment gap %.3g, tol 1e-5", worst);
    report(9, "distribution moments match operator quadrature for all four observables",
           worst <= 1e-5, buf);
  }

  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}

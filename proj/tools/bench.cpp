// Compares the OpenMP kernels against the serial reference implementations on
// representative workloads and verifies that the outputs are bit-identical.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "photam/parallel.hpp"
#include "photam/spectra.hpp"

using namespace photam;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

double max_diff(const PhotonState& a, const PhotonState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

struct Case {
  const char* name;
  double serial_ms = 0.0;
  double omp_ms = 0.0;
  double diff = 0.0;
};

}  // namespace

int main() {
  GridSpec spec;
  spec.n_radial = 48;
  spec.n_polar = 256;
  spec.n_azimuthal = 64;
  spec.p_min = 0.0;
  spec.p_max = 4.2;
  const auto grid = SphericalGrid::build(spec);

  std::printf("grid: %d x %d x %d = %zu nodes, %d threads available\n", spec.n_radial,
              spec.n_polar, spec.n_azimuthal, grid->n_nodes(), hardware_threads());

  set_execution_mode(ExecMode::Serial);
  const PhotonState psi_s = gaussian_state(0.05, grid);
  set_execution_mode(ExecMode::OpenMP);
  const PhotonState psi_p = gaussian_state(0.05, grid);

  std::vector<Case> cases;

  {
    Case c{"gaussian_state"};
    c.serial_ms = time_ms([&] { set_execution_mode(ExecMode::Serial); gaussian_state(0.05, grid); }, 3);
    c.omp_ms = time_ms([&] { set_execution_mode(ExecMode::OpenMP); gaussian_state(0.05, grid); }, 3);
    c.diff = max_diff(psi_s, psi_p);
    cases.push_back(c);
  }
  {
    Case c{"inner_product"};
    volatile double sink = 0.0;
    c.serial_ms = time_ms([&] { set_execution_mode(ExecMode::Serial); sink = norm2(psi_s); }, 5);
    c.omp_ms = time_ms([&] { set_execution_mode(ExecMode::OpenMP); sink = norm2(psi_s); }, 5);
    set_execution_mode(ExecMode::Serial);
    const double a = norm2(psi_s);
    set_execution_mode(ExecMode::OpenMP);
    const double b = norm2(psi_s);
    c.diff = std::abs(a - b);
    (void)sink;
    cases.push_back(c);
  }
  {
    Case c{"apply_Sz_pointwise"};
    set_execution_mode(ExecMode::Serial);
    const PhotonState a = apply_observable(Observable::Sz, psi_s);
    set_execution_mode(ExecMode::OpenMP);
    const PhotonState b = apply_observable(Observable::Sz, psi_s);
    c.serial_ms = time_ms([&] { set_execution_mode(ExecMode::Serial); apply_observable(Observable::Sz, psi_s); }, 3);
    c.omp_ms = time_ms([&] { set_execution_mode(ExecMode::OpenMP); apply_observable(Observable::Sz, psi_s); }, 3);
    c.diff = max_diff(a, b);
    cases.push_back(c);
  }
  {
    Case c{"apply_Lz_spectral"};
    set_execution_mode(ExecMode::Serial);
    const PhotonState a = apply_Lz(psi_s);
    set_execution_mode(ExecMode::OpenMP);
    const PhotonState b = apply_Lz(psi_s);
    c.serial_ms = time_ms([&] { set_execution_mode(ExecMode::Serial); apply_Lz(psi_s); }, 3);
    c.omp_ms = time_ms([&] { set_execution_mode(ExecMode::OpenMP); apply_Lz(psi_s); }, 3);
    c.diff = max_diff(a, b);
    cases.push_back(c);
  }
  {
    Case c{"joint_povm"};
    set_execution_mode(ExecMode::Serial);
    const DistributionTable a = joint_povm_Lz_Sz(psi_s, 8);
    set_execution_mode(ExecMode::OpenMP);
    const DistributionTable b = joint_povm_Lz_Sz(psi_s, 8);
    c.serial_ms = time_ms([&] { set_execution_mode(ExecMode::Serial); joint_povm_Lz_Sz(psi_s, 8); }, 3);
    c.omp_ms = time_ms([&] { set_execution_mode(ExecMode::OpenMP); joint_povm_Lz_Sz(psi_s, 8); }, 3);
    double d = 0.0;
    for (std::size_t i = 0; i < a.prob.size(); ++i)
      d = std::max(d, std::abs(a.prob[i] - b.prob[i]));
    c.diff = d;
    cases.push_back(c);
  }

  std::printf("%-20s %12s %12s %9s %12s\n", "kernel", "serial (ms)", "openmp (ms)", "speedup",
              "max |diff|");
  bool identical = true;
  for (const auto& c : cases) {
    std::printf("%-20s %12.2f %12.2f %8.2fx %12.3g\n", c.name, c.serial_ms, c.omp_ms,
                c.serial_ms / c.omp_ms, c.diff);
    identical = identical && c.diff == 0.0;
  }
  std::printf("serial and OpenMP outputs %s\n",
              identical ? "are bit-identical" : "DIFFER (reduction order bug)");
  return identical ? 0 : 1;
}

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "photam/spectra.hpp"
#include "photam/state.hpp"

using namespace photam;

namespace {

// Independent quadrature oracle (composite Simpson, no Gauss-Legendre, no
// library grid code): moments of cos(theta) under |psi_a|^2 d^3p/|p|.
double simpson_moment(double a, int cos_power) {
  const double sigma = std::sqrt(2.0 * a);
  const double plo = std::max(0.0, 1.0 - 10.0 * sigma), phi = 1.0 + 10.0 * sigma;
  const int np = 800;
  const int nc = a < 0.05 ? 4000 : 800;  // the cos integrand sharpens as 1/a
  const double hp = (phi - plo) / np, hc = 2.0 / nc;
  const double n2 = std::pow(4.0 * M_PI * a, -1.5);
  auto f = [&](double p, double c) {
    return p * p * n2 * std::exp(-(p * p + 1.0 - 2.0 * p * c) / (4.0 * a)) *
           std::pow(c, cos_power);
  };
  double total = 0.0;
  for (int i = 0; i <= np; ++i) {
    const double p = plo + hp * i;
    const double wi = (i == 0 || i == np) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double row = 0.0;
    for (int j = 0; j <= nc; ++j) {
      const double c = -1.0 + hc * j;
      const double wj = (j == 0 || j == nc) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      row += wj * f(p, c);
    }
    total += wi * row;
  }
  return total * hp * hc / 9.0 * 2.0 * M_PI;
}

double quad_mean_cos(const PhotonState& s) {
  const SphericalGrid& g = s.grid();
  double acc = 0.0;
  for (std::size_t node = 0; node < g.n_nodes(); ++node) {
    const int ic = static_cast<int>((node / g.n_phi()) % g.spec().n_polar);
    double a2 = 0.0;
    for (int c = 0; c < 3; ++c) a2 += std::norm(s.amp(node, c));
    acc += g.node_weight(node) * g.cos_node(ic) * a2;
  }
  return acc;
}

double max_amp_diff(const PhotonState& a, const PhotonState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("grid_state");

TEST_CASE("grid quadrature integrates the measure exactly") {
  GridSpec spec;
  spec.n_radial = 32;
  spec.n_polar = 32;
  spec.n_azimuthal = 32;
  spec.p_min = 0.0;
  spec.p_max = 2.0;
  const auto g = SphericalGrid::build(spec);
  const double expect = 2.0 * M_PI * 2.0 * (2.0 * 2.0 / 2.0);  // 8 pi
  CHECK(std::abs(g->measure_total() - expect) <= 1e-12 * expect);
  // azimuthal rule kills every nonzero Fourier mode below the node count
  for (int m = 1; m < spec.n_azimuthal; ++m) {
    cplx acc(0, 0);
    for (int k = 0; k < spec.n_azimuthal; ++k) {
      const double ang = m * g->phi_node(k);
      acc += cplx(std::cos(ang), std::sin(ang));
    }
    CHECK(std::abs(acc) * g->phi_weight() <= 1e-12);
  }
  // polar nodes stay off the poles
  for (int ic = 0; ic < spec.n_polar; ++ic) CHECK(g->sin_node(ic) >= 1e-10);
}

TEST_CASE("grid construction rejects bad parameters") {
  GridSpec spec;
  spec.n_radial = 4;
  CHECK_THROWS_AS(SphericalGrid::build(spec), TooFewNodes);
  spec.n_radial = 48;
  spec.n_azimuthal = 17;
  CHECK_THROWS_AS(SphericalGrid::build(spec), TooFewNodes);
  spec.n_azimuthal = 64;
  spec.p_min = 2.0;
  spec.p_max = 1.0;
  CHECK_THROWS_AS(SphericalGrid::build(spec), InvalidWindow);
}

TEST_CASE("gaussian state: norm against the independent oracle") {
  for (double a : {0.01, 0.1}) {
    const PhotonState psi = gaussian_state(a);
    const double n2 = norm2(psi);
    CHECK(std::abs(n2 - 1.0) <= (a == 0.01 ? 1e-10 : 1e-10));
    CHECK(std::abs(n2 - simpson_moment(a, 0)) <= 1e-8);
    CHECK(transversality_residual(psi) <= 1e-12);
  }
}

TEST_CASE("gaussian state requires a wide enough window") {
  GridSpec spec = auto_grid_spec(0.5);
  spec.p_max = 2.0;  // +-10 sigma needs p_max = 11
  CHECK_THROWS_AS(gaussian_state(0.5, SphericalGrid::build(spec)), WindowTooNarrow);
  CHECK_THROWS_AS(gaussian_state(-1.0), NonPositiveA);
}

TEST_CASE("gaussian state is a helicity eigenstate") {
  const PhotonState psi = gaussian_state(0.3);
  const double h = inner_product(psi, apply_observable(Observable::Helicity, psi)).real();
  CHECK(std::abs(h - 1.0) <= 1e-10);
}

TEST_CASE("momentum concentrates at p0 in the paraxial limit") {
  // <P_z> equals p0 exactly for the gaussian family; quadrature is the only
  // error source. Checked at a = 1e-4 on an explicit small-phi grid.
  const double a = 1e-4;
  GridSpec spec = auto_grid_spec(a);
  spec.n_radial = 32;
  spec.n_polar = 1024;
  spec.n_azimuthal = 16;
  const auto g = SphericalGrid::build(spec);
  const PhotonState psi = gaussian_state(a, g);
  double pz = 0.0;
  for (std::size_t node = 0; node < g->n_nodes(); ++node) {
    const std::size_t ring = node / g->n_phi();
    const int ip = static_cast<int>(ring) / spec.n_polar;
    const int ic = static_cast<int>(ring) % spec.n_polar;
    double a2 = 0.0;
    for (int c = 0; c < 3; ++c) a2 += std::norm(psi.amp(node, c));
    pz += g->node_weight(node) * g->radial_node(ip) * g->cos_node(ic) * a2;
  }
  CHECK(std::abs(pz - 1.0) <= 1e-3);
}

TEST_CASE("inner product: symmetry, positivity, polarization orthogonality") {
  const auto grid = SphericalGrid::build(auto_grid_spec(0.2));
  const PhotonState psi = gaussian_state(0.2, grid);
  CHECK(std::abs(inner_product(psi, psi).imag()) <= 1e-15);
  CHECK(inner_product(psi, psi).real() > 0.0);

  // opposite circular polarization with the same scalar profile
  PhotonState minus(grid, StateMeta{"custom", 0.2, true, false});
  for (std::size_t node = 0; node < grid->n_nodes(); ++node) {
    const MomentumPoint x = grid->point(node);
    const HelicityPair h = helicity_vectors(x);
    double a2 = 0.0;
    for (int c = 0; c < 3; ++c) a2 += std::norm(psi.amp(node, c));
    const double gmag = std::sqrt(a2);
    const cplx twist = std::exp(cplx(0.0, -x.phi));
    for (int c = 0; c < 3; ++c) minus.amp(node, c) = gmag * twist * h.minus[c];
  }
  CHECK(std::abs(inner_product(psi, minus)) <= 1e-12);

  const PhotonState other = gaussian_state(0.3);
  CHECK_THROWS_AS(inner_product(psi, other), GridMismatch);
}

TEST_CASE("pointwise application and transversality") {
  const PhotonState psi = gaussian_state(0.5);
  const PhotonState proj = apply_projector(psi);
  CHECK(max_amp_diff(proj, psi) <= 1e-13);  // pi psi = psi on physical states

  const PhotonState szpsi = apply_observable(Observable::Sz, psi);
  CHECK(transversality_residual(szpsi) > 1e-3);  // canonical spin leaves H_S
  CHECK(szpsi.meta().extended);

  const PhotonState spzpsi = apply_observable(Observable::SzPrime, psi);
  CHECK(transversality_residual(spzpsi) <= 1e-12);  // sharp component stays
}

TEST_CASE("spectral L_z") {
  const auto grid = SphericalGrid::build(GridSpec{16, 16, 32, 0.5, 1.5});
  // phi-independent components are annihilated
  PhotonState flat(grid, StateMeta{"custom", 0.0, false, true});
  for (std::size_t node = 0; node < grid->n_nodes(); ++node) {
    const MomentumPoint x = grid->point(node);
    flat.amp(node, 0) = std::exp(-x.p) * std::cos(x.theta);
    flat.amp(node, 1) = 0.5;
    flat.amp(node, 2) = cplx(0.0, 1.0) * std::sin(x.theta);
  }
  PhotonState lz = apply_Lz(flat);
  double worst = 0.0;
  for (const cplx& v : lz.raw()) worst = std::max(worst, std::abs(v));
  CHECK(worst <= 1e-13);

  // e^{i m phi} times a fixed vector is an eigenfunction with eigenvalue m
  for (int m : {-3, 1, 5}) {
    PhotonState mode(grid, StateMeta{"custom", 0.0, false, true});
    for (std::size_t node = 0; node < grid->n_nodes(); ++node) {
      const MomentumPoint x = grid->point(node);
      const cplx e = std::exp(cplx(0.0, m * x.phi)) * std::exp(-(x.p - 1.0) * (x.p - 1.0));
      mode.amp(node, 0) = e;
      mode.amp(node, 1) = 0.3 * e;
      mode.amp(node, 2) = cplx(0.0, -0.2) * e;
    }
    const PhotonState lzm = apply_Lz(mode);
    double dev = 0.0;
    for (std::size_t i = 0; i < mode.raw().size(); ++i)
      dev = std::max(dev, std::abs(lzm.raw()[i] - static_cast<double>(m) * mode.raw()[i]));
    CHECK(dev <= 1e-12);
  }
}

TEST_CASE("L'_z action: decomposition identity and mean") {
  const PhotonState psi = gaussian_state(0.4);
  const PhotonState lhs = apply_Lz_prime(psi);
  PhotonState rhs = apply_Lz(psi);
  rhs += apply_observable(Observable::Sz, psi);
  rhs -= apply_observable(Observable::SzPrime, psi);
  CHECK(max_amp_diff(lhs, rhs) <= 1e-12);
  CHECK(transversality_residual(lhs) <= 1e-10);  // output stays physical

  // <L'_z> = 1 - <cos(theta)> on the twisted helicity-plus gaussian
  const double mean = inner_product(psi, lhs).real();
  CHECK(std::abs(mean - (1.0 - quad_mean_cos(psi))) <= 1e-12);

  PhotonState zero(psi.grid_ptr());
  double worst = 0.0;
  for (const cplx& v : apply_Lz_prime(zero).raw()) worst = std::max(worst, std::abs(v));
  CHECK(worst == 0.0);
}

TEST_CASE("J_z sum rule across spreads") {
  for (double a : {0.05, 0.5, 2.0}) {
    const PhotonState psi = gaussian_state(a);
    const double jz = inner_product(psi, apply_observable(Observable::Jz, psi)).real();
    CHECK(std::abs(jz - 1.0) <= 1e-8);
  }
}

TEST_CASE("cumulants: eigenstate, oracle cross-check, excess positivity") {
  const PhotonState psi01 = gaussian_state(0.1);
  {
    const CumulantRecord r = mean_and_variance(Observable::Helicity, psi01, VarianceMode::Unsharp);
    CHECK(std::abs(r.mean - 1.0) <= 1e-10);
    CHECK(std::abs(r.variance) <= 1e-10);
    const CumulantRecord rs = mean_and_variance(Observable::Helicity, psi01, VarianceMode::Sharp);
    CHECK(std::abs(rs.variance) <= 1e-10);
  }
  {
    const CumulantRecord r = mean_and_variance(Observable::Sz, psi01, VarianceMode::Unsharp);
    // frozen high-precision value of f(0.1) and the independent Simpson oracle
    CHECK(std::abs(r.mean - 0.80901211018187835) <= 1e-6);
    CHECK(std::abs(r.mean - simpson_moment(0.1, 1)) <= 1e-6);
  }
  for (double a : {0.1, 0.5, 1.0}) {
    const PhotonState psi = gaussian_state(a);
    const double vu = mean_and_variance(Observable::Sz, psi, VarianceMode::Unsharp).variance;
    const double vs = mean_and_variance(Observable::Sz, psi, VarianceMode::Sharp).variance;
    CHECK(vu - vs > 0.0);
    CHECK(std::abs((vu - vs) - variance_excess(Observable::Sz, psi)) <= 1e-12);
  }

  PhotonState scaled = psi01;
  scaled *= 2.0;
  CHECK_THROWS_AS(mean_and_variance(Observable::Sz, scaled, VarianceMode::Unsharp),
                  NotNormalized);
}

TEST_CASE("projecting the canonical operators yields the non-canonical ones") {
  // pi S_z pi = S'_z pi and pi L_z pi = L'_z pi: the transversality-projected
  // canonical components coincide with the sharp decomposition on physical
  // states, which is why the sharpened variances of the two agree.
  const PhotonState psi = gaussian_state(0.5);
  {
    const PhotonState lhs = apply_projector(apply_observable(Observable::Sz, psi));
    const PhotonState rhs = apply_observable(Observable::SzPrime, psi);
    CHECK(max_amp_diff(lhs, rhs) <= 1e-12);
  }
  {
    const PhotonState lhs = apply_projector(apply_observable(Observable::Lz, psi));
    const PhotonState rhs = apply_observable(Observable::LzPrime, psi);
    CHECK(max_amp_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("both decompositions sum to the same total") {
  const PhotonState psi = gaussian_state(0.3);
  const double lz = mean_and_variance(Observable::Lz, psi, VarianceMode::Unsharp).mean;
  const double sz = mean_and_variance(Observable::Sz, psi, VarianceMode::Unsharp).mean;
  const double lpz = mean_and_variance(Observable::LzPrime, psi, VarianceMode::Sharp).mean;
  const double spz = mean_and_variance(Observable::SzPrime, psi, VarianceMode::Sharp).mean;
  const double jz = mean_and_variance(Observable::Jz, psi, VarianceMode::Sharp).mean;
  CHECK(std::abs(lz + sz - jz) <= 1e-10);
  CHECK(std::abs(lpz + spz - jz) <= 1e-10);
}

TEST_CASE("linearity of operator application") {
  const auto grid = SphericalGrid::build(auto_grid_spec(0.2));
  const PhotonState a = gaussian_state(0.2, grid);
  PhotonState b = apply_observable(Observable::SzPrime, a);  // some other physical-ish state
  const cplx alpha(0.7, -0.4);
  PhotonState combo = a;
  combo *= alpha;
  combo += b;
  for (Observable o : {Observable::Lz, Observable::Sz, Observable::LzPrime}) {
    const PhotonState lhs = apply_observable(o, combo);
    PhotonState rhs = apply_observable(o, a);
    rhs *= alpha;
    rhs += apply_observable(o, b);
    CHECK(max_amp_diff(lhs, rhs) <= 1e-13);
  }
}

TEST_CASE("state serialization round trip is bit exact") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "photam_state_test.dat";
  const PhotonState psi = gaussian_state(0.1);
  save_state(psi, path.string());
  const PhotonState back = load_state(path.string());
  CHECK(back.grid().spec() == psi.grid().spec());
  CHECK(back.meta().kind == psi.meta().kind);
  CHECK(back.raw().size() == psi.raw().size());
  bool exact = true;
  for (std::size_t i = 0; i < psi.raw().size(); ++i) {
    exact = exact && psi.raw()[i].real() == back.raw()[i].real() &&
            psi.raw()[i].imag() == back.raw()[i].imag();
  }
  CHECK(exact);
  CHECK(std::abs(norm2(back) - norm2(psi)) <= 1e-12);

  // truncated file is rejected
  const fs::path trunc = fs::temp_directory_path() / "photam_state_trunc.dat";
  {
    std::ifstream in(path);
    std::ofstream out(trunc);
    std::string line;
    for (int i = 0; i < 40 && std::getline(in, line); ++i) out << line << "\n";
  }
  CHECK_THROWS_AS(load_state(trunc.string()), FormatError);
  fs::remove(path);
  fs::remove(trunc);
}

TEST_SUITE_END();

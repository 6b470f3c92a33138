#include "photam/grid.hpp"

#include <cmath>

#include "photam/errors.hpp"

namespace photam {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::shared_ptr<const SphericalGrid> SphericalGrid::build(const GridSpec& spec) {
  if (spec.n_radial < 8 || spec.n_polar < 8) throw TooFewNodes("need n_radial, n_polar >= 8");
  if (spec.n_azimuthal < 16 || spec.n_azimuthal % 2 != 0)
    throw TooFewNodes("need n_azimuthal >= 16 and even");
  if (!(spec.p_min >= 0.0) || !(spec.p_min < spec.p_max))
    throw InvalidWindow("need 0 <= p_min < p_max");

  auto g = std::make_shared<SphericalGrid>();
  g->spec_ = spec;

  std::vector<double> x, w;
  gauss_legendre(spec.n_radial, x, w);
  g->p_.resize(spec.n_radial);
  g->wp_.resize(spec.n_radial);
  const double half = 0.5 * (spec.p_max - spec.p_min);
  const double mid = 0.5 * (spec.p_max + spec.p_min);
  for (int i = 0; i < spec.n_radial; ++i) {
    g->p_[i] = mid + half * x[i];
    g->wp_[i] = half * w[i];
  }

  gauss_legendre(spec.n_polar, g->cos_, g->wc_);
  g->theta_.resize(spec.n_polar);
  g->sin_.resize(spec.n_polar);
  for (int i = 0; i < spec.n_polar; ++i) {
    g->theta_[i] = std::acos(g->cos_[i]);
    g->sin_[i] = std::sqrt(1.0 - g->cos_[i] * g->cos_[i]);
  }

  g->phi_.resize(spec.n_azimuthal);
  for (int i = 0; i < spec.n_azimuthal; ++i)
    g->phi_[i] = 2.0 * M_PI * i / spec.n_azimuthal;
  g->wphi_ = 2.0 * M_PI / spec.n_azimuthal;

  g->dphi_ = spectral_derivative_matrix(spec.n_azimuthal);

  return g;
}

std::vector<cplx> spectral_derivative_matrix(int n) {
  // D = F^{-1} diag(i m) F without the Nyquist mode; circulant, so only the
  // first row is computed.
  std::vector<cplx> row(n);
  for (int d = 0; d < n; ++d) {
    cplx acc(0.0, 0.0);
    for (int m = -n / 2 + 1; m <= n / 2 - 1; ++m) {
      const double ang = 2.0 * M_PI * m * d / n;
      acc += cplx(std::cos(ang), std::sin(ang)) * cplx(0.0, m);
    }
    row[d] = acc * (1.0 / n);
  }
  std::vector<cplx> out(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out[static_cast<std::size_t>(j) * n + k] = row[(j - k + n) % n];
  return out;
}

double SphericalGrid::measure_total() const {
  double s = 0.0;
  for (int ip = 0; ip < spec_.n_radial; ++ip) s += p_[ip] * wp_[ip];
  double c = 0.0;
  for (int ic = 0; ic < spec_.n_polar; ++ic) c += wc_[ic];
  return s * c * 2.0 * M_PI;
}

GridSpec auto_grid_spec(double a) {
  if (!(a > 0.0)) throw NonPositiveA();
  const double sigma = std::sqrt(2.0 * a);
  GridSpec spec;
  spec.p_min = std::max(0.0, 1.0 - 10.0 * sigma);
  spec.p_max = 1.0 + 10.0 * sigma;
  // The cos integrand carries exp(p cos / 2a); Gauss-Legendre resolves e^{kc}
  // once n exceeds ~0.7 k, sized here with margin at the effective peak.
  const double kappa = (1.0 + 6.0 * sigma) / (2.0 * a);
  spec.n_polar = std::max(48, static_cast<int>(std::ceil(0.8 * kappa)) + 24);
  spec.n_radial = 48;
  spec.n_azimuthal = 64;
  return spec;
}

}  // namespace photam

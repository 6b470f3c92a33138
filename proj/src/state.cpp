#include "photam/state.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "photam/parallel.hpp"

namespace photam {

PhotonState::PhotonState(std::shared_ptr<const SphericalGrid> grid, StateMeta meta)
    : grid_(std::move(grid)), amp_(3 * grid_->n_nodes(), cplx(0.0, 0.0)), meta_(meta) {}

namespace {

void require_same_grid(const PhotonState& a, const PhotonState& b) {
  if (a.grid_ptr() == b.grid_ptr()) return;
  if (!(a.grid().spec() == b.grid().spec())) throw GridMismatch();
}

}  // namespace

PhotonState& PhotonState::operator+=(const PhotonState& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += o.amp_[i];
  return *this;
}

PhotonState& PhotonState::operator-=(const PhotonState& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= o.amp_[i];
  return *this;
}

PhotonState& PhotonState::operator*=(cplx s) {
  for (auto& z : amp_) z *= s;
  return *this;
}

PhotonState gaussian_state(double a, std::shared_ptr<const SphericalGrid> grid) {
  if (!(a > 0.0)) throw NonPositiveA();
  const double sigma = std::sqrt(2.0 * a);
  const double lo = std::max(0.0, 1.0 - 10.0 * sigma);
  const double hi = 1.0 + 10.0 * sigma;
  const GridSpec& spec = grid->spec();
  if (spec.p_min > lo + 1e-12 || spec.p_max < hi - 1e-12)
    throw WindowTooNarrow("radial window must cover +-10 sigma around p0");

  PhotonState s(grid, StateMeta{"gaussian", a, true, false});
  const double norm_c = std::pow(4.0 * M_PI * a, -0.75);
  const int n_polar = spec.n_polar;
  const int n_phi = spec.n_azimuthal;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  parallel_for(grid->n_rings(), [&](std::size_t ring) {
    const int ip = static_cast<int>(ring) / n_polar;
    const int ic = static_cast<int>(ring) % n_polar;
    const double p = grid->radial_node(ip);
    const double c = grid->cos_node(ic);
    const double st = grid->sin_node(ic);
    const double r2 = p * p + 1.0 - 2.0 * p * c;
    const double g = std::sqrt(p) * norm_c * std::exp(-r2 / (8.0 * a));
    for (int iphi = 0; iphi < n_phi; ++iphi) {
      const double phi = grid->phi_node(iphi);
      const double cp = std::cos(phi), sp = std::sin(phi);
      // u_+ = e^{i phi} (e_theta + i e_phi)/sqrt(2)
      const cplx twist(cp, sp);
      const cplx ux = cplx(c * cp, -sp) * inv_sqrt2;
      const cplx uy = cplx(c * sp, cp) * inv_sqrt2;
      const cplx uz = cplx(-st, 0.0) * inv_sqrt2;
      const std::size_t node = grid->node_index(ip, ic, iphi);
      s.amp(node, 0) = g * twist * ux;
      s.amp(node, 1) = g * twist * uy;
      s.amp(node, 2) = g * twist * uz;
    }
  });
  return s;
}

PhotonState gaussian_state(double a) {
  return gaussian_state(a, SphericalGrid::build(auto_grid_spec(a)));
}

cplx inner_product(const PhotonState& lhs, const PhotonState& rhs) {
  require_same_grid(lhs, rhs);
  const SphericalGrid& g = lhs.grid();
  const int n_phi = g.n_phi();
  const double wphi = g.phi_weight();
  std::vector<cplx> ring_partial(g.n_rings());
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    cplx acc(0.0, 0.0);
    const std::size_t base = ring * n_phi;
    for (int iphi = 0; iphi < n_phi; ++iphi) {
      const std::size_t node = base + iphi;
      for (int c = 0; c < 3; ++c) acc += std::conj(lhs.amp(node, c)) * rhs.amp(node, c);
    }
    ring_partial[ring] = acc * (g.ring_weight(ring) * wphi);
  });
  return pairwise_sum(ring_partial);
}

double norm2(const PhotonState& s) { return inner_product(s, s).real(); }

double transversality_residual(const PhotonState& s) {
  const SphericalGrid& g = s.grid();
  std::vector<double> ring_max(g.n_rings(), 0.0);
  const int n_phi = g.n_phi();
  const double floor2 = 1e-280;
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    double worst = 0.0;
    for (int iphi = 0; iphi < n_phi; ++iphi) {
      const std::size_t node = ring * n_phi + iphi;
      const MomentumPoint x = g.point(node);
      const Vec3 n = x.unit();
      cplx pd(0.0, 0.0);
      double a2 = 0.0;
      for (int c = 0; c < 3; ++c) {
        pd += n[c] * s.amp(node, c);
        a2 += std::norm(s.amp(node, c));
      }
      if (a2 > floor2) worst = std::max(worst, std::abs(pd) / std::sqrt(a2));
    }
    ring_max[ring] = worst;
  });
  double m = 0.0;
  for (double v : ring_max) m = std::max(m, v);
  return m;
}

namespace {

// Pointwise matrices depend on (theta, phi) only; cache one matrix per
// angular node and sweep the radial index.
std::vector<Mat3c> angular_cache(const SphericalGrid& g, const MatrixField& field) {
  const int n_polar = g.spec().n_polar;
  const int n_phi = g.n_phi();
  std::vector<Mat3c> cache(static_cast<std::size_t>(n_polar) * n_phi);
  parallel_for(cache.size(), [&](std::size_t i) {
    const int ic = static_cast<int>(i) / n_phi;
    const int iphi = static_cast<int>(i) % n_phi;
    const MomentumPoint x =
        MomentumPoint::from_spherical(1.0, g.theta_node(ic), g.phi_node(iphi));
    cache[i] = field(x);
  });
  return cache;
}

PhotonState apply_cached(const std::vector<Mat3c>& cache, const PhotonState& s, bool extended) {
  const SphericalGrid& g = s.grid();
  const int n_polar = g.spec().n_polar;
  const int n_phi = g.n_phi();
  PhotonState out(s.grid_ptr(), s.meta());
  out.meta().extended = extended;
  out.meta().normalized = false;
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    const int ic = static_cast<int>(ring) % n_polar;
    for (int iphi = 0; iphi < n_phi; ++iphi) {
      const std::size_t node = ring * n_phi + iphi;
      const Mat3c& m = cache[static_cast<std::size_t>(ic) * n_phi + iphi];
      const cplx a0 = s.amp(node, 0), a1 = s.amp(node, 1), a2 = s.amp(node, 2);
      out.amp(node, 0) = m(0, 0) * a0 + m(0, 1) * a1 + m(0, 2) * a2;
      out.amp(node, 1) = m(1, 0) * a0 + m(1, 1) * a1 + m(1, 2) * a2;
      out.amp(node, 2) = m(2, 0) * a0 + m(2, 1) * a1 + m(2, 2) * a2;
    }
  });
  return out;
}

const SpinRepresentation& cart() { return spin_representation(SpinRep::Cartesian); }

}  // namespace

PhotonState apply_pointwise(const MatrixField& field, const PhotonState& s) {
  return apply_cached(angular_cache(s.grid(), field), s, /*extended=*/true);
}

PhotonState apply_projector(const PhotonState& s) {
  auto out = apply_cached(
      angular_cache(s.grid(), [](const MomentumPoint& x) { return transversal_projector(x); }),
      s, /*extended=*/false);
  return out;
}

PhotonState apply_Lz(const PhotonState& s) {
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  const std::vector<cplx>& D = g.phi_derivative_matrix();
  const cplx minus_i(0.0, -1.0);  // hbar = 1, L_z = -i d/dphi
  PhotonState out(s.grid_ptr(), s.meta());
  out.meta().extended = s.meta().extended;
  out.meta().normalized = false;
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    const std::size_t base = ring * n;
    for (int j = 0; j < n; ++j) {
      const cplx* row = &D[static_cast<std::size_t>(j) * n];
      cplx acc0(0.0, 0.0), acc1(0.0, 0.0), acc2(0.0, 0.0);
      for (int k = 0; k < n; ++k) {
        const cplx w = row[k];
        acc0 += w * s.amp(base + k, 0);
        acc1 += w * s.amp(base + k, 1);
        acc2 += w * s.amp(base + k, 2);
      }
      out.amp(base + j, 0) = minus_i * acc0;
      out.amp(base + j, 1) = minus_i * acc1;
      out.amp(base + j, 2) = minus_i * acc2;
    }
  });
  return out;
}

PhotonState apply_Lz_prime(const PhotonState& s) {
  PhotonState out = apply_Lz(s);
  const auto cache = angular_cache(s.grid(), [](const MomentumPoint& x) {
    return h_matrix_in(x, cart());
  });
  out += apply_cached(cache, s, false);
  out.meta().extended = s.meta().extended;
  return out;
}

const char* observable_name(Observable o) {
  switch (o) {
    case Observable::Lz: return "Lz";
    case Observable::Sz: return "Sz";
    case Observable::LzPrime: return "Lzprime";
    case Observable::SzPrime: return "Szprime";
    case Observable::Jz: return "Jz";
    case Observable::Helicity: return "helicity";
  }
  return "?";
}

PhotonState apply_observable(Observable o, const PhotonState& s) {
  switch (o) {
    case Observable::Lz:
      return apply_Lz(s);
    case Observable::Sz:
      return apply_pointwise([](const MomentumPoint&) { return cart()[2]; }, s);
    case Observable::SzPrime:
      return apply_pointwise(
          [](const MomentumPoint& x) { return s_prime_matrix(x, 2, cart()); }, s);
    case Observable::LzPrime:
      return apply_Lz_prime(s);
    case Observable::Jz: {
      PhotonState r = apply_Lz(s);
      r += apply_pointwise([](const MomentumPoint&) { return cart()[2]; }, s);
      return r;
    }
    case Observable::Helicity:
      return apply_pointwise([](const MomentumPoint& x) { return helicity_matrix(x, cart()); },
                             s);
  }
  throw Error("unknown observable");
}

CumulantRecord mean_and_variance(Observable o, const PhotonState& s, VarianceMode mode) {
  const double n2 = norm2(s);
  if (std::abs(n2 - 1.0) > 2e-6)  // |norm - 1| > 1e-6
    throw NotNormalized("norm^2 = " + std::to_string(n2));
  const PhotonState op = apply_observable(o, s);
  const double mean = inner_product(s, op).real();
  double second;
  if (mode == VarianceMode::Unsharp) {
    second = norm2(op);  // <psi, pi O^2 pi psi> with pi psi = psi
  } else {
    second = norm2(apply_projector(op));  // <psi, (pi O pi)^2 psi>
  }
  CumulantRecord rec;
  rec.observable = observable_name(o);
  rec.a = s.meta().a;
  rec.mean = mean;
  rec.variance = second - mean * mean;
  return rec;
}

double variance_excess(Observable o, const PhotonState& s) {
  const PhotonState op = apply_observable(o, s);
  return norm2(op) - norm2(apply_projector(op));
}

namespace {

void write_double(std::FILE* f, double v) { std::fprintf(f, "%.17g", v); }

}  // namespace

void save_state(const PhotonState& s, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path + " for writing");
  const GridSpec& sp = s.grid().spec();
  std::fprintf(f, "# photam-state v1\n");
  std::fprintf(f, "# grid: n_radial=%d n_polar=%d n_azimuthal=%d p_min=%.17g p_max=%.17g\n",
               sp.n_radial, sp.n_polar, sp.n_azimuthal, sp.p_min, sp.p_max);
  std::fprintf(f, "# representation: cartesian\n");
  std::fprintf(f, "# meta: kind=%s a=%.17g normalized=%d extended=%d\n", s.meta().kind.c_str(),
               s.meta().a, s.meta().normalized ? 1 : 0, s.meta().extended ? 1 : 0);
  std::fprintf(f, "# columns: p theta phi re_x im_x re_y im_y re_z im_z\n");
  for (std::size_t node = 0; node < s.grid().n_nodes(); ++node) {
    const MomentumPoint x = s.grid().point(node);
    write_double(f, x.p);
    std::fprintf(f, " ");
    write_double(f, x.theta);
    std::fprintf(f, " ");
    write_double(f, x.phi);
    for (int c = 0; c < 3; ++c) {
      std::fprintf(f, " ");
      write_double(f, s.amp(node, c).real());
      std::fprintf(f, " ");
      write_double(f, s.amp(node, c).imag());
    }
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

PhotonState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "# photam-state v1")
    throw FormatError("missing photam-state header");
  GridSpec sp;
  if (!std::getline(in, line)) throw FormatError("truncated header");
  if (std::sscanf(line.c_str(), "# grid: n_radial=%d n_polar=%d n_azimuthal=%d p_min=%lg p_max=%lg",
                  &sp.n_radial, &sp.n_polar, &sp.n_azimuthal, &sp.p_min, &sp.p_max) != 5)
    throw FormatError("bad grid header: " + line);
  if (!std::getline(in, line) || line != "# representation: cartesian")
    throw FormatError("unsupported representation");
  StateMeta meta;
  if (!std::getline(in, line)) throw FormatError("truncated header");
  {
    char kind[128] = {0};
    int normalized = 0, extended = 0;
    if (std::sscanf(line.c_str(), "# meta: kind=%127s a=%lg normalized=%d extended=%d", kind,
                    &meta.a, &normalized, &extended) != 4)
      throw FormatError("bad meta header: " + line);
    meta.kind = kind;
    meta.normalized = normalized != 0;
    meta.extended = extended != 0;
  }
  if (!std::getline(in, line) || line.rfind("# columns:", 0) != 0)
    throw FormatError("missing column header");

  PhotonState s(SphericalGrid::build(sp), meta);
  for (std::size_t node = 0; node < s.grid().n_nodes(); ++node) {
    if (!std::getline(in, line)) throw FormatError("truncated data section");
    double p, th, ph, re[3], im[3];
    if (std::sscanf(line.c_str(), "%lg %lg %lg %lg %lg %lg %lg %lg %lg", &p, &th, &ph, &re[0],
                    &im[0], &re[1], &im[1], &re[2], &im[2]) != 9)
      throw FormatError("bad data row: " + line);
    const MomentumPoint x = s.grid().point(node);
    if (p != x.p || th != x.theta || ph != x.phi)
      throw FormatError("node coordinates disagree with the declared grid");
    for (int c = 0; c < 3; ++c) s.amp(node, c) = cplx(re[c], im[c]);
  }
  return s;
}

}  // namespace photam

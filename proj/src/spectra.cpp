#include "photam/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "photam/parallel.hpp"

namespace photam {

namespace {

const SpinRepresentation& diag_rep() { return spin_representation(SpinRep::SzDiagonal); }

void require_normalized(const PhotonState& s) {
  const double n2 = norm2(s);
  if (std::abs(n2 - 1.0) > 2e-6) throw NotNormalized("norm^2 = " + std::to_string(n2));
}

// Deterministic merge of per-ring partial accumulators: acc is ring-major
// [ring][slot]; each slot is pairwise-summed over rings in index order.
std::vector<double> merge_rings(const std::vector<double>& acc, std::size_t nrings,
                                std::size_t nslots) {
  std::vector<double> out(nslots), scratch(nrings);
  for (std::size_t b = 0; b < nslots; ++b) {
    for (std::size_t r = 0; r < nrings; ++r) scratch[r] = acc[r * nslots + b];
    out[b] = pairwise_sum(scratch);
  }
  return out;
}

int bin_of(const std::vector<double>& edges, double x) {
  if (x < edges.front() || x > edges.back()) return -1;
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  int b = static_cast<int>(it - edges.begin()) - 1;
  if (b == static_cast<int>(edges.size()) - 1) --b;  // top edge inclusive
  return b;
}

void validate_edges(const std::vector<double>& edges, double lo_cover, double hi_cover) {
  if (edges.size() < 2) throw BadBins("need at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw BadBins("edges must increase strictly");
  if (edges.front() > lo_cover + 1e-12 || edges.back() < hi_cover - 1e-12)
    throw BadBins("edges must cover the outcome range");
}

DistributionTable make_binned(const std::string& name, double a,
                              const std::vector<double>& edges, const std::vector<double>& mass,
                              const std::vector<double>& xsum, const std::vector<double>& x2sum,
                              double deficit) {
  DistributionTable t;
  t.kind = TableKind::Binned;
  t.observable = name;
  t.a = a;
  t.edges = edges;
  const std::size_t nb = edges.size() - 1;
  t.prob.resize(nb);
  t.outcome_mean.resize(nb);
  t.outcome_sqmean.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    t.prob[b] = std::max(0.0, mass[b]);
    if (mass[b] > 0.0) {
      t.outcome_mean[b] = xsum[b] / mass[b];
      t.outcome_sqmean[b] = x2sum[b] / mass[b];
    } else {
      t.outcome_mean[b] = 0.5 * (edges[b] + edges[b + 1]);
      t.outcome_sqmean[b] = t.outcome_mean[b] * t.outcome_mean[b];
    }
  }
  t.mass_deficit = deficit;
  return t;
}

}  // namespace

double DistributionTable::total() const {
  double s = 0.0;
  for (double p : prob) s += p;
  return s;
}

double DistributionTable::moment(int k) const {
  if (kind == TableKind::DiscretePair)
    throw Error("moment of a joint table; take a marginal first");
  double s = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    double x;
    if (kind == TableKind::Discrete) {
      x = (k == 1) ? outcome[i] : std::pow(static_cast<double>(outcome[i]), k);
    } else {
      x = (k == 1) ? outcome_mean[i] : (k == 2 ? outcome_sqmean[i] : 0.0);
      if (k > 2) throw Error("binned tables carry first and second moments only");
    }
    s += prob[i] * x;
  }
  return s;
}

DistributionTable joint_povm_Lz_Sz(const PhotonState& s, int m_max) {
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  if (!(m_max >= 0 && m_max < n / 2)) throw BandLimitExceeded("need m_max < n_azimuthal / 2");
  require_normalized(s);

  const Mat3c V = diag_rep().v_matrix;
  const int nm = 2 * m_max + 1;
  const std::size_t nslots = static_cast<std::size_t>(nm) * 3;
  const std::size_t nrings = g.n_rings();
  std::vector<double> acc(nrings * nslots, 0.0);

  parallel_for(nrings, [&](std::size_t ring) {
    std::vector<cplx> vpsi(static_cast<std::size_t>(n) * 3);
    for (int k = 0; k < n; ++k) {
      const std::size_t node = ring * n + k;
      const Vec3c a{{s.amp(node, 0), s.amp(node, 1), s.amp(node, 2)}};
      const Vec3c va = V * a;
      for (int c = 0; c < 3; ++c) vpsi[static_cast<std::size_t>(k) * 3 + c] = va[c];
    }
    const double w = g.ring_weight(ring);
    const double scale = 2.0 * M_PI / (static_cast<double>(n) * n);  // |sqrt(2pi)/n|^2
    double* out = &acc[ring * nslots];
    for (int mi = 0; mi < nm; ++mi) {
      const int m = mi - m_max;
      cplx c0(0, 0), c1(0, 0), c2(0, 0);
      for (int k = 0; k < n; ++k) {
        const double ang = -2.0 * M_PI * m * k / n;
        const cplx e(std::cos(ang), std::sin(ang));
        c0 += e * vpsi[static_cast<std::size_t>(k) * 3 + 0];
        c1 += e * vpsi[static_cast<std::size_t>(k) * 3 + 1];
        c2 += e * vpsi[static_cast<std::size_t>(k) * 3 + 2];
      }
      out[static_cast<std::size_t>(mi) * 3 + 0] = w * scale * std::norm(c0);
      out[static_cast<std::size_t>(mi) * 3 + 1] = w * scale * std::norm(c1);
      out[static_cast<std::size_t>(mi) * 3 + 2] = w * scale * std::norm(c2);
    }
  });

  const std::vector<double> mass = merge_rings(acc, nrings, nslots);
  DistributionTable t;
  t.kind = TableKind::DiscretePair;
  t.observable = "joint_Lz_Sz";
  t.a = s.meta().a;
  for (int mi = 0; mi < nm; ++mi)
    for (int si = 0; si < 3; ++si) {
      t.m_label.push_back(mi - m_max);
      t.ms_label.push_back(1 - si);
      t.prob.push_back(std::max(0.0, mass[static_cast<std::size_t>(mi) * 3 + si]));
    }
  t.mass_deficit = norm2(s) - t.total();
  if (t.mass_deficit > 1e-6)
    throw BandLimitExceeded("mass outside |m| <= " + std::to_string(m_max) + ": " +
                            std::to_string(t.mass_deficit));
  return t;
}

DistributionTable marginal(const DistributionTable& joint, MarginalKind which) {
  if (joint.kind != TableKind::DiscretePair) throw Error("marginal needs a joint table");
  DistributionTable t;
  t.kind = TableKind::Discrete;
  t.a = joint.a;
  t.mass_deficit = joint.mass_deficit;
  std::vector<int> labels;
  for (std::size_t i = 0; i < joint.prob.size(); ++i) {
    const int lab = which == MarginalKind::OAM ? joint.m_label[i] : joint.ms_label[i];
    auto it = std::find(labels.begin(), labels.end(), lab);
    if (it == labels.end()) {
      labels.push_back(lab);
      t.outcome.push_back(lab);
      t.prob.push_back(joint.prob[i]);
    } else {
      t.prob[static_cast<std::size_t>(it - labels.begin())] += joint.prob[i];
    }
  }
  t.observable = which == MarginalKind::OAM ? "Lz" : "Sz";
  return t;
}

SzPrimeResult pvm_Sz_prime(const PhotonState& s, const std::vector<double>& edges) {
  validate_edges(edges, -1.0, 1.0);
  require_normalized(s);
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  const int n_polar = g.spec().n_polar;
  const std::size_t nb = edges.size() - 1;
  const std::size_t nrings = g.n_rings();
  // slots: [helicity(2)][bin][mass, xsum, x2sum]
  const std::size_t nslots = 2 * nb * 3;
  std::vector<double> acc(nrings * nslots, 0.0);

  parallel_for(nrings, [&](std::size_t ring) {
    const int ic = static_cast<int>(ring) % n_polar;
    const double c = g.cos_node(ic);
    const double w = g.ring_weight(ring) * g.phi_weight();
    double* out = &acc[ring * nslots];
    for (int k = 0; k < n; ++k) {
      const std::size_t node = ring * n + k;
      const MomentumPoint x = g.point(node);
      const HelicityPair h = helicity_vectors(x);
      const Vec3c a{{s.amp(node, 0), s.amp(node, 1), s.amp(node, 2)}};
      const double mp = std::norm(h.plus.dot(a));
      const double mm = std::norm(h.minus.dot(a));
      const double xp = c, xm = -c;
      const int bp = bin_of(edges, xp), bm = bin_of(edges, xm);
      if (bp >= 0) {
        double* slot = out + (0 * nb + bp) * 3;
        slot[0] += w * mp;
        slot[1] += w * mp * xp;
        slot[2] += w * mp * xp * xp;
      }
      if (bm >= 0) {
        double* slot = out + (1 * nb + bm) * 3;
        slot[0] += w * mm;
        slot[1] += w * mm * xm;
        slot[2] += w * mm * xm * xm;
      }
    }
  });

  const std::vector<double> merged = merge_rings(acc, nrings, nslots);
  std::vector<double> mass_p(nb), xs_p(nb), x2_p(nb), mass_m(nb), xs_m(nb), x2_m(nb);
  std::vector<double> mass(nb), xs(nb), x2(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    mass_p[b] = merged[(0 * nb + b) * 3 + 0];
    xs_p[b] = merged[(0 * nb + b) * 3 + 1];
    x2_p[b] = merged[(0 * nb + b) * 3 + 2];
    mass_m[b] = merged[(1 * nb + b) * 3 + 0];
    xs_m[b] = merged[(1 * nb + b) * 3 + 1];
    x2_m[b] = merged[(1 * nb + b) * 3 + 2];
    mass[b] = mass_p[b] + mass_m[b];
    xs[b] = xs_p[b] + xs_m[b];
    x2[b] = x2_p[b] + x2_m[b];
  }
  const double a = s.meta().a;
  SzPrimeResult r;
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) total += mass[b];
  const double deficit = norm2(s) - total;
  r.table = make_binned("Szprime", a, edges, mass, xs, x2, deficit);
  r.plus = make_binned("Szprime_helicity_plus", a, edges, mass_p, xs_p, x2_p, 0.0);
  r.minus = make_binned("Szprime_helicity_minus", a, edges, mass_m, xs_m, x2_m, 0.0);
  return r;
}

namespace {

void fix_vec_phase(Vec3c& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  const double m = std::abs(v[imax]);
  if (m == 0.0) return;
  const cplx ph = v[imax] / m;
  for (std::size_t i = 0; i < 3; ++i) v[i] *= std::conj(ph);
}

// Channel targets from the helicity fields: c_j is proportional to
// V h_{-j}(theta, 0) for j = +-1 and to V e3 for j = 0. Used to complete the
// labeling by continuity inside the degenerate window around cos(theta) = 0.
std::array<Vec3c, 3> structural_channels(double theta) {
  const MomentumPoint x = MomentumPoint::from_spherical(1.0, theta, 0.0);
  const HelicityPair h = helicity_vectors(x);
  const FrameTriad f = intrinsic_frame(x);
  const Mat3c V = diag_rep().v_matrix;
  std::array<Vec3c, 3> c;
  c[0] = V * h.plus;                 // j = -1
  c[1] = V * Vec3c::from_real(f.e3); // j = 0 (longitudinal)
  c[2] = V * h.minus;                // j = +1
  for (auto& v : c) fix_vec_phase(v);
  return c;
}

}  // namespace

LzPrimeBasis build_Lz_prime_basis(const std::vector<double>& cos_nodes) {
  LzPrimeBasis basis;
  basis.nodes.resize(cos_nodes.size());
  const int nring = 32;
  const std::vector<cplx> D = spectral_derivative_matrix(nring);

  // Exceptions may not unwind out of an OpenMP region; capture and rethrow.
  std::vector<std::exception_ptr> errors(cos_nodes.size());
  parallel_for(cos_nodes.size(), [&](std::size_t idx) {
   try {
    const double c = cos_nodes[idx];
    const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
    if (st < 1e-12) throw PolarSingularity("L'_z basis needs nodes away from the poles");
    const double theta = std::acos(c);
    LzPrimeBasis::Node node;
    node.cos_theta = c;

    const EigenSystem3 es = hermitian_eigensystem(h_matrix(theta, 0.0));
    node.lambda = es.values;
    node.v = es.vectors;

    // v_s(theta, phi) = diag(1, e^{i phi}, e^{2 i phi}) v_s(theta, 0); G is
    // evaluated spectrally on an internal phi ring and is phi-independent.
    std::array<std::array<cplx, 3>, 3> vring[32];  // [k][component][s]
    for (int k = 0; k < nring; ++k) {
      const double phi = 2.0 * M_PI * k / nring;
      for (int comp = 0; comp < 3; ++comp) {
        const double ang = comp * phi;
        const cplx ph(std::cos(ang), std::sin(ang));
        for (int sv = 0; sv < 3; ++sv) vring[k][comp][sv] = ph * node.v[sv][comp];
      }
    }
    Mat3c G = Mat3c::zero();
    for (int k = 0; k < nring; ++k) {
      // derivative of each component series at node k
      Mat3c gk;
      for (int r = 0; r < 3; ++r)
        for (int sv = 0; sv < 3; ++sv) {
          cplx dv[3];
          for (int comp = 0; comp < 3; ++comp) {
            cplx accd(0, 0);
            const cplx* row = &D[static_cast<std::size_t>(k) * nring];
            for (int l = 0; l < nring; ++l) accd += row[l] * vring[l][comp][sv];
            dv[comp] = accd;
          }
          cplx g(0, 0);
          for (int comp = 0; comp < 3; ++comp) g += std::conj(vring[k][comp][r]) * dv[comp];
          gk(r, sv) = g;
        }
      G = G + gk * (1.0 / nring);
    }
    node.G = G;
    node.M = G * cplx(0.0, -1.0) + Mat3c::diag(node.lambda[0], node.lambda[1], node.lambda[2]);
    if (node.M.hermitian_defect() > 1e-12 * std::max(1.0, node.M.max_abs()))
      throw LabelAssignmentAmbiguous("M(theta) not Hermitian");

    const EigenSystem3 em = hermitian_eigensystem(node.M);
    const double deg_window = 1e-3;
    node.degenerate = std::abs(c) < deg_window;
    if (!node.degenerate) {
      // least-squares assignment over the 6 permutations of j = -1, 0, +1
      static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      double best = 1e300;
      int best_p = 0;
      for (int p = 0; p < 6; ++p) {
        double err = 0.0;
        for (int j = -1; j <= 1; ++j) {
          const double d = em.values[perms[p][j + 1]] - (1.0 + j * c);
          err += d * d;
        }
        if (err < best) {
          best = err;
          best_p = p;
        }
      }
      double worst = 0.0;
      for (int j = -1; j <= 1; ++j)
        worst = std::max(worst, std::abs(em.values[perms[best_p][j + 1]] - (1.0 + j * c)));
      if (worst > 1e-6)
        throw LabelAssignmentAmbiguous("M eigenvalues not within 1e-6 of {1 + j cos}: worst " +
                                       std::to_string(worst));
      for (int j = -1; j <= 1; ++j) {
        node.mu[j + 1] = em.values[perms[best_p][j + 1]];
        node.m_hat[j + 1] = em.vectors[perms[best_p][j + 1]];
      }
    } else {
      // Triple degeneracy at cos(theta) = 0: labels by continuity, realized
      // through the structural channel targets.
      const auto targets = structural_channels(theta);
      for (int j = -1; j <= 1; ++j) {
        Vec3c mh;
        for (int sv = 0; sv < 3; ++sv) mh[sv] = node.v[sv].dot(targets[j + 1]);
        fix_vec_phase(mh);
        node.m_hat[j + 1] = mh * (1.0 / mh.norm());
        node.mu[j + 1] = 1.0 + j * c;
        const Vec3c res = node.M * node.m_hat[j + 1] - node.m_hat[j + 1] * node.mu[j + 1];
        if (res.norm() > std::max(1e-6, 3.0 * std::abs(c)))
          throw LabelAssignmentAmbiguous("degenerate-window completion failed");
      }
    }
    for (int j = -1; j <= 1; ++j) {
      Vec3c ch;
      for (int comp = 0; comp < 3; ++comp) {
        cplx accv(0, 0);
        for (int sv = 0; sv < 3; ++sv) accv += node.m_hat[j + 1][sv] * node.v[sv][comp];
        ch[comp] = accv;
      }
      node.channel[j + 1] = ch;
    }
    basis.nodes[idx] = node;
   } catch (...) {
    errors[idx] = std::current_exception();
   }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return basis;
}

LzPrimeBasis build_Lz_prime_basis(const SphericalGrid& grid) {
  return build_Lz_prime_basis(grid.cos_nodes());
}

DistributionTable pvm_Lz_prime(const PhotonState& s, const LzPrimeOptions& opt,
                               const std::vector<double>& edges) {
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  const int n_polar = g.spec().n_polar;
  if (!(opt.n_max >= 0 && opt.n_max < n / 2 - 2))
    throw BandLimitExceeded("need n_max < n_azimuthal / 2 - 2");
  validate_edges(edges, -(opt.n_max + 1.0), opt.n_max + 1.0);
  require_normalized(s);

  const LzPrimeBasis basis = build_Lz_prime_basis(g);
  const Mat3c V = diag_rep().v_matrix;
  const int nq = 2 * opt.n_max + 1;
  const std::size_t nb = edges.size() - 1;
  const std::size_t nslots = nb * 3 + 1;  // bins (mass, xsum, x2sum) + j0 mass
  const std::size_t nrings = g.n_rings();
  std::vector<double> acc(nrings * nslots, 0.0);

  parallel_for(nrings, [&](std::size_t ring) {
    const int ic = static_cast<int>(ring) % n_polar;
    const LzPrimeBasis::Node& node = basis.nodes[ic];
    const double c = node.cos_theta;
    const double w = g.ring_weight(ring);
    const double scale = 2.0 * M_PI / (static_cast<double>(n) * n);
    double* out = &acc[ring * nslots];

    // d_j(phi_k) = c_j† Phi(phi_k)† V psi(phi_k)
    std::vector<cplx> d(static_cast<std::size_t>(n) * 3);
    for (int k = 0; k < n; ++k) {
      const double phi = g.phi_node(k);
      const std::size_t nd = ring * n + k;
      const Vec3c a{{s.amp(nd, 0), s.amp(nd, 1), s.amp(nd, 2)}};
      Vec3c va = V * a;
      for (int comp = 0; comp < 3; ++comp) {
        const double ang = -comp * phi;  // Phi†
        va[comp] *= cplx(std::cos(ang), std::sin(ang));
      }
      for (int j = -1; j <= 1; ++j)
        d[static_cast<std::size_t>(k) * 3 + (j + 1)] = node.channel[j + 1].dot(va);
    }
    for (int qi = 0; qi < nq; ++qi) {
      const int q = qi - opt.n_max;
      cplx aj[3] = {cplx(0, 0), cplx(0, 0), cplx(0, 0)};
      for (int k = 0; k < n; ++k) {
        const double ang = -2.0 * M_PI * (q - 1) * k / n;
        const cplx e(std::cos(ang), std::sin(ang));
        for (int j = 0; j < 3; ++j) aj[j] += e * d[static_cast<std::size_t>(k) * 3 + j];
      }
      for (int j = -1; j <= 1; ++j) {
        const double mass = w * scale * std::norm(aj[j + 1]);
        if (j == 0) {
          out[nb * 3] += mass;
          continue;
        }
        const double x = q + j * c;
        const int b = bin_of(edges, x);
        if (b < 0) continue;
        double* slot = out + static_cast<std::size_t>(b) * 3;
        slot[0] += mass;
        slot[1] += mass * x;
        slot[2] += mass * x * x;
      }
    }
  });

  const std::vector<double> merged = merge_rings(acc, nrings, nslots);
  std::vector<double> mass(nb), xs(nb), x2(nb);
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    mass[b] = merged[b * 3];
    xs[b] = merged[b * 3 + 1];
    x2[b] = merged[b * 3 + 2];
    total += mass[b];
  }
  const double j0_mass = merged[nb * 3];
  if (j0_mass > opt.leakage_tolerance)
    throw UnphysicalLeakage("j = 0 channel mass " + std::to_string(j0_mass));
  const double deficit = norm2(s) - total - j0_mass;
  if (deficit > opt.deficit_tolerance)
    throw BandLimitExceeded("mass outside |q| <= " + std::to_string(opt.n_max) + ": " +
                            std::to_string(deficit));
  DistributionTable t = make_binned("Lzprime", s.meta().a, edges, mass, xs, x2, deficit);
  t.j0_leakage = j0_mass;
  return t;
}

std::vector<double> default_edges(double lo, double hi) {
  const int per_unit = 64;
  const int nb = std::max(1, static_cast<int>(std::lround((hi - lo) * per_unit)));
  std::vector<double> e(nb + 1);
  for (int i = 0; i <= nb; ++i) e[i] = lo + (hi - lo) * i / nb;
  return e;
}

PhotonState apply_joint_effect(const PhotonState& s, int m, int ms) {
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  if (std::abs(m) >= n / 2) throw BandLimitExceeded("|m| must be < n_azimuthal / 2");
  if (ms < -1 || ms > 1) throw Error("m_s must be -1, 0 or +1");
  const int si = 1 - ms;
  const Mat3c V = diag_rep().v_matrix;
  Vec3c es;
  es[si] = 1.0;
  const Vec3c vdag_es = V.adjoint() * es;

  PhotonState out(s.grid_ptr(), s.meta());
  out.meta().normalized = false;
  out.meta().extended = false;
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    cplx amp(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      const std::size_t nd = ring * n + k;
      const Vec3c a{{s.amp(nd, 0), s.amp(nd, 1), s.amp(nd, 2)}};
      const Vec3c va = V * a;
      const double ang = -m * g.phi_node(k);
      amp += cplx(std::cos(ang), std::sin(ang)) * va[si];
    }
    amp *= std::sqrt(2.0 * M_PI) / n;  // int dphi e^{-im phi}/sqrt(2pi)
    for (int k = 0; k < n; ++k) {
      const std::size_t nd = ring * n + k;
      const MomentumPoint x = g.point(nd);
      const Vec3c dir = transversal_projector(x) * vdag_es;
      const double ang = m * g.phi_node(k);
      const cplx f = cplx(std::cos(ang), std::sin(ang)) / std::sqrt(2.0 * M_PI) * amp;
      for (int comp = 0; comp < 3; ++comp) out.amp(nd, comp) = dir[comp] * f;
    }
  });
  return out;
}

PhotonState apply_szprime_effect(const PhotonState& s, double lo, double hi) {
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  const int n_polar = g.spec().n_polar;
  PhotonState out(s.grid_ptr(), s.meta());
  out.meta().normalized = false;
  out.meta().extended = false;
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    const int ic = static_cast<int>(ring) % n_polar;
    const double c = g.cos_node(ic);
    const bool keep_p = (c >= lo && c < hi);
    const bool keep_m = (-c >= lo && -c < hi);
    for (int k = 0; k < n; ++k) {
      const std::size_t nd = ring * n + k;
      if (!keep_p && !keep_m) {
        out.amp(nd, 0) = out.amp(nd, 1) = out.amp(nd, 2) = 0.0;
        continue;
      }
      const MomentumPoint x = g.point(nd);
      const HelicityPair h = helicity_vectors(x);
      const Vec3c a{{s.amp(nd, 0), s.amp(nd, 1), s.amp(nd, 2)}};
      Vec3c r;
      if (keep_p) r = r + h.plus * h.plus.dot(a);
      if (keep_m) r = r + h.minus * h.minus.dot(a);
      for (int comp = 0; comp < 3; ++comp) out.amp(nd, comp) = r[comp];
    }
  });
  return out;
}

PhotonState apply_lzprime_effect(const PhotonState& s, double lo, double hi, int n_max) {
  const SphericalGrid& g = s.grid();
  const int n = g.n_phi();
  if (!(n_max >= 0 && n_max < n / 2 - 2))
    throw BandLimitExceeded("need n_max < n_azimuthal / 2 - 2");
  const int n_polar = g.spec().n_polar;
  const LzPrimeBasis basis = build_Lz_prime_basis(g);
  const Mat3c V = diag_rep().v_matrix;
  const Mat3c Vd = V.adjoint();
  const int nq = 2 * n_max + 1;

  PhotonState out(s.grid_ptr(), s.meta());
  out.meta().normalized = false;
  out.meta().extended = false;
  parallel_for(g.n_rings(), [&](std::size_t ring) {
    const int ic = static_cast<int>(ring) % n_polar;
    const LzPrimeBasis::Node& node = basis.nodes[ic];
    const double c = node.cos_theta;
    std::vector<cplx> d(static_cast<std::size_t>(n) * 2);
    for (int k = 0; k < n; ++k) {
      const double phi = g.phi_node(k);
      const std::size_t nd = ring * n + k;
      const Vec3c a{{s.amp(nd, 0), s.amp(nd, 1), s.amp(nd, 2)}};
      Vec3c va = V * a;
      for (int comp = 0; comp < 3; ++comp) {
        const double ang = -comp * phi;
        va[comp] *= cplx(std::cos(ang), std::sin(ang));
      }
      d[static_cast<std::size_t>(k) * 2 + 0] = node.channel[0].dot(va);  // j = -1
      d[static_cast<std::size_t>(k) * 2 + 1] = node.channel[2].dot(va);  // j = +1
    }
    std::vector<cplx> kept(static_cast<std::size_t>(nq) * 2, cplx(0, 0));
    for (int qi = 0; qi < nq; ++qi) {
      const int q = qi - n_max;
      cplx am(0, 0), ap(0, 0);
      for (int k = 0; k < n; ++k) {
        const double ang = -2.0 * M_PI * (q - 1) * k / n;
        const cplx e(std::cos(ang), std::sin(ang));
        am += e * d[static_cast<std::size_t>(k) * 2 + 0];
        ap += e * d[static_cast<std::size_t>(k) * 2 + 1];
      }
      const double xm = q - c, xp = q + c;
      if (xm >= lo && xm < hi) kept[static_cast<std::size_t>(qi) * 2 + 0] = am / double(n);
      if (xp >= lo && xp < hi) kept[static_cast<std::size_t>(qi) * 2 + 1] = ap / double(n);
    }
    for (int k = 0; k < n; ++k) {
      const double phi = g.phi_node(k);
      Vec3c r;
      for (int qi = 0; qi < nq; ++qi) {
        const int q = qi - n_max;
        const double ang = (q - 1) * phi;
        const cplx e(std::cos(ang), std::sin(ang));
        const cplx cm = kept[static_cast<std::size_t>(qi) * 2 + 0];
        const cplx cp = kept[static_cast<std::size_t>(qi) * 2 + 1];
        if (cm != cplx(0, 0)) r = r + node.channel[0] * (e * cm);
        if (cp != cplx(0, 0)) r = r + node.channel[2] * (e * cp);
      }
      for (int comp = 0; comp < 3; ++comp) {
        const double ang = comp * phi;  // Phi(phi)
        r[comp] *= cplx(std::cos(ang), std::sin(ang));
      }
      const Vec3c back = Vd * r;
      const std::size_t nd = ring * n + k;
      for (int comp = 0; comp < 3; ++comp) out.amp(nd, comp) = back[comp];
    }
  });
  return out;
}

std::vector<SweepEntry> sweep_a(const std::vector<double>& a_values, const GridOverride& grid) {
  std::vector<SweepEntry> out;
  out.reserve(a_values.size());
  for (double a : a_values) {
    SweepEntry e;
    e.a = a;
    try {
      GridSpec spec = auto_grid_spec(a);
      if (grid.n_radial > 0) spec.n_radial = grid.n_radial;
      if (grid.n_polar > 0) spec.n_polar = grid.n_polar;
      if (grid.n_azimuthal > 0) spec.n_azimuthal = grid.n_azimuthal;
      const PhotonState psi = gaussian_state(a, SphericalGrid::build(spec));
      e.records.push_back(mean_and_variance(Observable::Lz, psi, VarianceMode::Unsharp));
      e.records.push_back(mean_and_variance(Observable::Sz, psi, VarianceMode::Unsharp));
      e.records.push_back(mean_and_variance(Observable::LzPrime, psi, VarianceMode::Sharp));
      e.records.push_back(mean_and_variance(Observable::SzPrime, psi, VarianceMode::Sharp));
      e.records.push_back(mean_and_variance(Observable::Jz, psi, VarianceMode::Sharp));
      e.f_value = f_of_a(a);
      e.ok = true;
    } catch (const std::exception& ex) {
      e.ok = false;
      e.error = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace photam

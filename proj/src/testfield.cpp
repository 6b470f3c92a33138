#include "photam/testfield.hpp"

#include <cmath>

namespace photam {

std::uint64_t Rng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

namespace {

// Monomials p_x^i p_y^j p_z^k with i + j + k <= 3 (20 of them), listed in a
// fixed order together with their exponents.
struct Mono {
  int i, j, k;
};
constexpr Mono kMonomials[20] = {
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}, {1, 1, 0}, {1, 0, 1},
    {0, 2, 0}, {0, 1, 1}, {0, 0, 2}, {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0},
    {1, 1, 1}, {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}};

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

int SmoothTestField::monomial_count() { return 20; }

SmoothTestField SmoothTestField::random(Rng& rng) {
  SmoothTestField f;
  for (int c = 0; c < 3; ++c)
    for (int m = 0; m < 20; ++m)
      f.coeff_[c][m] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return f;
}

Vec3c SmoothTestField::value(const Vec3& p) const {
  const double r = p.norm();
  const double env = std::exp(-(r - 1.0) * (r - 1.0) / width_);
  Vec3c out;
  for (int c = 0; c < 3; ++c) {
    cplx acc(0.0, 0.0);
    for (int m = 0; m < 20; ++m) {
      const Mono& mo = kMonomials[m];
      acc += coeff_[c][m] * (ipow(p[0], mo.i) * ipow(p[1], mo.j) * ipow(p[2], mo.k));
    }
    out[c] = acc * env;
  }
  return out;
}

std::array<std::array<cplx, 3>, 3> SmoothTestField::gradient(const Vec3& p) const {
  const double r = p.norm();
  const double env = std::exp(-(r - 1.0) * (r - 1.0) / width_);
  // d env / d p_a = env * (-2 (r - 1)/width) * p_a / r
  const double denv = -2.0 * (r - 1.0) / (width_ * r);
  std::array<std::array<cplx, 3>, 3> out{};
  for (int c = 0; c < 3; ++c) {
    cplx poly(0.0, 0.0);
    cplx dpoly[3] = {cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    for (int m = 0; m < 20; ++m) {
      const Mono& mo = kMonomials[m];
      const double mx = ipow(p[0], mo.i), my = ipow(p[1], mo.j), mz = ipow(p[2], mo.k);
      poly += coeff_[c][m] * (mx * my * mz);
      if (mo.i > 0) dpoly[0] += coeff_[c][m] * (mo.i * ipow(p[0], mo.i - 1) * my * mz);
      if (mo.j > 0) dpoly[1] += coeff_[c][m] * (mo.j * mx * ipow(p[1], mo.j - 1) * mz);
      if (mo.k > 0) dpoly[2] += coeff_[c][m] * (mo.k * mx * my * ipow(p[2], mo.k - 1));
    }
    for (int a = 0; a < 3; ++a)
      out[c][a] = env * (dpoly[a] + poly * (denv * p[a]));
  }
  return out;
}

namespace {

Vec3c p_cross_grad(const VectorField& g, int k, const Vec3& p, double h) {
  // central-difference gradient columns
  std::array<Vec3c, 3> d;
  for (int a = 0; a < 3; ++a) {
    Vec3 pp = p, pm = p;
    pp[a] += h;
    pm[a] -= h;
    const Vec3c fp = g(pp), fm = g(pm);
    d[a] = (fp - fm) * (1.0 / (2.0 * h));
  }
  const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  Vec3c out;
  for (int c = 0; c < 3; ++c) out[c] = p[k1] * d[k2][c] - p[k2] * d[k1][c];
  return out;
}

}  // namespace

Vec3c apply_L_fd(const VectorField& g, int k, const Vec3& p, double h) {
  const Vec3c a1 = p_cross_grad(g, k, p, h);
  const Vec3c a2 = p_cross_grad(g, k, p, 0.5 * h);
  const Vec3c rich = (a2 * 4.0 - a1) * (1.0 / 3.0);
  return rich * cplx(0.0, -1.0);  // hbar = 1
}

Vec3c apply_L_analytic(const SmoothTestField& f, int k, const Vec3& p) {
  const auto grad = f.gradient(p);
  const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  Vec3c out;
  for (int c = 0; c < 3; ++c)
    out[c] = cplx(0.0, -1.0) * (p[k1] * grad[c][k2] - p[k2] * grad[c][k1]);
  return out;
}

}  // namespace photam

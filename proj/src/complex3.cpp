#include "photam/complex3.hpp"

#include <algorithm>

namespace photam {

namespace {

// One complex Jacobi rotation zeroing A(p,q), accumulated into Q (A <- U†AU,
// Q <- QU). Assumes A Hermitian with real diagonal.
void jacobi_rotate(Mat3c& A, Mat3c& Q, std::size_t p, std::size_t q) {
  const cplx apq = A(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = apq / r;  // e^{i beta}
  const double app = A(p, p).real();
  const double aqq = A(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // U = I except U(p,p)=c, U(q,q)=c, U(p,q)=s e^{i beta}, U(q,p)=-s e^{-i beta}
  Mat3c U = Mat3c::identity();
  U(p, p) = c;
  U(q, q) = c;
  U(p, q) = s * phase;
  U(q, p) = -s * std::conj(phase);

  A = U.adjoint() * A * U;
  // Clean the eliminated entry and enforce a real diagonal to stop roundoff
  // drift across sweeps.
  A(p, q) = 0.0;
  A(q, p) = 0.0;
  for (std::size_t i = 0; i < 3; ++i) A(i, i) = cplx(A(i, i).real(), 0.0);
  Q = Q * U;
}

double offdiag2(const Mat3c& A) {
  return std::norm(A(0, 1)) + std::norm(A(0, 2)) + std::norm(A(1, 2));
}

void fix_phase(Vec3c& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  const double m = std::abs(v[imax]);
  if (m == 0.0) return;
  const cplx ph = v[imax] / m;
  for (std::size_t i = 0; i < 3; ++i) v[i] *= std::conj(ph);
  v[imax] = cplx(std::abs(v[imax]), 0.0);
}

}  // namespace

EigenSystem3 hermitian_eigensystem(const Mat3c& m) {
  const double scale = std::max(m.max_abs(), 1e-300);
  if (m.hermitian_defect() > 1e-10 * scale)
    throw NonHermitianInput("max|M - M^dag| = " + std::to_string(m.hermitian_defect()));

  // Symmetrize once so roundoff-level asymmetry cannot bias the sweeps.
  Mat3c A = (m + m.adjoint()) * 0.5;
  for (std::size_t i = 0; i < 3; ++i) A(i, i) = cplx(A(i, i).real(), 0.0);
  Mat3c Q = Mat3c::identity();

  const double stop = 1e-34 * scale * scale;
  for (int sweep = 0; sweep < 40 && offdiag2(A) > stop; ++sweep) {
    jacobi_rotate(A, Q, 0, 1);
    jacobi_rotate(A, Q, 0, 2);
    jacobi_rotate(A, Q, 1, 2);
  }

  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return A(i, i).real() < A(j, j).real(); });

  EigenSystem3 out;
  for (std::size_t k = 0; k < 3; ++k) {
    out.values[k] = A(idx[k], idx[k]).real();
    for (std::size_t r = 0; r < 3; ++r) out.vectors[k][r] = Q(r, idx[k]);
  }

  // Deterministic basis inside degenerate clusters: Gram-Schmidt in index
  // order (gap threshold per the smallalg contract).
  const double gap_tol = 1e-9;
  std::size_t c0 = 0;
  while (c0 < 3) {
    std::size_t c1 = c0 + 1;
    while (c1 < 3 && out.values[c1] - out.values[c1 - 1] < gap_tol) ++c1;
    for (std::size_t k = c0 + 1; k < c1; ++k) {
      Vec3c v = out.vectors[k];
      for (std::size_t j = c0; j < k; ++j) {
        const cplx ov = out.vectors[j].dot(v);
        v = v - out.vectors[j] * ov;
      }
      out.vectors[k] = v * (1.0 / v.norm());
    }
    c0 = c1;
  }

  for (auto& v : out.vectors) fix_phase(v);
  return out;
}

Mat3c matrix_exponential_antihermitian(const Mat3c& m) {
  const double scale = std::max(m.max_abs(), 1e-300);
  const Mat3c h = m * cplx(0.0, 1.0);  // iM, Hermitian when M is anti-Hermitian
  if (h.hermitian_defect() > 1e-10 * scale)
    throw NonAntiHermitianInput("max|M + M^dag| = " + std::to_string(h.hermitian_defect()));
  const EigenSystem3 es = hermitian_eigensystem(h);
  // exp(M) = exp(-iH) = sum_k e^{-i lambda_k} v_k v_k†
  Mat3c out = Mat3c::zero();
  for (std::size_t k = 0; k < 3; ++k) {
    const cplx f = std::exp(cplx(0.0, -es.values[k]));
    out = out + Mat3c::outer(es.vectors[k], es.vectors[k]) * f;
  }
  return out;
}

}  // namespace photam

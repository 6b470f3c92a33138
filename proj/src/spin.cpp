#include "photam/spin.hpp"

#include <cmath>

namespace photam {

double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) || (i == 2 && j == 0 && k == 1))
    return 1.0;
  return -1.0;
}

namespace {

std::array<Mat3c, 3> make_a_generators() {
  std::array<Mat3c, 3> a;
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m)
      for (int l = 0; l < 3; ++l) a[k](m, l) = levi_civita(k, m, l);
  return a;
}

SpinRepresentation make_sz_diagonal() {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  SpinRepresentation rep;
  rep.tag = SpinRep::SzDiagonal;
  Mat3c sx, sy, sz, v;
  sx(0, 1) = sx(1, 0) = sx(1, 2) = sx(2, 1) = r;
  sy(0, 1) = -I * r;
  sy(1, 0) = I * r;
  sy(1, 2) = -I * r;
  sy(2, 1) = I * r;
  sz = Mat3c::diag(1.0, 0.0, -1.0);
  v(0, 0) = r;
  v(0, 1) = -I * r;
  v(1, 2) = -1.0;
  v(2, 0) = -r;
  v(2, 1) = -I * r;
  rep.S = {sx, sy, sz};
  rep.v_matrix = v;
  return rep;
}

SpinRepresentation make_cartesian() {
  SpinRepresentation rep;
  rep.tag = SpinRep::Cartesian;
  const auto a = make_a_generators();
  for (int k = 0; k < 3; ++k) rep.S[k] = a[k] * cplx(0.0, -1.0);  // S_k = -i A_k
  rep.v_matrix = Mat3c::identity();
  return rep;
}

}  // namespace

const SpinRepresentation& spin_representation(SpinRep tag) {
  static const SpinRepresentation sz_diag = make_sz_diagonal();
  static const SpinRepresentation cart = make_cartesian();
  return tag == SpinRep::SzDiagonal ? sz_diag : cart;
}

const Mat3c& so3_generator(int k) {
  static const std::array<Mat3c, 3> a = make_a_generators();
  return a[static_cast<std::size_t>(k)];
}

}  // namespace photam

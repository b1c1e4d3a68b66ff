#include "diracosc/gamma_matrices.hpp"

namespace diracosc {

namespace {

GammaRep build() {
  using Eigen::Matrix2cd;
  const Complex i(0.0, 1.0);
  Matrix2cd id = Matrix2cd::Identity();
  std::array<Matrix2cd, 3> pauli;
  pauli[0] << 0, 1, 1, 0;
  pauli[1] << 0, -i, i, 0;
  pauli[2] << 1, 0, 0, -1;

  GammaRep rep;
  rep.gamma[0].setZero();
  rep.gamma[0].topLeftCorner<2, 2>() = id;
  rep.gamma[0].bottomRightCorner<2, 2>() = -id;
  for (int k = 0; k < 3; ++k) {
    Matrix4c g = Matrix4c::Zero();
    g.topRightCorner<2, 2>() = pauli[k];
    g.bottomLeftCorner<2, 2>() = -pauli[k];
    rep.gamma[k + 1] = g;
  }
  rep.beta = rep.gamma[0];
  for (int k = 0; k < 3; ++k) rep.alpha[k] = rep.gamma[0] * rep.gamma[k + 1];
  return rep;
}

}  // namespace

Matrix4c GammaRep::sigma(int mu, int nu) const {
  const Complex half_i(0.0, 0.5);
  return half_i * (gamma[mu] * gamma[nu] - gamma[nu] * gamma[mu]);
}

const GammaRep& dirac_matrices() {
  static const GammaRep rep = build();
  return rep;
}

}  // namespace diracosc

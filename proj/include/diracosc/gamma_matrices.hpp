#pragma once

#include <Eigen/Dense>
#include <array>

#include "diracosc/types.hpp"

namespace diracosc {

using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

/// Dirac matrices in the standard (Dirac) representation with metric
/// diag(+, -, -, -).
struct GammaRep {
  std::array<Matrix4c, 4> gamma;  // gamma^mu
  std::array<Matrix4c, 3> alpha;  // alpha_i = gamma^0 gamma^i, i = x, y, z
  Matrix4c beta;                  // gamma^0

  /// sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu]
  Matrix4c sigma(int mu, int nu) const;
};

/// Shared immutable instance.
const GammaRep& dirac_matrices();

/// Minkowski metric g^{mu nu} = g_{mu nu}.
inline double metric(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

inline Vector4c to_vector(const Spinor& s) { return Vector4c(s[0], s[1], s[2], s[3]); }

inline Spinor to_spinor(const Vector4c& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace diracosc

#pragma once

#include <complex>
#include <vector>

#include "diracosc/types.hpp"

namespace diracosc {

enum class QuadratureKind { gauss_hermite, mapped_radial, gauss_legendre };

/// How the weight function relates to the stored weights.
///   separate: sum_i w_i f(x_i) approximates  int f(x) W(x) dx
///   folded:   sum_i w_i f(x_i) approximates  int f(x) dx
/// W(x) = exp(-x^2) for gauss_hermite. Mapped rules always fold their
/// Jacobian, so they are always `folded`.
enum class WeightConvention { separate, folded };

struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::gauss_legendre;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  WeightConvention weight_convention = WeightConvention::folded;

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
/// Overflows for large n * x^2; use hermite_function there.
double hermite_h(int n, double x);

/// L2-normalised Hermite function h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)).
double hermite_function(int n, double x);

/// h_0(x) .. h_nmax(x) in one recurrence sweep.
std::vector<double> hermite_functions(int nmax, double x);

/// Associated Laguerre polynomial L_n^alpha(x).
double laguerre_l(int n, double alpha, double x);

/// Orthonormal complex spherical harmonic Y_l^mz(theta, phi), Condon-Shortley phase.
Complex spherical_harmonic(int l, int mz, double theta, double phi);

/// Spinor spherical harmonic for Dirac quantum number kappa and
/// z-projection g = two_g / 2.
///
/// kappa < 0 couples l = -kappa - 1 with j = l + 1/2, kappa > 0 couples
/// l = kappa with j = l - 1/2. The companion harmonic carrying l' is the
/// same function evaluated at -kappa.
Spinor2 spinor_spherical_harmonic(int kappa, int two_g, double theta, double phi);

double ln_gamma(double x);

/// Gauss-Hermite rule with `order` nodes for the weight exp(-x^2).
QuadratureRule gauss_hermite_rule(int order,
                                  WeightConvention conv = WeightConvention::separate);

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre_rule(int order, double a = -1.0, double b = 1.0);

/// Radial rule on r in (0, inf) for integrands of the form polynomial times
/// exp(-(r / length_scale)^2).
///
/// Gauss-Legendre nodes are mapped onto [0, R] with
/// R = length_scale * (sqrt(order / 4) + 7); beyond R every integrand of
/// degree <= order/2 is below double precision. Weights carry the Jacobian.
/// Relative error on int r^{2k} e^{-r^2} dr is below 1e-10 for k <= order/4
/// once order >= 32.
QuadratureRule radial_rule(int order, double length_scale);

/// Default quadrature order for integrals involving modes up to n_max.
inline int default_quadrature_order(int n_max) { return 2 * n_max + 32; }

}  // namespace diracosc

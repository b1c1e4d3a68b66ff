#pragma once

#include <vector>

#include "diracosc/gamma_matrices.hpp"
#include "diracosc/types.hpp"

/// Feynman propagator of the (1+1) Dirac oscillator field as a truncated
/// mode sum, with u_n = psi_n (n >= 0) and nu_n = psi_{-n} (n >= 1).
namespace diracosc::propagator {

enum class Space { coordinate, momentum, mixed };

struct PropagatorSample {
  Matrix4c value = Matrix4c::Zero();
  int cutoff = 0;
  Space space = Space::coordinate;
};

/// Raised when p0^2 comes within the pole guard of some p_n^2.
class PoleError : public NumericalError {
 public:
  PoleError(int n, double distance);
  int n() const { return n_; }
  double distance() const { return distance_; }

 private:
  int n_;
  double distance_;
};

/// i S^F(z, t; z', t') truncated at N:
///   Theta(dt)  sum_{n=0}^{N} u_n(z) ubar_n(z') e^{-i E_n dt}
/// - Theta(-dt) sum_{n=1}^{N} nu_n(z) nubar_n(z') e^{+i E_n dt}
/// with ubar = u^dagger gamma^0. At dt = 0 the particle ordering is used.
PropagatorSample coordinate_propagator(const OscParams& p, double z, double t, double zp,
                                       double tp, int cutoff);

/// <0| T psi(z,t) psibar(z',t') |0> evaluated with explicit field operators
/// on the Fock space of modes -N..N over the Dirac sea. Requires 2N+1 <= 14.
PropagatorSample fock_two_point(const OscParams& p, double z, double t, double zp, double tp,
                                int cutoff);

/// Momentum-space spinor (2 pi)^{-1/2} int dz e^{-i p z} psi_n(z).
/// Each block picks up (-i)^k for its Hermite index k.
Spinor mode_spinor_momentum(const OscParams& p, int n, double pz);

/// The same transform by trapezoid quadrature of sampled psi_n over
/// zeta in [-half_width, half_width].
Spinor mode_spinor_momentum_quadrature(const OscParams& p, int n, double pz,
                                       double half_width = 20.0, double step = 0.05);

/// p_n^2 = 2 |n| m w + m^2.
inline double pole_square(const OscParams& p, int n) {
  const int k = n < 0 ? -n : n;
  return 2.0 * k * p.m_omega() + p.mass * p.mass;
}

/// sum_{n=0}^{N} (-1)^n / (p0^2 - p_n^2) [u_n(pz) ubar_n(pz') - v_{n-1}(pz) vbar_{n-1}(pz')]
/// with v_{n-1} the momentum spinor of nu_n (absent at n = 0).
/// Throws PoleError when |p0^2 - p_n^2| < pole_guard for some n <= N.
PropagatorSample momentum_propagator(const OscParams& p, double p0, double pz, double pzp,
                                     int cutoff, double pole_guard = 1e-9);

/// Spatially transformed coordinate propagator at time difference dt:
/// the mode sum of coordinate_propagator with every spinor replaced by its
/// momentum-space form, (1/2 pi) int dz dz' e^{-i pz z} S(z, z') e^{i pz' z'}.
PropagatorSample mixed_propagator(const OscParams& p, double pz, double pzp, double dt,
                                  int cutoff);

/// Pole positions of momentum_propagator found numerically on p0 in
/// [-p_max, p_max], sorted ascending. Scans S_00 + S_22 at pz = pzp for
/// sign changes and bisects; its residue at p_n is proportional to
/// h_n^2 + h_{n-1}^2, which has no zeros. Zeros of the scalar are told
/// apart from poles by its magnitude.
std::vector<double> locate_poles(const OscParams& p, int cutoff, double pz, double p_max);

struct ContourCheck {
  Complex lhs;
  Complex rhs;
  double error = 0.0;
};

/// Both sides of
///   i oint dp0 / 2 pi  e^{-i p0 dt} / (p0^2 - p_n^2)
///     = Theta(dt) e^{-i E_n dt} / 2E_n + Theta(-dt) e^{i E_n dt} / 2E_n.
/// The left side integrates numerically around the Feynman-shifted pole
/// (p_n^2 -> p_n^2 - i eps, closing below for dt > 0 and above for dt < 0)
/// and Richardson-extrapolates eps = 1e-3, 1e-4 to zero.
ContourCheck contour_identity_check(const OscParams& p, int n, double dt);

/// Frobenius norm of a 4x4 matrix difference.
double frobenius_distance(const Matrix4c& a, const Matrix4c& b);

}  // namespace diracosc::propagator

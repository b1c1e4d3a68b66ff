#pragma once

#include <functional>
#include <string>
#include <vector>

#include "diracosc/specfun.hpp"
#include "diracosc/types.hpp"

/// (3+1)-dimensional Dirac oscillator: quantum numbers (n, kappa, g),
/// closed-form radial functions and the checks built on them.
namespace diracosc::osc3d {

enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

/// Mode label (sign(n), |n|, kappa, g) with g = two_g / 2.
///
/// The sign is stored separately from |n| because n = +0 and n = -0 are
/// different states. Valid signed zeros: kappa < 0 has only n = +0
/// (E = +m, no lower component); kappa > 0 has both n = +0 and n = -0
/// (E = +-sqrt(m^2 + 4 (l + 1/2) m w)).
struct Qnum3D {
  Sign n_sign = Sign::plus;
  int n_abs = 0;
  int kappa = -1;
  int two_g = 1;

  /// Validating constructor; throws DomainError on an invalid label.
  static Qnum3D make(Sign n_sign, int n_abs, int kappa, int two_g);
  /// Signed-integer convenience form; n = 0 means +0.
  static Qnum3D make(int n, int kappa, int two_g);

  double g() const { return 0.5 * two_g; }
  int signed_n() const { return n_sign == Sign::plus ? n_abs : -n_abs; }
  std::string to_string() const;

  friend bool operator==(const Qnum3D&, const Qnum3D&) = default;
  friend auto operator<=>(const Qnum3D&, const Qnum3D&) = default;
};

/// Throws DomainError unless (n_sign, n_abs, kappa, two_g) is a state.
void validate(Sign n_sign, int n_abs, int kappa, int two_g);

struct AngularNumbers {
  int two_j = 1;
  int l = 0;
  int lprime = 1;
  double j() const { return 0.5 * two_j; }
};

/// kappa = -(l+1) => j = l + 1/2, l' = l + 1; kappa = l => j = l - 1/2, l' = l - 1.
AngularNumbers angular_numbers(int kappa);

/// kappa < 0: E = +-sqrt(m^2 + 4|n| m w); kappa > 0: E = +-sqrt(m^2 + 4(|n| + l + 1/2) m w).
double energy3d(const OscParams& p, Sign n_sign, int n_abs, int kappa);
inline double energy3d(const OscParams& p, const Qnum3D& q) {
  return energy3d(p, q.n_sign, q.n_abs, q.kappa);
}

struct NPrime {
  int value = 0;
  bool vanishing_lower = false;  // kappa < 0, |n| = 0: no lower component
};

/// |n'| = |n| - 1 for kappa < 0, |n| for kappa > 0.
NPrime nprime_abs(int n_abs, int kappa);

/// Closed-form radial pair F, G of one state.
///
///   F(r) = A rho^{l+1} e^{-rho^2/2} L_{|n|}^{l+1/2}(rho^2)
///   G(r) = sgn(E) sgn(kappa) A' rho^{l'+1} e^{-rho^2/2} L_{|n'|}^{l'+1/2}(rho^2)
///
/// with rho = sqrt(m w) r. A and A' use the signed energy, so both stay
/// real on either branch and int (F^2 + G^2) dr = (E+m)/2E + (E-m)/2E = 1.
class RadialPair {
 public:
  RadialPair(const OscParams& p, const Qnum3D& q);

  double F(double r) const;
  double G(double r) const;
  double dF(double r) const;
  double dG(double r) const;

  double A() const { return a_; }
  double A_prime() const { return a_prime_; }
  double energy() const { return energy_; }
  const Qnum3D& qnum() const { return q_; }
  const AngularNumbers& angular() const { return ang_; }
  const NPrime& nprime() const { return nprime_; }

 private:
  // value and d/dr of c rho^{lpow+1} e^{-rho^2/2} L_k^{lpow+1/2}(rho^2)
  void radial_term(double r, int lpow, int k, double& value, double& deriv) const;

  OscParams p_;
  Qnum3D q_;
  AngularNumbers ang_;
  NPrime nprime_;
  double energy_ = 0.0;
  double a_ = 0.0;
  double a_prime_ = 0.0;  // includes the sgn(E) sgn(kappa) phase
  double sqrt_mw_ = 1.0;
};

RadialPair radial_solution(const OscParams& p, const Qnum3D& q);

/// psi(r, theta, phi) = (1/r) (F Y_{kappa,g}, i G Y_{-kappa,g}); r = 0 gives the limit.
Spinor wavefunction3d(const OscParams& p, const Qnum3D& q, double r, double theta, double phi);

/// Residuals of the coupled radial equations at r:
///   [d/dr + (kappa + m w r^2)/r] F - (E + m) G
///   [-d/dr + (kappa + m w r^2)/r] G - (E - m) F
std::pair<double, double> radial_residual(const OscParams& p, const Qnum3D& q, double r);

/// Radial quadrature order large enough for the pair (a, b).
int radial_order_for(const Qnum3D& a, const Qnum3D& b);

/// <psi_a, psi_b>, using exact angular orthogonality and `rule` for the
/// radial integral int (F_a F_b + G_a G_b) dr.
Complex orthonormality3d(const OscParams& p, const Qnum3D& a, const Qnum3D& b,
                         const QuadratureRule& rule);

/// Every valid state with |n| <= n_max and 1 <= |kappa| <= kappa_max,
/// ordered by kappa, then g, then signed n (with -0 before +0).
std::vector<Qnum3D> enumerate_states(int n_max, int kappa_max);

using SpinorField = std::function<Spinor(double x, double y, double z)>;

struct CompletenessCutoffs {
  int n_max = 30;
  int kappa_max = 6;
};

/// Controls the 3D product quadrature used by completeness_probe.
struct ProbeQuadrature {
  int radial_order = 0;  // 0: 4 (n_max + kappa_max) + 48
  int theta_order = 48;
  int phi_points = 64;
};

/// ||f - sum_modes psi <psi, f>||_2 / ||f||_2 over all states within the
/// cutoffs, with the residual integrated explicitly on a product grid.
double completeness_probe(const OscParams& p, const CompletenessCutoffs& cut, const SpinorField& f,
                          const ProbeQuadrature& quad = {});

/// Offset Gaussian with a fixed, generic spinor polarisation; used as the
/// default completeness test function.
SpinorField gaussian_test_spinor(const OscParams& p);

}  // namespace diracosc::osc3d

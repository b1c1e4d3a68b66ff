#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "diracosc/gamma_matrices.hpp"
#include "diracosc/specfun.hpp"
#include "diracosc/types.hpp"

/// (1+1)-dimensional Dirac oscillator, H = alpha_3 (p_z - i m w beta z) + beta m.
///
/// Mode labels are signed integers n; n < 0 labels negative-energy states.
/// Spinors keep four components: the upper block is phi_n(z) xi^1_n and
/// the lower block chi_n(z) xi^2_n, with the second entry of each block
/// identically zero.
namespace diracosc::osc1d {

/// E_n = +sqrt(2|n| m w + m^2) for n >= 0, minus that for n < 0.
/// Valid for omega = 0 (free limit).
double energy(const OscParams& p, int n);

/// E_0 - E_{-1} = m + sqrt(m^2 + 2 m w). Equals 2m at omega = 0 and
/// approaches 2m + omega for omega << m.
double delta_e_gap(const OscParams& p);

struct XiSpinors {
  Spinor2 upper;  // xi^1_n
  Spinor2 lower;  // xi^2_n
};

/// Two-component spinors of mode n, |xi^1|^2 + |xi^2|^2 = 1.
///
/// The square roots in xi are evaluated with the signed energy, which
/// keeps both arguments nonnegative for every n. The lower spinor carries
/// an extra sgn(E_n) so that xi^2 = -i (E - m)/sqrt(E^2 - m^2) xi^1, the
/// relation the eigenvalue equation enforces for either sign of E.
XiSpinors spinor_xi(const OscParams& p, int n);

/// Spatial part of psi_n at z, normalised so that int psi^dagger psi dz = 1.
///
/// phi_n = (m w)^{1/4} h_{|n|}(zeta) and chi_n = (m w)^{1/4} h_{|n|-1}(zeta)
/// with zeta = sqrt(m w) z and h the L2-normalised Hermite functions; the
/// textbook prefactor sqrt(m w) N_{|n|} H_{|n|} e^{-zeta^2/2} reduces to
/// this with N_k = (m w)^{-1/4} (2^k k! sqrt(pi))^{-1/2}.
Spinor wavefunction(const OscParams& p, int n, double z);

/// d/dz of wavefunction(p, n, z).
Spinor wavefunction_dz(const OscParams& p, int n, double z);

/// psi_n(z) e^{-i E_n t}.
Spinor wavefunction(const OscParams& p, int n, double z, double t);

enum class GridKind { hermite_collocation, uniform };
enum class Derivative { spectral, finite_difference };

/// Sample points in z together with weights for int dz.
struct Grid {
  GridKind kind = GridKind::uniform;
  std::vector<double> z;
  std::vector<double> weights;
  double sqrt_m_omega = 1.0;
  /// Collocation differentiation matrix in z (hermite_collocation only).
  Eigen::MatrixXd diff;
};

/// Gauss-Hermite collocation grid with `order` nodes in zeta = sqrt(m w) z.
/// Spectral differentiation on this grid is exact for span{h_0..h_{order-1}}.
Grid hermite_grid(const OscParams& p, int order);

/// Uniform grid with trapezoid weights.
Grid uniform_grid(const OscParams& p, double z_min, double z_max, int count);

/// First derivative of samples `f` on `grid`. Spectral derivatives require
/// a collocation grid and finite differences (8th order, zero exterior) a
/// uniform one. A failed differentiation self-test raises NumericalError.
std::vector<Complex> differentiate(const Grid& grid, std::span<const Complex> f,
                                   Derivative method);

/// H psi sampled on `grid`.
std::vector<Spinor> hamiltonian_apply(const OscParams& p, std::span<const Spinor> psi,
                                      const Grid& grid,
                                      Derivative method = Derivative::spectral);

std::vector<Spinor> sample(const OscParams& p, int n, const Grid& grid);

Complex inner(std::span<const Spinor> a, std::span<const Spinor> b, const Grid& grid);

/// ||H psi_n - E_n psi_n|| / ||psi_n|| on `grid`.
double eigen_residual(const OscParams& p, int n, const Grid& grid,
                      Derivative method = Derivative::spectral);

/// Gram matrix <psi_a, psi_b> for a, b in [n_lo, n_hi] by Gauss-Hermite
/// quadrature of the given order. Rows/columns are ordered n_lo..n_hi.
Eigen::MatrixXcd gram_matrix(const OscParams& p, int n_lo, int n_hi, int order);

/// Second-order oscillator check: (p_zeta^2 + zeta^2) applied to the upper
/// and lower components must return eta_+ = (E^2 - m^2)/(m w) + 1 and
/// eta_- = (E^2 - m^2)/(m w) - 1 respectively.
struct EtaCheck {
  double eta_plus = 0.0;
  double eta_minus = 0.0;
  double upper_measured = 0.0;  // Rayleigh quotient on the upper component
  double lower_measured = 0.0;  // NaN when the lower component vanishes (n = 0)
  double upper_residual = 0.0;  // ||(O - eta_+) phi|| / ||phi||
  double lower_residual = 0.0;
};
EtaCheck eta_consistency(const OscParams& p, int n, int order);

// ---- ladder structure --------------------------------------------------

enum class LadderDirection { up, down };

/// One target state of a^dagger or a acting on |psi_n>.
///
/// `upper`/`lower` are the coefficients multiplying the target's upper and
/// lower blocks. When `beta_projector` is set the action is
/// scale * (1 - beta) |psi_target>, with upper/lower holding the resulting
/// block factors (0 and 2 * scale).
struct LadderTerm {
  int target = 0;
  double upper = 0.0;
  double lower = 0.0;
  bool beta_projector = false;
  double scale = 1.0;
};

std::vector<LadderTerm> ladder_map(LadderDirection dir, int n);

/// Applies `second` after `first` to |psi_n>, multiplying block coefficients.
std::vector<LadderTerm> ladder_compose(LadderDirection first, LadderDirection second, int n);

// ---- covariant form ----------------------------------------------------

/// Contravariant position (t, x, y, z) or covariant vectors where noted.
using FourVector = std::array<double, 4>;

inline FourVector lower_index(const FourVector& v) { return {v[0], -v[1], -v[2], -v[3]}; }

/// u_mu = (m w, 0, 0, 0), covariant.
FourVector frame_vector(const OscParams& p);

/// Covariant A_mu = (1/4) [2 (u.x) x_mu - x^2 u_mu] at contravariant x.
FourVector potential_a_mu(const FourVector& x, const OscParams& p);

/// F_{mu nu} = d_mu A_nu - d_nu A_mu = u_mu x_nu - x_mu u_nu (lower indices).
Eigen::Matrix4d field_strength(const FourVector& x, const OscParams& p);

/// sigma^{mu nu} F_{mu nu} at x.
Matrix4c sigma_f(const FourVector& x, const OscParams& p);

/// Coupling that the Hamiltonian form contributes once multiplied by beta:
/// i gamma^mu d_mu psi - m psi - i m w (alpha . r) psi = 0.
Matrix4c hamiltonian_coupling(const FourVector& x, const OscParams& p);

/// (i gamma^mu d_mu - m + sigma^{mu nu} F_{mu nu}) psi_n at (z, t), with
/// analytic derivatives of the stationary state.
Spinor covariant_residual(const OscParams& p, int n, double z, double t);

/// Same operator with sigma F replaced by sigma F / coupling_scale.
Spinor covariant_residual(const OscParams& p, int n, double z, double t, double coupling_scale);

/// Least-squares ratio c with sigma F = c * hamiltonian_coupling at x.
Complex covariant_coupling_ratio(const FourVector& x, const OscParams& p);

}  // namespace diracosc::osc1d

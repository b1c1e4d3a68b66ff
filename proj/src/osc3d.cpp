#include "diracosc/osc3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace diracosc::osc3d {

namespace {

constexpr Complex kI(0.0, 1.0);

int sgn(int v) { return v > 0 ? 1 : -1; }

}  // namespace

void validate(Sign n_sign, int n_abs, int kappa, int two_g) {
  if (kappa == 0) throw DomainError("Qnum3D: kappa must be nonzero");
  if (n_abs < 0) throw DomainError("Qnum3D: |n| must be >= 0");
  if (two_g % 2 == 0) throw DomainError("Qnum3D: g must be half-integer");
  if (std::abs(two_g) > 2 * std::abs(kappa) - 1)
    throw DomainError("Qnum3D: |g| must not exceed |kappa| - 1/2");
  if (kappa < 0 && n_abs == 0 && n_sign == Sign::minus)
    throw DomainError("Qnum3D: n = -0 does not exist for kappa < 0 (only the E = +m state)");
}

Qnum3D Qnum3D::make(Sign n_sign, int n_abs, int kappa, int two_g) {
  validate(n_sign, n_abs, kappa, two_g);
  return Qnum3D{n_sign, n_abs, kappa, two_g};
}

Qnum3D Qnum3D::make(int n, int kappa, int two_g) {
  return make(n < 0 ? Sign::minus : Sign::plus, std::abs(n), kappa, two_g);
}

std::string Qnum3D::to_string() const {
  return std::string("(n=") + (n_sign == Sign::plus ? "+" : "-") + std::to_string(n_abs) +
         ", kappa=" + std::to_string(kappa) + ", g=" + std::to_string(two_g) + "/2)";
}

AngularNumbers angular_numbers(int kappa) {
  if (kappa == 0) throw DomainError("angular_numbers: kappa must be nonzero");
  AngularNumbers a;
  if (kappa < 0) {
    a.l = -kappa - 1;
    a.two_j = 2 * a.l + 1;
    a.lprime = a.l + 1;
  } else {
    a.l = kappa;
    a.two_j = 2 * a.l - 1;
    a.lprime = a.l - 1;
  }
  return a;
}

double energy3d(const OscParams& p, Sign n_sign, int n_abs, int kappa) {
  if (kappa == 0) throw DomainError("energy3d: kappa must be nonzero");
  if (n_abs < 0) throw DomainError("energy3d: |n| must be >= 0");
  if (kappa < 0 && n_abs == 0 && n_sign == Sign::minus)
    throw DomainError("energy3d: n = -0 does not exist for kappa < 0");
  const double m = p.mass;
  const double mw = p.m_omega();
  double level = n_abs;
  if (kappa > 0) level += kappa + 0.5;
  return sign_value(n_sign) * std::sqrt(m * m + 4.0 * level * mw);
}

NPrime nprime_abs(int n_abs, int kappa) {
  if (kappa == 0) throw DomainError("nprime_abs: kappa must be nonzero");
  if (kappa > 0) return {n_abs, false};
  if (n_abs == 0) return {0, true};
  return {n_abs - 1, false};
}

RadialPair::RadialPair(const OscParams& p, const Qnum3D& q)
    : p_(p), q_(q), ang_(angular_numbers(q.kappa)), nprime_(nprime_abs(q.n_abs, q.kappa)) {
  require_oscillating(p);
  validate(q.n_sign, q.n_abs, q.kappa, q.two_g);
  energy_ = energy3d(p, q);
  sqrt_mw_ = std::sqrt(p.m_omega());
  const double m = p.mass;
  const double e = energy_;
  const double half_log_mw = 0.5 * std::log(p.m_omega());

  const double log_a2 = half_log_mw + ln_gamma(q.n_abs + 1.0) -
                        ln_gamma(q.n_abs + ang_.l + 1.5) + std::log((e + m) / e);
  a_ = std::exp(0.5 * log_a2);

  if (nprime_.vanishing_lower) {
    a_prime_ = 0.0;
  } else {
    const int k = nprime_.value;
    const double log_b2 = half_log_mw + ln_gamma(k + 1.0) - ln_gamma(k + ang_.lprime + 1.5) +
                          std::log((e - m) / e);
    const double phase = (e > 0.0 ? 1.0 : -1.0) * sgn(q.kappa);
    a_prime_ = phase * std::exp(0.5 * log_b2);
  }
}

void RadialPair::radial_term(double r, int lpow, int k, double& value, double& deriv) const {
  const double rho = sqrt_mw_ * r;
  const double x = rho * rho;
  const double alpha = lpow + 0.5;
  const double lag = laguerre_l(k, alpha, x);
  const double dlag = k > 0 ? -laguerre_l(k - 1, alpha + 1.0, x) : 0.0;
  const double gauss = std::exp(-0.5 * x);
  const double rho_l = std::pow(rho, lpow);
  value = rho_l * rho * gauss * lag;
  // d/drho [rho^{l+1} e^{-x/2} L(x)] = rho^l e^{-x/2} [(l + 1 - x) L + 2 x L']
  deriv = sqrt_mw_ * rho_l * gauss * ((lpow + 1.0 - x) * lag + 2.0 * x * dlag);
}

double RadialPair::F(double r) const {
  double v, d;
  radial_term(r, ang_.l, q_.n_abs, v, d);
  return a_ * v;
}

double RadialPair::dF(double r) const {
  double v, d;
  radial_term(r, ang_.l, q_.n_abs, v, d);
  return a_ * d;
}

double RadialPair::G(double r) const {
  if (nprime_.vanishing_lower) return 0.0;
  double v, d;
  radial_term(r, ang_.lprime, nprime_.value, v, d);
  return a_prime_ * v;
}

double RadialPair::dG(double r) const {
  if (nprime_.vanishing_lower) return 0.0;
  double v, d;
  radial_term(r, ang_.lprime, nprime_.value, v, d);
  return a_prime_ * d;
}

RadialPair radial_solution(const OscParams& p, const Qnum3D& q) { return RadialPair(p, q); }

Spinor wavefunction3d(const OscParams& p, const Qnum3D& q, double r, double theta, double phi) {
  if (!(r >= 0.0)) throw DomainError("wavefunction3d: r must be >= 0");
  const RadialPair rp(p, q);
  const auto up = spinor_spherical_harmonic(q.kappa, q.two_g, theta, phi);
  const auto lo = spinor_spherical_harmonic(-q.kappa, q.two_g, theta, phi);
  // F(0) = G(0) = 0, so F/r -> F'(0) at the origin
  const double f = r > 0.0 ? rp.F(r) / r : rp.dF(0.0);
  const Complex g = kI * (r > 0.0 ? rp.G(r) / r : rp.dG(0.0));
  return {f * up[0], f * up[1], g * lo[0], g * lo[1]};
}

std::pair<double, double> radial_residual(const OscParams& p, const Qnum3D& q, double r) {
  if (!(r > 0.0)) throw DomainError("radial_residual: r must be > 0");
  const RadialPair rp(p, q);
  const double e = rp.energy();
  const double m = p.mass;
  const double coupling = (q.kappa + p.m_omega() * r * r) / r;
  const double f = rp.F(r);
  const double g = rp.G(r);
  const double r1 = rp.dF(r) + coupling * f - (e + m) * g;
  const double r2 = -rp.dG(r) + coupling * g - (e - m) * f;
  return {r1, r2};
}

int radial_order_for(const Qnum3D& a, const Qnum3D& b) {
  const auto la = angular_numbers(a.kappa);
  const auto lb = angular_numbers(b.kappa);
  const int n = std::max(a.n_abs, b.n_abs);
  const int l = std::max({la.l, la.lprime, lb.l, lb.lprime});
  return 4 * (n + l) + 48;
}

Complex orthonormality3d(const OscParams& p, const Qnum3D& a, const Qnum3D& b,
                         const QuadratureRule& rule) {
  if (a.kappa != b.kappa || a.two_g != b.two_g) return 0.0;
  const RadialPair ra(p, a);
  const RadialPair rb(p, b);
  return rule.integrate([&](double r) { return ra.F(r) * rb.F(r) + ra.G(r) * rb.G(r); });
}

std::vector<Qnum3D> enumerate_states(int n_max, int kappa_max) {
  std::vector<Qnum3D> out;
  if (n_max < 0 || kappa_max < 1) return out;
  for (int kappa = -kappa_max; kappa <= kappa_max; ++kappa) {
    if (kappa == 0) continue;
    const int two_j = 2 * std::abs(kappa) - 1;
    for (int two_g = -two_j; two_g <= two_j; two_g += 2) {
      for (int n = n_max; n >= 1; --n) out.push_back(Qnum3D{Sign::minus, n, kappa, two_g});
      if (kappa > 0) out.push_back(Qnum3D{Sign::minus, 0, kappa, two_g});
      for (int n = 0; n <= n_max; ++n) out.push_back(Qnum3D{Sign::plus, n, kappa, two_g});
    }
  }
  return out;
}

SpinorField gaussian_test_spinor(const OscParams& p) {
  const double s = std::sqrt(p.m_omega());
  const double x0 = 0.3 / s;
  const double y0 = -0.2 / s;
  const double z0 = 0.4 / s;
  const double mw = p.m_omega();
  const Spinor pol{Complex(1.0, 0.0), Complex(0.0, 0.5), Complex(0.25, 0.0), Complex(0.1, -0.3)};
  return [=](double x, double y, double z) {
    const double d2 = (x - x0) * (x - x0) + (y - y0) * (y - y0) + (z - z0) * (z - z0);
    return Complex(std::exp(-0.5 * mw * d2)) * pol;
  };
}

double completeness_probe(const OscParams& p, const CompletenessCutoffs& cut, const SpinorField& f,
                          const ProbeQuadrature& quad) {
  require_oscillating(p);
  if (cut.n_max < 0 || cut.kappa_max < 1)
    throw DomainError("completeness_probe: need n_max >= 0 and kappa_max >= 1");
  const int radial_order =
      quad.radial_order > 0 ? quad.radial_order : 4 * (cut.n_max + cut.kappa_max) + 48;
  const auto rrule = radial_rule(radial_order, 1.0 / std::sqrt(p.m_omega()));
  const auto trule = gauss_legendre_rule(quad.theta_order, -1.0, 1.0);
  const int nphi = quad.phi_points;
  const double dphi = 2.0 * std::numbers::pi / nphi;

  const std::size_t nr = rrule.nodes.size();
  const std::size_t nang = trule.nodes.size() * static_cast<std::size_t>(nphi);
  std::vector<double> theta(nang), phi(nang), wang(nang);
  for (std::size_t it = 0; it < trule.nodes.size(); ++it)
    for (int ip = 0; ip < nphi; ++ip) {
      const std::size_t k = it * static_cast<std::size_t>(nphi) + static_cast<std::size_t>(ip);
      theta[k] = std::acos(trule.nodes[it]);
      phi[k] = dphi * ip;
      wang[k] = trule.weights[it] * dphi;
    }

  // f and reconstruction on the product grid, index [ir * nang + k].
  std::vector<Spinor> fv(nr * nang);
  std::vector<Spinor> recon(nr * nang, Spinor{0.0, 0.0, 0.0, 0.0});
  for (std::size_t ir = 0; ir < nr; ++ir) {
    const double r = rrule.nodes[ir];
    for (std::size_t k = 0; k < nang; ++k) {
      const double st = std::sin(theta[k]);
      fv[ir * nang + k] =
          f(r * st * std::cos(phi[k]), r * st * std::sin(phi[k]), r * std::cos(theta[k]));
    }
  }

  std::vector<Spinor2> y_up(nang), y_lo(nang);
  std::vector<Complex> fu(nr), fl(nr), ru(nr), rl(nr);
  for (int kappa = -cut.kappa_max; kappa <= cut.kappa_max; ++kappa) {
    if (kappa == 0) continue;
    // Radial functions of every n in this kappa channel (independent of g).
    const int two_j = 2 * std::abs(kappa) - 1;
    std::vector<std::pair<std::vector<double>, std::vector<double>>> radial;
    std::vector<Qnum3D> ns;
    for (int n = -cut.n_max; n <= cut.n_max; ++n) {
      ns.push_back(Qnum3D{n < 0 ? Sign::minus : Sign::plus, std::abs(n), kappa, 1});  // g is irrelevant radially
      if (n == 0 && kappa > 0) ns.push_back(Qnum3D{Sign::minus, 0, kappa, 1});
    }
    for (const auto& q : ns) {
      const RadialPair rp(p, q);
      std::vector<double> fr(nr), gr(nr);
      for (std::size_t ir = 0; ir < nr; ++ir) {
        fr[ir] = rp.F(rrule.nodes[ir]);
        gr[ir] = rp.G(rrule.nodes[ir]);
      }
      radial.emplace_back(std::move(fr), std::move(gr));
    }

    for (int two_g = -two_j; two_g <= two_j; two_g += 2) {
      for (std::size_t k = 0; k < nang; ++k) {
        y_up[k] = spinor_spherical_harmonic(kappa, two_g, theta[k], phi[k]);
        y_lo[k] = spinor_spherical_harmonic(-kappa, two_g, theta[k], phi[k]);
      }
      for (std::size_t ir = 0; ir < nr; ++ir) {
        Complex au = 0.0;
        Complex al = 0.0;
        for (std::size_t k = 0; k < nang; ++k) {
          const Spinor& v = fv[ir * nang + k];
          au += wang[k] * (std::conj(y_up[k][0]) * v[0] + std::conj(y_up[k][1]) * v[1]);
          al += wang[k] * (std::conj(y_lo[k][0]) * v[2] + std::conj(y_lo[k][1]) * v[3]);
        }
        fu[ir] = au;
        fl[ir] = al;
        ru[ir] = 0.0;
        rl[ir] = 0.0;
      }
      for (const auto& [fr, gr] : radial) {
        // <psi, f> = int r dr [F fu - i G fl]
        Complex c = 0.0;
        for (std::size_t ir = 0; ir < nr; ++ir)
          c += rrule.weights[ir] * rrule.nodes[ir] * (fr[ir] * fu[ir] - kI * gr[ir] * fl[ir]);
        for (std::size_t ir = 0; ir < nr; ++ir) {
          ru[ir] += c * fr[ir] / rrule.nodes[ir];
          rl[ir] += c * kI * gr[ir] / rrule.nodes[ir];
        }
      }
      for (std::size_t ir = 0; ir < nr; ++ir)
        for (std::size_t k = 0; k < nang; ++k) {
          Spinor& out = recon[ir * nang + k];
          out[0] += ru[ir] * y_up[k][0];
          out[1] += ru[ir] * y_up[k][1];
          out[2] += rl[ir] * y_lo[k][0];
          out[3] += rl[ir] * y_lo[k][1];
        }
    }
  }

  double res2 = 0.0;
  double norm = 0.0;
  for (std::size_t ir = 0; ir < nr; ++ir) {
    const double wr = rrule.weights[ir] * rrule.nodes[ir] * rrule.nodes[ir];
    for (std::size_t k = 0; k < nang; ++k) {
      const Spinor& v = fv[ir * nang + k];
      res2 += wr * wang[k] * norm2(v - recon[ir * nang + k]);
      norm += wr * wang[k] * norm2(v);
    }
  }
  if (!(norm > 0.0)) throw DomainError("completeness_probe: test function has zero norm");
  return std::sqrt(res2 / norm);
}

}  // namespace diracosc::osc3d

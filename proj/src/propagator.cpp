#include "diracosc/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "diracosc/fock.hpp"
#include "diracosc/osc1d.hpp"
#include "diracosc/specfun.hpp"

namespace diracosc::propagator {

namespace {

// u ubar = u u^dagger gamma^0
Matrix4c outer_bar(const Spinor& a, const Spinor& b) {
  const Vector4c va = to_vector(a);
  const Vector4c vb = to_vector(b);
  return va * (vb.adjoint() * dirac_matrices().gamma[0]);
}

// (-i)^k
Complex minus_i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void require_cutoff(int cutoff) {
  if (cutoff < 0) throw DomainError("propagator cutoff must be >= 0, got " + std::to_string(cutoff));
}

// i/(2 pi) e^{-i p0 dt} / (p0^2 - q^2) integrated around a circle of
// radius r centred at c, with the given orientation (+1 counterclockwise).
Complex circle_integral(Complex q2, Complex c, double r, double dt, int orientation, int points) {
  const Complex i(0.0, 1.0);
  Complex sum = 0.0;
  for (int k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / points;
    const Complex e = std::polar(1.0, theta);
    const Complex p0 = c + r * e;
    const Complex dp = i * r * e;
    sum += std::exp(-i * p0 * dt) / (p0 * p0 - q2) * dp;
  }
  sum *= 2.0 * std::numbers::pi / points * static_cast<double>(orientation);
  return i / (2.0 * std::numbers::pi) * sum;
}

}  // namespace

PoleError::PoleError(int n, double distance)
    : NumericalError("momentum propagator evaluated at the n=" + std::to_string(n) +
                     " pole (|p0^2 - p_n^2| = " + std::to_string(distance) + ")"),
      n_(n),
      distance_(distance) {}

double frobenius_distance(const Matrix4c& a, const Matrix4c& b) { return (a - b).norm(); }

PropagatorSample coordinate_propagator(const OscParams& p, double z, double t, double zp,
                                       double tp, int cutoff) {
  require_cutoff(cutoff);
  const double dt = t - tp;
  const Complex i(0.0, 1.0);
  PropagatorSample out;
  out.cutoff = cutoff;
  out.space = Space::coordinate;
  if (dt >= 0.0) {
    for (int n = 0; n <= cutoff; ++n) {
      const double e = osc1d::energy(p, n);
      out.value += std::exp(-i * e * dt) *
                   outer_bar(osc1d::wavefunction(p, n, z), osc1d::wavefunction(p, n, zp));
    }
  } else {
    for (int n = 1; n <= cutoff; ++n) {
      const double e = osc1d::energy(p, n);
      out.value -= std::exp(i * e * dt) *
                   outer_bar(osc1d::wavefunction(p, -n, z), osc1d::wavefunction(p, -n, zp));
    }
  }
  return out;
}

PropagatorSample fock_two_point(const OscParams& p, double z, double t, double zp, double tp,
                                int cutoff) {
  require_cutoff(cutoff);
  using fock::FockOperator;
  using fock::Ladder;
  const auto modes = fock::ModeSet::one_dimensional(p, cutoff, cutoff);
  const long dim = modes.dimension();
  const Complex i(0.0, 1.0);
  const Matrix4c& g0 = dirac_matrices().gamma[0];

  // psi_a(z, t) = sum_j psi_{j,a}(z) e^{-i E_j t} b_j
  // psibar_b(z', t') = sum_j (psi_j(z')^dagger gamma^0)_b e^{i E_j t'} b_j^dagger
  std::vector<FockOperator> psi(4, FockOperator(dim, dim));
  std::vector<FockOperator> psibar(4, FockOperator(dim, dim));
  for (int j = 0; j < modes.size(); ++j) {
    const int n = std::get<int>(modes[j].label);
    const double e = modes[j].energy;
    const Vector4c u = to_vector(osc1d::wavefunction(p, n, z)) * std::exp(-i * e * t);
    const Eigen::RowVector4cd ubar =
        to_vector(osc1d::wavefunction(p, n, zp)).adjoint() * g0 * std::exp(i * e * tp);
    const FockOperator an = fock::ladder(modes, j, Ladder::annihilate);
    const FockOperator cr = fock::ladder(modes, j, Ladder::create);
    for (int a = 0; a < 4; ++a) {
      if (u[a] != Complex(0.0)) psi[a] += u[a] * an;
      if (ubar[a] != Complex(0.0)) psibar[a] += ubar[a] * cr;
    }
  }

  const fock::FockState vac = fock::sea_vacuum(modes);
  PropagatorSample out;
  out.cutoff = cutoff;
  out.space = Space::coordinate;
  const bool particle_order = t - tp >= 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (particle_order) {
        // <0| psi_a psibar_b |0>
        const fock::FockState right = psibar[b] * vac;
        const fock::FockState left = FockOperator(psi[a].adjoint()) * vac;
        out.value(a, b) = left.dot(right);
      } else {
        // -<0| psibar_b psi_a |0>
        const fock::FockState right = psi[a] * vac;
        const fock::FockState left = FockOperator(psibar[b].adjoint()) * vac;
        out.value(a, b) = -left.dot(right);
      }
    }
  }
  return out;
}

Spinor mode_spinor_momentum(const OscParams& p, int n, double pz) {
  require_oscillating(p);
  const double s = std::sqrt(p.m_omega());
  const double amp = std::pow(p.m_omega(), -0.25);
  const auto xi = osc1d::spinor_xi(p, n);
  const int k = std::abs(n);
  const double x = pz / s;
  Spinor out{};
  out[0] = amp * minus_i_pow(k) * hermite_function(k, x) * xi.upper[0];
  if (k > 0) out[2] = amp * minus_i_pow(k - 1) * hermite_function(k - 1, x) * xi.lower[0];
  return out;
}

Spinor mode_spinor_momentum_quadrature(const OscParams& p, int n, double pz, double half_width,
                                       double step) {
  require_oscillating(p);
  if (!(half_width > 0.0) || !(step > 0.0))
    throw DomainError("Fourier quadrature needs positive half width and step");
  const double s = std::sqrt(p.m_omega());
  const int count = static_cast<int>(std::ceil(2.0 * half_width / step));
  const double h = 2.0 * half_width / count;
  const Complex i(0.0, 1.0);
  Spinor acc{};
  for (int k = 0; k <= count; ++k) {
    const double zeta = -half_width + k * h;
    const double z = zeta / s;
    const double w = (k == 0 || k == count) ? 0.5 : 1.0;
    const Complex phase = std::exp(-i * pz * z);
    const Spinor psi = osc1d::wavefunction(p, n, z);
    for (int a = 0; a < 4; ++a) acc[a] += w * phase * psi[a];
  }
  const double scale = h / s / std::sqrt(2.0 * std::numbers::pi);
  for (auto& c : acc) c *= scale;
  return acc;
}

PropagatorSample momentum_propagator(const OscParams& p, double p0, double pz, double pzp,
                                     int cutoff, double pole_guard) {
  require_cutoff(cutoff);
  PropagatorSample out;
  out.cutoff = cutoff;
  out.space = Space::momentum;
  for (int n = 0; n <= cutoff; ++n) {
    const double d = p0 * p0 - pole_square(p, n);
    if (std::abs(d) < pole_guard || d == 0.0) throw PoleError(n, std::abs(d));
    Matrix4c term = outer_bar(mode_spinor_momentum(p, n, pz), mode_spinor_momentum(p, n, pzp));
    if (n > 0)
      term -= outer_bar(mode_spinor_momentum(p, -n, pz), mode_spinor_momentum(p, -n, pzp));
    out.value += ((n % 2 == 0) ? 1.0 : -1.0) / d * term;
  }
  return out;
}

PropagatorSample mixed_propagator(const OscParams& p, double pz, double pzp, double dt,
                                  int cutoff) {
  require_cutoff(cutoff);
  const Complex i(0.0, 1.0);
  PropagatorSample out;
  out.cutoff = cutoff;
  out.space = Space::mixed;
  if (dt >= 0.0) {
    for (int n = 0; n <= cutoff; ++n)
      out.value += std::exp(-i * osc1d::energy(p, n) * dt) *
                   outer_bar(mode_spinor_momentum(p, n, pz), mode_spinor_momentum(p, n, pzp));
  } else {
    for (int n = 1; n <= cutoff; ++n)
      out.value -= std::exp(i * osc1d::energy(p, n) * dt) *
                   outer_bar(mode_spinor_momentum(p, -n, pz), mode_spinor_momentum(p, -n, pzp));
  }
  return out;
}

std::vector<double> locate_poles(const OscParams& p, int cutoff, double pz, double p_max) {
  require_cutoff(cutoff);
  if (!(p_max > 0.0)) throw DomainError("locate_poles: p_max must be positive");
  struct Eval {
    double value;
    bool at_pole;
  };
  auto f = [&](double p0) -> Eval {
    try {
      const auto v = momentum_propagator(p, p0, pz, pz, cutoff, 0.0).value;
      return {(v(0, 0) + v(2, 2)).real(), false};
    } catch (const PoleError&) {
      return {0.0, true};
    }
  };

  // adjacent poles are at least m w / p_max apart
  const double step = p.m_omega() / std::max(p_max, p.mass) / 40.0;
  const int count = static_cast<int>(std::ceil(2.0 * p_max / step));
  const double h = 2.0 * p_max / count;

  std::vector<double> poles;
  double x_prev = -p_max;
  Eval f_prev = f(x_prev);
  if (f_prev.at_pole) poles.push_back(x_prev);
  for (int k = 1; k <= count; ++k) {
    const double x = -p_max + k * h;
    const Eval fx = f(x);
    if (fx.at_pole) {
      poles.push_back(x);
    } else if (!f_prev.at_pole && std::signbit(fx.value) != std::signbit(f_prev.value)) {
      double lo = x_prev, hi = x;
      double flo = f_prev.value;
      const double edge = std::max(std::abs(f_prev.value), std::abs(fx.value));
      bool exact = false;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const Eval fm = f(mid);
        if (fm.at_pole) {
          lo = hi = mid;
          exact = true;
          break;
        }
        if (std::signbit(fm.value) == std::signbit(flo)) {
          lo = mid;
          flo = fm.value;
        } else {
          hi = mid;
        }
      }
      if (exact) {
        poles.push_back(lo);
      } else {
        const double inner = std::min(std::abs(f(lo).value), std::abs(f(hi).value));
        if (inner > 1e3 * edge) poles.push_back(0.5 * (lo + hi));
      }
    }
    x_prev = x;
    f_prev = fx;
  }
  std::sort(poles.begin(), poles.end());
  return poles;
}

ContourCheck contour_identity_check(const OscParams& p, int n, double dt) {
  if (dt == 0.0) throw DomainError("contour_identity_check: dt must be nonzero");
  const double e = std::abs(osc1d::energy(p, n));
  const double pn2 = pole_square(p, n);
  const Complex i(0.0, 1.0);
  const double radius = 0.5 * e;

  auto lhs_at = [&](double eps) {
    const Complex q2 = pn2 - i * eps;
    const Complex q = std::sqrt(q2);  // lower half plane
    // dt > 0: close below around +q (clockwise); dt < 0: above around -q.
    const Complex centre = dt > 0.0 ? q : -q;
    const int orientation = dt > 0.0 ? -1 : 1;
    const Complex coarse = circle_integral(q2, centre, radius, dt, orientation, 256);
    const Complex fine = circle_integral(q2, centre, radius, dt, orientation, 512);
    if (std::abs(fine - coarse) > 1e-12 * std::max(1.0, std::abs(fine)))
      throw NumericalError("contour integral did not converge for n=" + std::to_string(n) +
                           ", dt=" + std::to_string(dt));
    return fine;
  };

  ContourCheck out;
  const Complex l1 = lhs_at(1e-3);
  const Complex l2 = lhs_at(1e-4);
  out.lhs = (10.0 * l2 - l1) / 9.0;
  out.rhs = (dt > 0.0 ? std::exp(-i * e * dt) : std::exp(i * e * dt)) / (2.0 * e);
  out.error = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace diracosc::propagator

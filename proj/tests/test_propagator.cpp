#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diracosc/osc1d.hpp"
#include "diracosc/propagator.hpp"
#include "diracosc/specfun.hpp"

using namespace diracosc;
using namespace diracosc::propagator;

namespace {
const OscParams kUnit{1.0, 1.0};
const Complex kI(0.0, 1.0);

Matrix4c outer_bar(const Spinor& a, const Spinor& b) {
  return to_vector(a) * (to_vector(b).adjoint() * dirac_matrices().gamma[0]);
}

double max_entry(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("cutoff 0 keeps the single ground-state term") {
  const OscParams p(1.2, 0.7);
  const double z = 0.4, zp = -0.3, t = 0.8;
  const auto s = coordinate_propagator(p, z, t, zp, 0.0, 0);
  const Matrix4c expect = outer_bar(osc1d::wavefunction(p, 0, z), osc1d::wavefunction(p, 0, zp)) *
                          std::exp(-kI * p.mass * t);
  CHECK(max_entry(s.value - expect) < 1e-15);
  CHECK(s.cutoff == 0);
  CHECK(s.space == Space::coordinate);
  // no negative-energy term below N = 1
  CHECK(max_entry(coordinate_propagator(p, z, -t, zp, 0.0, 0).value) == 0.0);
}

TEST_CASE("time ordering selects the branch") {
  const double z = 0.2, zp = 0.9;
  const auto fwd = coordinate_propagator(kUnit, z, 0.5, zp, 0.0, 3);
  const auto bwd = coordinate_propagator(kUnit, z, -0.5, zp, 0.0, 3);
  Matrix4c f = Matrix4c::Zero(), b = Matrix4c::Zero();
  for (int n = 0; n <= 3; ++n)
    f += outer_bar(osc1d::wavefunction(kUnit, n, z), osc1d::wavefunction(kUnit, n, zp)) *
         std::exp(-kI * osc1d::energy(kUnit, n) * 0.5);
  for (int n = 1; n <= 3; ++n)
    b -= outer_bar(osc1d::wavefunction(kUnit, -n, z), osc1d::wavefunction(kUnit, -n, zp)) *
         std::exp(-kI * osc1d::energy(kUnit, n) * 0.5);
  CHECK(max_entry(fwd.value - f) < 1e-14);
  CHECK(max_entry(bwd.value - b) < 1e-14);
  // equal times use the particle ordering
  CHECK(max_entry(coordinate_propagator(kUnit, z, 0.0, zp, 0.0, 3).value -
                  coordinate_propagator(kUnit, z, 1e-300, zp, 0.0, 3).value) < 1e-15);
}

TEST_CASE("field-operator two-point function equals the mode sum") {
  const OscParams p(0.9, 1.4);
  for (int n_cut : {1, 3, 4})
    for (double dt : {-0.7, 0.0, 0.35}) {
      const auto a = coordinate_propagator(p, 0.3, dt, -0.5, 0.0, n_cut);
      const auto b = fock_two_point(p, 0.3, dt, -0.5, 0.0, n_cut);
      CHECK(max_entry(a.value - b.value) < 1e-12);
    }
  CHECK_THROWS_AS(fock_two_point(p, 0, 0, 0, 0, 7), DomainError);
}

TEST_CASE("momentum spinors carry (-i)^k") {
  const OscParams p(1.5, 0.6);
  const double s = std::sqrt(p.m_omega());
  const double pz = 0.7;
  const double scale = std::pow(p.m_omega(), -0.25);
  const auto u0 = mode_spinor_momentum(p, 0, pz);
  CHECK(std::abs(u0[0] - scale * hermite_function(0, pz / s)) < 1e-15);
  const auto u1 = mode_spinor_momentum(p, 1, pz);
  const auto xi = osc1d::spinor_xi(p, 1);
  CHECK(std::abs(u1[0] - (-kI) * scale * hermite_function(1, pz / s) * xi.upper[0]) < 1e-15);
  CHECK(std::abs(u1[2] - scale * hermite_function(0, pz / s) * xi.lower[0]) < 1e-15);
}

TEST_CASE("momentum spinors agree with a quadrature Fourier transform") {
  const OscParams p(0.8, 1.3);
  double worst = 0.0;
  for (int n = -20; n <= 20; ++n)
    for (double pz : {-2.1, -0.4, 0.0, 0.9, 3.3}) {
      const auto a = mode_spinor_momentum(p, n, pz);
      const auto b = mode_spinor_momentum_quadrature(p, n, pz);
      worst = std::max(worst, std::sqrt(norm2(a - b)));
    }
  CHECK(worst * std::pow(p.m_omega(), 0.25) < 1e-8);
}

TEST_CASE("mixed propagator equals the double Fourier transform of the coordinate form") {
  const int cutoff = 12;
  const double pz = 0.6, pzp = -0.4;
  const double half = 10.0;
  const int count = 321;
  const double h = 2 * half / (count - 1);
  for (double dt : {0.45, -0.3}) {
    Matrix4c acc = Matrix4c::Zero();
    for (int i = 0; i < count; ++i) {
      const double z = -half + i * h;
      for (int j = 0; j < count; ++j) {
        const double zp = -half + j * h;
        acc += coordinate_propagator(kUnit, z, dt, zp, 0.0, cutoff).value *
               std::exp(Complex(0.0, -pz * z + pzp * zp));
      }
    }
    acc *= h * h / (2 * std::numbers::pi);
    const auto mixed = mixed_propagator(kUnit, pz, pzp, dt, cutoff);
    CHECK(mixed.space == Space::mixed);
    CHECK(max_entry(mixed.value - acc) < 1e-4);
  }
}

TEST_CASE("momentum-space mode sum is even in p0") {
  // so it carries no time ordering; the ordered form is mixed_propagator
  for (double p0 : {0.3, 1.5, 2.9}) {
    const auto a = momentum_propagator(kUnit, p0, 0.4, -0.2, 6);
    const auto b = momentum_propagator(kUnit, -p0, 0.4, -0.2, 6);
    CHECK(max_entry(a.value - b.value) == 0.0);
  }
}

TEST_CASE("poles") {
  const OscParams p(1.0, 0.5);
  const auto poles = locate_poles(p, 3, 0.37, 4.0);
  REQUIRE(poles.size() == 8);
  for (int n = 0; n <= 3; ++n) {
    const double e = std::sqrt(pole_square(p, n));
    CHECK(poles[3 - n] == doctest::Approx(-e).epsilon(1e-10));
    CHECK(poles[4 + n] == doctest::Approx(e).epsilon(1e-10));
  }
  try {
    momentum_propagator(p, std::sqrt(pole_square(p, 2)), 0.1, 0.1, 4);
    FAIL("expected a pole error");
  } catch (const PoleError& e) {
    CHECK(e.n() == 2);
    CHECK(e.distance() < 1e-9);
  }
  CHECK_THROWS_AS(momentum_propagator(p, 1.0, 0.0, 0.0, 0), PoleError);
  CHECK_NOTHROW(momentum_propagator(p, 1.0 + 1e-6, 0.0, 0.0, 0));
}

TEST_CASE("residue at the ground pole is u0 ubar0") {
  const double pz = 0.3, pzp = -0.5;
  const double delta = 1e-7;
  const double p0 = 1.0 + delta;
  const auto s = momentum_propagator(kUnit, p0, pz, pzp, 5);
  const Matrix4c res = s.value * (p0 * p0 - 1.0);
  const Matrix4c expect = outer_bar(mode_spinor_momentum(kUnit, 0, pz), mode_spinor_momentum(kUnit, 0, pzp));
  CHECK(max_entry(res - expect) < 1e-6);
}

TEST_CASE("contour identity for both time orderings") {
  for (int n : {0, 1, 4})
    for (double dt : {0.8, -0.6, 2.5}) {
      const auto c = contour_identity_check(kUnit, n, dt);
      const double e = std::sqrt(pole_square(kUnit, n));
      CHECK(std::abs(c.rhs - std::exp(-kI * e * std::abs(dt)) / (2 * e)) < 1e-15);
      CHECK(c.error * 2 * e < 1e-6);
    }
}

TEST_CASE("truncation differences shrink at a fixed spacelike pair") {
  const double s = std::sqrt(kUnit.m_omega());
  const double z = 0.0, zp = 2.0 / s, t = 0.1 / kUnit.mass;
  double prev = 1e300;
  for (int n_cut : {8, 16, 32}) {
    const double d = frobenius_distance(coordinate_propagator(kUnit, z, t, zp, 0.0, n_cut).value,
                                        coordinate_propagator(kUnit, z, t, zp, 0.0, 2 * n_cut).value);
    CHECK(d < prev);
    prev = d;
  }
}

#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "diracosc/osc3d.hpp"
#include "diracosc/specfun.hpp"

using namespace diracosc;
using namespace diracosc::osc3d;

namespace {
const OscParams kUnit{1.0, 1.0};

double radial_norm(const OscParams& p, const Qnum3D& q, int order = 96) {
  const auto rule = radial_rule(order, 1.0 / std::sqrt(p.m_omega()));
  const auto rs = radial_solution(p, q);
  return rule.integrate([&](double r) { return rs.F(r) * rs.F(r) + rs.G(r) * rs.G(r); });
}
}  // namespace

TEST_CASE("angular_numbers") {
  const auto a = angular_numbers(-1);
  CHECK(a.l == 0);
  CHECK(a.lprime == 1);
  CHECK(a.two_j == 1);
  const auto b = angular_numbers(2);
  CHECK(b.l == 2);
  CHECK(b.lprime == 1);
  CHECK(b.two_j == 3);
  const auto c = angular_numbers(-3);
  CHECK(c.l == 2);
  CHECK(c.lprime == 3);
  CHECK(c.two_j == 5);
  CHECK_THROWS_AS(angular_numbers(0), DomainError);
}

TEST_CASE("energy3d") {
  CHECK(energy3d(kUnit, Sign::plus, 1, 1) == doctest::Approx(std::sqrt(11.0)).epsilon(1e-15));
  CHECK(energy3d(kUnit, Sign::plus, 0, -1) == 1.0);
  CHECK(energy3d(kUnit, Sign::plus, 2, -2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(energy3d(kUnit, Sign::minus, 0, 1) == doctest::Approx(-std::sqrt(7.0)).epsilon(1e-15));
  const OscParams p(0.6, 1.9);
  for (int k : {-3, -1, 1, 2})
    for (int n = 1; n <= 8; ++n) {
      CHECK(energy3d(p, Sign::minus, n, k) == -energy3d(p, Sign::plus, n, k));
      CHECK(energy3d(p, Sign::plus, n, k) > energy3d(p, Sign::plus, n - 1, k));
    }
}

TEST_CASE("nprime_abs") {
  CHECK(nprime_abs(3, -2).value == 2);
  CHECK(nprime_abs(3, 2).value == 3);
  CHECK(nprime_abs(0, -1).vanishing_lower);
  CHECK_FALSE(nprime_abs(0, 1).vanishing_lower);
}

TEST_CASE("Qnum3D validation") {
  CHECK_THROWS_AS(Qnum3D::make(Sign::minus, 0, -1, 1), DomainError);
  CHECK_THROWS_AS(Qnum3D::make(Sign::plus, 1, 0, 1), DomainError);
  CHECK_THROWS_AS(Qnum3D::make(Sign::plus, 1, 1, 3), DomainError);
  CHECK_THROWS_AS(Qnum3D::make(Sign::plus, 1, 2, 2), DomainError);
  CHECK_THROWS_AS(Qnum3D::make(Sign::plus, -1, 2, 1), DomainError);
  CHECK_NOTHROW(Qnum3D::make(Sign::minus, 0, 1, 1));
  CHECK_NOTHROW(Qnum3D::make(Sign::plus, 0, 1, -1));
  CHECK(Qnum3D::make(-2, 3, 5).signed_n() == -2);
}

TEST_CASE("radial closed form") {
  const auto g = radial_solution(kUnit, Qnum3D::make(0, -1, 1));
  CHECK(g.F(1.0) == doctest::Approx(std::sqrt(4.0 / std::sqrt(std::numbers::pi)) * std::exp(-0.5)).epsilon(1e-14));
  CHECK(g.G(1.0) == 0.0);
  CHECK(g.A_prime() == 0.0);
  for (const auto& q : enumerate_states(4, 3)) {
    const auto rs = radial_solution(kUnit, q);
    CHECK(rs.F(0.0) == 0.0);
    CHECK(rs.G(0.0) == 0.0);
  }
}

TEST_CASE("radial norms and ODE residuals") {
  for (const OscParams& p : {kUnit, OscParams(2.0, 1.0), OscParams(0.5, 3.0)}) {
    for (const auto& q : enumerate_states(8, 3)) {
      CHECK(std::abs(radial_norm(p, q) - 1.0) < 1e-12);
      const double scale = 1.0 / std::sqrt(p.m_omega());
      for (double x : {0.3, 1.0, 2.2}) {
        const auto [r1, r2] = radial_residual(p, q, x * scale);
        const double ref = std::abs(radial_solution(p, q).energy()) + p.mass;
        CHECK(std::abs(r1) < 1e-11 * ref * std::sqrt(p.m_omega()));
        CHECK(std::abs(r2) < 1e-11 * ref * std::sqrt(p.m_omega()));
      }
    }
  }
}

TEST_CASE("radial derivatives match finite differences") {
  const double h = 1e-5;
  for (const auto& q : {Qnum3D::make(2, -2, 1), Qnum3D::make(-1, 3, -3), Qnum3D::make(Sign::minus, 0, 1, 1)}) {
    const auto rs = radial_solution(kUnit, q);
    for (double r : {0.4, 1.3, 2.5}) {
      CHECK(std::abs(rs.dF(r) - (rs.F(r + h) - rs.F(r - h)) / (2 * h)) < 1e-8);
      CHECK(std::abs(rs.dG(r) - (rs.G(r + h) - rs.G(r - h)) / (2 * h)) < 1e-8);
    }
  }
}

TEST_CASE("degeneracy in g is 2|kappa|") {
  std::map<std::pair<int, int>, int> count;
  for (const auto& q : enumerate_states(3, 4))
    if (q.n_sign == Sign::plus) count[{q.n_abs, q.kappa}]++;
  for (const auto& [key, c] : count) CHECK(c == 2 * std::abs(key.second));
  CHECK(count.size() == 4 * 8);
}

TEST_CASE("enumerate_states includes both zero signs only for kappa > 0") {
  int minus_zero_pos = 0, minus_zero_neg = 0;
  for (const auto& q : enumerate_states(2, 2)) {
    if (q.n_sign == Sign::minus && q.n_abs == 0) (q.kappa > 0 ? minus_zero_pos : minus_zero_neg)++;
  }
  CHECK(minus_zero_pos == 2 + 4);
  CHECK(minus_zero_neg == 0);
}

TEST_CASE("wavefunction3d structure and norm") {
  const OscParams p(1.1, 0.8);
  const Qnum3D q = Qnum3D::make(-1, 2, 3);
  const auto rs = radial_solution(p, q);
  const double r = 0.9, th = 1.1, ph = -0.4;
  const Spinor s = wavefunction3d(p, q, r, th, ph);
  const Spinor2 yu = spinor_spherical_harmonic(q.kappa, q.two_g, th, ph);
  const Spinor2 yl = spinor_spherical_harmonic(-q.kappa, q.two_g, th, ph);
  const Complex i(0.0, 1.0);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(s[k] - rs.F(r) / r * yu[k]) < 1e-15);
    CHECK(std::abs(s[k + 2] - i * rs.G(r) / r * yl[k]) < 1e-15);
  }

  // full 3D integral equals the radial norm
  const auto rr = radial_rule(64, 1.0 / std::sqrt(p.m_omega()));
  const auto gl = gauss_legendre_rule(24);
  const int nphi = 32;
  double total = 0.0;
  for (std::size_t a = 0; a < rr.nodes.size(); ++a)
    for (std::size_t b = 0; b < gl.nodes.size(); ++b)
      for (int c = 0; c < nphi; ++c) {
        const double phi = 2 * std::numbers::pi * c / nphi;
        const Spinor v = wavefunction3d(p, q, rr.nodes[a], std::acos(gl.nodes[b]), phi);
        total += rr.weights[a] * gl.weights[b] * (2 * std::numbers::pi / nphi) * rr.nodes[a] * rr.nodes[a] * norm2(v);
      }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wavefunction3d at the origin") {
  // kappa = -1 has F ~ r, so psi(0) is finite and nonzero
  const Spinor s0 = wavefunction3d(kUnit, Qnum3D::make(1, -1, 1), 0.0, 0.5, 0.2);
  const Spinor sr = wavefunction3d(kUnit, Qnum3D::make(1, -1, 1), 1e-7, 0.5, 0.2);
  CHECK(std::sqrt(norm2(s0)) > 0.1);
  CHECK(std::sqrt(norm2(s0 - sr)) < 1e-6);
  // kappa = -2 has l = 1 so psi vanishes at the origin
  const Spinor z = wavefunction3d(kUnit, Qnum3D::make(1, -2, 1), 0.0, 0.5, 0.2);
  CHECK(norm2(z) == 0.0);
  CHECK_THROWS_AS(wavefunction3d(kUnit, Qnum3D::make(1, -2, 1), -0.1, 0.5, 0.2), DomainError);
}

TEST_CASE("orthonormality3d") {
  const Qnum3D a = Qnum3D::make(2, -1, 1), b = Qnum3D::make(-2, -1, 1), c = Qnum3D::make(1, -1, 1);
  const auto rule = radial_rule(radial_order_for(a, c), 1.0);
  CHECK(std::abs(orthonormality3d(kUnit, a, a, rule) - 1.0) < 1e-13);
  CHECK(std::abs(orthonormality3d(kUnit, a, b, rule)) < 1e-13);
  CHECK(std::abs(orthonormality3d(kUnit, a, c, rule)) < 1e-13);
  // angular orthogonality is exact
  CHECK(orthonormality3d(kUnit, a, Qnum3D::make(2, 1, 1), rule) == 0.0);
  // both signed zeros at kappa > 0 are orthogonal
  const Qnum3D zp = Qnum3D::make(Sign::plus, 0, 2, 1), zm = Qnum3D::make(Sign::minus, 0, 2, 1);
  CHECK(std::abs(orthonormality3d(kUnit, zp, zm, rule)) < 1e-13);
}

TEST_CASE("completeness reproduces an in-basis state") {
  const Qnum3D q = Qnum3D::make(-1, 1, -1);
  const SpinorField f = [&](double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    return wavefunction3d(kUnit, q, r, r > 0 ? std::acos(z / r) : 0.0, std::atan2(y, x));
  };
  CHECK(completeness_probe(kUnit, {3, 2}, f) <= 1e-8);
}

TEST_CASE("completeness probe decreases with the cutoffs") {
  const auto f = gaussian_test_spinor(kUnit);
  const double e1 = completeness_probe(kUnit, {6, 2}, f);
  const double e2 = completeness_probe(kUnit, {12, 3}, f);
  CHECK(e2 < e1);
  CHECK(e1 < 1.0);
}

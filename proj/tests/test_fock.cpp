#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "diracosc/fock.hpp"
#include "diracosc/osc1d.hpp"
#include "diracosc/sparse_io.hpp"

using namespace diracosc;
using namespace diracosc::fock;

namespace {
const OscParams kUnit{1.0, 1.0};

Eigen::MatrixXcd dense(const FockOperator& op) { return Eigen::MatrixXcd(op); }

FockOperator anticomm(const FockOperator& a, const FockOperator& b) {
  return FockOperator(a * b + b * a);
}

std::vector<double> sorted_eigenvalues(const FockOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(h));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> subset_sums(const std::vector<double>& e) {
  std::vector<double> out;
  for (long mask = 0; mask < (1L << e.size()); ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (mask >> i & 1) s += e[i];
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("single-mode ladder operators") {
  const auto m = ModeSet::one_dimensional(kUnit, 0, 0);
  const auto b = dense(ladder(m, 0, Ladder::annihilate));
  CHECK(b(0, 1) == Complex(1.0));
  CHECK(b(0, 0) == Complex(0.0));
  CHECK(b(1, 0) == Complex(0.0));
  CHECK(b(1, 1) == Complex(0.0));
  CHECK(dense(ladder(m, 0, Ladder::create)) == b.adjoint());
}

TEST_CASE("mode set ordering and limits") {
  const auto m = ModeSet::one_dimensional(kUnit, 2, 2);
  REQUIRE(m.size() == 5);
  for (int k = 1; k < m.size(); ++k) CHECK(m[k - 1].energy < m[k].energy);
  CHECK(m.index_of_1d(-2) == 0);
  CHECK(m.index_of_1d(0) == 2);
  CHECK_THROWS_AS(m.index_of_1d(7), DomainError);
  CHECK_THROWS_AS(ModeSet::one_dimensional(kUnit, std::vector<int>{1, 1}), DomainError);
  CHECK_THROWS_AS(ModeSet::one_dimensional(kUnit, 7, 7), DomainError);
  CHECK_NOTHROW(ModeSet::one_dimensional(kUnit, 7, 6));
}

TEST_CASE("canonical anticommutators and nilpotency") {
  const auto m = ModeSet::one_dimensional(kUnit, 2, 3);
  const auto id = identity(m);
  for (int a = 0; a < m.size(); ++a) {
    const auto ba = ladder(m, a, Ladder::annihilate);
    CHECK(max_abs(FockOperator(ba * ba)) == 0.0);
    for (int b = 0; b < m.size(); ++b) {
      const auto bb = ladder(m, b, Ladder::annihilate);
      const auto bbd = ladder(m, b, Ladder::create);
      CHECK(max_abs_diff(anticomm(ba, bbd), a == b ? id : FockOperator(id * 0.0)) == 0.0);
      CHECK(max_abs(anticomm(ba, bb)) == 0.0);
    }
  }
}

TEST_CASE("three-dimensional anticommutators across families") {
  std::vector<osc3d::Qnum3D> states;
  for (const auto& q : osc3d::enumerate_states(1, 1))
    if (q.two_g == 1) states.push_back(q);
  const auto m = ModeSet::three_dimensional(kUnit, states);
  const auto labels = particle_labels(m);
  const auto id = identity(m);
  for (const auto& a : labels)
    for (const auto& b : labels) {
      const auto x = family_operator(m, a, Ladder::annihilate);
      const auto yd = family_operator(m, b, Ladder::create);
      const auto y = family_operator(m, b, Ladder::annihilate);
      CHECK(max_abs_diff(anticomm(x, yd), a.mode == b.mode ? id : FockOperator(id * 0.0)) == 0.0);
      CHECK(max_abs(anticomm(x, y)) == 0.0);
    }
  bool seen[4] = {false, false, false, false};
  for (const auto& l : labels) seen[static_cast<int>(l.family)] = true;
  for (bool s : seen) CHECK(s);
}

TEST_CASE("sea vacuum for modes -1, 0, 1") {
  const auto m = ModeSet::one_dimensional(kUnit, 1, 1);
  const long idx = sea_vacuum_index(m);
  CHECK(idx == 1);  // only the n = -1 mode (lowest energy, bit 0) is filled
  const auto vac = sea_vacuum(m);
  CHECK(std::abs(vac[idx] - 1.0) == 0.0);
  CHECK(vac.norm() == doctest::Approx(1.0));
  const auto hn = hamiltonian_normal_ordered(m);
  CHECK(std::abs(expectation(hn, vac)) == 0.0);
  CHECK(std::abs(expectation(hamiltonian_raw(m), vac) + std::sqrt(3.0)) < 1e-15);
  // every particle annihilator kills the vacuum
  for (const auto& l : particle_labels(m))
    CHECK((family_operator(m, l, Ladder::annihilate) * vac).norm() == 0.0);
}

TEST_CASE("normal-ordered spectrum is the set of excitation subset sums") {
  const auto m = ModeSet::one_dimensional(kUnit, 2, 2);
  const auto spec = sorted_eigenvalues(hamiltonian_normal_ordered(m));
  std::vector<double> exc;
  for (const auto& mode : m.modes()) exc.push_back(std::abs(mode.energy));
  const auto expect = subset_sums(exc);
  REQUIRE(spec.size() == expect.size());
  for (std::size_t i = 0; i < spec.size(); ++i) CHECK(std::abs(spec[i] - expect[i]) < 1e-12);
  CHECK(spec[0] == doctest::Approx(0.0).epsilon(1e-14));
  // lowest excitations: E_0 = 1, then the pair sqrt(3), then sqrt(5)
  CHECK(spec[1] == doctest::Approx(1.0));
  CHECK(spec[2] == doctest::Approx(std::sqrt(3.0)));
  CHECK(spec[3] == doctest::Approx(std::sqrt(3.0)));
  const auto it = std::find_if(spec.begin(), spec.end(), [](double v) { return std::abs(v - std::sqrt(5.0)) < 1e-12; });
  CHECK(it != spec.end());
  // raw spectrum is shifted by the sea energy
  const auto raw = sorted_eigenvalues(hamiltonian_raw(m));
  CHECK(raw[0] == doctest::Approx(-std::sqrt(3.0) - std::sqrt(5.0)));
}

TEST_CASE("particle labels and charges") {
  const auto m = ModeSet::one_dimensional(kUnit, 2, 1);
  const auto labels = particle_labels(m);
  REQUIRE(labels.size() == 4);
  int particles = 0, anti = 0;
  for (const auto& l : labels) {
    CHECK(l.energy >= 0.0);
    if (l.antiparticle) {
      ++anti;
      CHECK(l.family == Family::d);
    } else {
      ++particles;
      CHECK(l.family == Family::c);
    }
  }
  CHECK(particles == 2);
  CHECK(anti == 2);

  const double e = 0.3;
  const auto q = charge_operator(m, e);
  const auto vac = sea_vacuum(m);
  CHECK(std::abs(expectation(q, vac)) == 0.0);
  for (const auto& l : labels) {
    FockState s = family_operator(m, l, Ladder::create) * vac;
    s /= s.norm();
    CHECK(std::abs(expectation(q, s) - (l.antiparticle ? -e : e)) < 1e-15);
  }
  const auto h = hamiltonian_normal_ordered(m);
  CHECK(max_abs(FockOperator(q * h - h * q)) == 0.0);
}

TEST_CASE("one-body lift") {
  const auto m = ModeSet::one_dimensional(kUnit, 1, 1);
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  for (int k = 0; k < 3; ++k) diag(k, k) = m[k].energy;
  CHECK(max_abs_diff(one_body_lift(m, diag), hamiltonian_raw(m)) < 1e-15);
  // identity kernel lifts to the number operator
  const auto n = one_body_lift(m, Eigen::MatrixXcd::Identity(3, 3));
  const auto nd = dense(n);
  for (long k = 0; k < m.dimension(); ++k) CHECK(nd(k, k).real() == __builtin_popcountl(k));
  CHECK_THROWS_AS(one_body_lift(m, Eigen::MatrixXcd::Identity(2, 2)), DomainError);
}

TEST_CASE("momentum operator") {
  const auto m = ModeSet::one_dimensional(kUnit, 3, 3);
  const auto k = momentum_kernel(kUnit, m);
  CHECK((k - k.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const auto p = one_body_lift(m, k);
  CHECK(max_abs_diff(p, FockOperator(p.adjoint())) < 1e-14);
  const auto q = charge_operator(m);
  CHECK(max_abs(FockOperator(q * p - p * q)) < 1e-14);
  // <psi_0|p|psi_0> = 0 by parity
  CHECK(std::abs(k(m.index_of_1d(0), m.index_of_1d(0))) < 1e-15);
}

TEST_CASE("sparse export round-trip") {
  const auto m = ModeSet::one_dimensional(kUnit, 1, 2);
  const std::vector<NamedOperator> ops{{"H", hamiltonian_normal_ordered(m)},
                                       {"b_0", ladder(m, 0, Ladder::annihilate)},
                                       {"Q", charge_operator(m)}};
  std::stringstream ss;
  write_operators(ss, m, ops);
  const auto back = read_operators(ss);
  REQUIRE(back.operators.size() == 3);
  CHECK(back.mode_lines.size() == 4);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    CHECK(back.operators[i].name == ops[i].name);
    CHECK(max_abs_diff(back.operators[i].op, ops[i].op) == 0.0);
  }

  std::stringstream bad("# operator: X\n# dimension: 2\n# nnz: 2\n0 1 1 0\n");
  CHECK_THROWS_AS(read_operators(bad), DomainError);
  std::stringstream junk("# operator: X\n# dimension: 2\n0 one 1 0\n");
  CHECK_THROWS_AS(read_operators(junk), DomainError);
  std::stringstream outside("# operator: X\n# dimension: 2\n0 2 1 0\n");
  CHECK_THROWS_AS(read_operators(outside), DomainError);
}

#include "diracosc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diracosc/fock.hpp"
#include "diracosc/osc1d.hpp"
#include "diracosc/osc3d.hpp"
#include "diracosc/propagator.hpp"
#include "diracosc/specfun.hpp"

namespace diracosc::checks {

namespace {

void add(std::vector<CheckResult>& out, const CheckConfig& cfg, std::string name, double measured,
         double tolerance) {
  const double tol = cfg.tolerance.value_or(tolerance);
  const bool pass = std::isfinite(measured) && measured <= tol;
  out.push_back(CheckResult{std::move(name), measured, tol, pass});
}

int order_or(const CheckConfig& cfg, int fallback) {
  return cfg.quad_order > 0 ? cfg.quad_order : fallback;
}

// ---- ortho -------------------------------------------------------------

void suite_ortho(const CheckConfig& cfg, std::vector<CheckResult>& out) {
  const auto& p = cfg.params;
  out.reserve(out.size() + 3);
  add(out, cfg, "ortho1d_max_deviation",
      ortho1d_deviation(p, cfg.n_max, order_or(cfg, default_quadrature_order(cfg.n_max))), 1e-9);
  const auto st = radial3d_stats(p, std::min(cfg.n_max, 10), cfg.kappa_max);
  add(out, cfg, "norm3d_max_deviation", st.norm_deviation, 1e-8);
  add(out, cfg, "ortho3d_max_deviation", st.ortho_deviation, 1e-8);
}

// ---- complete ----------------------------------------------------------

void suite_complete(const CheckConfig& cfg, std::vector<CheckResult>& out) {
  const auto& p = cfg.params;
  const auto f = osc3d::gaussian_test_spinor(p);
  const std::vector<osc3d::CompletenessCutoffs> ladder{{10, 2}, {20, 4}, {30, 6}};
  std::vector<double> r;
  for (const auto& c : ladder) r.push_back(osc3d::completeness_probe(p, c, f));
  add(out, cfg, "complete3d_residual_n30_k6", r.back(), 1e-3);
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) worst_ratio = std::max(worst_ratio, r[i] / r[i - 1]);
  // monotone decrease <=> every successive ratio stays below 1
  add(out, cfg, "complete3d_successive_ratio", worst_ratio, 1.0);

  // (1+1) completeness: projector onto modes |n| <= N applied to a Gaussian spinor
  const int n_1d = std::max(cfg.n_max, 30);
  const auto grid = osc1d::hermite_grid(p, order_or(cfg, default_quadrature_order(n_1d)));
  const double s = std::sqrt(p.m_omega());
  std::vector<Spinor> g(grid.z.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double z = grid.z[i];
    const double env = std::exp(-0.5 * std::pow(s * (z - 0.3 / s), 2));
    g[i] = Spinor{env, 0.0, Complex(0.0, 0.5) * env, 0.0};
  }
  std::vector<Spinor> rest = g;
  for (int n = -n_1d; n <= n_1d; ++n) {
    const auto psi = osc1d::sample(p, n, grid);
    const Complex c = osc1d::inner(psi, g, grid);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = rest[i] - c * psi[i];
  }
  const double res = std::sqrt(osc1d::inner(rest, rest, grid).real() / osc1d::inner(g, g, grid).real());
  add(out, cfg, "complete1d_residual", res, 1e-10);
}

// ---- residual ----------------------------------------------------------

void suite_residual(const CheckConfig& cfg, std::vector<CheckResult>& out) {
  const auto& p = cfg.params;
  const int nmax = cfg.n_max;

  // spectrum laws
  double sym = 0.0, law = 0.0;
  for (int n = 0; n <= std::max(nmax, 50); ++n) {
    const double e = osc1d::energy(p, n);
    if (n > 0) sym = std::max(sym, std::abs(osc1d::energy(p, -n) + e));
    const double expect = std::sqrt(2.0 * n * p.m_omega() + p.mass * p.mass);
    law = std::max(law, std::abs(e - expect) / expect);
  }
  add(out, cfg, "spectrum_sign_symmetry", sym, 0.0);
  add(out, cfg, "spectrum_ground_energy", std::abs(osc1d::energy(p, 0) - p.mass), 0.0);
  add(out, cfg, "spectrum_closed_form", law, 1e-14);

  const double gap_dev = std::abs(osc1d::delta_e_gap(OscParams(p.mass, 0.0)) - 2.0 * p.mass);
  add(out, cfg, "gap_free_limit", gap_dev, 0.0);
  double gap_small = 0.0;
  for (double r : {1e-2, 1e-3, 1e-4}) {
    const double w = r * p.mass;
    const double dev = std::abs(osc1d::delta_e_gap(OscParams(p.mass, w)) - (2.0 * p.mass + w));
    gap_small = std::max(gap_small, dev / (w * w / p.mass));
  }
  // measured in units of the allowed w^2/m
  add(out, cfg, "gap_small_omega", gap_small, 1.0);

  const auto lim = free_limit_stats(p.mass, 10);
  add(out, cfg, "free_limit_slope", lim.slope_error, 1e-2);
  add(out, cfg, "free_limit_ratio", lim.ratio_error, 1e-2);

  // 1D eigen-residual, spectral and finite difference
  const auto hg = osc1d::hermite_grid(p, order_or(cfg, default_quadrature_order(nmax)));
  const double s = std::sqrt(p.m_omega());
  const double half = (std::sqrt(2.0 * nmax + 1.0) + 8.0) / s;
  const auto ug = osc1d::uniform_grid(p, -half, half, 1201);
  double r_spec = 0.0, r_fd = 0.0;
  for (int n = -nmax; n <= nmax; ++n) {
    r_spec = std::max(r_spec, osc1d::eigen_residual(p, n, hg, osc1d::Derivative::spectral));
    r_fd = std::max(r_fd, osc1d::eigen_residual(p, n, ug, osc1d::Derivative::finite_difference));
  }
  add(out, cfg, "residual1d_spectral", r_spec, 1e-6);
  add(out, cfg, "residual1d_finite_difference", r_fd, 1e-6);

  double eta = 0.0;
  for (int n = -nmax; n <= nmax; ++n) {
    const auto e = osc1d::eta_consistency(p, n, default_quadrature_order(nmax));
    eta = std::max(eta, e.upper_residual);
    if (n != 0) eta = std::max(eta, e.lower_residual);
  }
  add(out, cfg, "eta_second_order_form", eta, 1e-8);

  // covariant form: sigma F equals twice the Hamiltonian coupling
  const osc1d::FourVector x{0.4, 0.0, 0.0, 0.7};
  add(out, cfg, "covariant_coupling_ratio",
      std::abs(osc1d::covariant_coupling_ratio(x, p) - Complex(2.0, 0.0)), 1e-12);
  double cov = 0.0;
  for (int n = -5; n <= 5; ++n)
    for (double z : {-1.3, -0.2, 0.6, 1.9}) {
      const Spinor r = osc1d::covariant_residual(p, n, z, 0.37, 2.0);
      cov = std::max(cov, std::sqrt(norm2(r)));
    }
  add(out, cfg, "covariant_residual", cov, 1e-10);

  const auto st = radial3d_stats(p, std::min(nmax, 10), cfg.kappa_max);
  add(out, cfg, "radial3d_ode_residual", st.ode_residual, 1e-6);
}

// ---- fock --------------------------------------------------------------

std::vector<int> symmetric_labels(int count) {
  std::vector<int> labels;
  const int lo = -(count / 2);
  for (int k = 0; k < count; ++k) labels.push_back(lo + k);
  return labels;
}

double anticommutator_deviation(const fock::ModeSet& modes) {
  using fock::Ladder;
  const auto id = fock::identity(modes);
  double dev = 0.0;
  for (int i = 0; i < modes.size(); ++i) {
    const auto bi = fock::ladder(modes, i, Ladder::annihilate);
    for (int j = 0; j < modes.size(); ++j) {
      const auto bj = fock::ladder(modes, j, Ladder::annihilate);
      const auto bjd = fock::ladder(modes, j, Ladder::create);
      fock::FockOperator ac = bi * bjd + bjd * bi;
      if (i == j) ac -= id;
      dev = std::max(dev, fock::max_abs(ac));
      dev = std::max(dev, fock::max_abs(fock::FockOperator(bi * bj + bj * bi)));
    }
  }
  return dev;
}

void suite_fock(const CheckConfig& cfg, std::vector<CheckResult>& out) {
  using fock::Ladder;
  const auto& p = cfg.params;
  const int m_alg = std::min(cfg.fock_modes, 10);
  const auto alg_modes = fock::ModeSet::one_dimensional(p, symmetric_labels(m_alg));
  add(out, cfg, "fock_anticommutator_1d", anticommutator_deviation(alg_modes), 1e-12);

  std::vector<osc3d::Qnum3D> states3;
  for (const auto& q : osc3d::enumerate_states(1, 1))
    if (q.two_g == 1) states3.push_back(q);
  add(out, cfg, "fock_anticommutator_3d",
      anticommutator_deviation(fock::ModeSet::three_dimensional(p, states3)), 1e-12);

  const auto modes = fock::ModeSet::one_dimensional(p, symmetric_labels(cfg.fock_modes));
  const auto h = fock::hamiltonian_normal_ordered(modes);
  const auto raw = fock::hamiltonian_raw(modes);
  const auto vac = fock::sea_vacuum(modes);

  add(out, cfg, "fock_ground_state", (h * vac).norm(), 1e-12);

  double created = 0.0;
  for (int i = 0; i < modes.size(); ++i)
    if (modes[i].energy < 0.0)
      created = std::max(created, (fock::ladder(modes, i, Ladder::create) * vac).norm());
  add(out, cfg, "fock_sea_filled", created, 0.0);

  const Complex e0 = fock::expectation(raw, vac);
  const double shift =
      fock::max_abs_diff(h, fock::FockOperator(raw - e0 * fock::identity(modes)));
  add(out, cfg, "fock_vacuum_subtraction", shift, 1e-10);

  const auto q = fock::charge_operator(modes);
  add(out, cfg, "fock_charge_commutator", fock::max_abs(fock::FockOperator(q * h - h * q)), 1e-10);
  add(out, cfg, "fock_vacuum_charge", std::abs(fock::expectation(q, vac)), 1e-12);

  const auto k = fock::momentum_kernel(p, modes);
  const auto pm = fock::one_body_lift(modes, k);
  add(out, cfg, "fock_momentum_hermitian",
      fock::max_abs(fock::FockOperator(pm - fock::FockOperator(pm.adjoint()))), 1e-10);
  add(out, cfg, "fock_momentum_charge_commutator",
      fock::max_abs(fock::FockOperator(q * pm - pm * q)), 1e-10);

  // spectrum against subset sums of excitation energies
  const int m_spec = std::min(cfg.fock_modes, 8);
  const auto spec_modes = fock::ModeSet::one_dimensional(p, symmetric_labels(m_spec));
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(fock::hamiltonian_normal_ordered(spec_modes));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
  std::vector<double> got(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<double> want;
  for (long mask = 0; mask < spec_modes.dimension(); ++mask) {
    double e = 0.0;
    for (int i = 0; i < spec_modes.size(); ++i)
      if (mask & (1L << i)) e += std::abs(spec_modes[i].energy);
    want.push_back(e);
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  double spec_dev = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) spec_dev = std::max(spec_dev, std::abs(got[i] - want[i]));
  add(out, cfg, "fock_spectrum_subset_sums", spec_dev, 1e-10);
  add(out, cfg, "fock_min_eigenvalue", std::max(0.0, -got.front()), 1e-10);
}

// ---- propagator --------------------------------------------------------

void suite_propagator(const CheckConfig& cfg, std::vector<CheckResult>& out) {
  namespace pr = propagator;
  const auto& p = cfg.params;
  const double s = std::sqrt(p.m_omega());

  double hf = 0.0;
  for (int n = -20; n <= 20; ++n)
    for (double x = -6.0; x <= 6.0; x += 0.5) {
      const Spinor a = pr::mode_spinor_momentum(p, n, x * s);
      const Spinor b = pr::mode_spinor_momentum_quadrature(p, n, x * s);
      for (int c = 0; c < 4; ++c) hf = std::max(hf, std::abs(a[c] - b[c]) * std::pow(p.m_omega(), 0.25));
    }
  add(out, cfg, "hermite_fourier_identity", hf, 1e-8);

  double contour = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (double dt : {0.1, 0.5, 1.0, 2.5, 5.0})
      for (double sign : {1.0, -1.0}) {
        const auto c = pr::contour_identity_check(p, n, sign * dt);
        contour = std::max(contour, c.error * 2.0 * std::abs(osc1d::energy(p, n)));
      }
  // relative to |rhs| = 1/2E
  add(out, cfg, "contour_identity", contour, 1e-6);

  double fe = 0.0;
  const int nf = 4;
  for (double t : {0.8, 0.0, -0.6})
    for (double zp : {-0.5, 0.9}) {
      const auto a = pr::coordinate_propagator(p, 0.3 / s, t / p.mass, zp / s, 0.0, nf);
      const auto b = pr::fock_two_point(p, 0.3 / s, t / p.mass, zp / s, 0.0, nf);
      fe = std::max(fe, (a.value - b.value).cwiseAbs().maxCoeff() / std::sqrt(s));
    }
  add(out, cfg, "fock_two_point_equivalence", fe, 1e-10);

  const int np = cfg.n_max;
  const double p_max = std::sqrt(pr::pole_square(p, np)) + 0.5 * p.mass;
  const auto poles = pr::locate_poles(p, np, 0.37 * s, p_max);
  std::vector<double> expect;
  for (int n = 0; n <= np; ++n) {
    expect.push_back(osc1d::energy(p, n));
    expect.push_back(-osc1d::energy(p, n));
  }
  std::sort(expect.begin(), expect.end());
  double pole_dev = std::numeric_limits<double>::infinity();
  if (poles.size() == expect.size()) {
    pole_dev = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i)
      pole_dev = std::max(pole_dev, std::abs(poles[i] - expect[i]));
  }
  add(out, cfg, "momentum_pole_locations", pole_dev, 1e-10);

  // spacelike pair (z, 0.1/m) and (z + 2/sqrt(mw), 0)
  std::vector<double> diffs;
  for (int n : {8, 16, 32}) {
    const auto a = pr::coordinate_propagator(p, 0.0, 0.1 / p.mass, 2.0 / s, 0.0, n);
    const auto b = pr::coordinate_propagator(p, 0.0, 0.1 / p.mass, 2.0 / s, 0.0, 2 * n);
    diffs.push_back(pr::frobenius_distance(a.value, b.value));
  }
  double trunc = 0.0;
  for (std::size_t i = 1; i < diffs.size(); ++i) trunc = std::max(trunc, diffs[i] / diffs[i - 1]);
  add(out, cfg, "truncation_successive_ratio", trunc, 1.0);
}

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "ortho") return Suite::ortho;
  if (name == "complete") return Suite::complete;
  if (name == "residual") return Suite::residual;
  if (name == "fock") return Suite::fock;
  if (name == "propagator") return Suite::propagator;
  if (name == "all") return Suite::all;
  return std::nullopt;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::ortho: return "ortho";
    case Suite::complete: return "complete";
    case Suite::residual: return "residual";
    case Suite::fock: return "fock";
    case Suite::propagator: return "propagator";
    case Suite::all: return "all";
  }
  return "?";
}

std::vector<CheckResult> run_suite(Suite suite, const CheckConfig& config) {
  require_oscillating(config.params);
  if (config.n_max < 0 || config.kappa_max < 0) throw DomainError("cutoffs must be nonnegative");
  if (config.fock_modes < 1 || config.fock_modes > fock::ModeSet::kMaxModes)
    throw DomainError("fock_modes must be in [1, 14]");
  std::vector<CheckResult> out;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::ortho) suite_ortho(config, out);
  if (all || suite == Suite::complete) suite_complete(config, out);
  if (all || suite == Suite::residual) suite_residual(config, out);
  if (all || suite == Suite::fock) suite_fock(config, out);
  if (all || suite == Suite::propagator) suite_propagator(config, out);
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

double ortho1d_deviation(const OscParams& p, int n_max, int order) {
  const auto g = osc1d::gram_matrix(p, -n_max, n_max, order);
  double dev = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) dev = std::max(dev, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return dev;
}

Radial3DStats radial3d_stats(const OscParams& p, int n_max, int kappa_max) {
  Radial3DStats st;
  const double s = std::sqrt(p.m_omega());
  const double len = 1.0 / s;
  for (int kappa = -kappa_max; kappa <= kappa_max; ++kappa) {
    if (kappa == 0) continue;
    // the radial pair does not depend on g
    std::vector<osc3d::Qnum3D> states;
    for (const auto& q : osc3d::enumerate_states(n_max, std::abs(kappa)))
      if (q.kappa == kappa && q.two_g == 1) states.push_back(q);
    if (states.empty()) continue;
    int order = 0;
    for (const auto& q : states) order = std::max(order, osc3d::radial_order_for(q, q));
    const auto rule = radial_rule(order, len);
    const auto count = static_cast<Eigen::Index>(states.size());
    const auto nodes = static_cast<Eigen::Index>(rule.nodes.size());
    Eigen::MatrixXd fg(2 * nodes, count);
    for (Eigen::Index c = 0; c < count; ++c) {
      const auto rp = osc3d::radial_solution(p, states[static_cast<std::size_t>(c)]);
      for (Eigen::Index i = 0; i < nodes; ++i) {
        const double r = rule.nodes[static_cast<std::size_t>(i)];
        const double w = std::sqrt(rule.weights[static_cast<std::size_t>(i)]);
        fg(i, c) = w * rp.F(r);
        fg(nodes + i, c) = w * rp.G(r);
      }
      double peak = 0.0, worst = 0.0;
      for (int k = 0; k <= 200; ++k) {
        const double r = (0.1 + 7.9 * k / 200.0) * len;
        peak = std::max({peak, std::abs(rp.F(r)), std::abs(rp.G(r))});
        const auto [a, b] = osc3d::radial_residual(p, states[static_cast<std::size_t>(c)], r);
        worst = std::max({worst, std::abs(a), std::abs(b)});
      }
      st.ode_residual = std::max(st.ode_residual, worst / (s * peak));
    }
    const Eigen::MatrixXd gram = fg.transpose() * fg;
    for (Eigen::Index a = 0; a < count; ++a)
      for (Eigen::Index b = 0; b < count; ++b) {
        if (a == b)
          st.norm_deviation = std::max(st.norm_deviation, std::abs(gram(a, b) - 1.0));
        else
          st.ortho_deviation = std::max(st.ortho_deviation, std::abs(gram(a, b)));
      }
  }
  return st;
}

LimitStats free_limit_stats(double mass, int n_max) {
  LimitStats st;
  auto excess = [&](int n, double ratio) {
    return osc1d::energy(OscParams(mass, ratio * mass), n) - mass;
  };
  for (int n = 1; n <= n_max; ++n) {
    const double w = 1e-4 * mass;
    st.slope_error = std::max(st.slope_error, std::abs(excess(n, 1e-4) / w - n) / n);
    const double ratio = excess(n, 1e-3) / excess(n, 1e-4);
    st.ratio_error = std::max(st.ratio_error, std::abs(ratio / 10.0 - 1.0));
  }
  return st;
}

}  // namespace diracosc::checks

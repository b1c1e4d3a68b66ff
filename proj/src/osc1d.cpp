#include "diracosc/osc1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace diracosc::osc1d {

namespace {

constexpr Complex kI(0.0, 1.0);

// 8th-order central first-derivative stencil, offsets 1..4.
constexpr std::array<double, 4> kFd8 = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};

std::vector<Complex> raw_derivative(const Grid& grid, std::span<const Complex> f,
                                   Derivative method) {
  std::vector<Complex> d(f.size());
  if (method == Derivative::spectral) {
    Eigen::Map<const Eigen::VectorXcd> fv(f.data(), static_cast<long>(f.size()));
    Eigen::VectorXcd dv = grid.diff.cast<Complex>() * fv;
    for (std::size_t i = 0; i < f.size(); ++i) d[i] = dv[static_cast<long>(i)];
    return d;
  }
  const double h = grid.z[1] - grid.z[0];
  const auto n = static_cast<long>(f.size());
  for (long i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (long k = 1; k <= 4; ++k) {
      const Complex right = i + k < n ? f[i + k] : 0.0;
      const Complex left = i - k >= 0 ? f[i - k] : 0.0;
      acc += kFd8[k - 1] * (right - left);
    }
    d[i] = acc / h;
  }
  return d;
}

// Differentiates h_1(zeta) and compares with the analytic derivative.
void self_test(const Grid& grid, Derivative method) {
  const double s = grid.sqrt_m_omega;
  std::vector<Complex> f(grid.z.size());
  std::vector<double> exact(grid.z.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    const auto h = hermite_functions(2, s * grid.z[i]);
    f[i] = h[1];
    exact[i] = s * (std::sqrt(0.5) * h[0] - h[2]);
    scale = std::max(scale, std::abs(exact[i]));
  }
  const auto d = raw_derivative(grid, f, method);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(d[i] - exact[i]));
  const double tol = method == Derivative::spectral ? 1e-10 : 1e-6;
  if (!(scale > 0.0) || err > tol * scale)
    throw NumericalError("differentiation self-test failed (relative error " +
                         std::to_string(scale > 0.0 ? err / scale : err) +
                         "): grid too coarse or too narrow");
}

}  // namespace

double energy(const OscParams& p, int n) {
  const double e = std::sqrt(2.0 * std::abs(static_cast<double>(n)) * p.mass * p.omega +
                             p.mass * p.mass);
  return n >= 0 ? e : -e;
}

double delta_e_gap(const OscParams& p) {
  return p.mass + std::sqrt(p.mass * p.mass + 2.0 * p.mass * p.omega);
}

XiSpinors spinor_xi(const OscParams& p, int n) {
  const double e = energy(p, n);
  const double m = p.mass;
  const double a = std::sqrt(std::max(0.0, (e + m) / (2.0 * e)));
  const double b = std::sqrt(std::max(0.0, (e - m) / (2.0 * e)));
  const double sgn = e >= 0.0 ? 1.0 : -1.0;
  XiSpinors xi;
  xi.upper = {a, 0.0};
  xi.lower = {-kI * sgn * b, 0.0};
  return xi;
}

Spinor wavefunction(const OscParams& p, int n, double z) {
  require_oscillating(p);
  const double mw = p.m_omega();
  const double pref = std::pow(mw, 0.25);
  const int k = std::abs(n);
  const auto h = hermite_functions(k, std::sqrt(mw) * z);
  const auto xi = spinor_xi(p, n);
  Spinor out{0.0, 0.0, 0.0, 0.0};
  out[0] = pref * h[k] * xi.upper[0];
  if (k > 0) out[2] = pref * h[k - 1] * xi.lower[0];
  return out;
}

Spinor wavefunction_dz(const OscParams& p, int n, double z) {
  require_oscillating(p);
  const double mw = p.m_omega();
  const double s = std::sqrt(mw);
  const double pref = std::pow(mw, 0.25) * s;
  const int k = std::abs(n);
  const auto h = hermite_functions(k + 1, s * z);
  // h_k' = sqrt(k/2) h_{k-1} - sqrt((k+1)/2) h_{k+1}
  auto dh = [&](int q) {
    const double down = q > 0 ? std::sqrt(0.5 * q) * h[q - 1] : 0.0;
    return down - std::sqrt(0.5 * (q + 1)) * h[q + 1];
  };
  const auto xi = spinor_xi(p, n);
  Spinor out{0.0, 0.0, 0.0, 0.0};
  out[0] = pref * dh(k) * xi.upper[0];
  if (k > 0) out[2] = pref * dh(k - 1) * xi.lower[0];
  return out;
}

Spinor wavefunction(const OscParams& p, int n, double z, double t) {
  return std::polar(1.0, -energy(p, n) * t) * wavefunction(p, n, z);
}

Grid hermite_grid(const OscParams& p, int order) {
  require_oscillating(p);
  const auto rule = gauss_hermite_rule(order, WeightConvention::folded);
  Grid g;
  g.kind = GridKind::hermite_collocation;
  g.sqrt_m_omega = std::sqrt(p.m_omega());
  const double s = g.sqrt_m_omega;
  const auto k = static_cast<std::size_t>(order);
  g.z.resize(k);
  g.weights.resize(k);
  // basis[i][q] = h_q(zeta_i), q = 0..order
  std::vector<std::vector<double>> basis(k);
  for (std::size_t i = 0; i < k; ++i) {
    g.z[i] = rule.nodes[i] / s;
    g.weights[i] = rule.weights[i] / s;
    basis[i] = hermite_functions(order, rule.nodes[i]);
  }
  // D_ij = sqrt(mw) sum_q h_q'(zeta_i) h_q(zeta_j) W_j
  Eigen::MatrixXd dh(order, order);
  Eigen::MatrixXd proj(order, order);
  for (int i = 0; i < order; ++i) {
    for (int q = 0; q < order; ++q) {
      const double down = q > 0 ? std::sqrt(0.5 * q) * basis[i][q - 1] : 0.0;
      dh(i, q) = down - std::sqrt(0.5 * (q + 1)) * basis[i][q + 1];
      proj(q, i) = basis[i][q] * rule.weights[i];
    }
  }
  g.diff = s * dh * proj;
  return g;
}

Grid uniform_grid(const OscParams& p, double z_min, double z_max, int count) {
  if (count < 2) throw DomainError("uniform_grid: count must be >= 2");
  if (!(z_max > z_min)) throw DomainError("uniform_grid: z_max must exceed z_min");
  Grid g;
  g.kind = GridKind::uniform;
  g.sqrt_m_omega = std::sqrt(p.m_omega());
  const double h = (z_max - z_min) / (count - 1);
  g.z.resize(static_cast<std::size_t>(count));
  g.weights.assign(static_cast<std::size_t>(count), h);
  for (int i = 0; i < count; ++i) g.z[i] = z_min + h * i;
  g.weights.front() = g.weights.back() = 0.5 * h;
  return g;
}

std::vector<Complex> differentiate(const Grid& grid, std::span<const Complex> f,
                                   Derivative method) {
  if (f.size() != grid.z.size()) throw DomainError("differentiate: sample count mismatch");
  if (method == Derivative::spectral && grid.kind != GridKind::hermite_collocation)
    throw DomainError("spectral differentiation needs a Hermite collocation grid");
  if (method == Derivative::finite_difference && grid.kind != GridKind::uniform)
    throw DomainError("finite differences need a uniform grid");
  if (method == Derivative::finite_difference && grid.z.size() < 9)
    throw NumericalError("finite differences need at least 9 points");
  self_test(grid, method);
  return raw_derivative(grid, f, method);
}

std::vector<Spinor> hamiltonian_apply(const OscParams& p, std::span<const Spinor> psi,
                                      const Grid& grid, Derivative method) {
  require_oscillating(p);
  if (psi.size() != grid.z.size()) throw DomainError("hamiltonian_apply: sample count mismatch");
  const std::size_t n = psi.size();
  const double mw = p.m_omega();
  const double m = p.mass;

  std::array<std::vector<Complex>, 4> dpsi;
  for (int c = 0; c < 4; ++c) {
    std::vector<Complex> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = psi[i][c];
    dpsi[c] = differentiate(grid, comp, method);
  }

  std::vector<Spinor> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = grid.z[i];
    // v = (d_z + m w beta z) psi
    Spinor v;
    v[0] = dpsi[0][i] + mw * z * psi[i][0];
    v[1] = dpsi[1][i] + mw * z * psi[i][1];
    v[2] = dpsi[2][i] - mw * z * psi[i][2];
    v[3] = dpsi[3][i] - mw * z * psi[i][3];
    // -i alpha_3 v + beta m psi; alpha_3 = [[0, s3], [s3, 0]]
    out[i][0] = -kI * v[2] + m * psi[i][0];
    out[i][1] = kI * v[3] + m * psi[i][1];
    out[i][2] = -kI * v[0] - m * psi[i][2];
    out[i][3] = kI * v[1] - m * psi[i][3];
  }
  return out;
}

std::vector<Spinor> sample(const OscParams& p, int n, const Grid& grid) {
  std::vector<Spinor> out(grid.z.size());
  for (std::size_t i = 0; i < grid.z.size(); ++i) out[i] = wavefunction(p, n, grid.z[i]);
  return out;
}

Complex inner(std::span<const Spinor> a, std::span<const Spinor> b, const Grid& grid) {
  if (a.size() != grid.z.size() || b.size() != grid.z.size())
    throw DomainError("inner: sample count mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += grid.weights[i] * dot(a[i], b[i]);
  return acc;
}

double eigen_residual(const OscParams& p, int n, const Grid& grid, Derivative method) {
  const auto psi = sample(p, n, grid);
  const auto hpsi = hamiltonian_apply(p, psi, grid, method);
  const double e = energy(p, n);
  std::vector<Spinor> r(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) r[i] = hpsi[i] - Complex(e) * psi[i];
  return std::sqrt(inner(r, r, grid).real() / inner(psi, psi, grid).real());
}

Eigen::MatrixXcd gram_matrix(const OscParams& p, int n_lo, int n_hi, int order) {
  if (n_hi < n_lo) throw DomainError("gram_matrix: empty range");
  const Grid grid = [&] {
    // Only nodes and weights are needed; skip the differentiation matrix.
    const auto rule = gauss_hermite_rule(order, WeightConvention::folded);
    Grid g;
    g.kind = GridKind::hermite_collocation;
    g.sqrt_m_omega = std::sqrt(p.m_omega());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      g.z.push_back(rule.nodes[i] / g.sqrt_m_omega);
      g.weights.push_back(rule.weights[i] / g.sqrt_m_omega);
    }
    return g;
  }();
  const int count = n_hi - n_lo + 1;
  std::vector<std::vector<Spinor>> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int n = n_lo; n <= n_hi; ++n) samples.push_back(sample(p, n, grid));
  Eigen::MatrixXcd gram(count, count);
  for (int a = 0; a < count; ++a)
    for (int b = a; b < count; ++b) {
      gram(a, b) = inner(samples[a], samples[b], grid);
      gram(b, a) = std::conj(gram(a, b));
    }
  return gram;
}

EtaCheck eta_consistency(const OscParams& p, int n, int order) {
  const Grid grid = hermite_grid(p, order);
  const double s = grid.sqrt_m_omega;
  const double e = energy(p, n);
  const double base = (e * e - p.mass * p.mass) / p.m_omega();
  EtaCheck out;
  out.eta_plus = base + 1.0;
  out.eta_minus = base - 1.0;

  auto measure = [&](int component, double expected, double& rayleigh, double& residual) {
    std::vector<Complex> f(grid.z.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = wavefunction(p, n, grid.z[i])[component];
    // d/dzeta = (1/sqrt(mw)) d/dz
    auto d1 = differentiate(grid, f, Derivative::spectral);
    auto d2 = differentiate(grid, d1, Derivative::spectral);
    Complex num = 0.0;
    double den = 0.0;
    double res = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double zeta = s * grid.z[i];
      const Complex of = -d2[i] / (s * s) + zeta * zeta * f[i];
      num += grid.weights[i] * std::conj(f[i]) * of;
      den += grid.weights[i] * std::norm(f[i]);
      res += grid.weights[i] * std::norm(of - expected * f[i]);
    }
    rayleigh = num.real() / den;
    residual = std::sqrt(res / den);
  };

  measure(0, out.eta_plus, out.upper_measured, out.upper_residual);
  if (n != 0) {
    measure(2, out.eta_minus, out.lower_measured, out.lower_residual);
  } else {
    out.lower_measured = std::numeric_limits<double>::quiet_NaN();
    out.lower_residual = 0.0;
  }
  return out;
}

std::vector<LadderTerm> ladder_map(LadderDirection dir, int n) {
  const double an = std::abs(static_cast<double>(n));
  if (dir == LadderDirection::up) {
    if (n == -1) return {LadderTerm{0, std::sqrt(2.0), std::sqrt(2.0), false, 1.0}};
    return {LadderTerm{n + 1, std::sqrt(an + 1.0), std::sqrt(an), false, 1.0}};
  }
  if (n == 0) return {LadderTerm{-1, 0.0, 1.0, true, 0.5}};
  return {LadderTerm{n - 1, std::sqrt(an), std::sqrt(std::abs(static_cast<double>(n - 1))), false,
                     1.0}};
}

std::vector<LadderTerm> ladder_compose(LadderDirection first, LadderDirection second, int n) {
  std::vector<LadderTerm> out;
  for (const auto& a : ladder_map(first, n)) {
    for (const auto& b : ladder_map(second, a.target)) {
      LadderTerm t;
      t.target = b.target;
      t.upper = a.upper * b.upper;
      t.lower = a.lower * b.lower;
      t.beta_projector = a.beta_projector || b.beta_projector;
      t.scale = t.beta_projector ? 0.5 * t.lower : 1.0;
      out.push_back(t);
    }
  }
  return out;
}

FourVector frame_vector(const OscParams& p) { return {p.m_omega(), 0.0, 0.0, 0.0}; }

FourVector potential_a_mu(const FourVector& x, const OscParams& p) {
  const FourVector u = frame_vector(p);
  const FourVector xl = lower_index(x);
  double u_dot_x = 0.0;
  double x2 = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    u_dot_x += u[mu] * x[mu];
    x2 += xl[mu] * x[mu];
  }
  FourVector a{};
  for (int mu = 0; mu < 4; ++mu) a[mu] = 0.25 * (2.0 * u_dot_x * xl[mu] - x2 * u[mu]);
  return a;
}

Eigen::Matrix4d field_strength(const FourVector& x, const OscParams& p) {
  const FourVector u = frame_vector(p);
  const FourVector xl = lower_index(x);
  Eigen::Matrix4d f;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) f(mu, nu) = u[mu] * xl[nu] - xl[mu] * u[nu];
  return f;
}

Matrix4c sigma_f(const FourVector& x, const OscParams& p) {
  const auto& g = dirac_matrices();
  const Eigen::Matrix4d f = field_strength(x, p);
  Matrix4c out = Matrix4c::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      if (f(mu, nu) != 0.0) out += f(mu, nu) * g.sigma(mu, nu);
  return out;
}

Matrix4c hamiltonian_coupling(const FourVector& x, const OscParams& p) {
  const auto& g = dirac_matrices();
  Matrix4c out = Matrix4c::Zero();
  for (int k = 0; k < 3; ++k) out += x[k + 1] * g.alpha[k];
  return -kI * p.m_omega() * out;
}

Spinor covariant_residual(const OscParams& p, int n, double z, double t, double coupling_scale) {
  const auto& g = dirac_matrices();
  const double e = energy(p, n);
  const Vector4c psi = to_vector(wavefunction(p, n, z, t));
  const Vector4c dpsi_dt = -kI * e * psi;
  const Vector4c dpsi_dz = std::polar(1.0, -e * t) * to_vector(wavefunction_dz(p, n, z));
  const FourVector x{t, 0.0, 0.0, z};
  const Vector4c r = kI * (g.gamma[0] * dpsi_dt + g.gamma[3] * dpsi_dz) - p.mass * psi +
                     sigma_f(x, p) * psi / coupling_scale;
  return to_spinor(r);
}

Spinor covariant_residual(const OscParams& p, int n, double z, double t) {
  return covariant_residual(p, n, z, t, 1.0);
}

Complex covariant_coupling_ratio(const FourVector& x, const OscParams& p) {
  const Matrix4c c = hamiltonian_coupling(x, p);
  const Matrix4c s = sigma_f(x, p);
  const Complex den = (c.adjoint() * c).trace();
  if (std::abs(den) == 0.0) throw DomainError("covariant_coupling_ratio: coupling vanishes at x");
  return (c.adjoint() * s).trace() / den;
}

}  // namespace diracosc::osc1d

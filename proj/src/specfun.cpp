#include "diracosc/specfun.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

namespace diracosc {

namespace {

constexpr double kPi = std::numbers::pi;

// h_0(x) without the Gaussian factor; the recurrence is linear so the
// Gaussian (and a running exponent) can be applied at the end.
constexpr double kRescaleAbove = 1e150;

}  // namespace

double hermite_h(int n, double x) {
  if (n < 0) throw DomainError("hermite_h: n must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_functions(int nmax, double x) {
  if (nmax < 0) throw DomainError("hermite_functions: nmax must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  // Run the normalised recurrence on unscaled values and track log scale,
  // so that neither exp(-x^2/2) underflow nor growth of the polynomial
  // part destroys the result for large |x|.
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25);
  std::vector<double> raw(out.size());
  std::vector<double> scale_at(out.size());
  raw[0] = cur;
  scale_at[0] = log_scale;
  for (int k = 0; k < nmax; ++k) {
    const double next =
        x * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      prev /= kRescaleAbove;
      cur /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
    raw[k + 1] = cur;
    scale_at[k + 1] = log_scale;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (raw[k] == 0.0) {
      out[k] = 0.0;
      continue;
    }
    const double lg = std::log(std::abs(raw[k])) + scale_at[k];
    out[k] = std::copysign(std::exp(lg), raw[k]);
  }
  return out;
}

double hermite_function(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: n must be >= 0");
  return hermite_functions(n, x).back();
}

double laguerre_l(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre_l: n must be >= 0");
  if (!(alpha > -1.0)) throw DomainError("laguerre_l: alpha must be > -1");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex spherical_harmonic(int l, int mz, double theta, double phi) {
  if (l < 0) throw DomainError("spherical_harmonic: l must be >= 0");
  if (std::abs(mz) > l)
    throw DomainError("spherical_harmonic: |m| > l (l=" + std::to_string(l) +
                      ", m=" + std::to_string(mz) + ")");
  const int m = std::abs(mz);
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  // Normalised P_m^m including the Condon-Shortley factor (-1)^m.
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;

  double plm = pmm;
  if (l > m) {
    double p_prev = pmm;
    double p_cur = std::sqrt(2.0 * m + 3.0) * c * pmm;
    for (int ll = m + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll * ll - m * m)));
      const double a_prev =
          std::sqrt((4.0 * (ll - 1) * (ll - 1) - 1.0) / (static_cast<double>((ll - 1) * (ll - 1) - m * m)));
      const double p_next = a * (c * p_cur - p_prev / a_prev);
      p_prev = p_cur;
      p_cur = p_next;
    }
    plm = p_cur;
  }
  const Complex y = plm * std::polar(1.0, m * phi);
  if (mz >= 0) return y;
  return (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

Spinor2 spinor_spherical_harmonic(int kappa, int two_g, double theta, double phi) {
  if (kappa == 0) throw DomainError("spinor_spherical_harmonic: kappa must be nonzero");
  if (two_g % 2 == 0) throw DomainError("spinor_spherical_harmonic: g must be half-integer");
  const int two_j = 2 * std::abs(kappa) - 1;
  if (std::abs(two_g) > two_j)
    throw DomainError("spinor_spherical_harmonic: |g| > |kappa| - 1/2");

  const double j = 0.5 * two_j;
  const double g = 0.5 * two_g;
  const int m_lo = (two_g - 1) / 2;  // g - 1/2
  const int m_hi = (two_g + 1) / 2;  // g + 1/2

  double c_lo;
  double c_hi;
  int l;
  if (kappa < 0) {
    l = -kappa - 1;  // j = l + 1/2
    c_lo = std::sqrt((j + g) / (2.0 * j));
    c_hi = std::sqrt((j - g) / (2.0 * j));
  } else {
    l = kappa;  // j = l - 1/2
    c_lo = -std::sqrt((j - g + 1.0) / (2.0 * j + 2.0));
    c_hi = std::sqrt((j + g + 1.0) / (2.0 * j + 2.0));
  }
  Spinor2 out{0.0, 0.0};
  if (c_lo != 0.0) out[0] = c_lo * spherical_harmonic(l, m_lo, theta, phi);
  if (c_hi != 0.0) out[1] = c_hi * spherical_harmonic(l, m_hi, theta, phi);
  return out;
}

// Backed by the C library's lgamma; accuracy is at the level of a few ulp
// over the arguments the normalisation constants need.
double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: x must be > 0");
  return std::lgamma(x);
}

QuadratureRule gauss_hermite_rule(int order, WeightConvention conv) {
  if (order < 1) throw DomainError("gauss_hermite_rule: order must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_hermite;
  rule.order = order;
  rule.weight_convention = conv;

  // Golub-Welsch nodes, then Newton polish on h_order.
  std::vector<double> x(static_cast<std::size_t>(order), 0.0);
  if (order > 1) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1);
    for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (int i = 0; i < order; ++i) x[i] = es.eigenvalues()[i];
  }
  for (double& xi : x) {
    for (int it = 0; it < 4; ++it) {
      const auto h = hermite_functions(order, xi);
      const double deriv = std::sqrt(2.0 * order) * h[order - 1] - xi * h[order];
      if (deriv == 0.0) break;
      const double step = h[order] / deriv;
      xi -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(xi))) break;
    }
  }
  // Symmetrise to remove round-off asymmetry.
  for (int i = 0; i < order / 2; ++i) {
    const double a = 0.5 * (x[order - 1 - i] - x[i]);
    x[i] = -a;
    x[order - 1 - i] = a;
  }
  if (order % 2 == 1) x[order / 2] = 0.0;

  rule.nodes = x;
  rule.weights.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Christoffel function in terms of Hermite functions: the folded
    // weight is 1 / sum_k h_k(x)^2, which never overflows.
    const auto h = hermite_functions(order - 1, x[i]);
    double s = 0.0;
    for (double v : h) s += v * v;
    const double folded = 1.0 / s;
    rule.weights[i] = conv == WeightConvention::folded ? folded : folded * std::exp(-x[i] * x[i]);
  }
  return rule;
}

QuadratureRule gauss_legendre_rule(int order, double a, double b) {
  if (order < 1) throw DomainError("gauss_legendre_rule: order must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_legendre;
  rule.order = order;
  rule.weight_convention = WeightConvention::folded;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < order; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
    }
    // Nodes ascending.
    rule.nodes[order - 1 - i] = mid + half * z;
    rule.weights[order - 1 - i] = half * 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

QuadratureRule radial_rule(int order, double length_scale) {
  if (order < 1) throw DomainError("radial_rule: order must be >= 1");
  if (!(length_scale > 0.0)) throw DomainError("radial_rule: length_scale must be > 0");
  const double r_max = length_scale * (std::sqrt(order / 4.0) + 7.0);
  QuadratureRule rule = gauss_legendre_rule(order, 0.0, r_max);
  rule.kind = QuadratureKind::mapped_radial;
  return rule;
}

}  // namespace diracosc

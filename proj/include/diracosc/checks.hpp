#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diracosc/types.hpp"

/// Verification suites over all modules. Each check reports a measured
/// deviation and passes when it does not exceed its tolerance.
namespace diracosc::checks {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckConfig {
  OscParams params{1.0, 1.0};
  int n_max = 20;
  int kappa_max = 3;
  int fock_modes = 8;
  int quad_order = 0;  // 0: automatic
  /// Replaces every built-in tolerance when set.
  std::optional<double> tolerance;
};

enum class Suite { ortho, complete, residual, fock, propagator, all };

std::optional<Suite> parse_suite(const std::string& name);
std::string suite_name(Suite s);

std::vector<CheckResult> run_suite(Suite suite, const CheckConfig& config);

bool all_pass(const std::vector<CheckResult>& results);

// Individual measurements, shared with the tests.

/// max |<psi_a, psi_b> - delta_ab| over -n_max <= a, b <= n_max.
double ortho1d_deviation(const OscParams& p, int n_max, int order);

struct Radial3DStats {
  double norm_deviation = 0.0;   // max |int (F^2 + G^2) dr - 1|
  double ortho_deviation = 0.0;  // max off-diagonal |int (F_a F_b + G_a G_b) dr|
  double ode_residual = 0.0;     // max scaled coupled-equation residual
};

/// Over every state with |n| <= n_max, |kappa| <= kappa_max. The ODE
/// residual is max_r |res| / (sqrt(m w) max_r max(|F|, |G|)) for
/// r in [0.1, 8] / sqrt(m w).
Radial3DStats radial3d_stats(const OscParams& p, int n_max, int kappa_max);

/// Largest |E_n - m| / omega - |n| slope error for omega = 1e-4 m and the
/// largest deviation of (E(1e-3 m) - m) / (E(1e-4 m) - m) from 10, both
/// over 1 <= n <= n_max and returned as relative errors.
struct LimitStats {
  double slope_error = 0.0;
  double ratio_error = 0.0;
};
LimitStats free_limit_stats(double mass, int n_max);

}  // namespace diracosc::checks

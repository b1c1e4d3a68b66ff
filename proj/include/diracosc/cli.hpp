#pragma once

#include <iosfwd>
#include <optional>
#include <string>

/// Batch front-end. Subcommands: spectrum | wavefn | check | propagator | fock.
///
/// Exit codes: 0 success (and, for check, every check passing), 1 a failed
/// check or a numerical error such as a propagator pole, 2 an invalid
/// configuration.
namespace diracosc::cli {

struct RunConfig {
  std::string command;
  double mass = 1.0;
  double omega = 1.0;
  int dim = 1;
  int n_max = 20;
  int kappa_max = 3;
  int fock_modes = 8;
  int quad_order = 0;
  std::string format = "csv";
  bool format_given = false;
  std::string out;
  std::string suite = "all";
  std::string grid;
  std::optional<double> tolerance;

  // wavefn
  int n = 0;
  int kappa = -1;
  double g = 0.5;
  double theta = 0.7;
  double phi = 0.3;

  // propagator; z or p0 is swept by the grid
  std::string space = "coordinate";
  double zp = 0.0;
  double t = 0.0;
  double tp = 0.0;
  double pz = 0.0;
  double pzp = 0.0;
};

/// Parses arguments and runs one subcommand; tables and reports go to
/// `out` (or the --out file), diagnostics to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diracosc::cli

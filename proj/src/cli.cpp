#include "diracosc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "diracosc/checks.hpp"
#include "diracosc/fock.hpp"
#include "diracosc/osc1d.hpp"
#include "diracosc/osc3d.hpp"
#include "diracosc/propagator.hpp"
#include "diracosc/sparse_io.hpp"

namespace diracosc::cli {

namespace {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

// ---- tables ------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<std::string>> text;  // optional string columns, prepended
};

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
  os << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    bool first = true;
    if (!t.text.empty())
      for (const auto& s : t.text[r]) {
        os << (first ? "" : ",") << s;
        first = false;
      }
    for (double v : t.rows[r]) {
      os << (first ? "" : ",") << num(v);
      first = false;
    }
    os << "\n";
  }
}

json table_json(const Table& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    json row = json::object();
    std::size_t c = 0;
    if (!t.text.empty())
      for (const auto& s : t.text[r]) row[t.header[c++]] = s;
    for (double v : t.rows[r]) row[t.header[c++]] = v;
    rows.push_back(row);
  }
  return rows;
}

// ---- grids -------------------------------------------------------------

struct GridSpec {
  bool hermite = false;
  int count = 0;
  double lo = 0.0;
  double hi = 0.0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  if (text.rfind("hermite:", 0) == 0) {
    g.hermite = true;
    try {
      std::size_t used = 0;
      g.count = std::stoi(text.substr(8), &used);
      if (used != text.size() - 8) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("--grid: expected hermite:K, got '" + text + "'");
    }
    if (g.count < 1) throw ConfigError("--grid: hermite order must be >= 1");
    return g;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("--grid: expected min,max,count or hermite:K, got '" + text + "'");
  try {
    g.lo = std::stod(parts[0]);
    g.hi = std::stod(parts[1]);
    std::size_t used = 0;
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ConfigError("--grid: cannot parse '" + text + "'");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi < g.lo)
    throw ConfigError("--grid: need finite min <= max");
  if (g.count < 1) throw ConfigError("--grid: count must be >= 1");
  return g;
}

std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> pts;
  if (g.count == 1) return {g.lo};
  for (int k = 0; k < g.count; ++k) pts.push_back(g.lo + (g.hi - g.lo) * k / (g.count - 1));
  return pts;
}

// ---- config ------------------------------------------------------------

void apply_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("--config: expected a flat JSON object");
  for (const auto& [raw_key, v] : j.items()) {
    std::string key = raw_key;
    for (auto& ch : key)
      if (ch == '_') ch = '-';
    try {
      if (key == "mass") c.mass = v.get<double>();
      else if (key == "omega") c.omega = v.get<double>();
      else if (key == "dim") c.dim = v.get<int>();
      else if (key == "n-max") c.n_max = v.get<int>();
      else if (key == "kappa-max") c.kappa_max = v.get<int>();
      else if (key == "fock-modes") c.fock_modes = v.get<int>();
      else if (key == "quad-order") c.quad_order = v.get<int>();
      else if (key == "format") { c.format = v.get<std::string>(); c.format_given = true; }
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "suite") c.suite = v.get<std::string>();
      else if (key == "grid") c.grid = v.get<std::string>();
      else if (key == "tolerance") c.tolerance = v.get<double>();
      else if (key == "n") c.n = v.get<int>();
      else if (key == "kappa") c.kappa = v.get<int>();
      else if (key == "g") c.g = v.get<double>();
      else if (key == "theta") c.theta = v.get<double>();
      else if (key == "phi") c.phi = v.get<double>();
      else if (key == "space") c.space = v.get<std::string>();
      else if (key == "zp") c.zp = v.get<double>();
      else if (key == "t") c.t = v.get<double>();
      else if (key == "tp") c.tp = v.get<double>();
      else if (key == "pz") c.pz = v.get<double>();
      else if (key == "pzp") c.pzp = v.get<double>();
      else throw ConfigError("--config: unknown key '" + raw_key + "'");
    } catch (const json::exception&) {
      throw ConfigError("--config: wrong type for key '" + raw_key + "'");
    }
  }
}

void validate(const RunConfig& c) {
  if (!(c.mass > 0.0) || !std::isfinite(c.mass)) throw ConfigError("--mass must be positive");
  if (!(c.omega > 0.0) || !std::isfinite(c.omega)) throw ConfigError("--omega must be positive");
  if (c.dim != 1 && c.dim != 3) throw ConfigError("--dim must be 1 or 3");
  if (c.n_max < 0) throw ConfigError("--n-max must be >= 0");
  if (c.kappa_max < 0) throw ConfigError("--kappa-max must be >= 0");
  if (c.fock_modes < 1 || c.fock_modes > fock::ModeSet::kMaxModes)
    throw ConfigError("--fock-modes must be in [1, 14]");
  if (c.quad_order < 0) throw ConfigError("--quad-order must be >= 0 (0 selects automatically)");
  if (c.format != "csv" && c.format != "json") throw ConfigError("--format must be csv or json");
  if (c.tolerance && !(*c.tolerance >= 0.0)) throw ConfigError("--tolerance must be >= 0");
  if (c.space != "coordinate" && c.space != "momentum" && c.space != "mixed")
    throw ConfigError("--space must be coordinate, momentum or mixed");
}

json params_json(const RunConfig& c) {
  return json{{"mass", c.mass}, {"omega", c.omega}, {"dim", c.dim}};
}

// ---- commands ----------------------------------------------------------

void cmd_spectrum(const RunConfig& c, std::ostream& os) {
  const OscParams p(c.mass, c.omega);
  Table t;
  if (c.dim == 1) {
    t.header = {"n", "E"};
    for (int n = -c.n_max; n <= c.n_max; ++n) t.rows.push_back({double(n), osc1d::energy(p, n)});
  } else {
    t.header = {"n_sign", "n_abs", "kappa", "g", "E"};
    for (const auto& q : osc3d::enumerate_states(c.n_max, c.kappa_max)) {
      t.text.push_back({q.n_sign == osc3d::Sign::plus ? "+" : "-"});
      t.rows.push_back({double(q.n_abs), double(q.kappa), q.g(), osc3d::energy3d(p, q)});
    }
  }
  if (c.format == "csv") {
    write_csv(os, t);
  } else {
    json j{{"params", params_json(c)}, {"states", table_json(t)}};
    os << j.dump(2) << "\n";
  }
}

std::vector<std::string> spinor_header(const std::string& coord) {
  std::vector<std::string> h{coord};
  for (int a = 0; a < 4; ++a) {
    h.push_back("psi" + std::to_string(a) + "_re");
    h.push_back("psi" + std::to_string(a) + "_im");
  }
  return h;
}

void push_spinor(std::vector<double>& row, const Spinor& s) {
  for (const auto& v : s) {
    row.push_back(v.real());
    row.push_back(v.imag());
  }
}

int two_g_from(double g) {
  const double twice = 2.0 * g;
  const double r = std::round(twice);
  if (std::abs(twice - r) > 1e-12 || static_cast<int>(r) % 2 == 0)
    throw ConfigError("--g must be a half-integer");
  return static_cast<int>(r);
}

void cmd_wavefn(const RunConfig& c, std::ostream& os) {
  const OscParams p(c.mass, c.omega);
  const double s = std::sqrt(p.m_omega());
  Table t;
  json meta = params_json(c);
  if (c.dim == 1) {
    t.header = spinor_header("z");
    std::vector<double> zs;
    if (!c.grid.empty() && parse_grid(c.grid).hermite) {
      zs = osc1d::hermite_grid(p, parse_grid(c.grid).count).z;
    } else {
      const double half = (std::sqrt(2.0 * std::abs(c.n) + 1.0) + 6.0) / s;
      const GridSpec g = c.grid.empty() ? GridSpec{false, 241, -half, half} : parse_grid(c.grid);
      zs = grid_points(g);
    }
    for (double z : zs) {
      std::vector<double> row{z};
      push_spinor(row, osc1d::wavefunction(p, c.n, z));
      t.rows.push_back(std::move(row));
    }
    meta["n"] = c.n;
    meta["energy"] = osc1d::energy(p, c.n);
  } else {
    const int two_g = two_g_from(c.g);
    osc3d::Qnum3D q;
    try {
      q = osc3d::Qnum3D::make(c.n, c.kappa, two_g);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    GridSpec g;
    if (c.grid.empty()) {
      const auto ang = osc3d::angular_numbers(c.kappa);
      g = GridSpec{false, 241, 0.0, (std::sqrt(4.0 * std::abs(c.n) + 2.0 * ang.l + 3.0) + 5.0) / s};
    } else {
      g = parse_grid(c.grid);
      if (g.hermite) throw ConfigError("--grid: hermite grids apply to --dim 1 only");
      if (g.lo < 0.0) throw ConfigError("--grid: radial grid needs min >= 0");
    }
    t.header = spinor_header("r");
    for (double r : grid_points(g)) {
      std::vector<double> row{r};
      push_spinor(row, osc3d::wavefunction3d(p, q, r, c.theta, c.phi));
      t.rows.push_back(std::move(row));
    }
    meta["state"] = q.to_string();
    meta["energy"] = osc3d::energy3d(p, q);
    meta["theta"] = c.theta;
    meta["phi"] = c.phi;
  }
  if (c.format == "csv") {
    write_csv(os, t);
  } else {
    os << json{{"meta", meta}, {"samples", table_json(t)}}.dump(2) << "\n";
  }
}

int cmd_check(const RunConfig& c, std::ostream& os, std::ostream& err) {
  const auto suite = checks::parse_suite(c.suite);
  if (!suite) throw ConfigError("--suite: unknown suite '" + c.suite + "' (ortho|complete|residual|fock|propagator|all)");
  checks::CheckConfig cfg;
  cfg.params = OscParams(c.mass, c.omega);
  cfg.n_max = c.n_max;
  cfg.kappa_max = c.kappa_max;
  cfg.fock_modes = c.fock_modes;
  cfg.quad_order = c.quad_order;
  cfg.tolerance = c.tolerance;
  const auto results = checks::run_suite(*suite, cfg);
  const bool ok = checks::all_pass(results);
  if (c.format_given && c.format == "csv") {
    os << "name,measured,tolerance,pass\n";
    for (const auto& r : results)
      os << r.name << "," << num(r.measured) << "," << num(r.tolerance) << ","
         << (r.pass ? "true" : "false") << "\n";
  } else {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back(json{{"name", r.name}, {"measured", r.measured}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    json j{{"suite", c.suite}, {"params", params_json(c)}, {"checks", arr}, {"pass", ok}};
    os << j.dump(2) << "\n";
  }
  for (const auto& r : results)
    if (!r.pass) err << "check failed: " << r.name << " measured " << num(r.measured) << " > " << num(r.tolerance) << "\n";
  return ok ? 0 : 1;
}

void cmd_propagator(const RunConfig& c, std::ostream& os) {
  const OscParams p(c.mass, c.omega);
  const int cutoff = c.n_max;
  Table t;
  std::vector<std::string> head;
  const bool coordinate = c.space == "coordinate";
  const bool mixed = c.space == "mixed";
  if (coordinate)
    head = {"z", "zp", "t", "tp"};
  else if (mixed)
    head = {"pz", "pzp", "dt"};
  else
    head = {"p0", "pz", "pzp"};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      head.push_back("S" + std::to_string(a) + std::to_string(b) + "_re");
      head.push_back("S" + std::to_string(a) + std::to_string(b) + "_im");
    }
  t.header = head;
  GridSpec g = c.grid.empty() ? (coordinate || mixed ? GridSpec{false, 61, -3.0, 3.0} : GridSpec{false, 60, -2.95, 2.95})
                              : parse_grid(c.grid);
  if (g.hermite) throw ConfigError("--grid: propagator sweeps need min,max,count");
  for (double x : grid_points(g)) {
    std::vector<double> row;
    propagator::PropagatorSample s;
    if (coordinate) {
      s = propagator::coordinate_propagator(p, x, c.t, c.zp, c.tp, cutoff);
      row = {x, c.zp, c.t, c.tp};
    } else if (mixed) {
      s = propagator::mixed_propagator(p, x, c.pzp, c.t - c.tp, cutoff);
      row = {x, c.pzp, c.t - c.tp};
    } else {
      s = propagator::momentum_propagator(p, x, c.pz, c.pzp, cutoff);
      row = {x, c.pz, c.pzp};
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        row.push_back(s.value(a, b).real());
        row.push_back(s.value(a, b).imag());
      }
    t.rows.push_back(std::move(row));
  }
  if (c.format == "csv") {
    write_csv(os, t);
  } else {
    json meta = params_json(c);
    meta["space"] = c.space;
    meta["cutoff"] = cutoff;
    os << json{{"meta", meta}, {"samples", table_json(t)}}.dump(2) << "\n";
  }
}

fock::ModeSet fock_modes_for(const RunConfig& c) {
  const OscParams p(c.mass, c.omega);
  if (c.dim == 1) {
    std::vector<int> labels;
    const int lo = -(c.fock_modes / 2);
    for (int k = 0; k < c.fock_modes; ++k) labels.push_back(lo + k);
    return fock::ModeSet::one_dimensional(p, labels);
  }
  // lowest |E| states first, label order breaking ties
  auto states = osc3d::enumerate_states(c.n_max, c.kappa_max);
  std::stable_sort(states.begin(), states.end(), [&](const auto& a, const auto& b) {
    const double ea = std::abs(osc3d::energy3d(p, a)), eb = std::abs(osc3d::energy3d(p, b));
    if (ea != eb) return ea < eb;
    return a < b;
  });
  if (static_cast<int>(states.size()) < c.fock_modes)
    throw ConfigError("--fock-modes exceeds the number of states within the cutoffs");
  states.resize(static_cast<std::size_t>(c.fock_modes));
  return fock::ModeSet::three_dimensional(p, states);
}

void cmd_fock(const RunConfig& c, std::ostream& os) {
  const auto modes = fock_modes_for(c);
  std::vector<fock::NamedOperator> ops;
  ops.push_back({"H_normal_ordered", fock::hamiltonian_normal_ordered(modes)});
  ops.push_back({"H_raw", fock::hamiltonian_raw(modes)});
  ops.push_back({"Q", fock::charge_operator(modes)});
  for (int k = 0; k < modes.size(); ++k) {
    ops.push_back({"b_" + std::to_string(k), fock::ladder(modes, k, fock::Ladder::annihilate)});
    ops.push_back({"bdag_" + std::to_string(k), fock::ladder(modes, k, fock::Ladder::create)});
  }
  if (c.format == "csv") {
    fock::write_operators(os, modes, ops);
    return;
  }
  json jm = json::array();
  for (int k = 0; k < modes.size(); ++k)
    jm.push_back(json{{"index", k}, {"label", fock::label_string(modes[k].label)}, {"energy", modes[k].energy}});
  json jo = json::array();
  for (const auto& named : ops) {
    json entries = json::array();
    for (int col = 0; col < named.op.outerSize(); ++col)
      for (fock::FockOperator::InnerIterator it(named.op, col); it; ++it)
        entries.push_back(json::array({it.row(), it.col(), it.value().real(), it.value().imag()}));
    jo.push_back(json{{"name", named.name}, {"dimension", named.op.rows()}, {"entries", entries}});
  }
  os << json{{"params", params_json(c)}, {"modes", jm}, {"operators", jo}}.dump(2) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string config_path;
  std::optional<double> tolerance;

  CLI::App app{"Dirac oscillator spectra, wavefunctions, propagators and Fock operators"};
  app.name("diracosc");
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--mass", c.mass, "Mass m");
  app.add_option("--omega", c.omega, "Oscillator frequency w");
  app.add_option("--dim", c.dim, "Spatial dimension, 1 or 3");
  app.add_option("--n-max", c.n_max, "Cutoff on |n| (also the propagator cutoff N)");
  app.add_option("--kappa-max", c.kappa_max, "Cutoff on |kappa| (dim 3)");
  app.add_option("--fock-modes", c.fock_modes, "Number of Fock modes (<= 14)");
  app.add_option("--quad-order", c.quad_order, "Quadrature order, 0 for automatic");
  auto* fmt = app.add_option("--format", c.format, "csv or json");
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--suite", c.suite, "check suite: ortho|complete|residual|fock|propagator|all");
  app.add_option("--grid", c.grid, "min,max,count or hermite:K");
  app.add_option("--config", config_path, "Flat JSON file overriding flags");
  app.add_option("--tolerance", tolerance, "Replace every check tolerance");
  app.add_option("--n", c.n, "Mode label n (wavefn)");
  app.add_option("--kappa", c.kappa, "kappa (wavefn, dim 3)");
  app.add_option("--g", c.g, "g, a half-integer (wavefn, dim 3)");
  app.add_option("--theta", c.theta, "Polar angle (wavefn, dim 3)");
  app.add_option("--phi", c.phi, "Azimuth (wavefn, dim 3)");
  app.add_option("--space", c.space, "coordinate, momentum or mixed (propagator)");
  app.add_option("--zp", c.zp, "z' (z is swept by --grid)");
  app.add_option("--t", c.t, "t");
  app.add_option("--tp", c.tp, "t'");
  app.add_option("--pz", c.pz, "p_z (momentum space; p0 is swept by --grid)");
  app.add_option("--pzp", c.pzp, "p_z'; mixed space sweeps p_z and uses t - t'");
  for (const char* name : {"spectrum", "wavefn", "check", "propagator", "fock"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.format_given = fmt->count() > 0;
    c.tolerance = tolerance;
    if (!config_path.empty()) apply_config_file(config_path, c);
    validate(c);

    std::ostringstream buf;
    int code = 0;
    if (c.command == "spectrum") cmd_spectrum(c, buf);
    else if (c.command == "wavefn") cmd_wavefn(c, buf);
    else if (c.command == "check") code = cmd_check(c, buf, err);
    else if (c.command == "propagator") cmd_propagator(c, buf);
    else if (c.command == "fock") cmd_fock(c, buf);

    if (c.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw ConfigError("--out: cannot open " + c.out);
      f << buf.str();
      if (!f) {
        err << "error: writing " << c.out << " failed\n";
        return 1;
      }
    }
    return code;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const propagator::PoleError& e) {
    err << "pole error (n=" << e.n() << "): " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace diracosc::cli

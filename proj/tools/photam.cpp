// Command-line front end: state construction, distribution evaluation,
// cumulant sweeps and the verification suite.

#include <cmath>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "photam/io.hpp"
#include "photam/parallel.hpp"

namespace {

using namespace photam;

struct GlobalOpts {
  bool serial = false;
  std::uint64_t seed = 20240915;
  int n_radial = 0;     // 0 = auto
  int n_polar = 0;
  int n_azimuthal = 0;
  std::string format = "csv";
};

GridSpec resolve_grid(double a, const GlobalOpts& g) {
  GridSpec spec = auto_grid_spec(a);
  if (g.n_radial > 0) spec.n_radial = g.n_radial;
  if (g.n_polar > 0) spec.n_polar = g.n_polar;
  if (g.n_azimuthal > 0) spec.n_azimuthal = g.n_azimuthal;
  // overrides are validated before any computation starts
  try {
    SphericalGrid::build(spec);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ConfigDump base_config(const std::string& cmd, const GlobalOpts& g) {
  ConfigDump c;
  c.emplace_back("tool", "photam");
  c.emplace_back("command", cmd);
  c.emplace_back("execution", g.serial ? "serial" : "openmp");
  c.emplace_back("seed", std::to_string(g.seed));
  c.emplace_back("format", g.format);
  return c;
}

void add_grid_config(ConfigDump& c, const GridSpec& spec) {
  c.emplace_back("n_radial", std::to_string(spec.n_radial));
  c.emplace_back("n_polar", std::to_string(spec.n_polar));
  c.emplace_back("n_azimuthal", std::to_string(spec.n_azimuthal));
  c.emplace_back("p_min", format_double(spec.p_min));
  c.emplace_back("p_max", format_double(spec.p_max));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
}

int run(int argc, char** argv) {
  CLI::App app{"photon total angular momentum: POVM/PVM decompositions, distributions and checks"};
  app.set_config("--config", "", "key=value config file; flags override file values");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_flag("--serial", g.serial, "run kernels single-threaded");
  app.add_option("--seed", g.seed, "rng seed recorded in reports");
  app.add_option("--n-radial", g.n_radial, "radial nodes (0 = auto)");
  app.add_option("--n-polar", g.n_polar, "polar nodes (0 = auto)");
  app.add_option("--n-azimuthal", g.n_azimuthal, "azimuthal nodes (0 = auto)");
  app.add_option("--format", g.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the identity verification suite");
  std::string verify_out = "verify_report";
  double tol_scale = 1.0;
  cmd_verify->add_option("--out", verify_out, "output path prefix (.txt and .json)");
  cmd_verify->add_option("--tolerance-scale", tol_scale, "multiplies every check tolerance");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "cumulants of all five observables over a range of a");
  double a_min = 0.01, a_max = 2.0;
  int steps = 50;
  std::string sweep_scale = "log", sweep_out = "sweep.csv";
  cmd_sweep->add_option("--a-min", a_min, "smallest spread parameter")->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--a-max", a_max, "largest spread parameter")->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--steps", steps, "number of a values")->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--scale", sweep_scale, "linear or log spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  cmd_sweep->add_option("--out", sweep_out, "output file");

  // distribution
  auto* cmd_dist = app.add_subcommand("distribution", "probability distribution of one observable");
  std::string obs = "joint";
  double dist_a = 0.1;
  int m_max = 8, n_max = 8;
  std::string dist_out = "distribution.csv";
  cmd_dist->add_option("--observable", obs, "Lz | Sz | joint | Szprime | Lzprime")
      ->check(CLI::IsMember({"Lz", "Sz", "joint", "Szprime", "Lzprime"}));
  cmd_dist->add_option("--a", dist_a, "gaussian spread parameter")->check(CLI::PositiveNumber);
  cmd_dist->add_option("--m-max", m_max, "OAM band limit for the joint POVM");
  cmd_dist->add_option("--n-max", n_max, "integer band limit for the L'_z PVM");
  cmd_dist->add_option("--out", dist_out, "output file");

  // state / inspect
  auto* cmd_state = app.add_subcommand("state", "serialize a gaussian state");
  double state_a = 0.1;
  std::string state_out = "state.dat";
  cmd_state->add_option("--a", state_a, "gaussian spread parameter")->check(CLI::PositiveNumber);
  cmd_state->add_option("--out", state_out, "output file");

  auto* cmd_inspect = app.add_subcommand("inspect", "summarize a serialized state");
  std::string inspect_path;
  cmd_inspect->add_option("path", inspect_path, "state file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // malformed flags/config exit 2; --help exits 0
  }
  set_execution_mode(g.serial ? ExecMode::Serial : ExecMode::OpenMP);

  if (cmd_verify->parsed()) {
    VerifyOptions opt;
    opt.seed = g.seed;
    opt.tolerance_scale = tol_scale;
    const auto reports = run_all(opt);
    ConfigDump c = base_config("verify", g);
    c.emplace_back("tolerance_scale", format_double(tol_scale));
    std::ostringstream txt;
    write_reports_text(txt, reports);
    write_file(verify_out + ".txt", txt.str());
    write_file(verify_out + ".json", reports_json(reports, c));
    std::cout << txt.str();
    if (!all_pass(reports)) {
      std::cout << "verification FAILED\n";
      return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
  }

  if (cmd_sweep->parsed()) {
    if (!(a_min < a_max) && steps > 1) throw ConfigError("need a_min < a_max");
    resolve_grid(std::max(a_min, 0.01), g);  // validate overrides up front
    std::vector<double> avals;
    for (int i = 0; i < steps; ++i) {
      const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
      avals.push_back(sweep_scale == "log"
                          ? std::exp(std::log(a_min) + t * (std::log(a_max) - std::log(a_min)))
                          : a_min + t * (a_max - a_min));
    }
    const auto sweep = sweep_a(avals, GridOverride{g.n_radial, g.n_polar, g.n_azimuthal});
    ConfigDump c = base_config("sweep", g);
    c.emplace_back("a_min", format_double(a_min));
    c.emplace_back("a_max", format_double(a_max));
    c.emplace_back("steps", std::to_string(steps));
    c.emplace_back("scale", sweep_scale);
    if (g.format == "json") {
      write_file(sweep_out, sweep_json(sweep, c));
    } else {
      std::ostringstream os;
      write_sweep_csv(os, sweep, c);
      write_file(sweep_out, os.str());
    }
    bool ok = true;
    for (const auto& e : sweep) ok = ok && e.ok;
    std::cout << "wrote " << sweep_out << (ok ? "" : " (with per-entry errors)") << "\n";
    return ok ? 0 : 1;
  }

  if (cmd_dist->parsed()) {
    const GridSpec spec = resolve_grid(dist_a, g);
    if ((obs == "joint" || obs == "Lz" || obs == "Sz") && !(m_max < spec.n_azimuthal / 2))
      throw ConfigError("m-max must be below n-azimuthal / 2");
    if (obs == "Lzprime" && !(n_max < spec.n_azimuthal / 2 - 2))
      throw ConfigError("n-max must be below n-azimuthal / 2 - 2");
    const PhotonState psi = gaussian_state(dist_a, SphericalGrid::build(spec));
    ConfigDump c = base_config("distribution", g);
    c.emplace_back("observable", obs);
    c.emplace_back("a", format_double(dist_a));
    add_grid_config(c, spec);
    DistributionTable table;
    if (obs == "joint" || obs == "Lz" || obs == "Sz") {
      c.emplace_back("m_max", std::to_string(m_max));
      const DistributionTable joint = joint_povm_Lz_Sz(psi, m_max);
      table = obs == "joint" ? joint
                             : marginal(joint, obs == "Lz" ? MarginalKind::OAM : MarginalKind::SAM);
    } else if (obs == "Szprime") {
      table = pvm_Sz_prime(psi, default_edges(-1.0, 1.0)).table;
    } else {
      c.emplace_back("n_max", std::to_string(n_max));
      LzPrimeOptions opt;
      opt.n_max = n_max;
      table = pvm_Lz_prime(psi, opt, default_edges(-(n_max + 1.0), n_max + 1.0));
    }
    if (g.format == "json") {
      write_file(dist_out, table_json(table, c));
    } else {
      std::ostringstream os;
      write_table_csv(os, table, c);
      write_file(dist_out, os.str());
    }
    std::cout << "wrote " << dist_out << " (total mass " << format_double(table.total())
              << ", deficit " << format_double(table.mass_deficit) << ")\n";
    if (obs == "Lzprime")
      std::cout << "j0 leakage: " << format_double(table.j0_leakage) << "\n";
    return 0;
  }

  if (cmd_state->parsed()) {
    const GridSpec spec = resolve_grid(state_a, g);
    const PhotonState psi = gaussian_state(state_a, SphericalGrid::build(spec));
    save_state(psi, state_out);
    std::cout << "wrote " << state_out << "\n";
    return 0;
  }

  if (cmd_inspect->parsed()) {
    const PhotonState psi = load_state(inspect_path);
    const double n2 = norm2(psi);
    const double tres = transversality_residual(psi);
    const double hel = inner_product(psi, apply_observable(Observable::Helicity, psi)).real();
    std::cout << "kind: " << psi.meta().kind << "\n";
    std::cout << "a: " << format_double(psi.meta().a) << "\n";
    std::cout << "norm: " << format_double(std::sqrt(n2)) << "\n";
    std::cout << "transversality_residual: " << format_double(tres) << "\n";
    std::cout << "helicity_expectation: " << format_double(hel / n2) << "\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const photam::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

#include "orlicz/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/solver.hpp"
#include "orlicz/spaces.hpp"
#include "orlicz/verify.hpp"

namespace orlicz {

std::string format_output(double v) {
  const double a = std::abs(v);
  if (v == 0.0 || (a >= 1e-3 && a < 1e15)) return format_fixed(v, 12);
  return format_real(v, 12);
}

namespace {

struct GridArgs {
  std::vector<double> domain{0.0, 1.0};
  std::vector<std::size_t> nodes{101};
};

GridPtr grid_from(const std::vector<double>& domain, const std::vector<std::size_t>& nodes) {
  if (domain.size() != 2 && domain.size() != 4) throw InputError("--domain takes 2 or 4 numbers");
  const int dim = static_cast<int>(domain.size() / 2);
  std::vector<std::pair<double, double>> ext;
  for (int k = 0; k < dim; ++k) ext.emplace_back(domain[2 * k], domain[2 * k + 1]);
  std::vector<std::size_t> n = nodes;
  if (n.size() == 1 && dim == 2) n.push_back(n[0]);
  if (n.size() != static_cast<std::size_t>(dim)) throw InputError("--nodes needs one count per axis");
  return make_grid(dim, ext, n);
}

GridPtr grid_from_config(const KeyValueConfig& cfg) {
  std::vector<double> domain = cfg.has("domain") ? cfg.numbers("domain") : std::vector<double>{0.0, 1.0};
  std::vector<std::size_t> nodes;
  if (cfg.has("nodes")) {
    for (const auto& w : cfg.words("nodes")) nodes.push_back(parse_count(w, cfg.source() + ": nodes"));
  } else {
    nodes.push_back(101);
  }
  return grid_from(domain, nodes);
}

ReactionFamily reaction_from_config(const KeyValueConfig& cfg) {
  return ReactionFamily::make(reaction_id_from_string(cfg.get_or("reaction", "power")),
                              ExponentField::from_text(cfg.get("q")));
}

SolverOptions solver_from_config(const KeyValueConfig& cfg) {
  SolverOptions o;
  o.max_iters = cfg.count_or("max_iters", o.max_iters);
  o.tol_res = cfg.number_or("tol_res", o.tol_res);
  o.armijo = cfg.number_or("armijo", o.armijo);
  o.backtrack = cfg.number_or("backtrack", o.backtrack);
  o.initial_step = cfg.number_or("initial_step", o.initial_step);
  return o;
}

/// "constant c", "bump h", "random amplitude smoothness" or a solution file path.
GridFunction initial_guess(const std::string& spec, GridPtr grid, std::uint64_t seed, const std::string& base_dir) {
  const auto words = split_words(spec);
  if (words.empty()) throw InputError("empty initial guess");
  if (words[0] == "constant" && words.size() == 2) return GridFunction::constant(grid, parse_real(words[1], "u0"));
  if (words[0] == "bump" && words.size() == 2) return bump_function(grid, parse_real(words[1], "u0"));
  if (words[0] == "random" && words.size() == 3) {
    return random_function(grid, seed, parse_real(words[1], "u0"),
                           static_cast<int>(parse_count(words[2], "u0")));
  }
  std::string path = spec;
  if (!base_dir.empty() && !path.empty() && path[0] != '/') path = base_dir + "/" + path;
  GridFunction u = read_solution(path);
  if (!(*u.grid == *grid)) throw InputError("initial guess file '" + path + "' has a different grid");
  return GridFunction(grid, u.values);
}

std::string directory_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

void write_value_csv(const std::string& path, const std::string& quantity, double v) {
  write_text_file(path, "quantity,value\n" + quantity + "," + format_real(v) + "\n");
}

struct FunctionArgs {
  std::string family;
  std::optional<double> constant;
  std::string function;
  std::vector<double> domain{0.0, 1.0};
  std::vector<std::size_t> nodes{101};
  std::string csv;
  std::optional<double> value;
  std::optional<double> x;
};

GridFunction function_from(const FunctionArgs& a) {
  if (a.constant && !a.function.empty()) throw InputError("give either --const or --function");
  if (!a.function.empty()) return read_solution(a.function);
  if (!a.constant) throw InputError("give --const or --function");
  return GridFunction::constant(grid_from(a.domain, a.nodes), *a.constant);
}

void add_function_options(CLI::App* cmd, FunctionArgs& a) {
  cmd->add_option("--family", a.family, "family descriptor file")->required();
  cmd->add_option("--const", a.constant, "constant function value");
  cmd->add_option("--function", a.function, "solution-format function file");
  cmd->add_option("--domain", a.domain, "lo hi [lo2 hi2]")->expected(2, 4);
  cmd->add_option("--nodes", a.nodes, "nodes per axis")->expected(1, 2);
  cmd->add_option("--csv", a.csv, "also write the value as CSV");
}

int run_solve(const std::string& config, const std::string& out_path, const std::string& traj_path,
              std::optional<std::size_t> max_iters, std::uint64_t seed, std::ostream& out) {
  const auto cfg = KeyValueConfig::load(config);
  const auto family = MusielakFamily::from_descriptor(cfg);
  const EnergyConfig ec(family, reaction_from_config(cfg), cfg.number("lambda"));
  const GridPtr grid = grid_from_config(cfg);
  SolverOptions opts = solver_from_config(cfg);
  if (max_iters) opts.max_iters = *max_iters;
  const GridFunction u0 = initial_guess(cfg.get_or("u0", "bump 0.1"), grid, seed, directory_of(config));
  const SolveReport rep = minimize(ec, u0, opts);

  if (!out_path.empty()) write_solution(out_path, rep.final_u);
  if (!traj_path.empty()) {
    std::string csv = "iteration,energy,residual_sup,step\n";
    for (std::size_t k = 0; k < rep.trajectory.size(); ++k) {
      const auto& p = rep.trajectory[k];
      csv += std::to_string(k) + "," + format_real(p.energy) + "," + format_real(p.residual_sup) + "," +
             format_real(p.step) + "\n";
    }
    write_text_file(traj_path, csv);
  }
  out << "converged " << (rep.converged ? "yes" : "no") << "\n";
  out << "stop " << rep.stop_reason << "\n";
  out << "iterations " << rep.iterations << "\n";
  out << "energy " << format_output(rep.final_energy) << "\n";
  out << "residual_sup " << format_output(rep.residual_sup) << "\n";
  return rep.converged ? exit_ok : exit_not_converged;
}

int run_sweep(const std::string& config, const std::vector<double>& cli_lambdas, const std::string& csv_path,
              std::uint64_t seed, std::ostream& out) {
  const auto cfg = KeyValueConfig::load(config);
  const auto family = MusielakFamily::from_descriptor(cfg);
  const auto reaction = reaction_from_config(cfg);
  const GridPtr grid = grid_from_config(cfg);
  const std::vector<double> lambdas = cli_lambdas.empty() ? cfg.numbers("lambdas") : cli_lambdas;
  if (lambdas.empty()) throw InputError("sweep needs lambdas");
  SweepOptions opts;
  opts.solver = solver_from_config(cfg);
  opts.t0 = cfg.number_or("t0", opts.t0);
  opts.bump_height = cfg.number_or("bump_height", opts.bump_height);

  const double c1 = estimate_embedding_constant(family, reaction.q(), grid, cfg.count_or("embedding_samples", 200), seed);
  double lstar = std::numeric_limits<double>::quiet_NaN();
  try {
    lstar = lambda_star_formula(default_rho(c1), reaction.C2(), c1, family.phi_sup(), reaction.q().p_minus());
  } catch (const InputError&) {
  }
  const EnergyConfig ec(family, reaction, lambdas.front());
  const SweepReport rep = sweep_lambda(ec, grid, lambdas, opts, lstar);
  if (!csv_path.empty()) write_text_file(csv_path, rep.to_csv());
  out << "c1_estimate " << format_output(c1) << "\n";
  out << "lambda_star_formula " << format_output(rep.lambda_star_formula_value) << "\n";
  out << "lambda_star_empirical " << format_output(rep.lambda_star_empirical) << "\n";
  out << "lambda_upper_empirical "
      << (std::isnan(rep.lambda_upper_empirical) ? std::string("none") : format_output(rep.lambda_upper_empirical))
      << "\n";
  out << rep.to_csv();
  bool all = true;
  for (const auto& r : rep.rows) all = all && r.converged;
  return all ? exit_ok : exit_not_converged;
}

int run_verify(const std::string& config, std::optional<std::size_t> samples, std::optional<std::uint64_t> seed,
               const std::vector<std::string>& only, const std::string& json_path, const std::string& csv_path,
               std::ostream& out) {
  if (samples && *samples == 0) throw InputError("--samples must be >= 1");
  VerifySuite suite;
  if (config.empty()) {
    suite = default_suite();
    if (samples) suite.n_samples = *samples;
    if (seed) suite.seed = *seed;
  } else {
    suite = load_suite(config, samples, seed);
  }
  if (!only.empty()) suite.only = only;
  const VerifyReport rep = run_property_suite(suite);
  if (!json_path.empty()) write_text_file(json_path, rep.to_json().dump(2) + "\n");
  if (!csv_path.empty()) write_text_file(csv_path, rep.to_csv());
  out << rep.to_csv();
  out << "overall " << (rep.overall ? "pass" : "fail") << "\n";
  return rep.overall ? exit_ok : exit_verify_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Musielak-Orlicz norms, energies and property checks", "orlicz"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  bool seed_given = false;
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
      seed = s;
      seed_given = true;
    }, "random seed");
  };

  FunctionArgs norm_args, modular_args, conj_args;
  auto* norm = app.add_subcommand("norm", "Luxemburg norm");
  add_function_options(norm, norm_args);
  add_seed(norm);
  auto* modular_cmd = app.add_subcommand("modular", "modular");
  add_function_options(modular_cmd, modular_args);
  add_seed(modular_cmd);
  auto* conj = app.add_subcommand("conjugate", "norm in the conjugate space, or a pointwise conjugate value");
  conj->add_option("--family", conj_args.family, "family descriptor file")->required();
  conj->add_option("--const", conj_args.constant, "constant function value");
  conj->add_option("--function", conj_args.function, "solution-format function file");
  conj->add_option("--domain", conj_args.domain, "lo hi [lo2 hi2]")->expected(2, 4);
  conj->add_option("--nodes", conj_args.nodes, "nodes per axis")->expected(1, 2);
  conj->add_option("--csv", conj_args.csv, "also write the value as CSV");
  conj->add_option("--value", conj_args.value, "evaluate the conjugate at this s");
  conj->add_option("--x", conj_args.x, "point x1 for --value");
  add_seed(conj);

  std::string solve_config, solve_out, solve_traj;
  std::optional<std::size_t> solve_iters;
  auto* solve = app.add_subcommand("solve", "minimise the energy");
  solve->add_option("--config", solve_config, "energy config file")->required();
  solve->add_option("--out", solve_out, "solution file to write");
  solve->add_option("--trajectory", solve_traj, "trajectory CSV to write");
  solve->add_option("--max-iters", solve_iters, "iteration limit");
  add_seed(solve);

  std::string sweep_config, sweep_csv;
  std::vector<double> sweep_lambdas;
  auto* sweep = app.add_subcommand("sweep", "solve over a list of lambdas");
  sweep->add_option("--config", sweep_config, "energy config file")->required();
  sweep->add_option("--lambdas", sweep_lambdas, "increasing lambda values");
  sweep->add_option("--csv", sweep_csv, "CSV file to write");
  add_seed(sweep);

  std::string verify_config, verify_json, verify_csv;
  std::optional<std::size_t> verify_samples;
  std::vector<std::string> verify_only;
  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--config", verify_config, "suite config file");
  verify->add_option("--samples", verify_samples, "sample scale (1000 = full)");
  verify->add_option("--only", verify_only, "restrict to these properties");
  verify->add_option("--json", verify_json, "JSON report to write");
  verify->add_option("--csv", verify_csv, "CSV summary to write");
  add_seed(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }

  try {
    if (norm->parsed() || modular_cmd->parsed()) {
      const FunctionArgs& a = norm->parsed() ? norm_args : modular_args;
      const auto family = MusielakFamily::from_descriptor(KeyValueConfig::load(a.family));
      const GridFunction u = function_from(a);
      const double v = norm->parsed() ? luxemburg_norm(family, u) : modular(family, u);
      out << format_output(v) << "\n";
      if (!a.csv.empty()) write_value_csv(a.csv, norm->parsed() ? "norm" : "modular", v);
      return exit_ok;
    }
    if (conj->parsed()) {
      const auto family = MusielakFamily::from_descriptor(KeyValueConfig::load(conj_args.family));
      double v;
      std::string quantity;
      if (conj_args.value) {
        if (*conj_args.value < 0.0) throw InputError("--value must be >= 0");
        v = conjugate_value(family, Point{conj_args.x.value_or(0.0), 0.0}, *conj_args.value);
        quantity = "conjugate_value";
      } else {
        v = conjugate_norm(family, function_from(conj_args));
        quantity = "conjugate_norm";
      }
      out << format_output(v) << "\n";
      if (!conj_args.csv.empty()) write_value_csv(conj_args.csv, quantity, v);
      return exit_ok;
    }
    if (solve->parsed()) return run_solve(solve_config, solve_out, solve_traj, solve_iters, seed, out);
    if (sweep->parsed()) return run_sweep(sweep_config, sweep_lambdas, sweep_csv, seed, out);
    if (verify->parsed()) {
      return run_verify(verify_config, verify_samples, seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt,
                        verify_only, verify_json, verify_csv, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return exit_not_converged;
  }
  return exit_input_error;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace orlicz

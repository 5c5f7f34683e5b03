#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orlicz/energy.hpp"
#include "orlicz/grid.hpp"

namespace orlicz {

struct SolverOptions {
  std::size_t max_iters = 100000;
  double tol_res = 1e-6;
  double armijo = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  /// Line search gives up below this step.
  double min_step = 1e-16;
  /// Start each line search from the Barzilai-Borwein step of the last two iterates (capped at
  /// max_step) instead of min(initial_step, 2 * previous step).
  bool barzilai_borwein = true;
  double max_step = 1e6;
  /// Relative energy change treated as rounding noise; below it the Armijo test switches to
  /// its derivative form.
  double energy_noise = 1e-10;
  bool record_trajectory = true;
};

struct TrajectoryPoint {
  double energy;
  double residual_sup;
  double step;  // accepted step that produced this iterate, 0 for the seed
};

struct SolveReport {
  GridFunction final_u;
  double final_energy = 0.0;
  double residual_sup = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<TrajectoryPoint> trajectory;
};

/// Steepest descent u <- u - s r on the weight-normalised residual with Armijo backtracking.
/// The first trial step is initial_step; later ones follow SolverOptions::barzilai_borwein.
SolveReport minimize(const EnergyEvaluator& evaluator, const GridFunction& u0, const SolverOptions& opts = {});
SolveReport minimize(const EnergyConfig& config, const GridFunction& u0, const SolverOptions& opts = {});

/// rho^{phi_sup - q_minus} / (2 C2 c1^{q_minus}); needs 0 < rho < 1 and rho < 1/c1.
double lambda_star_formula(double rho, double C2, double c1, double phi_sup, double q_minus);

/// min(0.5, 0.9 / c1).
double default_rho(double c1);

/// max |u|_{q(x)} / ||u|| over constants and seeded random functions; a lower bound for the
/// embedding constant. Sample k is a prefix-stable function of (seed, k).
double estimate_embedding_constant(const MusielakFamily& f, const ExponentField& q, GridPtr grid,
                                   std::size_t samples, std::uint64_t seed, bool constants_only = false);

struct SweepOptions {
  SolverOptions solver;
  double t0 = 2.0;
  double bump_height = 0.1;
  /// Also seed each lambda with the best solution found for the previous one.
  bool warm_start = true;
  double nontrivial_norm = 1e-6;
};

struct SweepRow {
  double lambda = 0.0;
  double min_energy = 0.0;
  double residual_sup = 0.0;
  double solution_norm = 0.0;
  bool nontrivial = false;
  std::size_t iterations = 0;
  bool converged = false;  // of the reported run
  bool bump_nontrivial = false;
  double constant_seed_energy = 0.0;  // J_lambda(t0)
  std::string best_seed;
};

struct SweepReport {
  std::vector<double> lambda_values;
  std::vector<SweepRow> rows;
  double lambda_star_formula_value = 0.0;
  /// Largest lambda such that the bump seed was nontrivial for it and every smaller listed value; 0 if none.
  double lambda_star_empirical = 0.0;
  /// Least listed lambda with J_lambda(t0) < 0; NaN if none.
  double lambda_upper_empirical = 0.0;

  [[nodiscard]] std::string to_csv() const;
};

SweepReport sweep_lambda(const EnergyConfig& templ, GridPtr grid, const std::vector<double>& lambdas,
                         const SweepOptions& opts = {}, double lambda_star_value = 0.0);

/// Root of lambda -> J_lambda(u0) by bracketed bisection; NumericError if int G(u0) <= 0.
double lambda_crossing(const EnergyConfig& templ, const GridFunction& u0);

struct SmallTProbe {
  std::vector<double> t;
  std::vector<double> energy;
  bool hypothesis = false;  // q^- < phi0
  double threshold = 0.0;   // t below which the estimate forces J < 0
  bool found_negative = false;
  /// Some listed t <= threshold gives J < 0 whenever the list reaches below the threshold.
  bool consistent = false;
};

SmallTProbe small_t_probe(const EnergyConfig& c, const GridFunction& theta, const std::vector<double>& t_list);

struct CoercivityProbe {
  bool hypothesis = false;  // q^+ < phi0
  std::vector<double> t;
  std::vector<std::vector<double>> energy;  // [direction][t]
  bool passed = false;
};

/// Normalises every direction to ||d|| = 1 and requires J(t d) increasing in t with J > 0 at the last t.
CoercivityProbe coercivity_probe(const EnergyConfig& c, const std::vector<GridFunction>& directions,
                                 const std::vector<double>& t_list = {10.0, 100.0, 1000.0});

/// A constant direction followed by seeded random ones.
std::vector<GridFunction> default_directions(GridPtr grid, std::size_t count, std::uint64_t seed);

}  // namespace orlicz

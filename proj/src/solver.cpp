#include "orlicz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/spaces.hpp"

namespace orlicz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sup_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

SolveReport minimize(const EnergyEvaluator& ev, const GridFunction& u0, const SolverOptions& opts) {
  if (!(opts.armijo > 0.0 && opts.armijo < 1.0)) throw InputError("armijo constant must lie in (0, 1)");
  if (!(opts.backtrack > 0.0 && opts.backtrack < 1.0)) throw InputError("backtrack ratio must lie in (0, 1)");
  if (!(opts.initial_step > 0.0)) throw InputError("initial step must be > 0");
  if (!(opts.tol_res >= 0.0)) throw InputError("residual tolerance must be >= 0");
  const GridPtr& grid = ev.grid();
  if (!(*u0.grid == *grid)) throw InputError("initial guess lives on another grid");
  const auto& w = grid->weights();

  std::vector<double> u = u0.values;
  double J = ev.energy(u);
  std::vector<double> r = ev.residual(u);
  double rs = sup_abs(r);

  SolveReport rep;
  if (opts.record_trajectory) rep.trajectory.push_back({J, rs, 0.0});
  double last_step = opts.initial_step;
  std::vector<double> trial(u.size());
  std::vector<double> r_prev, r_trial;
  double bb_step = 0.0;
  std::size_t it = 0;
  for (;; ++it) {
    if (!std::isfinite(J) || !std::isfinite(rs)) {
      rep.stop_reason = "non-finite energy or residual";
      break;
    }
    if (rs <= opts.tol_res) {
      rep.converged = true;
      rep.stop_reason = "residual below tolerance";
      break;
    }
    if (it >= opts.max_iters) {
      rep.stop_reason = "iteration limit";
      break;
    }
    double rr = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) rr += w[i] * r[i] * r[i];
    double s = std::min(opts.initial_step, 2.0 * last_step);
    if (bb_step > 0.0) s = std::min(bb_step, opts.max_step);
    double Jt = kNaN;
    bool accepted = false;
    bool have_rt = false;
    const double noise = opts.energy_noise * std::max(1.0, std::abs(J));
    while (s >= opts.min_step) {
      bool moved = false;
      for (std::size_t i = 0; i < u.size(); ++i) {
        trial[i] = u[i] - s * r[i];
        moved = moved || trial[i] != u[i];
      }
      if (!moved) break;
      Jt = ev.energy(trial);
      if (!std::isfinite(Jt)) {
        s *= opts.backtrack;
        continue;
      }
      if (Jt <= J - opts.armijo * s * rr) {
        accepted = true;
        break;
      }
      // Energy differences below rounding: use the derivative form of the Armijo test.
      if (Jt <= J + noise) {
        r_trial = ev.residual(trial);
        double slope = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) slope += w[i] * r_trial[i] * r[i];
        if (slope >= -(1.0 - 2.0 * opts.armijo) * rr) {
          accepted = true;
          have_rt = true;
          break;
        }
      }
      s *= opts.backtrack;
    }
    if (!accepted) {
      rep.stop_reason = "line search step underflow";
      break;
    }
    u.swap(trial);
    J = Jt;
    last_step = s;
    r_prev.swap(r);
    if (have_rt) {
      r.swap(r_trial);
    } else {
      r = ev.residual(u);
    }
    rs = sup_abs(r);
    if (opts.barzilai_borwein) {
      // du = -s r_prev, so <du, du> / <du, dr> = s <r_prev, r_prev> / <r_prev, r_prev - r>.
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        num += w[i] * r_prev[i] * r_prev[i];
        den += w[i] * r_prev[i] * (r_prev[i] - r[i]);
      }
      bb_step = den > 0.0 ? s * num / den : 0.0;
    }
    if (opts.record_trajectory) rep.trajectory.push_back({J, rs, s});
  }
  rep.iterations = it;
  rep.final_energy = J;
  rep.residual_sup = rs;
  rep.final_u = GridFunction(grid, std::move(u));
  return rep;
}

SolveReport minimize(const EnergyConfig& config, const GridFunction& u0, const SolverOptions& opts) {
  return minimize(EnergyEvaluator(config, u0.grid), u0, opts);
}

double lambda_star_formula(double rho, double C2, double c1, double phi_sup, double q_minus) {
  if (!(rho > 0.0 && rho < 1.0)) throw InputError("rho must lie in (0, 1)");
  if (!(c1 > 0.0) || !(C2 > 0.0)) throw InputError("c1 and C2 must be > 0");
  if (!(rho < 1.0 / c1)) throw InputError("rho must be smaller than 1/c1");
  return std::pow(rho, phi_sup - q_minus) / (2.0 * C2 * std::pow(c1, q_minus));
}

double default_rho(double c1) {
  if (!(c1 > 0.0)) throw InputError("c1 must be > 0");
  return std::min(0.5, 0.9 / c1);
}

double estimate_embedding_constant(const MusielakFamily& f, const ExponentField& q, GridPtr grid,
                                   std::size_t samples, std::uint64_t seed, bool constants_only) {
  if (samples == 0) throw InputError("estimate_embedding_constant needs samples >= 1");
  static constexpr double kAmplitudes[] = {0.1, 1.0, 10.0};
  static constexpr int kSmoothness[] = {0, 2, 8, 32};
  const FunctionSpace space(f, grid);
  double best = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    GridFunction u;
    if (constants_only || k % 8 == 0) {
      u = GridFunction::constant(grid, kAmplitudes[(k / (constants_only ? 1 : 8)) % 3]);
    } else {
      u = random_function(grid, seed + k, kAmplitudes[k % 3], kSmoothness[(k / 3) % 4]);
    }
    const double ratio = variable_lebesgue_norm(q, u) / space.sobolev_norm(u);
    best = std::max(best, ratio);
  }
  return best;
}

std::string SweepReport::to_csv() const {
  std::string out = "lambda,min_energy,residual_sup,solution_norm,nontrivial_flag,iterations\n";
  for (const auto& r : rows) {
    out += format_real(r.lambda) + "," + format_real(r.min_energy) + "," + format_real(r.residual_sup) + "," +
           format_real(r.solution_norm) + "," + (r.nontrivial ? "1" : "0") + "," + std::to_string(r.iterations) +
           "\n";
  }
  return out;
}

SweepReport sweep_lambda(const EnergyConfig& templ, GridPtr grid, const std::vector<double>& lambdas,
                         const SweepOptions& opts, double lambda_star_value) {
  if (lambdas.empty()) throw InputError("sweep needs at least one lambda");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) throw InputError("sweep lambdas must be > 0");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1])) throw InputError("sweep lambdas must be strictly increasing");
  }
  SweepReport rep;
  rep.lambda_values = lambdas;
  rep.lambda_star_formula_value = lambda_star_value;
  rep.lambda_upper_empirical = kNaN;

  const FunctionSpace space(templ.family, grid);
  EnergyEvaluator ev(templ.with_lambda(lambdas.front()), grid);
  const GridFunction bump = bump_function(grid, opts.bump_height);
  const GridFunction flat = GridFunction::constant(grid, opts.t0);
  const GridFunction zero = GridFunction::zero(grid);
  SolverOptions solver = opts.solver;
  solver.record_trajectory = false;

  GridFunction previous;
  bool prefix = true;
  for (double lambda : lambdas) {
    ev.set_lambda(lambda);
    SweepRow row;
    row.lambda = lambda;
    row.constant_seed_energy = ev.energy(flat);
    if (std::isnan(rep.lambda_upper_empirical) && row.constant_seed_energy < 0.0) rep.lambda_upper_empirical = lambda;

    std::vector<std::pair<std::string, const GridFunction*>> seeds{{"bump", &bump}, {"constant", &flat}, {"zero", &zero}};
    if (opts.warm_start && previous.grid) seeds.emplace_back("warm", &previous);

    bool have_best = false;
    SolveReport best;
    double best_norm = 0.0;
    for (const auto& [name, seed] : seeds) {
      SolveReport run = minimize(ev, *seed, solver);
      const double norm = space.sobolev_norm(run.final_u);
      const bool nontrivial = run.converged && run.final_energy < 0.0 && norm > opts.nontrivial_norm;
      if (name == "bump") row.bump_nontrivial = nontrivial;
      row.nontrivial = row.nontrivial || nontrivial;
      const bool better = !have_best || (run.converged && !best.converged) ||
                          (run.converged == best.converged && run.final_energy < best.final_energy);
      if (better) {
        have_best = true;
        best_norm = norm;
        row.best_seed = name;
        best = std::move(run);
      }
    }
    row.min_energy = best.final_energy;
    row.residual_sup = best.residual_sup;
    row.solution_norm = best_norm;
    row.iterations = best.iterations;
    row.converged = best.converged;
    previous = best.final_u;

    prefix = prefix && row.bump_nontrivial;
    if (prefix) rep.lambda_star_empirical = lambda;
    rep.rows.push_back(row);
  }
  return rep;
}

double lambda_crossing(const EnergyConfig& templ, const GridFunction& u0) {
  EnergyEvaluator ev(templ, u0.grid);
  const auto parts = ev.parts(u0.values);
  if (!(parts.G_integral > 0.0)) throw NumericError("lambda_crossing needs int G(u0) > 0");
  auto J = [&](double lambda) { return parts.Lambda - lambda * parts.G_integral; };
  double lo = 1e-12, hi = 1.0;
  while (J(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericError("lambda_crossing: no bracket");
  }
  while (J(lo) < 0.0) {
    hi = lo;
    lo *= 0.5;
    if (lo == 0.0) return 0.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (J(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

SmallTProbe small_t_probe(const EnergyConfig& c, const GridFunction& theta, const std::vector<double>& t_list) {
  for (double v : theta.values) {
    if (v < 0.0) throw InputError("small_t_probe needs a nonnegative theta");
  }
  const EnergyEvaluator ev(c, theta.grid);
  SmallTProbe rep;
  rep.t = t_list;
  for (double t : t_list) rep.energy.push_back(ev.energy((t == 0.0 ? 0.0 : t) * theta));
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    if (t_list[k] > 0.0 && rep.energy[k] < 0.0) rep.found_negative = true;
  }

  const double phi0 = c.family.phi0();
  const double qm = c.reaction.q().p_minus();
  rep.hypothesis = qm < phi0;
  if (!rep.hypothesis) {
    rep.consistent = true;
    return rep;
  }
  const double eps0 = 0.5 * (phi0 - qm);
  const auto& grid = *theta.grid;
  const auto& w = grid.weights();
  double inner = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = c.reaction.q()(grid.points()[i]);
    if (std::abs(q - qm) < eps0 && theta[i] > 0.0) inner += w[i] * std::pow(theta[i], q);
  }
  const double Lambda = sobolev_modular(c.family, theta);
  const double delta = std::min(1.0, c.lambda * c.reaction.C1() * inner / Lambda);
  rep.threshold = std::pow(delta, 1.0 / (phi0 - qm - eps0));
  rep.consistent = true;
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    if (t_list[k] > 0.0 && t_list[k] < rep.threshold && !(rep.energy[k] < 0.0)) rep.consistent = false;
  }
  return rep;
}

CoercivityProbe coercivity_probe(const EnergyConfig& c, const std::vector<GridFunction>& directions,
                                 const std::vector<double>& t_list) {
  if (directions.empty() || t_list.empty()) throw InputError("coercivity_probe needs directions and t values");
  CoercivityProbe rep;
  rep.hypothesis = c.reaction.q().p_plus() < c.family.phi0();
  rep.t = t_list;
  rep.passed = true;
  const EnergyEvaluator ev(c, directions.front().grid);
  const FunctionSpace space(c.family, directions.front().grid);
  for (const auto& d : directions) {
    const double n = space.sobolev_norm(d);
    if (!(n > 0.0)) throw InputError("coercivity_probe needs nonzero directions");
    const GridFunction unit = (1.0 / n) * d;
    std::vector<double> energies;
    for (double t : t_list) energies.push_back(ev.energy(t * unit));
    for (std::size_t k = 1; k < energies.size(); ++k) {
      if (!(energies[k] > energies[k - 1])) rep.passed = false;
    }
    if (!(energies.back() > 0.0)) rep.passed = false;
    rep.energy.push_back(std::move(energies));
  }
  return rep;
}

std::vector<GridFunction> default_directions(GridPtr grid, std::size_t count, std::uint64_t seed) {
  std::vector<GridFunction> out;
  if (count == 0) return out;
  out.push_back(GridFunction::constant(grid, 1.0));
  for (std::size_t k = 1; k < count; ++k) out.push_back(random_function(grid, seed + k, 1.0, 4));
  return out;
}

}  // namespace orlicz

// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "orlicz/solver.hpp"
#include "orlicz/spaces.hpp"
#include "orlicz/verify.hpp"

using namespace orlicz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Runs the named properties of the default suite and checks each against the pinned slack and
/// minimum per-family sample count.
Outcome suite_check(const std::vector<std::string>& names, const std::vector<double>& slacks,
                    const std::vector<std::size_t>& per_family, double time_limit) {
  VerifySuite suite = default_suite();
  suite.only = names;
  const auto t0 = Clock::now();
  const VerifyReport rep = run_property_suite(suite);
  const double elapsed = seconds_since(t0);
  Outcome out{true, ""};
  for (std::size_t i = 0; i < names.size(); ++i) {
    const PropertyResult& p = rep.property(names[i]);
    const bool ok = p.passed() && p.slack == slacks[i] && p.worst_margin >= -slacks[i] &&
                    p.samples >= per_family[i] * suite.families.size();
    out.pass = out.pass && ok;
    out.detail += names[i] + " " + std::to_string(p.passes) + "/" + std::to_string(p.samples) +
                  fmt(" worst %.3e; ", p.worst_margin);
  }
  if (time_limit > 0.0) {
    out.pass = out.pass && elapsed < time_limit;
    out.detail += fmt("%.1f s", elapsed) + fmt(" (limit %.0f s)", time_limit);
  } else {
    out.detail += fmt("%.1f s", elapsed);
  }
  return out;
}

GridPtr unit_interval(std::size_t nodes = 101) { return make_grid(1, {{0.0, 1.0}}, {nodes}); }

Outcome criterion7() {
  const GridPtr g = unit_interval();
  const EnergyConfig c(MusielakFamily::power(ExponentField::constant(4.0)),
                       ReactionFamily::power(ExponentField::constant(2.0)), 1.0);
  const auto t0 = Clock::now();
  const SolveReport r = minimize(c, GridFunction::constant(g, 0.3));
  const double elapsed = seconds_since(t0);
  double dev = 0.0;
  for (double v : r.final_u.values) dev = std::max(dev, std::abs(v - 1.0 / std::sqrt(2.0)));
  const bool pass = r.converged && dev <= 1e-4 && std::abs(r.final_energy + 0.25) <= 1e-4 &&
                    r.residual_sup <= 1e-6 && elapsed < 5.0;
  return {pass, "max|u-2^-1/2| " + fmt("%.2e", dev) + fmt(", J %.9f", r.final_energy) +
                    fmt(", residual %.2e", r.residual_sup) + fmt(", %.3f s", elapsed)};
}

Outcome criterion8() {
  const GridPtr g = unit_interval();
  const MusielakFamily f = MusielakFamily::power(ExponentField::affine(3.0, 1.0, 0.0, 1.0));
  const ReactionFamily r = ReactionFamily::power(ExponentField::constant(2.0));
  const double c1 = estimate_embedding_constant(f, r.q(), g, 200, 1);
  const double lstar = lambda_star_formula(default_rho(c1), r.C2(), c1, f.phi_sup(), r.q().p_minus());
  bool pass = f.phi0() == 3.0 && r.q().p_plus() < f.phi0();
  std::string detail = fmt("c1 %.6f", c1) + fmt(", lambda_star %.6e:", lstar);
  for (double frac : {1.0, 0.5, 0.1, 0.01}) {
    const EnergyConfig c(f, r, frac * lstar);
    const SolveReport s = minimize(c, bump_function(g, 0.1));
    const double n = FunctionSpace(f, g).sobolev_norm(s.final_u);
    const bool ok = s.converged && s.final_energy < 0.0 && n > 1e-6;
    pass = pass && ok;
    detail += fmt(" [%.2f", frac) + fmt(" J %.3e", s.final_energy) + fmt(" n %.3e]", n) + (ok ? "" : "!");
  }
  return {pass, detail};
}

struct ProbeCase {
  std::string label;
  MusielakFamily family;
  ReactionFamily reaction;
};

Outcome criterion9() {
  const GridPtr g = unit_interval();
  const std::vector<ProbeCase> cases{
      {"I p=4 q=2", MusielakFamily::power(ExponentField::constant(4.0)),
       ReactionFamily::power(ExponentField::constant(2.0))},
      {"I p=3+x q=2", MusielakFamily::power(ExponentField::affine(3.0, 1.0, 0.0, 1.0)),
       ReactionFamily::power(ExponentField::constant(2.0))},
      {"I p=5 ex3 q=3", MusielakFamily::power(ExponentField::constant(5.0)),
       ReactionFamily::power_sin(ExponentField::constant(3.0))},
      {"III p=3 q=2", MusielakFamily::log_weight(ExponentField::constant(3.0), 1.0),
       ReactionFamily::power(ExponentField::constant(2.0))},
      {"II p=6 ex2 q=4", MusielakFamily::log_quotient(ExponentField::constant(6.0)),
       ReactionFamily::power_log(ExponentField::constant(4.0))},
  };
  const std::vector<double> small_t{0.1, 0.03, 0.01, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
  const auto dirs = default_directions(g, 6, 1);
  const GridFunction theta = bump_function(g, 1.0);
  bool pass = true;
  std::string detail;
  for (const auto& pc : cases) {
    const EnergyConfig c(pc.family, pc.reaction, 1.0);
    const SmallTProbe sp = small_t_probe(c, theta, small_t);
    const CoercivityProbe cp = coercivity_probe(c, dirs);
    const bool ok = sp.hypothesis && sp.found_negative && sp.consistent && cp.hypothesis && cp.passed;
    pass = pass && ok;
    detail += pc.label + (ok ? " ok; " : " FAILED; ");
  }
  const EnergyConfig neg(MusielakFamily::power(ExponentField::constant(2.0)),
                         ReactionFamily::power(ExponentField::constant(4.0)), 1.0);
  const CoercivityProbe cn = coercivity_probe(neg, dirs);
  const bool neg_ok = !cn.hypothesis && !cn.passed;
  pass = pass && neg_ok;
  detail += std::string("control p=2 q=4 ") + (neg_ok ? "rejected" : "NOT rejected");
  return {pass, detail};
}

struct CrossingCase {
  std::string label;
  MusielakFamily family;
  ReactionFamily reaction;
  std::function<double(double)> phi;  // independent phi for the oracle
  std::function<double(double)> G;
};

Outcome criterion10() {
  const GridPtr g = unit_interval();
  const double t0 = 2.0;
  const double c3 = 2.0;  // 1 + alpha
  const std::vector<CrossingCase> cases{
      {"I p=4 ex1 q=2", MusielakFamily::power(ExponentField::constant(4.0)),
       ReactionFamily::power(ExponentField::constant(2.0)), [](double t) { return 4.0 * t * t * t; },
       [](double t) { return t * t; }},
      {"I p=5 ex3 q=3", MusielakFamily::power(ExponentField::constant(5.0)),
       ReactionFamily::power_sin(ExponentField::constant(3.0)), [](double t) { return 5.0 * std::pow(t, 4.0); },
       [](double t) { return t * t * t + std::sin(std::sin(t)) * t * t; }},
      {"III p=3 ex1 q=2", MusielakFamily::log_weight(ExponentField::constant(3.0), 1.0),
       ReactionFamily::power(ExponentField::constant(2.0)),
       [c3](double t) { return 3.0 * std::log(c3 + t) * t * t; }, [](double t) { return t * t; }},
  };
  bool pass = true;
  std::string detail;
  SweepOptions opts;
  opts.t0 = t0;
  for (const auto& cc : cases) {
    using boost::math::quadrature::gauss_kronrod;
    const double Phi_t0 = gauss_kronrod<double, 61>::integrate(cc.phi, 0.0, t0, 10, 1e-15);
    const double oracle = Phi_t0 / cc.G(t0);
    const EnergyConfig templ(cc.family, cc.reaction, 1.0);
    const double root = lambda_crossing(templ, GridFunction::constant(g, t0));
    const double rel = std::abs(root - oracle) / oracle;
    const SweepReport sw = sweep_lambda(templ, g, {1.5 * root, 3.0 * root}, opts);
    bool above = std::abs(sw.lambda_upper_empirical - 1.5 * root) <= 1e-12 * root;
    for (const auto& row : sw.rows) above = above && row.nontrivial && row.min_energy < 0.0 && row.converged;
    const bool ok = rel <= 1e-6 && above;
    pass = pass && ok;
    detail += cc.label + fmt(" root %.9f", root) + fmt(" rel %.1e", rel) + (above ? "" : " sweep!") + "; ";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "norm-modular and Sobolev relations, runtime < 60 s",
       [] { return suite_check({"norm_modular", "sobolev_relations"}, {1e-8, 1e-8}, {1000, 1000}, 60.0); }},
      {2, "unit-ball identity", [] { return suite_check({"unit_ball"}, {1e-7}, {200}, 0.0); }},
      {3, "Delta2 with K = 2^phi_sup on a 100x100 grid", [] { return suite_check({"delta2"}, {1e-9}, {10000}, 0.0); }},
      {4, "Young and Hoelder inequalities",
       [] { return suite_check({"young", "holder"}, {1e-8, 1e-8}, {10000, 200}, 0.0); }},
      {5, "Sobolev norm equivalences", [] { return suite_check({"norm_equivalence"}, {1e-8}, {500}, 0.0); }},
      {6, "directional derivative against central differences",
       [] { return suite_check({"derivative"}, {0.0}, {50 * 3}, 0.0); }},
      {7, "constant-solution recovery", criterion7},
      {8, "bump seed nontrivial for lambda <= lambda_star", criterion8},
      {9, "small-t and coercivity probes", criterion9},
      {10, "large-lambda crossing and nontrivial solutions above it", criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %d: %s | %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

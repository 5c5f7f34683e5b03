#include "orlicz/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/spaces.hpp"

namespace orlicz {

namespace {

using nlohmann::json;

constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kAmplitudes[] = {0.1, 1.0, 10.0};
constexpr int kSmoothness[] = {0, 2, 8, 32};

struct Witness {
  int family = -1;
  int reaction = -1;
  int grid = -1;
  std::uint64_t seed_u = 0, seed_v = 0;
  double amp_u = 0.0, amp_v = 0.0;
  int smooth_u = 0, smooth_v = 0;
  double x = 0.0, t = 0.0, s = 0.0;
  bool pointwise = false;
};

json to_json(const Witness& w) {
  json j;
  if (w.family >= 0) j["family"] = w.family;
  if (w.reaction >= 0) j["reaction"] = w.reaction;
  if (w.grid >= 0) j["grid"] = w.grid;
  if (w.pointwise) {
    j["x"] = w.x;
    j["t"] = w.t;
    j["s"] = w.s;
  } else {
    j["seed_u"] = w.seed_u;
    j["amp_u"] = w.amp_u;
    j["smooth_u"] = w.smooth_u;
    j["seed_v"] = w.seed_v;
    j["amp_v"] = w.amp_v;
    j["smooth_v"] = w.smooth_v;
    j["s"] = w.s;
  }
  return j;
}

Witness from_json(const json& j) {
  Witness w;
  w.family = j.value("family", -1);
  w.reaction = j.value("reaction", -1);
  w.grid = j.value("grid", -1);
  w.pointwise = j.contains("x");
  w.x = j.value("x", 0.0);
  w.t = j.value("t", 0.0);
  w.s = j.value("s", 0.0);
  w.seed_u = j.value("seed_u", std::uint64_t{0});
  w.seed_v = j.value("seed_v", std::uint64_t{0});
  w.amp_u = j.value("amp_u", 0.0);
  w.amp_v = j.value("amp_v", 0.0);
  w.smooth_u = j.value("smooth_u", 0);
  w.smooth_v = j.value("smooth_v", 0);
  return w;
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(rng));
}

/// Shared per-suite state, built lazily.
class Context {
 public:
  explicit Context(const VerifySuite& s) : suite(s) {}

  const VerifySuite& suite;

  const MusielakFamily& family(int i) const { return suite.families.at(static_cast<std::size_t>(i)); }
  const ReactionFamily& reaction(int i) const { return suite.reactions.at(static_cast<std::size_t>(i)); }
  const GridPtr& grid(int i) const { return suite.grids.at(static_cast<std::size_t>(i)); }

  const FunctionSpace& space(int f, int g) const {
    auto& slot = spaces_[{f, g}];
    if (!slot) slot = std::make_unique<FunctionSpace>(family(f), grid(g));
    return *slot;
  }

  const EnergyEvaluator& evaluator(int f, int r, int g) const {
    auto& slot = evaluators_[{f, r, g}];
    if (!slot) slot = std::make_unique<EnergyEvaluator>(EnergyConfig(family(f), reaction(r), 1.0), grid(g));
    return *slot;
  }

  GridFunction u(const Witness& w) const { return random_function(grid(w.grid), w.seed_u, w.amp_u, w.smooth_u); }
  GridFunction v(const Witness& w) const { return random_function(grid(w.grid), w.seed_v, w.amp_v, w.smooth_v); }

 private:
  mutable std::map<std::pair<int, int>, std::unique_ptr<FunctionSpace>> spaces_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<EnergyEvaluator>> evaluators_;
};

enum class Scope { family, family_grid, family_reaction_grid, reaction };

struct Property {
  std::string name;
  Scope scope;
  std::size_t base;
  bool scaled;
  double slack;
  std::function<void(const Context&, std::mt19937_64&, std::size_t, Witness&)> generate;
  std::function<double(const Context&, const Witness&)> evaluate;
};

// Support of an exponent along x1 (constant exponents are sampled on [0, 1]).
std::pair<double, double> support(const ExponentField& p) {
  if (p.is_constant()) return {0.0, 1.0};
  return {p.x1_lo(), p.x1_hi()};
}

double draw_x(const ExponentField& p, std::mt19937_64& rng) {
  const auto [lo, hi] = support(p);
  return lo + (hi - lo) * unit(rng);
}

// Mostly log-uniform on [1e-4, 1e4], partly concentrated on [0.1, 10] and on custom breakpoints.
double draw_t(const MusielakFamily& f, std::mt19937_64& rng, std::size_t k) {
  const auto* prof = f.profile();
  switch (k % 4) {
    case 1: return log_uniform(rng, 0.1, 10.0);
    case 3:
      if (prof && !prof->breakpoints.empty()) {
        const double lo = prof->breakpoints.front(), hi = prof->breakpoints.back();
        return lo + (hi - lo) * unit(rng);
      }
      [[fallthrough]];
    default: return log_uniform(rng, 1e-4, 1e4);
  }
}

void draw_functions(std::mt19937_64& rng, std::size_t k, Witness& w, bool moderate = false) {
  w.seed_u = rng();
  w.seed_v = rng();
  if (moderate) {
    w.amp_u = kAmplitudes[k % 2];
    w.amp_v = 1.0;
    w.smooth_u = 4 * (1 + static_cast<int>(rng() % 4));
    w.smooth_v = 4 * (1 + static_cast<int>(rng() % 4));
  } else {
    w.amp_u = kAmplitudes[k % 3];
    w.amp_v = kAmplitudes[(k / 3) % 3];
    w.smooth_u = kSmoothness[rng() % 4];
    w.smooth_v = kSmoothness[rng() % 4];
  }
}

void pointwise_family(const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
  const auto& f = ctx.family(w.family);
  w.pointwise = true;
  w.x = draw_x(f.exponent(), rng);
  w.t = draw_t(f, rng, k);
}

LocalFamily local(const Context& ctx, const Witness& w) { return ctx.family(w.family).at(Point{w.x, 0.0}); }

double rel_gap(double big, double small) { return (big - small) / std::max({std::abs(big), std::abs(small), kTiny}); }

std::vector<Property> make_properties() {
  std::vector<Property> props;
  auto add = [&](std::string name, Scope scope, std::size_t base, bool scaled, double slack, auto gen, auto eval) {
    props.push_back(Property{std::move(name), scope, base, scaled, slack, gen, eval});
  };
  auto function_pair = [](const Context&, std::mt19937_64& rng, std::size_t k, Witness& w) {
    draw_functions(rng, k, w);
  };

  // ---- pointwise family properties --------------------------------------------------------
  add("phi_odd", Scope::family, 1000, true, 0.0, pointwise_family, [](const Context& ctx, const Witness& w) {
    const auto L = local(ctx, w);
    return -std::abs(L.phi(-w.t) + L.phi(w.t)) / std::max(std::abs(L.phi(w.t)), kTiny);
  });
  add("phi_monotone", Scope::family, 1000, true, 1e-12,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.s = w.t * (1.0 + log_uniform(rng, 1e-3, 1e-1));
      },
      [](const Context& ctx, const Witness& w) {
        const auto L = local(ctx, w);
        return rel_gap(L.phi(w.s), L.phi(w.t));
      });
  add("Phi_monotone", Scope::family, 1000, true, 1e-12,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.s = w.t * (1.0 + log_uniform(rng, 1e-3, 1e-1));
      },
      [](const Context& ctx, const Witness& w) {
        const auto L = local(ctx, w);
        const double a = L.Phi(w.t), b = L.Phi(w.s);
        return a > 0.0 ? rel_gap(b, a) : -1.0;
      });
  add("exponent_bounds", Scope::family, 1000, true, 1e-9, pointwise_family, [](const Context& ctx, const Witness& w) {
    const auto& f = ctx.family(w.family);
    const auto L = local(ctx, w);
    const double r = w.t * L.phi(w.t) / L.Phi(w.t);
    return std::min(r - f.phi0(), f.phi_sup() - r) / f.phi_sup();
  });
  add("delta2", Scope::family, 10000, false, 1e-9,
      [](const Context& ctx, std::mt19937_64&, std::size_t k, Witness& w) {
        const auto& f = ctx.family(w.family);
        const auto [lo, hi] = support(f.exponent());
        w.pointwise = true;
        w.x = lo + (hi - lo) * static_cast<double>((k / 100) % 100) / 99.0;
        w.t = log_grid(1e-4, 1e4, 100)[k % 100];
      },
      [](const Context& ctx, const Witness& w) {
        const auto& f = ctx.family(w.family);
        const auto L = local(ctx, w);
        const double bound = std::pow(2.0, f.phi_sup()) * L.Phi(w.t);
        return (bound - L.Phi(2.0 * w.t)) / bound;
      });
  add("sqrt_convex", Scope::family, 1000, true, 1e-9,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.s = w.t * (1.0 + log_uniform(rng, 1e-2, 1.0));
      },
      [](const Context& ctx, const Witness& w) {
        // Chord of tau -> Phi(sqrt(tau)) over [t^2, s^2] against its midpoint value.
        const auto L = local(ctx, w);
        const double a = w.t * w.t, b = w.s * w.s;
        const double chord = 0.5 * (L.Phi(w.t) + L.Phi(w.s));
        return rel_gap(chord, L.Phi(std::sqrt(0.5 * (a + b))));
      });
  add("growth", Scope::family, 1000, true, 1e-9, pointwise_family, [](const Context& ctx, const Witness& w) {
    const auto& f = ctx.family(w.family);
    const auto L = local(ctx, w);
    const double Phi = L.Phi(w.t);
    return (Phi - f.M_lower() * std::pow(w.t, L.exponent())) / Phi;
  });
  add("scaling", Scope::family, 1000, true, 1e-9,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.t = log_uniform(rng, 1e-3, 1e3);
        w.s = log_uniform(rng, 1e-3, 1e3);
      },
      [](const Context& ctx, const Witness& w) {
        const auto& f = ctx.family(w.family);
        const auto L = local(ctx, w);
        const double base = L.Phi(w.t), scaled = L.Phi(w.s * w.t);
        const double a = std::pow(w.s, f.phi0()) * base, b = std::pow(w.s, f.phi_sup()) * base;
        const double lo = std::min(a, b), hi = std::max(a, b);
        return std::min(rel_gap(scaled, lo), rel_gap(hi, scaled));
      });
  add("fundamental_theorem", Scope::family, 200, true, 0.0,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.t = log_uniform(rng, 1e-3, 1e3);
      },
      [](const Context& ctx, const Witness& w) {
        const auto L = local(ctx, w);
        // Geometric panels toward 0 resolve the t^{p-2} endpoint behaviour of phi.
        auto f = [&](double s) { return L.phi(s); };
        std::vector<double> cuts;
        for (int k = 60; k >= 1; --k) cuts.push_back(std::ldexp(w.t, -k));
        if (const auto* prof = ctx.family(w.family).profile()) {
          for (double b : prof->breakpoints) {
            if (b < w.t) cuts.push_back(b);
          }
        }
        cuts.push_back(w.t);
        std::sort(cuts.begin(), cuts.end());
        double q = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
          q += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 8, 1e-13);
        }
        const double Phi = L.Phi(w.t);
        return 1e-10 - std::abs(Phi - q) / std::max(1.0, Phi);
      });
  add("inverse_roundtrip", Scope::family, 1000, true, 0.0,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.t = log_uniform(rng, 1e-3, 1e3);
      },
      [](const Context& ctx, const Witness& w) {
        const auto L = local(ctx, w);
        return 1e-10 - std::abs(L.phi_inverse(L.phi(w.t)) - w.t) / w.t;
      });
  add("young", Scope::family, 10000, true, 1e-8,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.t = log_uniform(rng, 1e-3, 1e3);
        const auto L = local(ctx, w);
        // Every other triple sits on the equality curve s = phi(t).
        w.s = k % 2 == 0 ? L.phi(w.t) : L.phi(log_uniform(rng, 1e-3, 1e3));
      },
      [](const Context& ctx, const Witness& w) {
        const auto L = local(ctx, w);
        const double rhs = L.Phi(w.t) + L.conjugate(w.s);
        return (rhs - w.t * w.s) / std::max(1.0, rhs);
      });
  add("conjugate_bound", Scope::family, 1000, true, 1e-9,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t k, Witness& w) {
        pointwise_family(ctx, rng, k, w);
        w.t = log_uniform(rng, 1e-3, 1e3);
      },
      [](const Context& ctx, const Witness& w) {
        const auto& f = ctx.family(w.family);
        const auto L = local(ctx, w);
        const double bound = f.phi_sup() * L.Phi(w.t);
        return (bound - L.conjugate(L.phi(w.t))) / bound;
      });

  // ---- function-level properties ----------------------------------------------------------
  add("norm_modular", Scope::family_grid, 1000, true, 1e-8, function_pair, [](const Context& ctx, const Witness& w) {
    const auto& sp = ctx.space(w.family, w.grid);
    const auto u = ctx.u(w);
    const double N = sp.norm(u), rho = sp.modular(u);
    const double a = std::pow(N, sp.family().phi0()), b = std::pow(N, sp.family().phi_sup());
    const double lo = std::min(a, b), hi = std::max(a, b);
    return std::min(rho - lo, hi - rho) / rho;
  });
  add("sobolev_relations", Scope::family_grid, 1000, true, 1e-8, function_pair,
      [](const Context& ctx, const Witness& w) {
        const auto& sp = ctx.space(w.family, w.grid);
        const auto u = ctx.u(w);
        const double n = sp.sobolev_norm(u), L = sp.sobolev_modular(u);
        const double bound = std::pow(n, n > 1.0 ? sp.family().phi0() : sp.family().phi_sup());
        return (L - bound) / L;
      });
  add("unit_ball", Scope::family_grid, 200, true, 1e-7, function_pair, [](const Context& ctx, const Witness& w) {
    const auto& sp = ctx.space(w.family, w.grid);
    const auto u = ctx.u(w);
    return -std::abs(sp.modular((1.0 / sp.norm(u)) * u) - 1.0);
  });
  add("homogeneity", Scope::family_grid, 200, true, 1e-7,
      [](const Context&, std::mt19937_64& rng, std::size_t k, Witness& w) {
        draw_functions(rng, k, w);
        w.s = (rng() % 2 ? 1.0 : -1.0) * log_uniform(rng, 1e-2, 1e2);
      },
      [](const Context& ctx, const Witness& w) {
        const auto& sp = ctx.space(w.family, w.grid);
        const auto u = ctx.u(w);
        const double ref = std::abs(w.s) * sp.norm(u);
        return -std::abs(sp.norm(w.s * u) - ref) / ref;
      });
  add("triangle", Scope::family_grid, 200, true, 1e-7, function_pair, [](const Context& ctx, const Witness& w) {
    const auto& sp = ctx.space(w.family, w.grid);
    const auto u = ctx.u(w), v = ctx.v(w);
    const double sum = sp.norm(u) + sp.norm(v);
    return (sum - sp.norm(u + v)) / sum;
  });
  add("parallelogram", Scope::family_grid, 200, true, 1e-8, function_pair, [](const Context& ctx, const Witness& w) {
    const auto& sp = ctx.space(w.family, w.grid);
    const auto u = ctx.u(w), v = ctx.v(w);
    const double lhs = 0.5 * (sp.modular(u) + sp.modular(v));
    const double rhs = sp.modular(0.5 * (u + v)) + sp.modular(0.5 * (u - v));
    return (lhs - rhs) / lhs;
  });
  add("holder", Scope::family_grid, 200, true, 1e-8, function_pair, [](const Context& ctx, const Witness& w) {
    const auto& sp = ctx.space(w.family, w.grid);
    const auto u = ctx.u(w), v = ctx.v(w);
    std::vector<double> prod(u.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u[i] * v[i];
    const double bound = 2.0 * sp.norm(u) * sp.conjugate_norm(v);
    return (bound - std::abs(integrate(*u.grid, prod))) / bound;
  });
  add("norm_equivalence", Scope::family_grid, 500, true, 1e-8, function_pair,
      [](const Context& ctx, const Witness& w) {
        const auto n = ctx.space(w.family, w.grid).sobolev_norms(ctx.u(w));
        return std::min({rel_gap(2.0 * n.n2, n.n1), rel_gap(n.n1, n.n2), rel_gap(2.0 * n.n, n.n1),
                         rel_gap(2.0 * n.n2, n.n)});
      });
  add("modular_convergence", Scope::family_grid, 20, true, 1e-12, function_pair,
      [](const Context& ctx, const Witness& w) {
        // u_n - u = 2^{-n} v: norm and modular must both decrease to zero.
        const auto& sp = ctx.space(w.family, w.grid);
        const auto v = ctx.v(w);
        const double N0 = sp.norm(v), R0 = sp.modular(v);
        double prevN = N0, prevR = R0, margin = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 30; ++n) {
          const auto d = std::ldexp(1.0, -n) * v;
          const double N = sp.norm(d), R = sp.modular(d);
          margin = std::min({margin, (prevN - N) / prevN, (prevR - R) / prevR});
          prevN = N;
          prevR = R;
        }
        return std::min({margin, 1e-6 - prevN / N0, 1e-6 - prevR / R0});
      });
  add("evenness", Scope::family_grid, 100, true, 0.0, function_pair, [](const Context& ctx, const Witness& w) {
    const auto& sp = ctx.space(w.family, w.grid);
    const auto u = ctx.u(w);
    return -std::abs(sp.sobolev_modular(-u) - sp.sobolev_modular(u));
  });

  // ---- energy properties ------------------------------------------------------------------
  auto moderate_pair = [](const Context&, std::mt19937_64& rng, std::size_t k, Witness& w) {
    draw_functions(rng, k, w, true);
  };
  add("derivative", Scope::family_reaction_grid, 50, false, 0.0, moderate_pair,
      [](const Context& ctx, const Witness& w) {
        const auto& ev = ctx.evaluator(w.family, w.reaction, w.grid);
        const auto u = ctx.u(w), v = ctx.v(w);
        const double h = 1e-6;
        const double dd = ev.directional_derivative(u, v);
        const double cd = (ev.energy(u + h * v) - ev.energy(u - h * v)) / (2.0 * h);
        return 1e-5 - std::abs(dd - cd) / (1.0 + std::abs(dd));
      });
  add("residual_pairing", Scope::family_reaction_grid, 50, false, 0.0, moderate_pair,
      [](const Context& ctx, const Witness& w) {
        const auto& ev = ctx.evaluator(w.family, w.reaction, w.grid);
        const auto u = ctx.u(w), v = ctx.v(w);
        const auto r = ev.residual(u.values);
        const auto& wt = u.grid->weights();
        double pair = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
          pair += wt[i] * r[i] * v[i];
          scale += std::abs(wt[i] * r[i] * v[i]);
        }
        return 1e-10 - std::abs(pair - ev.directional_derivative(u, v)) / (1.0 + scale);
      });
  add("translation_zero", Scope::family_reaction_grid, 20, false, 0.0, moderate_pair,
      [](const Context& ctx, const Witness& w) {
        const auto& ev = ctx.evaluator(w.family, w.reaction, w.grid);
        const auto u = ctx.u(w);
        const double J = ev.energy(u);
        return -std::abs((J - ev.energy(GridFunction::zero(u.grid))) - J);
      });
  add("primitive", Scope::reaction, 1000, true, 0.0,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t, Witness& w) {
        w.pointwise = true;
        w.x = draw_x(ctx.reaction(w.reaction).q(), rng);
        do {
          w.t = -5.0 + 10.0 * unit(rng);
        } while (std::abs(w.t) < 1e-3);
      },
      [](const Context& ctx, const Witness& w) {
        const auto& r = ctx.reaction(w.reaction);
        const double q = r.q()(Point{w.x, 0.0});
        const double h = 1e-6 * std::abs(w.t);
        const double cd = (r.G(q, w.t + h) - r.G(q, w.t - h)) / (2.0 * h);
        const double g = r.g(q, w.t);
        return 1e-6 - std::abs(cd - g) / std::max(std::abs(g), std::pow(std::abs(w.t), q - 1.0));
      });
  add("envelope", Scope::reaction, 1000, true, 1e-8,
      [](const Context& ctx, std::mt19937_64& rng, std::size_t, Witness& w) {
        const auto& r = ctx.reaction(w.reaction);
        w.pointwise = true;
        w.x = draw_x(r.q(), rng);
        const double lo = std::max(r.window_lo(), 1e-4), hi = std::min(r.window_hi(), 1e4);
        w.t = (rng() % 2 ? 1.0 : -1.0) * log_uniform(rng, lo, hi);
      },
      [](const Context& ctx, const Witness& w) {
        const auto& r = ctx.reaction(w.reaction);
        const double q = r.q()(Point{w.x, 0.0});
        const double a = std::abs(w.t);
        const double g = std::abs(r.g(q, w.t)), G = r.G(q, w.t);
        const double gb = r.C0() * std::pow(a, q - 1.0), up = r.C2() * std::pow(a, q);
        const double lo = r.C1() * std::pow(a, q);
        return std::min({(gb - g) / gb, (G - lo) / up, (up - G) / up});
      });
  return props;
}

const std::vector<Property>& properties() {
  static const std::vector<Property> props = make_properties();
  return props;
}

const Property& find_property(const std::string& name) {
  for (const auto& p : properties()) {
    if (p.name == name) return p;
  }
  throw InputError("unknown property '" + name + "'");
}

std::vector<Witness> configurations(const VerifySuite& s, Scope scope) {
  std::vector<Witness> out;
  const int nf = static_cast<int>(s.families.size()), nr = static_cast<int>(s.reactions.size());
  const int ng = static_cast<int>(s.grids.size());
  switch (scope) {
    case Scope::family:
      for (int f = 0; f < nf; ++f) out.push_back(Witness{.family = f});
      break;
    case Scope::family_grid:
      for (int f = 0; f < nf; ++f)
        for (int g = 0; g < ng; ++g) out.push_back(Witness{.family = f, .grid = g});
      break;
    case Scope::family_reaction_grid:
      for (int f = 0; f < nf; ++f)
        for (int r = 0; r < nr; ++r)
          for (int g = 0; g < ng; ++g) out.push_back(Witness{.family = f, .reaction = r, .grid = g});
      break;
    case Scope::reaction:
      for (int r = 0; r < nr; ++r) out.push_back(Witness{.reaction = r});
      break;
  }
  return out;
}

double safe_margin(const Property& p, const Context& ctx, const Witness& w, std::string& error) {
  try {
    const double m = p.evaluate(ctx, w);
    if (std::isnan(m)) {
      error = "margin is NaN";
      return -std::numeric_limits<double>::infinity();
    }
    return m;
  } catch (const std::exception& e) {
    error = e.what();
    return -std::numeric_limits<double>::infinity();
  }
}

void validate(const VerifySuite& s) {
  if (s.n_samples == 0) throw InputError("verify needs samples >= 1");
  if (s.families.empty()) throw InputError("verify needs at least one family");
  if (s.grids.empty()) throw InputError("verify needs at least one grid");
  for (const auto& name : s.only) find_property(name);
  for (const auto& [name, count] : s.sample_overrides) {
    find_property(name);
    if (count == 0) throw InputError("sample override for '" + name + "' must be >= 1");
  }
}

}  // namespace

VerifySuite default_suite() {
  VerifySuite s;
  s.families.push_back(MusielakFamily::power(ExponentField::affine(2.0, 1.0, 0.0, 1.0)));
  s.families.push_back(MusielakFamily::log_quotient(ExponentField::affine(3.0, 1.0, 0.0, 1.0)));
  s.families.push_back(MusielakFamily::log_weight(ExponentField::affine(2.0, 1.0, 0.0, 1.0), 1.0));
  s.reactions.push_back(ReactionFamily::power(ExponentField::affine(2.0, 0.5, 0.0, 1.0)));
  s.reactions.push_back(ReactionFamily::power_log(ExponentField::affine(4.0, 1.0, 0.0, 1.0)));
  s.reactions.push_back(ReactionFamily::power_sin(ExponentField::affine(3.0, 0.5, 0.0, 1.0)));
  s.grids.push_back(make_grid(1, {{0.0, 1.0}}, {101}));
  s.grids.push_back(make_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, {33, 33}));
  return s;
}

VerifySuite load_suite(const std::string& path, std::optional<std::size_t> samples,
                       std::optional<std::uint64_t> seed) {
  const auto cfg = KeyValueConfig::load(path);
  VerifySuite s = default_suite();
  const auto dir = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return (fp.is_absolute() ? fp : dir / fp).string();
  };
  if (cfg.has("families") && cfg.get("families") != "default") {
    s.families.clear();
    for (const auto& f : cfg.words("families")) s.families.push_back(MusielakFamily::from_descriptor(KeyValueConfig::load(resolve(f))));
  }
  if (cfg.has("reactions") && cfg.get("reactions") != "default") {
    s.reactions.clear();
    if (cfg.get("reactions") != "none") {
      for (const auto& r : cfg.words("reactions")) {
        const auto rc = KeyValueConfig::load(resolve(r));
        s.reactions.push_back(ReactionFamily::make(reaction_id_from_string(rc.get("reaction")),
                                                   ExponentField::from_text(rc.get("q"))));
      }
    }
  }
  if (cfg.has("grids") && cfg.get("grids") != "default") {
    s.grids.clear();
    std::string all = cfg.get("grids");
    std::size_t start = 0;
    while (start <= all.size()) {
      const std::size_t end = std::min(all.find(';', start), all.size());
      const auto words = split_words(std::string_view(all).substr(start, end - start));
      start = end + 1;
      if (words.empty()) continue;
      const auto dim = parse_count(words[0], path + ": grid dimension");
      if ((dim != 1 && dim != 2) || words.size() != 1 + 3 * dim) {
        throw InputError(path + ": grid entries read 'dim lo1 hi1 [lo2 hi2] n1 [n2]'");
      }
      std::vector<std::pair<double, double>> ext;
      std::vector<std::size_t> nodes;
      for (std::size_t k = 0; k < dim; ++k) {
        ext.emplace_back(parse_real(words[1 + 2 * k], path), parse_real(words[2 + 2 * k], path));
        nodes.push_back(parse_count(words[1 + 2 * dim + k], path));
      }
      s.grids.push_back(make_grid(static_cast<int>(dim), ext, nodes));
    }
  }
  s.n_samples = samples ? *samples : cfg.count_or("samples", s.n_samples);
  s.seed = seed ? *seed : cfg.count_or("seed", s.seed);
  if (cfg.has("only")) s.only = cfg.words("only");
  validate(s);
  return s;
}

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : properties()) out.push_back(p.name);
  return out;
}

const PropertyResult& VerifyReport::property(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.name == name) return p;
  }
  throw InputError("report has no property '" + name + "'");
}

json VerifyReport::to_json() const {
  json props = json::array();
  for (const auto& p : properties) {
    json j;
    j["name"] = p.name;
    j["samples"] = p.samples;
    j["passes"] = p.passes;
    j["worst_margin"] = std::isfinite(p.worst_margin) ? json(p.worst_margin) : json(nullptr);
    j["slack"] = p.slack;
    j["witness"] = p.witness;
    if (!p.error.empty()) j["error"] = p.error;
    props.push_back(std::move(j));
  }
  return json{{"overall", overall}, {"properties", std::move(props)}};
}

std::string VerifyReport::to_csv() const {
  std::string out = "property,samples,passes,worst_margin\n";
  for (const auto& p : properties) {
    out += p.name + "," + std::to_string(p.samples) + "," + std::to_string(p.passes) + "," +
           (std::isfinite(p.worst_margin) ? format_real(p.worst_margin) : std::string("-inf")) + "\n";
  }
  return out;
}

VerifyReport run_property_suite(const VerifySuite& suite) {
  validate(suite);
  const Context ctx(suite);
  VerifyReport report;
  const auto& props = properties();
  for (std::size_t pi = 0; pi < props.size(); ++pi) {
    const Property& p = props[pi];
    if (!suite.only.empty() && std::find(suite.only.begin(), suite.only.end(), p.name) == suite.only.end()) continue;
    const auto configs = configurations(suite, p.scope);
    if (configs.empty()) continue;
    std::size_t count = p.base;
    if (auto it = suite.sample_overrides.find(p.name); it != suite.sample_overrides.end()) {
      count = it->second;
    } else if (p.scaled) {
      count = std::max<std::size_t>(1, (p.base * suite.n_samples + 500) / 1000);
    }
    const auto start = std::chrono::steady_clock::now();
    PropertyResult res;
    res.name = p.name;
    res.slack = p.slack;
    res.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
      for (std::size_t k = 0; k < count; ++k) {
        std::mt19937_64 rng(splitmix(splitmix(splitmix(suite.seed) ^ pi) ^ ci) ^ k);
        Witness w = configs[ci];
        p.generate(ctx, rng, k, w);
        std::string error;
        const double m = safe_margin(p, ctx, w, error);
        ++res.samples;
        if (m >= -p.slack) ++res.passes;
        if (m < res.worst_margin || res.witness.is_null()) {
          res.worst_margin = m + 0.0;
          res.witness = to_json(w);
          res.error = error;
        }
      }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.overall = report.overall && res.passed();
    report.properties.push_back(std::move(res));
  }
  return report;
}

double evaluate_case(const VerifySuite& suite, const std::string& property, const json& witness) {
  validate(suite);
  const Context ctx(suite);
  const Property& p = find_property(property);
  std::string error;
  return safe_margin(p, ctx, from_json(witness), error);
}

}  // namespace orlicz

#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "orlicz/errors.hpp"
#include "orlicz/spaces.hpp"

using namespace orlicz;

namespace {
GridPtr line(std::size_t n = 101) { return make_grid(1, {{0.0, 1.0}}, {n}); }
GridPtr square(std::size_t n = 33) { return make_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, {n, n}); }

// Independent bisection on the discrete modular with Phi = t^{p(x)}.
double power_norm_oracle(const ExponentField& p, const GridFunction& u) {
  const auto& g = *u.grid;
  auto rho = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * std::pow(std::abs(u[i]) / mu, p(g.points()[i]));
    return s - 1.0;
  };
  boost::math::tools::eps_tolerance<double> tol(50);
  const auto r = boost::math::tools::bisect(rho, 1e-6, 1e6, tol);
  return 0.5 * (r.first + r.second);
}
}  // namespace

TEST(Norm, ConstantPowerTwo) {
  const auto f = MusielakFamily::power(ExponentField::constant(2.0));
  const auto u = GridFunction::constant(line(), 2.0);
  EXPECT_NEAR(luxemburg_norm(f, u), 2.0, 1e-13);
  EXPECT_NEAR(modular(f, u), 4.0, 1e-13);
  EXPECT_EQ(luxemburg_norm(f, GridFunction::zero(line())), 0.0);
}

TEST(Norm, VariableExponentMatchesBisectionOracle) {
  const auto p = ExponentField::affine(2.0, 1.0, 0.0, 1.0);
  const auto f = MusielakFamily::power(p);
  // On a unit-measure domain the norm of a constant is the constant, whatever the exponent.
  EXPECT_NEAR(luxemburg_norm(f, GridFunction::constant(line(), 2.0)), 2.0, 1e-13);
  const auto u = sample(line(), [](const Point& x) { return 1.0 + x[0]; });
  const double oracle = power_norm_oracle(p, u);
  EXPECT_NEAR(luxemburg_norm(f, u), oracle, 1e-12);
  // Continuum value solves int_0^1 ((1 + x) / mu)^{2 + x} dx = 1.
  EXPECT_NEAR(luxemburg_norm(f, u), 1.5720306676, 1e-4);
  EXPECT_NEAR(luxemburg_norm(f, u), 1.5720454002, 1e-9);
}

TEST(Norm, RandomFunctionsMatchOracle2D) {
  const auto p = ExponentField::affine(2.5, 1.0, 0.0, 1.0);
  const auto f = MusielakFamily::power(p);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto u = random_function(square(), seed, 3.0, 2);
    EXPECT_NEAR(luxemburg_norm(f, u) / power_norm_oracle(p, u), 1.0, 1e-12);
  }
}

TEST(Norm, UnitBallAndHomogeneity) {
  const std::vector<MusielakFamily> fams{
      MusielakFamily::power(ExponentField::affine(2.0, 1.0, 0.0, 1.0)),
      MusielakFamily::log_quotient(ExponentField::affine(3.0, 1.0, 0.0, 1.0)),
      MusielakFamily::log_weight(ExponentField::affine(2.0, 1.0, 0.0, 1.0), 1.0)};
  for (const auto& f : fams) {
    FunctionSpace sp(f, square(17));
    for (double amp : {1e-6, 0.1, 10.0, 1e6}) {
      const auto u = random_function(sp.grid(), 7, amp, 3);
      const double n = sp.norm(u);
      EXPECT_NEAR(sp.modular((1.0 / n) * u), 1.0, 1e-9) << f.name() << " amp " << amp;
      EXPECT_NEAR(sp.norm(-2.5 * u) / (2.5 * n), 1.0, 1e-12);
    }
  }
}

TEST(Norm, NormModularRelations) {
  const auto f = MusielakFamily::log_quotient(ExponentField::affine(3.0, 1.0, 0.0, 1.0));
  FunctionSpace sp(f, line());
  for (double amp : {0.1, 1.0, 10.0}) {
    const auto u = random_function(sp.grid(), 5, amp, 4);
    const double n = sp.norm(u), m = sp.modular(u);
    if (n > 1.0) {
      EXPECT_LE(std::pow(n, f.phi0()), m * (1 + 1e-10));
      EXPECT_LE(m, std::pow(n, f.phi_sup()) * (1 + 1e-10));
    } else {
      EXPECT_LE(std::pow(n, f.phi_sup()), m * (1 + 1e-10));
      EXPECT_LE(m, std::pow(n, f.phi0()) * (1 + 1e-10));
    }
  }
}

TEST(ConjugateNorm, PowerTwo) {
  const auto f = MusielakFamily::power(ExponentField::constant(2.0));
  // conjugate of t^2 is s^2 / 4.
  EXPECT_NEAR(conjugate_norm(f, GridFunction::constant(line(), 2.0)), 1.0, 1e-12);
  FunctionSpace sp(f, line());
  EXPECT_NEAR(sp.conjugate_modular(GridFunction::constant(line(), 2.0)), 1.0, 1e-12);
}

TEST(Sobolev, ConstantFunctionHasNoGradientPart) {
  const auto f = MusielakFamily::log_weight(ExponentField::constant(2.0), 1.0);
  const auto u = GridFunction::constant(square(9), 1.5);
  const auto s = sobolev_norms(f, u);
  const double n = luxemburg_norm(f, u);
  EXPECT_NEAR(s.n1, n, 1e-13);
  EXPECT_NEAR(s.n2, n, 1e-13);
  EXPECT_NEAR(s.n, n, 1e-12);
}

TEST(Sobolev, ModularSplitsAndNormsOrdered) {
  const auto f = MusielakFamily::power(ExponentField::affine(2.0, 1.0, 0.0, 1.0));
  FunctionSpace sp(f, square(17));
  const auto u = random_function(sp.grid(), 21, 2.0, 2);
  const auto mag = gradient(u).magnitude();
  EXPECT_NEAR(sp.sobolev_modular(u), sp.modular_of(mag) + sp.modular(u), 1e-12);
  const auto s = sp.sobolev_norms(u);
  EXPECT_NEAR(s.n1, sp.norm_of(mag) + sp.norm(u), 1e-12);
  EXPECT_NEAR(s.n2, std::max(sp.norm_of(mag), sp.norm(u)), 1e-12);
  EXPECT_LE(s.n2, s.n1);
  EXPECT_LE(s.n1, 2.0 * s.n2);
  EXPECT_LE(s.n, s.n1 * (1 + 1e-12));
  EXPECT_NEAR(sp.sobolev_norm(u), s.n, 1e-15);
}

TEST(VariableLebesgue, QuadraticIsL2) {
  const auto u = random_function(line(), 2, 1.0, 3);
  double l2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) l2 += u.grid->weights()[i] * u[i] * u[i];
  EXPECT_NEAR(variable_lebesgue_norm(ExponentField::constant(2.0), u), std::sqrt(l2), 1e-13);
}

TEST(Gauge, ExtremeScalesStayAccurate) {
  const auto f = MusielakFamily::log_quotient(ExponentField::constant(3.0));
  FunctionSpace sp(f, line(21));
  for (double c : {1e-200, 1e-8, 1e8, 1e200}) {
    const auto u = GridFunction::constant(sp.grid(), c);
    const double n = sp.norm(u);
    EXPECT_NEAR(sp.modular((1.0 / n) * u), 1.0, 1e-9) << c;
  }
}

TEST(Space, RejectsForeignGrid) {
  FunctionSpace sp(MusielakFamily::power(ExponentField::constant(2.0)), line());
  EXPECT_THROW(static_cast<void>(sp.norm(GridFunction::constant(line(51), 1.0))), InputError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <numeric>

#include "orlicz/errors.hpp"
#include "orlicz/grid.hpp"

using namespace orlicz;

namespace {
GridPtr line(std::size_t n = 101) { return make_grid(1, {{0.0, 1.0}}, {n}); }
GridPtr square(std::size_t n = 33) { return make_grid(2, {{0.0, 1.0}, {-1.0, 2.0}}, {n, n + 4}); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}
}  // namespace

TEST(Grid, WeightsSumToMeasure) {
  for (const auto& g : {line(), square()}) {
    const auto& w = g->weights();
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), g->measure(), 1e-13);
  }
  EXPECT_DOUBLE_EQ(square()->measure(), 3.0);
}

TEST(Grid, TrapezoidIsExactOnBilinear) {
  const auto g = square();
  const auto f = sample(g, [](const Point& x) { return 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[0] * x[1]; });
  // int_0^1 int_-1^2 of the integrand.
  EXPECT_NEAR(integrate(f), 3.0 + 3.0 - 1.5 + 0.5 * 0.5 * 1.5, 1e-13);
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(3, {{0, 1}, {0, 1}, {0, 1}}, {3, 3, 3}), InputError);
  EXPECT_THROW(make_grid(1, {{1.0, 0.0}}, {10}), InputError);
  EXPECT_THROW(make_grid(1, {{0.0, 1.0}}, {2}), InputError);
  EXPECT_THROW(GridFunction(line(), std::vector<double>(5, 0.0)), InputError);
}

TEST(Gradient, ExactOnLinearInteriorAndZeroAtBoundary) {
  const auto g = line(11);
  const auto u = sample(g, [](const Point& x) { return 3.0 * x[0]; });
  const auto d = gradient(u);
  for (std::size_t i = 1; i + 1 < g->size(); ++i) EXPECT_NEAR(d.components[0][i], 3.0, 1e-12);
  EXPECT_EQ(d.components[0].front(), 0.0);
  EXPECT_EQ(d.components[0].back(), 0.0);
}

TEST(Gradient, MagnitudeIsEuclidean) {
  const auto g = square(9);
  const auto u = sample(g, [](const Point& x) { return 3.0 * x[0] + 4.0 * x[1]; });
  const auto m = gradient(u).magnitude();
  EXPECT_NEAR(m[g->index(4, 4)], 5.0, 1e-12);
  EXPECT_NEAR(m[g->index(0, 4)], 4.0, 1e-12);
}

TEST(Gradient, AdjointIdentity) {
  for (const auto& g : {line(37), square(13)}) {
    const auto u = random_function(g, 3, 1.0, 0);
    VectorField w{g, {random_function(g, 4, 1.0, 0).values, random_function(g, 5, 1.0, 0).values}};
    if (g->dim() == 1) w.components[1].assign(g->size(), 0.0);
    const auto du = gradient(u);
    const double lhs = dot(du.components[0], w.components[0]) + dot(du.components[1], w.components[1]);
    const double rhs = dot(u.values, gradient_adjoint(w));
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST(RandomFunction, DeterministicAndBounded) {
  const auto g = square();
  const auto a = random_function(g, 42, 1.0, 4);
  const auto b = random_function(g, 42, 1.0, 4);
  const auto c = random_function(g, 43, 1.0, 4);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  double sup = 0.0;
  for (double v : a.values) sup = std::max(sup, std::abs(v));
  EXPECT_NEAR(sup, 1.0, 1e-15);
  const auto big = random_function(g, 42, 10.0, 4);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(big[i], 10.0 * a[i], 1e-13);
  EXPECT_THROW(random_function(g, 1, 0.0, 0), InputError);
}

TEST(RandomFunction, SmoothingReducesRoughness) {
  const auto g = line(201);
  auto roughness = [](const GridFunction& u) {
    double s = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i) s += std::abs(u[i] - u[i - 1]);
    return s;
  };
  EXPECT_LT(roughness(random_function(g, 9, 1.0, 16)), 0.5 * roughness(random_function(g, 9, 1.0, 0)));
}

TEST(Bump, SupportIsMiddleHalf) {
  const auto g = line(101);
  const auto b = bump_function(g, 0.1);
  EXPECT_NEAR(b[50], 0.1, 1e-15);
  EXPECT_EQ(b[10], 0.0);
  EXPECT_EQ(b[90], 0.0);
  for (double v : b.values) EXPECT_GE(v, 0.0);
}

TEST(Solution, TextRoundTripIsBitIdentical) {
  for (const auto& g : {line(), square()}) {
    const auto u = random_function(g, 11, 3.7, 2);
    const auto v = solution_from_text(solution_to_text(u));
    EXPECT_TRUE(*v.grid == *u.grid);
    EXPECT_EQ(v.values, u.values);
  }
}

TEST(Solution, FileRoundTripAndErrors) {
  const auto u = random_function(line(), 12, 1.0, 1);
  const std::string path = ::testing::TempDir() + "grid_roundtrip.txt";
  write_solution(path, u);
  EXPECT_EQ(read_solution(path).values, u.values);
  std::remove(path.c_str());
  EXPECT_THROW(read_solution("/nonexistent/solution.txt"), InputError);
  EXPECT_THROW(solution_from_text("1 5 0 1\n0\n1\n"), InputError);
}

TEST(GridFunction, Arithmetic) {
  const auto g = line(5);
  const auto a = GridFunction::constant(g, 2.0);
  const auto b = sample(g, [](const Point& x) { return x[0]; });
  const auto c = 3.0 * a - b + (-a);
  EXPECT_DOUBLE_EQ(c[4], 3.0);
  EXPECT_DOUBLE_EQ(c[0], 4.0);
}

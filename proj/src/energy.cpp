#include "orlicz/energy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

// Extremes of h over log |t| in [log lo, log hi], both signs of t, refined by golden section.
struct Extremes {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

double golden(const std::function<double(double)>& h, double a, double b, bool maximize) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  const double sign = maximize ? 1.0 : -1.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = h(c), fd = h(d);
  for (int it = 0; it < 120 && b - a > 1e-12; ++it) {
    if (sign * fc > sign * fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = h(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = h(d);
    }
  }
  return maximize ? std::max(fc, fd) : std::min(fc, fd);
}

Extremes sampled_extremes(const std::function<double(double)>& h, double lo, double hi) {
  Extremes out;
  const auto grid = log_grid(lo, hi, 801);
  for (double sign : {1.0, -1.0}) {
    auto hs = [&](double s) { return h(sign * std::exp(s)); };
    std::size_t imin = 0, imax = 0;
    std::vector<double> vals(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      vals[k] = hs(std::log(grid[k]));
      if (vals[k] < vals[imin]) imin = k;
      if (vals[k] > vals[imax]) imax = k;
    }
    out.min = std::min(out.min, vals[imin]);
    out.max = std::max(out.max, vals[imax]);
    if (imin > 0 && imin + 1 < grid.size()) {
      out.min = std::min(out.min, golden(hs, std::log(grid[imin - 1]), std::log(grid[imin + 1]), false));
    }
    if (imax > 0 && imax + 1 < grid.size()) {
      out.max = std::max(out.max, golden(hs, std::log(grid[imax - 1]), std::log(grid[imax + 1]), true));
    }
  }
  return out;
}

}  // namespace

std::string to_string(ReactionId id) {
  switch (id) {
    case ReactionId::power: return "power";
    case ReactionId::power_log: return "power-log";
    case ReactionId::power_sin: return "power-sin";
  }
  return "power";
}

ReactionId reaction_id_from_string(const std::string& name) {
  if (name == "power" || name == "1") return ReactionId::power;
  if (name == "power-log" || name == "2") return ReactionId::power_log;
  if (name == "power-sin" || name == "3") return ReactionId::power_sin;
  throw InputError("unknown reaction '" + name + "'");
}

ReactionFamily::ReactionFamily(ReactionId id, ExponentField q) : id_(id), q_(std::move(q)) {}

ReactionFamily ReactionFamily::power(ExponentField q) {
  if (q.p_minus() < 2.0) throw InputError("power reaction needs q(x) >= 2");
  ReactionFamily r(ReactionId::power, std::move(q));
  r.C0_ = r.q_.p_plus();
  r.C1_ = 1.0;
  r.C2_ = 1.0;
  r.window_lo_ = 0.0;
  r.window_hi_ = std::numeric_limits<double>::infinity();
  return r;
}

ReactionFamily ReactionFamily::power_log(ExponentField q) {
  if (q.p_minus() < 4.0) throw InputError("power-log reaction needs q(x) >= 4");
  ReactionFamily r(ReactionId::power_log, std::move(q));
  r.window_lo_ = 1e-3;
  r.window_hi_ = 1e3;
  r.certify();
  return r;
}

ReactionFamily ReactionFamily::power_sin(ExponentField q) {
  if (q.p_minus() < 3.0) throw InputError("power-sin reaction needs q(x) >= 3");
  ReactionFamily r(ReactionId::power_sin, std::move(q));
  // G/|t|^q vanishes like t^2/3 as t -> 0-, so C1 only exists away from zero.
  r.window_lo_ = 1e-2;
  r.window_hi_ = 1e2;
  r.certify();
  return r;
}

ReactionFamily ReactionFamily::make(ReactionId id, ExponentField q) {
  switch (id) {
    case ReactionId::power: return power(std::move(q));
    case ReactionId::power_log: return power_log(std::move(q));
    case ReactionId::power_sin: return power_sin(std::move(q));
  }
  throw InputError("unknown reaction");
}

void ReactionFamily::certify() {
  std::vector<double> qs;
  if (q_.is_constant()) {
    qs.push_back(q_.p_minus());
  } else {
    for (int k = 0; k <= 10; ++k) {
      const double x1 = q_.x1_lo() + (q_.x1_hi() - q_.x1_lo()) * k / 10.0;
      qs.push_back(q_(Point{x1, 0.0}));
    }
  }
  double c0 = 0.0, c1 = std::numeric_limits<double>::infinity(), c2 = 0.0;
  for (double q : qs) {
    const auto slope = sampled_extremes(
        [&](double t) { return std::abs(g(q, t)) / std::pow(std::abs(t), q - 1.0); }, window_lo_, window_hi_);
    const auto prim = sampled_extremes(
        [&](double t) { return G(q, t) / std::pow(std::abs(t), q); }, window_lo_, window_hi_);
    c0 = std::max(c0, slope.max);
    c1 = std::min(c1, prim.min);
    c2 = std::max(c2, prim.max);
  }
  C0_ = c0 * (1.0 + 1e-9);
  C1_ = c1 * (1.0 - 1e-9);
  C2_ = c2 * (1.0 + 1e-9);
  if (!(C1_ > 0.0)) throw NumericError("reaction " + name() + ": sampled C1 is not positive");
}

double ReactionFamily::g(double q, double t) const {
  if (t == 0.0) return 0.0;
  const double a = std::abs(t);
  const double base = q * std::pow(a, q - 2.0) * t;
  switch (id_) {
    case ReactionId::power:
      return base;
    case ReactionId::power_log: {
      const double a2 = std::pow(a, q - 2.0);
      return base + (q - 2.0) * std::log1p(t * t) * std::pow(a, q - 4.0) * t + 2.0 * t / (1.0 + t * t) * a2;
    }
    case ReactionId::power_sin:
      return base + (q - 1.0) * std::sin(std::sin(t)) * std::pow(a, q - 3.0) * t +
             std::cos(std::sin(t)) * std::cos(t) * std::pow(a, q - 1.0);
  }
  return base;
}

double ReactionFamily::G(double q, double t) const {
  if (t == 0.0) return 0.0;
  const double a = std::abs(t);
  const double base = std::pow(a, q);
  switch (id_) {
    case ReactionId::power:
      return base;
    case ReactionId::power_log:
      return base + std::log1p(t * t) * std::pow(a, q - 2.0);
    case ReactionId::power_sin:
      return base + std::sin(std::sin(t)) * std::pow(a, q - 1.0);
  }
  return base;
}

std::string ReactionFamily::name() const { return to_string(id_) + "[" + q_.to_text() + "]"; }

KeyValueConfig ReactionFamily::to_descriptor() const {
  KeyValueConfig cfg;
  cfg.set("reaction", to_string(id_));
  cfg.set("q", q_.to_text());
  cfg.set("C0", format_real(C0_));
  cfg.set("C1", format_real(C1_));
  cfg.set("C2", format_real(C2_));
  cfg.set("constants", analytic_constants() ? "analytic" : "sampled");
  cfg.set("window", format_real(window_lo_) + " " + format_real(window_hi_));
  return cfg;
}

double g_value(const ReactionFamily& r, const Point& x, double t) { return r.g(r.q()(x), t); }
double G_value(const ReactionFamily& r, const Point& x, double t) { return r.G(r.q()(x), t); }

EnergyConfig::EnergyConfig(MusielakFamily f, ReactionFamily r, double lam)
    : family(std::move(f)), reaction(std::move(r)), lambda(lam) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be finite and > 0");
}

EnergyEvaluator::EnergyEvaluator(const EnergyConfig& config, GridPtr grid)
    : config_(config), grid_(std::move(grid)), nodal_(config_.family, grid_->points()) {
  q_.reserve(grid_->size());
  for (const auto& x : grid_->points()) q_.push_back(config_.reaction.q()(x));
}

void EnergyEvaluator::set_lambda(double lambda) { config_ = config_.with_lambda(lambda); }

void EnergyEvaluator::check(const GridFunction& u) const {
  if (u.grid != grid_ && !(u.grid && *u.grid == *grid_)) throw InputError("grid function lives on another grid");
}

EnergyEvaluator::Parts EnergyEvaluator::parts(const std::vector<double>& u) const {
  std::array<std::vector<double>, 2> grad;
  gradient_into(*grid_, u, grad);
  const auto& w = grid_->weights();
  const bool two = grid_->dim() == 2;
  const auto& r = config_.reaction;
  Parts p;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = two ? std::hypot(grad[0][i], grad[1][i]) : std::abs(grad[0][i]);
    p.Lambda += w[i] * (nodal_[i].Phi(m) + nodal_[i].Phi(u[i]));
    p.G_integral += w[i] * r.G(q_[i], u[i]);
  }
  return p;
}

double EnergyEvaluator::energy(const std::vector<double>& u) const {
  const Parts p = parts(u);
  return p.Lambda - config_.lambda * p.G_integral;
}

double EnergyEvaluator::energy(const GridFunction& u) const {
  check(u);
  return energy(u.values);
}

double EnergyEvaluator::directional_derivative(const GridFunction& u, const GridFunction& v) const {
  check(u);
  check(v);
  std::array<std::vector<double>, 2> gu, gv;
  gradient_into(*grid_, u.values, gu);
  gradient_into(*grid_, v.values, gv);
  const auto& w = grid_->weights();
  const bool two = grid_->dim() == 2;
  const auto& r = config_.reaction;
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = two ? std::hypot(gu[0][i], gu[1][i]) : std::abs(gu[0][i]);
    const double dot = gu[0][i] * gv[0][i] + (two ? gu[1][i] * gv[1][i] : 0.0);
    s += w[i] * (nodal_[i].a(m) * dot + nodal_[i].phi(u[i]) * v[i] - config_.lambda * r.g(q_[i], u[i]) * v[i]);
  }
  return s;
}

std::vector<double> EnergyEvaluator::residual(const std::vector<double>& u) const {
  std::array<std::vector<double>, 2> grad;
  gradient_into(*grid_, u, grad);
  const auto& w = grid_->weights();
  const bool two = grid_->dim() == 2;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = two ? std::hypot(grad[0][i], grad[1][i]) : std::abs(grad[0][i]);
    const double c = w[i] * nodal_[i].a(m);
    grad[0][i] *= c;
    if (two) grad[1][i] *= c;
  }
  std::vector<double> out;
  gradient_adjoint_into(*grid_, grad, out);
  const auto& r = config_.reaction;
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = out[i] / w[i] + nodal_[i].phi(u[i]) - config_.lambda * r.g(q_[i], u[i]);
  }
  return out;
}

GridFunction EnergyEvaluator::residual(const GridFunction& u) const {
  check(u);
  return GridFunction(grid_, residual(u.values));
}

double energy(const EnergyConfig& c, const GridFunction& u) { return EnergyEvaluator(c, u.grid).energy(u); }

double directional_derivative(const EnergyConfig& c, const GridFunction& u, const GridFunction& v) {
  return EnergyEvaluator(c, u.grid).directional_derivative(u, v);
}

GridFunction residual(const EnergyConfig& c, const GridFunction& u) { return EnergyEvaluator(c, u.grid).residual(u); }

}  // namespace orlicz

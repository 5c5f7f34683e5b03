#include "orlicz/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

PowerYoung::PowerYoung(const ExponentField& q, const std::vector<Point>& points) {
  q_.reserve(points.size());
  for (const auto& x : points) q_.push_back(q(x));
}

double PowerYoung::value(std::size_t i, double t) const { return t == 0.0 ? 0.0 : std::pow(t, q_[i]); }

double PowerYoung::derivative(std::size_t i, double t) const {
  return t == 0.0 ? 0.0 : q_[i] * std::pow(t, q_[i] - 1.0);
}

double gauge_modular(const std::vector<ModularTerm>& terms, const std::vector<double>& weights, double mu) {
  const double inv = 1.0 / mu;
  double s = 0.0;
  for (const auto& term : terms) {
    const auto& m = *term.magnitudes;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0.0) s += weights[i] * term.young->value(i, m[i] * inv);
    }
  }
  return s;
}

namespace {

struct GaugeEval {
  double G = 0.0;      // modular at mu = e^s
  double slope = 0.0;  // d log G / ds
};

GaugeEval gauge_eval(const std::vector<ModularTerm>& terms, const std::vector<double>& weights, double s) {
  const double inv = std::exp(-s);
  double G = 0.0, dG = 0.0;
  for (const auto& term : terms) {
    const auto& m = *term.magnitudes;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0.0) continue;
      const double t = m[i] * inv;
      double v = 0.0, d = 0.0;
      term.young->evaluate(i, t, v, d);
      G += weights[i] * v;
      dG -= weights[i] * d * t;
    }
  }
  return {G, dG / G};
}

}  // namespace

double luxemburg_gauge(const std::vector<ModularTerm>& terms, const std::vector<double>& weights) {
  double top = 0.0;
  for (const auto& term : terms) {
    for (double m : *term.magnitudes) {
      if (!(m >= 0.0) || !std::isfinite(m)) throw InputError("luxemburg gauge needs finite magnitudes >= 0");
      top = std::max(top, m);
    }
  }
  if (top == 0.0) return 0.0;

  // Newton on log G(s), s = log mu, from the scale of the largest magnitude. The bracket
  // [s_lo, s_hi] with G(s_lo) > 1 > G(s_hi) grows from the iterates; steps are clamped until
  // both ends are known, then non-Newton steps bisect.
  constexpr double kMaxStep = 3.0;
  const double inf = std::numeric_limits<double>::infinity();
  const double s_min = std::log(top) + std::log(1e-300), s_max = std::log(top) + std::log(1e300);
  double s_lo = -inf, s_hi = inf;
  double s = std::log(top);
  double best_s = s;
  double best_defect = inf;
  for (int it = 0; it < 400; ++it) {
    const GaugeEval e = gauge_eval(terms, weights, s);
    const bool usable = std::isfinite(e.G) && e.G > 0.0;
    if (usable) {
      const double defect = std::abs(e.G - 1.0);
      if (defect < best_defect) {
        best_defect = defect;
        best_s = s;
      }
      if (defect <= 4e-15) break;
    }
    if (!(e.G <= 1.0)) s_lo = s;  // includes overflow
    else s_hi = s;
    double next;
    if (usable && std::isfinite(e.slope) && e.slope < 0.0) {
      const double delta = -std::log(e.G) / e.slope;
      next = s + std::clamp(delta, -kMaxStep, kMaxStep);
      if (std::abs(delta) <= 1e-16 * std::max(1.0, std::abs(s))) break;
    } else {
      next = e.G > 1.0 || !std::isfinite(e.G) ? s + kMaxStep : s - kMaxStep;
    }
    if (std::isfinite(s_lo) && std::isfinite(s_hi)) {
      if (!(next > s_lo && next < s_hi)) next = 0.5 * (s_lo + s_hi);
      if (s_hi - s_lo <= 4e-16 * std::max(1.0, std::abs(s))) break;
    }
    if (next < s_min || next > s_max) throw NumericError("luxemburg gauge: no bracket within 1e+-300");
    s = next;
  }
  if (!(best_defect <= 1e-8)) {
    throw NumericError("luxemburg gauge: modular defect " + format_real(best_defect) + " after bracketing");
  }
  return std::exp(best_s);
}

std::vector<double> absolute(const GridFunction& u) {
  std::vector<double> out(u.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(u.values[i]);
  return out;
}

FunctionSpace::FunctionSpace(const MusielakFamily& family, GridPtr grid)
    : grid_(std::move(grid)), nodal_(family, grid_->points()) {}

void FunctionSpace::check(const GridFunction& u) const {
  if (u.grid != grid_ && !(u.grid && *u.grid == *grid_)) throw InputError("grid function lives on another grid");
}

double FunctionSpace::modular_of(const std::vector<double>& m) const {
  const auto& w = grid_->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += w[i] * nodal_[i].Phi(m[i]);
  return s;
}

double FunctionSpace::norm_of(const std::vector<double>& m) const {
  const PhiYoung y(nodal_);
  return luxemburg_gauge({ModularTerm{&y, &m}}, grid_->weights());
}

double FunctionSpace::modular(const GridFunction& u) const {
  check(u);
  return modular_of(absolute(u));
}

double FunctionSpace::norm(const GridFunction& u) const {
  check(u);
  return norm_of(absolute(u));
}

double FunctionSpace::conjugate_modular(const GridFunction& v) const {
  check(v);
  const auto& w = grid_->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * nodal_[i].conjugate(v[i]);
  return s;
}

double FunctionSpace::conjugate_norm(const GridFunction& v) const {
  check(v);
  const ConjugateYoung y(nodal_);
  const auto m = absolute(v);
  return luxemburg_gauge({ModularTerm{&y, &m}}, grid_->weights());
}

double FunctionSpace::sobolev_modular(const GridFunction& u) const {
  check(u);
  return modular_of(absolute(u)) + modular_of(gradient(u).magnitude());
}

FunctionSpace::SobolevNorms FunctionSpace::sobolev_norms(const GridFunction& u) const {
  check(u);
  const auto mu = absolute(u);
  const auto mg = gradient(u).magnitude();
  const PhiYoung y(nodal_);
  SobolevNorms out;
  const double nu = norm_of(mu);
  const double ng = norm_of(mg);
  out.n1 = nu + ng;
  out.n2 = std::max(nu, ng);
  out.n = luxemburg_gauge({ModularTerm{&y, &mu}, ModularTerm{&y, &mg}}, grid_->weights());
  return out;
}

double FunctionSpace::sobolev_norm(const GridFunction& u) const {
  check(u);
  const auto mu = absolute(u);
  const auto mg = gradient(u).magnitude();
  const PhiYoung y(nodal_);
  return luxemburg_gauge({ModularTerm{&y, &mu}, ModularTerm{&y, &mg}}, grid_->weights());
}

double modular(const MusielakFamily& f, const GridFunction& u) { return FunctionSpace(f, u.grid).modular(u); }
double luxemburg_norm(const MusielakFamily& f, const GridFunction& u) { return FunctionSpace(f, u.grid).norm(u); }
double conjugate_norm(const MusielakFamily& f, const GridFunction& v) {
  return FunctionSpace(f, v.grid).conjugate_norm(v);
}
double sobolev_modular(const MusielakFamily& f, const GridFunction& u) {
  return FunctionSpace(f, u.grid).sobolev_modular(u);
}
FunctionSpace::SobolevNorms sobolev_norms(const MusielakFamily& f, const GridFunction& u) {
  return FunctionSpace(f, u.grid).sobolev_norms(u);
}

double variable_lebesgue_norm(const ExponentField& q, const GridFunction& u) {
  const PowerYoung y(q, u.grid->points());
  const auto m = absolute(u);
  return luxemburg_gauge({ModularTerm{&y, &m}}, u.grid->weights());
}

}  // namespace orlicz

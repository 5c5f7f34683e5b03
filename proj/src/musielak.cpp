#include "orlicz/musielak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Switch from the power series to panel quadrature at w = log(1+t) = 2.
constexpr double kLogQuotientSeriesLimit = 2.0;

void require_finite(double t, const char* what) {
  if (!std::isfinite(t)) throw DomainError(std::string(what) + ": non-finite argument");
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, bool maximize) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  const double sign = maximize ? 1.0 : -1.0;
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (sign * fc > sign * fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = f(d);
    }
  }
  return maximize ? std::max(fc, fd) : std::min(fc, fd);
}

struct SampledBounds {
  double lower = std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  double growth = std::numeric_limits<double>::infinity();
};

// Ratio t phi/Phi over a log grid, refined by golden section around the extremes.
SampledBounds sample_bounds(const MusielakFamily& f) {
  const auto xs = f.sample_points(11);
  auto ts = log_grid(1e-4, 1e4, 401);
  if (const auto* prof = f.profile(); prof && !prof->breakpoints.empty()) {
    const double lo = prof->breakpoints.front(), hi = prof->breakpoints.back();
    for (int k = 0; k <= 200; ++k) ts.push_back(lo + (hi - lo) * k / 200.0);
    std::sort(ts.begin(), ts.end());
  }
  SampledBounds out;
  for (const auto& x : xs) {
    const LocalFamily local = f.at(x);
    const double p = f.exponent()(x);
    std::vector<double> ratio(ts.size(), kNaN);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double Phi = local.Phi(ts[k]);
      const double r = ts[k] * local.phi(ts[k]) / Phi;
      if (std::isfinite(r) && Phi > 0.0) ratio[k] = r;
      const double g = Phi / std::pow(ts[k], p);
      if (std::isfinite(g)) out.growth = std::min(out.growth, g);
    }
    auto log_ratio = [&](double s) {
      const double t = std::exp(s);
      return t * local.phi(t) / local.Phi(t);
    };
    for (int pass = 0; pass < 2; ++pass) {
      const bool maximize = pass == 0;
      std::size_t best = ts.size();
      for (std::size_t k = 0; k < ts.size(); ++k) {
        if (std::isnan(ratio[k])) continue;
        if (best == ts.size() || (maximize ? ratio[k] > ratio[best] : ratio[k] < ratio[best])) best = k;
      }
      if (best == ts.size()) continue;
      double extreme = ratio[best];
      if (best > 0 && best + 1 < ts.size()) {
        const double refined =
            golden_max(log_ratio, std::log(ts[best - 1]), std::log(ts[best + 1]), maximize);
        if (std::isfinite(refined)) extreme = maximize ? std::max(extreme, refined) : std::min(extreme, refined);
      }
      if (maximize) out.upper = std::max(out.upper, extreme);
      else out.lower = std::min(out.lower, extreme);
    }
  }
  return out;
}

double notch_phi(double p, double depth, double t) {
  const double z = (t - 1.0) / 0.05;
  return p * std::pow(t, p - 1.0) * (1.0 - depth * std::exp(-z * z));
}

}  // namespace

std::string to_string(FamilyId id) {
  switch (id) {
    case FamilyId::power: return "power";
    case FamilyId::log_quotient: return "log-quotient";
    case FamilyId::log_weight: return "log-weight";
    case FamilyId::custom: return "custom";
  }
  return "custom";
}

FamilyId family_id_from_string(const std::string& name) {
  if (name == "power" || name == "I") return FamilyId::power;
  if (name == "log-quotient" || name == "II") return FamilyId::log_quotient;
  if (name == "log-weight" || name == "III") return FamilyId::log_weight;
  if (name == "custom") return FamilyId::custom;
  throw InputError("unknown family '" + name + "'");
}

std::string to_string(BoundSource source) {
  switch (source) {
    case BoundSource::analytic: return "analytic";
    case BoundSource::estimated: return "estimate";
    case BoundSource::declared: return "declared";
  }
  return "declared";
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (count == 0 || !(lo > 0.0) || !(hi >= lo)) throw InputError("log_grid needs 0 < lo <= hi, count > 0");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.back() = hi;
  return out;
}

// ---------------------------------------------------------------------------------------------
// LocalFamily

double LocalFamily::positive_phi(double t) const {
  switch (id_) {
    case FamilyId::power:
      return p_ * std::pow(t, p_ - 1.0);
    case FamilyId::log_quotient:
      return p_ * std::pow(t, p_ - 1.0) / std::log1p(t);
    case FamilyId::log_weight:
      return p_ * std::log(c_ + t) * std::pow(t, p_ - 1.0);
    case FamilyId::custom:
      return custom_->phi(x_, t);
  }
  return kNaN;
}

double LocalFamily::phi(double t) const {
  require_finite(t, "phi");
  if (t == 0.0) return 0.0;
  const double v = positive_phi(std::abs(t));
  return t < 0.0 ? -v : v;
}

double LocalFamily::a(double t) const {
  require_finite(t, "a");
  if (t == 0.0) return 0.0;
  const double s = std::abs(t);
  return positive_phi(s) / s;
}

// int_0^t s^p / ((1+s) log(1+s)^2) ds, written in w = log(1+s) as
// int_0^W w^{p-2} ((e^w - 1)/w)^p dw.
double LocalFamily::log_quotient_integral(double t) const {
  const double W = std::log1p(t);
  if (W <= kLogQuotientSeriesLimit) {
    double sum = 0.0;
    for (std::size_t n = kSeriesTerms; n-- > 0;) sum = sum * W + series_[n];
    return std::pow(W, p_ - 1.0) * sum;
  }
  const double width = std::min(1.0, 4.0 / p_);
  const auto panels = static_cast<std::size_t>(std::ceil((W - kLogQuotientSeriesLimit) / width));
  const double h = (W - kLogQuotientSeriesLimit) / static_cast<double>(panels);
  const double p = p_;
  auto integrand = [p](double w) { return std::exp(p * std::log(std::expm1(w))) / (w * w); };
  double total = integral_lo_;
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = kLogQuotientSeriesLimit + h * static_cast<double>(k);
    total += boost::math::quadrature::gauss<double, 20>::integrate(integrand, a, a + h);
  }
  return total;
}

// int_0^t s^p/(c+s) ds for t <= c/2 by the geometric expansion of 1/(c+s).
double LocalFamily::log_weight_small(double t) const {
  const double r = -t / c_;
  double term = 1.0;
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double add = term / (p_ + k + 1.0);
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
    term *= r;
  }
  return std::pow(t, p_ + 1.0) / c_ * sum;
}

double LocalFamily::log_weight_integral(double t) const {
  const double p = p_, c = c_;
  if (t <= split_lo_) return log_weight_small(t);
  auto integrand = [p, c](double s) { return std::pow(s, p) / (c + s); };
  if (t <= split_hi_) {
    return integral_lo_ + boost::math::quadrature::gauss<double, 20>::integrate(integrand, split_lo_, t);
  }
  // s^p/(c+s) = sum_k (-c)^k s^{p-1-k} for s > c, integrated term by term on [2c, t].
  const double A = split_hi_;
  const double log_ratio = std::log(t / A);
  const double tp = std::pow(t, p);
  double sum = 0.0;
  double scale_t = tp;             // t^p (-c/t)^k
  double scale_a = split_hi_pow_;  // A^p (-c/A)^k
  for (int k = 0; k < 400; ++k) {
    const double e = p - k;
    double add;
    if (std::abs(e) < 0.25) {
      // (t^e - A^e)/e without cancellation; A^e (-c)^k = scale_a.
      add = (e == 0.0) ? scale_a * log_ratio : scale_a * std::expm1(e * log_ratio) / e;
    } else {
      add = (scale_t - scale_a) / e;
    }
    sum += add;
    if (k > p + 1.0 && std::abs(add) <= 1e-18 * std::abs(sum)) break;
    scale_t *= -c / t;
    scale_a *= -c / A;
  }
  return integral_hi_ + sum;
}

double LocalFamily::Phi(double t) const {
  require_finite(t, "Phi");
  t = std::abs(t);
  if (t == 0.0) return 0.0;
  switch (id_) {
    case FamilyId::power:
      return std::pow(t, p_);
    case FamilyId::log_quotient:
      return std::pow(t, p_) / std::log1p(t) + log_quotient_integral(t);
    case FamilyId::log_weight:
      return std::log(c_ + t) * std::pow(t, p_) - log_weight_integral(t);
    case FamilyId::custom: {
      if (custom_->Phi) return custom_->Phi(x_, t);
      const Point x = x_;
      const auto* prof = custom_.get();
      auto f = [prof, x](double s) { return s == 0.0 ? 0.0 : prof->phi(x, s); };
      double total = 0.0;
      double lo = 0.0;
      for (double b : custom_->breakpoints) {
        if (b <= lo) continue;
        if (b >= t) break;
        total += adaptive_simpson(f, lo, b);
        lo = b;
      }
      return total + adaptive_simpson(f, lo, t);
    }
  }
  return kNaN;
}

double LocalFamily::phi_inverse(double s) const {
  require_finite(s, "phi_inverse");
  if (s < 0.0) throw DomainError("phi_inverse needs s >= 0");
  if (s == 0.0) return 0.0;
  if (id_ == FamilyId::power) return std::pow(s / p_, 1.0 / (p_ - 1.0));
  double hi = 1.0;
  double lo = 0.0;
  int guard = 0;
  while (positive_phi(hi) < s) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000 || !std::isfinite(hi)) {
      throw NumericError("phi_inverse: no bracket for s = " + format_real(s));
    }
  }
  if (lo == 0.0) {
    lo = hi;
    while (lo > 1e-300 && positive_phi(lo) > s) {
      hi = lo;
      lo *= 0.5;
    }
    if (!(lo > 1e-300)) return 0.0;
  }
  auto f = [this, s](double t) { return positive_phi(t) - s; };
  if (f(hi) == 0.0) return hi;
  if (f(lo) == 0.0) return lo;
  boost::uintmax_t iters = 300;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 300) throw NumericError("phi_inverse: root finding did not converge");
  return 0.5 * (a + b);
}

double LocalFamily::conjugate(double s) const {
  require_finite(s, "conjugate");
  s = std::abs(s);
  if (s == 0.0) return 0.0;
  const double t = phi_inverse(s);
  return std::max(0.0, s * t - Phi(t));
}

// ---------------------------------------------------------------------------------------------
// MusielakFamily

MusielakFamily::MusielakFamily(FamilyId id, ExponentField p, double alpha,
                               std::shared_ptr<const CustomProfile> custom)
    : id_(id), p_(std::move(p)), alpha_(alpha), custom_(std::move(custom)) {}

MusielakFamily MusielakFamily::power(ExponentField p) {
  if (p.p_minus() < 2.0) throw InputError("power family needs p(x) >= 2");
  MusielakFamily f(FamilyId::power, std::move(p), 0.0, nullptr);
  f.resolve_bounds(std::nullopt, std::nullopt);
  return f;
}

MusielakFamily MusielakFamily::log_quotient(ExponentField p) {
  if (p.p_minus() < 3.0) throw InputError("log-quotient family needs p(x) >= 3");
  MusielakFamily f(FamilyId::log_quotient, std::move(p), 0.0, nullptr);
  f.resolve_bounds(std::nullopt, std::nullopt);
  return f;
}

MusielakFamily MusielakFamily::log_weight(ExponentField p, double alpha) {
  if (p.p_minus() < 2.0) throw InputError("log-weight family needs p(x) >= 2");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("log-weight family needs alpha > 0");
  MusielakFamily f(FamilyId::log_weight, std::move(p), alpha, nullptr);
  f.resolve_bounds(std::nullopt, std::nullopt);
  return f;
}

MusielakFamily MusielakFamily::custom(CustomProfile profile, ExponentField p) {
  if (!profile.phi) throw InputError("custom family needs phi");
  std::sort(profile.breakpoints.begin(), profile.breakpoints.end());
  MusielakFamily f(FamilyId::custom, std::move(p), 0.0,
                   std::make_shared<const CustomProfile>(std::move(profile)));
  f.resolve_bounds(std::nullopt, std::nullopt);
  return f;
}

MusielakFamily MusielakFamily::notch(ExponentField p, double depth) {
  if (!(depth >= 0.0 && depth < 1.0)) throw InputError("notch depth must lie in [0, 1)");
  const ExponentField exponent = p;
  CustomProfile profile;
  profile.name = "notch";
  profile.parameter = depth;
  profile.breakpoints = {0.75, 1.0, 1.25};
  profile.phi = [exponent, depth](const Point& x, double t) { return notch_phi(exponent(x), depth, t); };
  return custom(std::move(profile), std::move(p));
}

void MusielakFamily::resolve_bounds(std::optional<double> phi0, std::optional<double> phi_sup) {
  bool estimate_lower = false, estimate_upper = false;
  switch (id_) {
    case FamilyId::power:
      phi0_ = p_.p_minus();
      phi_sup_ = p_.p_plus();
      break;
    case FamilyId::log_quotient:
      phi0_ = p_.p_minus() - 1.0;
      phi_sup_ = p_.p_plus();
      break;
    case FamilyId::log_weight:
      phi0_ = p_.p_minus();
      estimate_upper = true;
      break;
    case FamilyId::custom:
      estimate_lower = estimate_upper = true;
      break;
  }
  phi0_source_ = estimate_lower ? BoundSource::estimated : BoundSource::analytic;
  phi_sup_source_ = estimate_upper ? BoundSource::estimated : BoundSource::analytic;
  if (phi0) {
    if (std::isnan(*phi0)) {
      estimate_lower = true;
      phi0_source_ = BoundSource::estimated;
    } else {
      phi0_ = *phi0;
      estimate_lower = false;
      phi0_source_ = BoundSource::declared;
    }
  }
  if (phi_sup) {
    if (std::isnan(*phi_sup)) {
      estimate_upper = true;
      phi_sup_source_ = BoundSource::estimated;
    } else {
      phi_sup_ = *phi_sup;
      estimate_upper = false;
      phi_sup_source_ = BoundSource::declared;
    }
  }
  const SampledBounds sampled = sample_bounds(*this);
  if (estimate_lower) phi0_ = sampled.lower;
  if (estimate_upper) phi_sup_ = sampled.upper;
  M_lower_ = id_ == FamilyId::power ? 1.0 : sampled.growth * (1.0 - 1e-9);
  // Sampled bounds are padded outward so the sampled extremes themselves pass.
  if (estimate_lower) phi0_ *= 1.0 - 1e-9;
  if (estimate_upper) phi_sup_ *= 1.0 + 1e-9;
  if (!(phi0_ > 0.0) || !std::isfinite(phi_sup_)) {
    throw InputError("family " + name() + " needs finite positive exponent bounds, got phi0 = " +
                     format_real(phi0_) + ", phi_sup = " + format_real(phi_sup_));
  }
}

MusielakFamily MusielakFamily::with_bounds(std::optional<double> phi0,
                                           std::optional<double> phi_sup) const {
  MusielakFamily f = *this;
  const auto keep_lower = phi0_source_ == BoundSource::declared ? std::optional<double>(phi0_) : std::nullopt;
  const auto keep_upper = phi_sup_source_ == BoundSource::declared ? std::optional<double>(phi_sup_) : std::nullopt;
  f.resolve_bounds(phi0 ? phi0 : keep_lower, phi_sup ? phi_sup : keep_upper);
  return f;
}

LocalFamily MusielakFamily::at(const Point& x) const {
  LocalFamily local;
  local.id_ = id_;
  local.p_ = p_(x);
  local.x_ = x;
  local.custom_ = custom_;
  const double p = local.p_;
  if (id_ == FamilyId::log_quotient) {
    // Coefficients of ((e^w-1)/w)^p by the power-of-series recurrence.
    std::array<double, LocalFamily::kSeriesTerms> a{}, b{};
    double fact = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      fact *= static_cast<double>(k + 1);
      a[k] = 1.0 / fact;
    }
    b[0] = 1.0;
    for (std::size_t n = 1; n < b.size(); ++n) {
      double s = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        s += ((p + 1.0) * static_cast<double>(k) - static_cast<double>(n)) * a[k] * b[n - k];
      }
      b[n] = s / static_cast<double>(n);
    }
    for (std::size_t n = 0; n < b.size(); ++n) local.series_[n] = b[n] / (p - 1.0 + static_cast<double>(n));
    double sum = 0.0;
    for (std::size_t n = LocalFamily::kSeriesTerms; n-- > 0;) sum = sum * kLogQuotientSeriesLimit + local.series_[n];
    local.integral_lo_ = std::pow(kLogQuotientSeriesLimit, p - 1.0) * sum;
  } else if (id_ == FamilyId::log_weight) {
    const double c = 1.0 + alpha_;
    local.c_ = c;
    local.split_lo_ = 0.5 * c;
    local.split_hi_ = 2.0 * c;
    local.split_hi_pow_ = std::pow(2.0 * c, p);
    local.integral_lo_ = local.log_weight_small(local.split_lo_);
    auto integrand = [p, c](double s) { return std::pow(s, p) / (c + s); };
    local.integral_hi_ = local.integral_lo_ + boost::math::quadrature::gauss<double, 20>::integrate(
                                                  integrand, local.split_lo_, local.split_hi_);
  }
  return local;
}

std::optional<double> MusielakFamily::printed_growth_exponent_shift() const {
  if (id_ == FamilyId::log_quotient) return -1.0;
  return std::nullopt;
}

std::string MusielakFamily::name() const {
  std::string out = to_string(id_);
  if (custom_) out += ":" + custom_->name;
  out += "[" + p_.to_text();
  if (id_ == FamilyId::log_weight) out += ", alpha " + format_real(alpha_);
  return out + "]";
}

std::vector<Point> MusielakFamily::sample_points(std::size_t count) const {
  if (p_.kind() == ExponentKind::constant || count <= 1) {
    const double x1 = p_.kind() == ExponentKind::constant ? 0.0 : 0.5 * (p_.x1_lo() + p_.x1_hi());
    return {Point{x1, 0.0}};
  }
  std::vector<Point> out;
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(count - 1);
    out.push_back(Point{p_.x1_lo() + s * (p_.x1_hi() - p_.x1_lo()), 0.0});
  }
  return out;
}

KeyValueConfig MusielakFamily::to_descriptor() const {
  KeyValueConfig cfg;
  cfg.set("family", to_string(id_));
  cfg.set("exponent", p_.to_text());
  if (id_ == FamilyId::log_weight) cfg.set("alpha", format_real(alpha_));
  if (id_ == FamilyId::custom) {
    if (custom_->name != "notch") {
      throw InputError("custom profile '" + custom_->name + "' has no text form");
    }
    cfg.set("profile", custom_->name);
    cfg.set("notch_depth", format_real(custom_->parameter));
  }
  auto bound = [](BoundSource src, double v) {
    return src == BoundSource::declared ? format_real(v) : to_string(src);
  };
  cfg.set("phi0", bound(phi0_source_, phi0_));
  cfg.set("phi_sup", bound(phi_sup_source_, phi_sup_));
  return cfg;
}

MusielakFamily MusielakFamily::from_descriptor(const KeyValueConfig& cfg) {
  const FamilyId id = family_id_from_string(cfg.get("family"));
  const ExponentField p = ExponentField::from_text(cfg.get("exponent"));
  auto bound = [&](const char* key) -> std::optional<double> {
    if (!cfg.has(key)) return std::nullopt;
    const std::string& v = cfg.get(key);
    if (v == "analytic") return std::nullopt;
    if (v == "estimate") return kNaN;
    return parse_real(v, cfg.source() + ": key '" + key + "'");
  };
  MusielakFamily base = [&] {
    switch (id) {
      case FamilyId::power: return power(p);
      case FamilyId::log_quotient: return log_quotient(p);
      case FamilyId::log_weight: return log_weight(p, cfg.number("alpha"));
      case FamilyId::custom: {
        const std::string profile = cfg.get("profile");
        if (profile != "notch") throw InputError(cfg.source() + ": unknown custom profile '" + profile + "'");
        return notch(p, cfg.number_or("notch_depth", 0.9));
      }
    }
    return power(p);
  }();
  const auto lower = bound("phi0");
  const auto upper = bound("phi_sup");
  if (!lower && !upper) return base;
  return base.with_bounds(lower, upper);
}

// ---------------------------------------------------------------------------------------------

double phi_value(const MusielakFamily& f, const Point& x, double t) { return f.at(x).phi(t); }
double Phi_value(const MusielakFamily& f, const Point& x, double t) { return f.at(x).Phi(t); }
double phi_inverse(const MusielakFamily& f, const Point& x, double s) { return f.at(x).phi_inverse(s); }
double conjugate_value(const MusielakFamily& f, const Point& x, double s) {
  if (s < 0.0) throw DomainError("conjugate_value needs s >= 0");
  return f.at(x).conjugate(s);
}

ExponentBounds exponent_bounds(const MusielakFamily& f, const std::vector<double>& t_grid,
                               const std::vector<Point>& x_grid) {
  if (t_grid.empty() || x_grid.empty()) throw InputError("exponent_bounds needs nonempty grids");
  ExponentBounds out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& x : x_grid) {
    const LocalFamily local = f.at(x);
    for (double t : t_grid) {
      if (!(t > 0.0)) throw InputError("exponent_bounds needs t > 0");
      const double Phi = local.Phi(t);
      if (!(Phi > 0.0)) throw NumericError("Phi(x, t) = " + format_real(Phi) + " at t = " + format_real(t));
      const double r = t * local.phi(t) / Phi;
      out.phi0_est = std::min(out.phi0_est, r);
      out.phi_sup_est = std::max(out.phi_sup_est, r);
    }
  }
  return out;
}

SampleSpec default_sample_spec(const MusielakFamily& f, std::size_t nx, std::size_t nt) {
  SampleSpec spec;
  spec.x_grid = f.sample_points(nx);
  spec.t_grid = log_grid(1e-4, 1e4, nt);
  return spec;
}

bool StructureReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

const ConditionResult& StructureReport::entry(const std::string& condition) const {
  for (const auto& e : entries) {
    if (e.condition == condition) return e;
  }
  throw InputError("no structure entry '" + condition + "'");
}

StructureReport check_structure(const MusielakFamily& f, const SampleSpec& spec) {
  std::vector<double> ts = spec.t_grid;
  if (const auto* prof = f.profile(); prof && !prof->breakpoints.empty()) {
    // Dense samples across the declared fast-variation region of a custom profile.
    const double lo = prof->breakpoints.front(), hi = prof->breakpoints.back();
    for (int k = 0; k <= 200; ++k) ts.push_back(lo + (hi - lo) * k / 200.0);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::remove_if(ts.begin(), ts.end(), [](double t) { return !(t > 0.0); }), ts.end());
  const double tol = spec.tol;

  std::vector<ConditionResult> results;
  for (const char* name :
       {"phi_odd", "phi_monotone", "Phi_positive", "exponent_bounds", "delta2", "sqrt_convex", "growth"}) {
    ConditionResult r;
    r.condition = name;
    r.worst_margin = std::numeric_limits<double>::infinity();
    results.push_back(r);
  }
  auto record = [&](std::size_t which, double margin, const Point& x, double t) {
    auto& r = results[which];
    ++r.samples;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.witness_x = x;
      r.witness_t = t;
    }
  };
  const double K = std::pow(2.0, f.phi_sup());

  for (const auto& x : spec.x_grid) {
    const LocalFamily local = f.at(x);
    const double p = f.exponent()(x);
    double prev_phi = 0.0;
    double prev_Phi = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double t = ts[k];
      const double ph = local.phi(t);
      const double Ph = local.Phi(t);
      const double scale = std::max(std::abs(ph), std::numeric_limits<double>::min());
      record(0, -std::abs(local.phi(-t) + ph) / scale, x, t);
      record(1, (ph - prev_phi) / scale, x, t);
      record(2, Ph > 0.0 ? (Ph - prev_Phi) / Ph : -1.0, x, t);
      const double ratio = t * ph / Ph;
      record(3, std::min(ratio - f.phi0(), f.phi_sup() - ratio) / f.phi_sup(), x, t);
      const double bound = K * Ph;
      record(4, (bound - local.Phi(2.0 * t)) / bound, x, t);
      record(6, (Ph - f.M_lower() * std::pow(t, p)) / Ph, x, t);
      prev_phi = ph;
      prev_Phi = Ph;
    }
    // Convexity of tau -> Phi(x, sqrt(tau)) at the squared sample points (0 included).
    std::vector<double> taus{0.0};
    std::vector<double> vals{0.0};
    for (double t : ts) {
      taus.push_back(t * t);
      vals.push_back(local.Phi(t));
    }
    for (std::size_t k = 1; k + 1 < taus.size(); ++k) {
      const double a = taus[k - 1], b = taus[k], c = taus[k + 1];
      const double chord = ((c - b) * vals[k - 1] + (b - a) * vals[k + 1]) / (c - a);
      const double scale = std::max(std::abs(chord), std::numeric_limits<double>::min());
      record(5, (chord - vals[k]) / scale, x, std::sqrt(b));
    }
  }
  for (auto& r : results) {
    if (r.samples == 0) r.worst_margin = 0.0;
    r.passed = r.worst_margin >= -tol;
  }
  return StructureReport{std::move(results)};
}

NodalFamily::NodalFamily(const MusielakFamily& family, const std::vector<Point>& points) : family_(family) {
  local_.reserve(points.size());
  for (const auto& x : points) local_.push_back(family_.at(x));
}

}  // namespace orlicz

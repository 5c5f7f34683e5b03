#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/config.hpp"
#include "orlicz/exponent.hpp"
#include "orlicz/point.hpp"

namespace orlicz {

enum class FamilyId {
  power,         // phi = p|t|^{p-2}t, Phi = |t|^p
  log_quotient,  // phi = p|t|^{p-2}t / log(1+|t|)
  log_weight,    // phi = p log(1+alpha+|t|) |t|^{p-2}t
  custom,
};

std::string to_string(FamilyId id);
FamilyId family_id_from_string(const std::string& name);

/// Where an exponent bound came from.
enum class BoundSource { analytic, estimated, declared };
std::string to_string(BoundSource source);

/// A user-supplied phi(x, t) for t >= 0. Phi is integrated numerically unless given.
struct CustomProfile {
  std::string name;
  std::function<double(const Point&, double)> phi;
  std::function<double(const Point&, double)> Phi;
  /// Interior points where phi varies quickly; quadrature splits there.
  std::vector<double> breakpoints;
  /// Extra parameter recorded in descriptors (e.g. the notch depth).
  double parameter = 0.0;
};

class MusielakFamily;

/// phi(x, .) and Phi(x, .) at one fixed x, with every x-dependent constant precomputed.
class LocalFamily {
 public:
  [[nodiscard]] double phi(double t) const;
  [[nodiscard]] double Phi(double t) const;
  /// a(x,|t|) = phi(x,t)/t with the removable value at t = 0 taken as 0.
  [[nodiscard]] double a(double t) const;
  [[nodiscard]] double phi_inverse(double s) const;
  [[nodiscard]] double conjugate(double s) const;
  [[nodiscard]] double exponent() const { return p_; }

 private:
  friend class MusielakFamily;
  static constexpr std::size_t kSeriesTerms = 56;

  [[nodiscard]] double log_quotient_integral(double t) const;
  [[nodiscard]] double log_weight_integral(double t) const;
  [[nodiscard]] double log_weight_small(double t) const;
  [[nodiscard]] double positive_phi(double t) const;

  FamilyId id_ = FamilyId::power;
  double p_ = 2.0;
  double c_ = 2.0;  // 1 + alpha for log_weight
  std::array<double, kSeriesTerms> series_{};
  double split_lo_ = 0.0, split_hi_ = 0.0;  // c/2 and 2c
  double integral_lo_ = 0.0, integral_hi_ = 0.0;
  double split_hi_pow_ = 0.0;  // (2c)^p
  Point x_{};
  std::shared_ptr<const CustomProfile> custom_;
};

/// A concrete Musielak-Orlicz function together with its exponent bounds
/// phi0 <= t phi(x,t) / Phi(x,t) <= phi_sup and growth constant M_lower.
class MusielakFamily {
 public:
  static MusielakFamily power(ExponentField p);
  static MusielakFamily log_quotient(ExponentField p);
  static MusielakFamily log_weight(ExponentField p, double alpha);
  static MusielakFamily custom(CustomProfile profile, ExponentField p);
  /// p t^{p-1} (1 - depth exp(-((t-1)/0.05)^2)): decreasing just below t = 1 when depth is large.
  static MusielakFamily notch(ExponentField p, double depth);

  /// Overrides the bounds. nullopt keeps the current value; NaN requests a sampled estimate.
  [[nodiscard]] MusielakFamily with_bounds(std::optional<double> phi0,
                                           std::optional<double> phi_sup) const;

  [[nodiscard]] LocalFamily at(const Point& x) const;
  [[nodiscard]] double phi(const Point& x, double t) const { return at(x).phi(t); }
  [[nodiscard]] double Phi(const Point& x, double t) const { return at(x).Phi(t); }

  [[nodiscard]] FamilyId id() const { return id_; }
  [[nodiscard]] const ExponentField& exponent() const { return p_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double phi0() const { return phi0_; }
  [[nodiscard]] double phi_sup() const { return phi_sup_; }
  [[nodiscard]] double M_lower() const { return M_lower_; }
  [[nodiscard]] BoundSource phi0_source() const { return phi0_source_; }
  [[nodiscard]] BoundSource phi_sup_source() const { return phi_sup_source_; }
  /// The printed lower growth bound for log-quotient families uses t^{p(x)-1}; recorded
  /// alongside M_lower, not used by any check.
  [[nodiscard]] std::optional<double> printed_growth_exponent_shift() const;
  [[nodiscard]] const CustomProfile* profile() const { return custom_.get(); }
  [[nodiscard]] std::string name() const;

  /// x samples spanning the exponent support (a single point for constant exponents).
  [[nodiscard]] std::vector<Point> sample_points(std::size_t count) const;

  [[nodiscard]] KeyValueConfig to_descriptor() const;
  static MusielakFamily from_descriptor(const KeyValueConfig& cfg);

 private:
  MusielakFamily(FamilyId id, ExponentField p, double alpha, std::shared_ptr<const CustomProfile> custom);
  void resolve_bounds(std::optional<double> phi0, std::optional<double> phi_sup);

  FamilyId id_;
  ExponentField p_;
  double alpha_ = 0.0;
  std::shared_ptr<const CustomProfile> custom_;
  double phi0_ = 0.0;
  double phi_sup_ = 0.0;
  double M_lower_ = 0.0;
  BoundSource phi0_source_ = BoundSource::analytic;
  BoundSource phi_sup_source_ = BoundSource::analytic;
};

double phi_value(const MusielakFamily& f, const Point& x, double t);
double Phi_value(const MusielakFamily& f, const Point& x, double t);
double phi_inverse(const MusielakFamily& f, const Point& x, double s);
double conjugate_value(const MusielakFamily& f, const Point& x, double s);

struct ExponentBounds {
  double phi0_est = 0.0;
  double phi_sup_est = 0.0;
};

/// Min and max of t phi(x,t)/Phi(x,t) over the sample product.
ExponentBounds exponent_bounds(const MusielakFamily& f, const std::vector<double>& t_grid,
                               const std::vector<Point>& x_grid);

/// Log-spaced t in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct SampleSpec {
  std::vector<Point> x_grid;
  std::vector<double> t_grid;
  double tol = 1e-9;
};

/// 1e-4..1e4 log-spaced t and `nx` points across the exponent support.
SampleSpec default_sample_spec(const MusielakFamily& f, std::size_t nx = 100, std::size_t nt = 100);

struct ConditionResult {
  std::string condition;
  bool passed = true;
  std::size_t samples = 0;
  /// Relative signed distance to the inequality boundary; negative means violated.
  double worst_margin = 0.0;
  Point witness_x{};
  double witness_t = 0.0;
};

struct StructureReport {
  std::vector<ConditionResult> entries;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const ConditionResult& entry(const std::string& condition) const;
};

/// Sampled certification of oddness and monotonicity of phi, positivity of Phi, the exponent
/// bounds, Delta2 with K = 2^{phi_sup}, convexity of t -> Phi(x, sqrt t), and the growth floor.
StructureReport check_structure(const MusielakFamily& f, const SampleSpec& spec);

/// Bind the family at every node of a point set.
class NodalFamily {
 public:
  NodalFamily(const MusielakFamily& family, const std::vector<Point>& points);

  [[nodiscard]] const LocalFamily& operator[](std::size_t i) const { return local_[i]; }
  [[nodiscard]] std::size_t size() const { return local_.size(); }
  [[nodiscard]] const MusielakFamily& family() const { return family_; }

 private:
  MusielakFamily family_;
  std::vector<LocalFamily> local_;
};

}  // namespace orlicz

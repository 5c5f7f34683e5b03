#pragma once

#include <string>
#include <vector>

#include "orlicz/point.hpp"

namespace orlicz {

enum class ExponentKind { constant, affine, tabulated };

/// A continuous exponent p(x) > 1 depending on the first coordinate only.
///
/// `affine` is intercept + slope * x1 on [x1_lo, x1_hi]; `tabulated` holds
/// values on a uniform partition of [x1_lo, x1_hi] and interpolates linearly.
/// Constant exponents are defined everywhere; the other kinds reject points
/// whose first coordinate leaves the support.
class ExponentField {
 public:
  static ExponentField constant(double value);
  static ExponentField affine(double intercept, double slope, double x1_lo, double x1_hi);
  static ExponentField tabulated(std::vector<double> values, double x1_lo, double x1_hi);

  /// Throws DomainError for non-finite x or x1 outside the support.
  [[nodiscard]] double operator()(const Point& x) const;
  [[nodiscard]] bool contains(const Point& x) const;

  [[nodiscard]] ExponentKind kind() const { return kind_; }
  [[nodiscard]] double p_minus() const { return p_minus_; }
  [[nodiscard]] double p_plus() const { return p_plus_; }
  [[nodiscard]] bool is_constant() const { return p_minus_ == p_plus_; }
  [[nodiscard]] double x1_lo() const { return lo_; }
  [[nodiscard]] double x1_hi() const { return hi_; }
  [[nodiscard]] const std::vector<double>& coefficients() const { return coefficients_; }

  /// "constant 2", "affine 2 1 0 1", "tabulated 0 1 2 2.5 3".
  [[nodiscard]] std::string to_text() const;
  static ExponentField from_text(const std::string& text);

  friend bool operator==(const ExponentField&, const ExponentField&) = default;

 private:
  ExponentField(ExponentKind kind, std::vector<double> coefficients, double lo, double hi);

  ExponentKind kind_ = ExponentKind::constant;
  std::vector<double> coefficients_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double p_minus_ = 2.0;
  double p_plus_ = 2.0;
};

}  // namespace orlicz

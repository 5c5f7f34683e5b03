#include "orlicz/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

ExponentField::ExponentField(ExponentKind kind, std::vector<double> coefficients, double lo,
                             double hi)
    : kind_(kind), coefficients_(std::move(coefficients)), lo_(lo), hi_(hi) {
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw InputError("exponent coefficients must be finite");
  }
  switch (kind_) {
    case ExponentKind::constant:
      p_minus_ = p_plus_ = coefficients_.at(0);
      break;
    case ExponentKind::affine: {
      const double a = coefficients_.at(0) + coefficients_.at(1) * lo_;
      const double b = coefficients_.at(0) + coefficients_.at(1) * hi_;
      p_minus_ = std::min(a, b);
      p_plus_ = std::max(a, b);
      break;
    }
    case ExponentKind::tabulated:
      p_minus_ = *std::min_element(coefficients_.begin(), coefficients_.end());
      p_plus_ = *std::max_element(coefficients_.begin(), coefficients_.end());
      break;
  }
  if (!(p_minus_ > 1.0)) {
    throw InputError("exponent must satisfy p(x) > 1, got inf p = " + format_real(p_minus_));
  }
}

ExponentField ExponentField::constant(double value) {
  const double inf = std::numeric_limits<double>::infinity();
  return ExponentField(ExponentKind::constant, {value}, -inf, inf);
}

ExponentField ExponentField::affine(double intercept, double slope, double x1_lo, double x1_hi) {
  if (!(x1_hi > x1_lo)) throw InputError("affine exponent needs x1_hi > x1_lo");
  return ExponentField(ExponentKind::affine, {intercept, slope}, x1_lo, x1_hi);
}

ExponentField ExponentField::tabulated(std::vector<double> values, double x1_lo, double x1_hi) {
  if (values.size() < 2) throw InputError("tabulated exponent needs at least two values");
  if (!(x1_hi > x1_lo)) throw InputError("tabulated exponent needs x1_hi > x1_lo");
  return ExponentField(ExponentKind::tabulated, std::move(values), x1_lo, x1_hi);
}

bool ExponentField::contains(const Point& x) const {
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) return false;
  if (kind_ == ExponentKind::constant) return true;
  const double slack = 1e-12 * std::max(1.0, hi_ - lo_);
  return x[0] >= lo_ - slack && x[0] <= hi_ + slack;
}

double ExponentField::operator()(const Point& x) const {
  if (!contains(x)) {
    throw DomainError("point (" + format_real(x[0]) + ", " + format_real(x[1]) +
                      ") outside the exponent support");
  }
  switch (kind_) {
    case ExponentKind::constant:
      return coefficients_[0];
    case ExponentKind::affine:
      return std::clamp(coefficients_[0] + coefficients_[1] * x[0], p_minus_, p_plus_);
    case ExponentKind::tabulated: {
      const std::size_t cells = coefficients_.size() - 1;
      const double pos = std::clamp((x[0] - lo_) / (hi_ - lo_), 0.0, 1.0) * static_cast<double>(cells);
      const auto k = std::min(static_cast<std::size_t>(pos), cells - 1);
      const double frac = pos - static_cast<double>(k);
      return coefficients_[k] + frac * (coefficients_[k + 1] - coefficients_[k]);
    }
  }
  return coefficients_[0];
}

std::string ExponentField::to_text() const {
  std::string out;
  switch (kind_) {
    case ExponentKind::constant:
      return "constant " + format_real(coefficients_[0]);
    case ExponentKind::affine:
      return "affine " + format_real(coefficients_[0]) + " " + format_real(coefficients_[1]) + " " +
             format_real(lo_) + " " + format_real(hi_);
    case ExponentKind::tabulated:
      out = "tabulated " + format_real(lo_) + " " + format_real(hi_);
      for (double v : coefficients_) out += " " + format_real(v);
      return out;
  }
  return out;
}

ExponentField ExponentField::from_text(const std::string& text) {
  const auto words = split_words(text);
  if (words.empty()) throw InputError("empty exponent description");
  if (words.size() == 1) return constant(parse_real(words[0], "exponent"));
  std::vector<double> nums;
  for (std::size_t i = 1; i < words.size(); ++i) nums.push_back(parse_real(words[i], "exponent"));
  if (words[0] == "constant" && nums.size() == 1) return constant(nums[0]);
  if (words[0] == "affine" && nums.size() == 4) return affine(nums[0], nums[1], nums[2], nums[3]);
  if (words[0] == "tabulated" && nums.size() >= 4) {
    return tabulated(std::vector<double>(nums.begin() + 2, nums.end()), nums[0], nums[1]);
  }
  throw InputError("malformed exponent description '" + text + "'");
}

}  // namespace orlicz

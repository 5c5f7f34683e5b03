#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "orlicz/errors.hpp"

namespace orlicz {

struct SimpsonOptions {
  double abs_tol = 1e-10;
  /// The effective tolerance is max(abs_tol, rel_tol * |initial estimate|).
  double rel_tol = 1e-13;
  int max_depth = 48;
};

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= max_depth || !std::isfinite(delta)) {
    throw NumericError("adaptive Simpson did not converge on [" + std::to_string(a) + ", " +
                       std::to_string(b) + "], last correction " + std::to_string(delta));
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
/// The interval starts as two panels so a narrow feature at the midpoint is not skipped.
template <class F>
double adaptive_simpson(const F& f, double a, double b, SimpsonOptions opts = {}) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double q1 = 0.5 * (a + m);
  const double q3 = 0.5 * (m + b);
  const double fa = f(a);
  const double fq1 = f(q1);
  const double fm = f(m);
  const double fq3 = f(q3);
  const double fb = f(b);
  const double left = (m - a) / 6.0 * (fa + 4.0 * fq1 + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * fq3 + fb);
  const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(left + right));
  return detail::simpson_step(f, a, m, fa, fq1, fm, left, 0.5 * tol, 1, opts.max_depth) +
         detail::simpson_step(f, m, b, fm, fq3, fb, right, 0.5 * tol, 1, opts.max_depth);
}

}  // namespace orlicz

#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "orlicz/exponent.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/musielak.hpp"

namespace orlicz {

/// A Young function bound at each grid node: value Y_i(t) and derivative Y_i'(t) for t >= 0.
class NodalYoung {
 public:
  virtual ~NodalYoung() = default;
  [[nodiscard]] virtual double value(std::size_t node, double t) const = 0;
  [[nodiscard]] virtual double derivative(std::size_t node, double t) const = 0;
  /// Both at once; overridden where they share work.
  virtual void evaluate(std::size_t node, double t, double& value, double& derivative) const {
    value = this->value(node, t);
    derivative = this->derivative(node, t);
  }
};

/// Phi(x_i, .).
class PhiYoung final : public NodalYoung {
 public:
  explicit PhiYoung(const NodalFamily& f) : f_(f) {}
  double value(std::size_t i, double t) const override { return f_[i].Phi(t); }
  double derivative(std::size_t i, double t) const override { return f_[i].phi(t); }

 private:
  const NodalFamily& f_;
};

/// The conjugate of Phi(x_i, .); its derivative is phi^{-1}.
class ConjugateYoung final : public NodalYoung {
 public:
  explicit ConjugateYoung(const NodalFamily& f) : f_(f) {}
  double value(std::size_t i, double s) const override { return f_[i].conjugate(s); }
  double derivative(std::size_t i, double s) const override { return f_[i].phi_inverse(s); }
  void evaluate(std::size_t i, double s, double& value, double& derivative) const override {
    const double t = f_[i].phi_inverse(s);
    derivative = t;
    value = s == 0.0 ? 0.0 : std::max(0.0, s * t - f_[i].Phi(t));
  }

 private:
  const NodalFamily& f_;
};

/// t^{q(x_i)}.
class PowerYoung final : public NodalYoung {
 public:
  PowerYoung(const ExponentField& q, const std::vector<Point>& points);
  double value(std::size_t i, double t) const override;
  double derivative(std::size_t i, double t) const override;

 private:
  std::vector<double> q_;
};

/// One summand of a modular: sum_i w_i Y_i(m_i) with m_i >= 0.
struct ModularTerm {
  const NodalYoung* young;
  const std::vector<double>* magnitudes;
};

/// sum over terms of sum_i w_i Y_i(m_i / mu).
double gauge_modular(const std::vector<ModularTerm>& terms, const std::vector<double>& weights, double mu);

/// The mu with gauge_modular(mu) = 1, or 0 if every magnitude vanishes. Safeguarded Newton on
/// log G as a function of log mu inside a geometrically expanded bracket; throws NumericError if
/// no bracket exists or the final defect exceeds 1e-8.
double luxemburg_gauge(const std::vector<ModularTerm>& terms, const std::vector<double>& weights);

/// All norms and modulars of one family on one grid, with the family bound at every node once.
class FunctionSpace {
 public:
  FunctionSpace(const MusielakFamily& family, GridPtr grid);

  [[nodiscard]] const MusielakFamily& family() const { return nodal_.family(); }
  [[nodiscard]] const GridPtr& grid() const { return grid_; }
  [[nodiscard]] const NodalFamily& nodal() const { return nodal_; }

  [[nodiscard]] double modular(const GridFunction& u) const;
  [[nodiscard]] double norm(const GridFunction& u) const;
  [[nodiscard]] double conjugate_modular(const GridFunction& v) const;
  [[nodiscard]] double conjugate_norm(const GridFunction& v) const;
  [[nodiscard]] double sobolev_modular(const GridFunction& u) const;

  struct SobolevNorms {
    double n1 = 0.0;  // |grad u| + |u|
    double n2 = 0.0;  // max of the two
    double n = 0.0;   // joint gauge
  };
  [[nodiscard]] SobolevNorms sobolev_norms(const GridFunction& u) const;
  /// The joint gauge n alone.
  [[nodiscard]] double sobolev_norm(const GridFunction& u) const;

  /// Modular and norm on raw nonnegative nodal magnitudes.
  [[nodiscard]] double modular_of(const std::vector<double>& magnitudes) const;
  [[nodiscard]] double norm_of(const std::vector<double>& magnitudes) const;

 private:
  void check(const GridFunction& u) const;

  GridPtr grid_;
  NodalFamily nodal_;
};

std::vector<double> absolute(const GridFunction& u);

double modular(const MusielakFamily& f, const GridFunction& u);
double luxemburg_norm(const MusielakFamily& f, const GridFunction& u);
double conjugate_norm(const MusielakFamily& f, const GridFunction& v);
double sobolev_modular(const MusielakFamily& f, const GridFunction& u);
FunctionSpace::SobolevNorms sobolev_norms(const MusielakFamily& f, const GridFunction& u);
/// Luxemburg norm for Y = t^{q(x)}.
double variable_lebesgue_norm(const ExponentField& q, const GridFunction& u);

}  // namespace orlicz

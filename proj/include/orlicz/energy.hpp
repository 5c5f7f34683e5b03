#pragma once

#include <array>
#include <string>
#include <vector>

#include "orlicz/config.hpp"
#include "orlicz/exponent.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/musielak.hpp"

namespace orlicz {

enum class ReactionId {
  power,      // G = |t|^q
  power_log,  // G = |t|^q + log(1+t^2)|t|^{q-2}
  power_sin,  // G = |t|^q + sin(sin t)|t|^{q-1}
};

std::string to_string(ReactionId id);
ReactionId reaction_id_from_string(const std::string& name);

/// Reaction term g = dG/dt with envelope constants
///   |g| <= C0 |t|^{q-1},  C1 |t|^q <= G <= C2 |t|^q
/// valid for window_lo <= |t| <= window_hi.
class ReactionFamily {
 public:
  static ReactionFamily power(ExponentField q);
  static ReactionFamily power_log(ExponentField q);
  static ReactionFamily power_sin(ExponentField q);
  static ReactionFamily make(ReactionId id, ExponentField q);

  [[nodiscard]] ReactionId id() const { return id_; }
  [[nodiscard]] const ExponentField& q() const { return q_; }
  [[nodiscard]] double C0() const { return C0_; }
  [[nodiscard]] double C1() const { return C1_; }
  [[nodiscard]] double C2() const { return C2_; }
  [[nodiscard]] double window_lo() const { return window_lo_; }
  [[nodiscard]] double window_hi() const { return window_hi_; }
  /// True when the constants are exact rather than sampled.
  [[nodiscard]] bool analytic_constants() const { return id_ == ReactionId::power; }

  /// g and G at exponent value q.
  [[nodiscard]] double g(double q, double t) const;
  [[nodiscard]] double G(double q, double t) const;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] KeyValueConfig to_descriptor() const;

 private:
  ReactionFamily(ReactionId id, ExponentField q);
  void certify();

  ReactionId id_;
  ExponentField q_;
  double C0_ = 0.0, C1_ = 0.0, C2_ = 0.0;
  double window_lo_ = 0.0;
  double window_hi_ = 0.0;
};

double g_value(const ReactionFamily& r, const Point& x, double t);
double G_value(const ReactionFamily& r, const Point& x, double t);

struct EnergyConfig {
  MusielakFamily family;
  ReactionFamily reaction;
  double lambda;

  /// Throws InputError unless lambda is finite and positive.
  EnergyConfig(MusielakFamily f, ReactionFamily r, double lambda);
  [[nodiscard]] EnergyConfig with_lambda(double lambda) const { return EnergyConfig(family, reaction, lambda); }
};

/// J = Lambda(u) - lambda int G(x,u) and its first variation on one grid.
class EnergyEvaluator {
 public:
  EnergyEvaluator(const EnergyConfig& config, GridPtr grid);

  struct Parts {
    double Lambda = 0.0;      // int Phi(|grad u|) + Phi(|u|)
    double G_integral = 0.0;  // int G(x,u)
  };

  [[nodiscard]] Parts parts(const std::vector<double>& u) const;
  [[nodiscard]] double energy(const std::vector<double>& u) const;
  [[nodiscard]] double energy(const GridFunction& u) const;
  /// Exact derivative of the discrete energy in direction v.
  [[nodiscard]] double directional_derivative(const GridFunction& u, const GridFunction& v) const;
  /// r_k = <J'(u), e_k> / w_k.
  [[nodiscard]] std::vector<double> residual(const std::vector<double>& u) const;
  [[nodiscard]] GridFunction residual(const GridFunction& u) const;

  [[nodiscard]] const EnergyConfig& config() const { return config_; }
  [[nodiscard]] const GridPtr& grid() const { return grid_; }
  [[nodiscard]] double lambda() const { return config_.lambda; }
  void set_lambda(double lambda);

 private:
  void check(const GridFunction& u) const;

  EnergyConfig config_;
  GridPtr grid_;
  NodalFamily nodal_;
  std::vector<double> q_;
};

double energy(const EnergyConfig& c, const GridFunction& u);
double directional_derivative(const EnergyConfig& c, const GridFunction& u, const GridFunction& v);
GridFunction residual(const EnergyConfig& c, const GridFunction& u);

}  // namespace orlicz

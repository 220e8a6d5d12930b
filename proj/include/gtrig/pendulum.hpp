#pragma once

/**
 * @file pendulum.hpp
 * @brief The p-Laplacian pendulum -(|θ'|^{p-2}θ')' = λ^p |sin_{2,p}θ|^{p-2} sin_{2,p}θ
 *        with θ(0) = 0, θ'(0) = ω₀.
 *
 * The closed form depends on k = ω₀ / (2^{2/p} λ): oscillation for k < 1,
 * a heteroclinic orbit creeping up to π_{2,p} at k = 1, rotation for k > 1.
 */

#include <gtrig/elliptic.hpp>
#include <gtrig/trig.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gtrig {

enum class Regime { kOscillating, kSeparatrix, kRotating };

std::string regime_name(Regime regime);

/// |k - 1| below this counts as the separatrix.
inline constexpr double kSeparatrixBand = 1e-12;

struct PendulumConfig {
  double p = 2.0;
  double lambda = 1.0;
  double omega0 = 1.0;

  /// DomainError unless p > 1 and λ, ω₀ are positive and finite.
  void validate() const;
  double k() const;
  Regime regime() const;
};

/// Closed-form solution. Construction sets up the elliptic functions for the
/// regime once, so repeated evaluation is cheap.
class Pendulum {
 public:
  explicit Pendulum(const PendulumConfig& cfg);

  const PendulumConfig& config() const { return cfg_; }
  double k() const { return k_; }
  Regime regime() const { return regime_; }

  /// DomainError for t < 0.
  double theta(double t) const;

  /// 4 K_{p,p}(k) / λ. RegimeError unless oscillating.
  double period() const;
  /// 2^{2/p} arcsin_{p*,p}(k). RegimeError unless oscillating.
  double amplitude() const;

  /// (1/p)|θ'|^p + (2λ^p/p)(1 - cos_{2,p}θ) - (1/p)ω₀^p, constant along
  /// theta(t). Not the invariant of the ODE unless p = 2, see
  /// ode_energy_residual.
  double energy_residual(double theta, double theta_dot) const;

 private:
  PendulumConfig cfg_;
  double k_;
  Regime regime_;
  double scale_;  // 2^{2/p}
  Params star_;   // (p*, p)
  Params two_;    // (2, p)
  std::optional<EllipticParams> elliptic_;
};

/// The invariant of the ODE itself: multiplying by θ' gives
/// (1/p*)|θ'|^p + (2λ^p/p)(1 - cos_{2,p}θ) - (1/p*)ω₀^p = 0.
double ode_energy_residual(const PendulumConfig& cfg, double theta, double theta_dot);

/// The closed form above conserves the 1/p energy, so it solves the ODE with
/// λ^p replaced by (p-1)λ^p. Its formula taken at λ (p-1)^{-1/p} therefore
/// solves the ODE for λ. Identity for p = 2.
PendulumConfig matched_closed_form(const PendulumConfig& ode);

double pendulum_closed_form(const PendulumConfig& cfg, double t);
double pendulum_period(const PendulumConfig& cfg);

struct TrajectoryPoint {
  double t;
  double theta;
  double theta_dot;
  double energy_residual;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;  ///< every accepted step, t = 0 first
  int accepted = 0;
  int rejected_error = 0;   ///< rejected by the local error estimate
  int rejected_energy = 0;  ///< rejected for energy drift
  double max_energy_residual = 0.0;
};

/// Adaptive Dormand-Prince 5(4) integration of the first-order system
/// θ' = |φ|^{p*-2}φ, φ' = -λ^p |sin_{2,p}θ|^{p-2} sin_{2,p}θ in the momentum
/// φ = |θ'|^{p-2}θ'. A step is also rejected when it changes
/// ode_energy_residual by more than rel_tol ω₀^p h / τ, τ = 2π_{p,p}/λ the
/// small-amplitude period, so the drift after time t stays near
/// rel_tol ω₀^p t / τ. StepFailure when the step size underflows.
Trajectory pendulum_numeric(const PendulumConfig& cfg, double t_end, double rel_tol = 1e-9);

}  // namespace gtrig

#include <gtrig/errors.hpp>
#include <gtrig/pendulum.hpp>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gtrig {
namespace {

double signed_pow(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

double ode_energy(const PendulumConfig& cfg, const Params& two, double theta, double theta_dot) {
  const double p = cfg.p;
  return (std::pow(std::abs(theta_dot), p) - std::pow(cfg.omega0, p)) / conjugate(p) +
         2.0 * std::pow(cfg.lambda, p) / p * (1.0 - cos_pq(two, theta));
}

}  // namespace

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::kOscillating:
      return "oscillating";
    case Regime::kSeparatrix:
      return "separatrix";
    case Regime::kRotating:
      return "rotating";
  }
  return "?";
}

void PendulumConfig::validate() const {
  if (!(p > 1.0 && std::isfinite(p))) throw DomainError("pendulum: p must exceed 1");
  if (!(lambda > 0.0 && std::isfinite(lambda))) throw DomainError("pendulum: lambda must be positive");
  if (!(omega0 > 0.0 && std::isfinite(omega0))) throw DomainError("pendulum: omega0 must be positive");
}

double PendulumConfig::k() const { return omega0 / (std::pow(2.0, 2.0 / p) * lambda); }

Regime PendulumConfig::regime() const {
  const double kk = k();
  if (std::abs(kk - 1.0) <= kSeparatrixBand) return Regime::kSeparatrix;
  return kk < 1.0 ? Regime::kOscillating : Regime::kRotating;
}

Pendulum::Pendulum(const PendulumConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      k_(cfg.k()),
      regime_(cfg.regime()),
      scale_(std::pow(2.0, 2.0 / cfg.p)),
      star_(conjugate(cfg.p), cfg.p),
      two_(2.0, cfg.p) {
  if (regime_ == Regime::kOscillating) {
    elliptic_.emplace(Params(cfg.p, cfg.p), k_);
  } else if (regime_ == Regime::kRotating) {
    elliptic_.emplace(star_, 1.0 / k_);
  }
}

double Pendulum::theta(double t) const {
  if (!(t >= 0.0)) throw DomainError("pendulum: t must be non-negative");
  const double lt = cfg_.lambda * t;
  switch (regime_) {
    case Regime::kOscillating:
      return scale_ * arcsin_pq_odd(star_, k_ * sn(*elliptic_, lt));
    case Regime::kSeparatrix:
      return scale_ * arcsin_pq(star_, tanh_q(cfg_.p, lt));
    case Regime::kRotating:
      return scale_ * am(*elliptic_, k_ * lt);
  }
  return 0.0;
}

double Pendulum::period() const {
  if (regime_ != Regime::kOscillating) {
    throw RegimeError("pendulum: period needs k < 1, got k = " + std::to_string(k_));
  }
  return 4.0 * elliptic_->K().value / cfg_.lambda;
}

double Pendulum::amplitude() const {
  if (regime_ != Regime::kOscillating) {
    throw RegimeError("pendulum: amplitude needs k < 1, got k = " + std::to_string(k_));
  }
  return scale_ * arcsin_pq(star_, k_);
}

double Pendulum::energy_residual(double theta, double theta_dot) const {
  const double p = cfg_.p;
  return (std::pow(std::abs(theta_dot), p) - std::pow(cfg_.omega0, p)) / p +
         2.0 * std::pow(cfg_.lambda, p) / p * (1.0 - cos_pq(two_, theta));
}

double ode_energy_residual(const PendulumConfig& cfg, double theta, double theta_dot) {
  return ode_energy(cfg, Params(2.0, cfg.p), theta, theta_dot);
}

PendulumConfig matched_closed_form(const PendulumConfig& ode) {
  ode.validate();
  PendulumConfig out = ode;
  out.lambda = ode.lambda * std::pow(ode.p - 1.0, -1.0 / ode.p);
  return out;
}

double pendulum_closed_form(const PendulumConfig& cfg, double t) { return Pendulum(cfg).theta(t); }

double pendulum_period(const PendulumConfig& cfg) {
  cfg.validate();
  if (cfg.regime() != Regime::kOscillating) {
    throw RegimeError("pendulum: period needs k < 1, got k = " + std::to_string(cfg.k()));
  }
  return 4.0 * K_pq(Params(cfg.p, cfg.p), cfg.k()).value / cfg.lambda;
}

Trajectory pendulum_numeric(const PendulumConfig& cfg, double t_end, double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;

  cfg.validate();
  if (!(t_end > 0.0 && std::isfinite(t_end))) throw DomainError("pendulum: t_end must be positive");
  if (!(rel_tol > 0.0)) throw DomainError("pendulum: rel_tol must be positive");

  const double p = cfg.p;
  const double ps = conjugate(p);
  const double lp = std::pow(cfg.lambda, p);
  const Params two(2.0, p);
  // Momentum is carried in units of ω₀^{p-1} so both components are O(1).
  const double phi0 = std::pow(cfg.omega0, p - 1.0);
  // Energy may drift by rel_tol ω₀^p per small-amplitude period tau; a
  // cumulative cap instead would eventually reject every step. The floor
  // covers rounding in the energy itself.
  const double tau = 2.0 * Params(p, p).pi() / cfg.lambda;
  const double drift_rate = rel_tol * std::pow(cfg.omega0, p) / tau;
  const double energy_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                              (std::pow(cfg.omega0, p) / ps + 4.0 * lp / p);

  auto rhs = [&](const State& y, State& dy, double) {
    dy[0] = signed_pow(phi0 * y[1], ps - 1.0);
    dy[1] = -lp * signed_pow(sin_pq(two, y[0]), p - 1.0) / phi0;
  };
  auto theta_dot = [&](const State& y) { return signed_pow(phi0 * y[1], ps - 1.0); };

  odeint::runge_kutta_dopri5<State> stepper;
  State y{0.0, 1.0}, dydt, y_new, dydt_new, err;
  rhs(y, dydt, 0.0);

  Trajectory out;
  out.points.push_back({0.0, 0.0, cfg.omega0, 0.0});

  double t = 0.0;
  double energy_prev = 0.0;
  double h = std::min(t_end, 0.01 * tau);
  const double h_min_rel = 64.0 * std::numeric_limits<double>::epsilon();
  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h <= h_min_rel * std::max(1.0, t)) {
      throw StepFailure("pendulum_numeric: step size underflow at t = " + std::to_string(t));
    }
    stepper.do_step(rhs, y, dydt, t, y_new, dydt_new, h, err);
    double ratio = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double scale = rel_tol * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
      ratio = std::max(ratio, std::abs(err[i]) / scale);
    }
    if (!std::isfinite(ratio) || ratio > 1.0) {
      ++out.rejected_error;
      h *= std::isfinite(ratio) ? std::max(0.2, 0.9 * std::pow(ratio, -0.25)) : 0.2;
      continue;
    }
    const double td = theta_dot(y_new);
    const double energy = ode_energy(cfg, two, y_new[0], td);
    if (std::abs(energy - energy_prev) > drift_rate * h + energy_floor) {
      ++out.rejected_energy;
      h *= 0.5;
      continue;
    }
    t += h;
    y = y_new;
    dydt = dydt_new;
    energy_prev = energy;
    ++out.accepted;
    out.points.push_back({t, y[0], td, energy});
    out.max_energy_residual = std::max(out.max_energy_residual, std::abs(energy));
    h *= ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
  }
  return out;
}

}  // namespace gtrig

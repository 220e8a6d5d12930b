#include <gtrig/elliptic.hpp>
#include <gtrig/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gtrig {
namespace {

using numerics::Abscissa;
using numerics::QuadratureSpec;

constexpr double kNearSingular = 1e-6;
constexpr double kQuadTol = 1e-15;

void check_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": argument must be finite");
}

// 1 - t^power from t and an accurate 1 - t.
double one_minus_pow(double t, double one_minus_t, double power) {
  if (t > 0.5) return -std::expm1(power * std::log1p(-one_minus_t));
  return 1.0 - std::pow(t, power);
}

double integrate_from_zero(const std::function<double(double)>& f, double b) {
  if (b <= 0.0) return 0.0;
  QuadratureSpec spec;
  spec.integrand = [&f](const Abscissa& node) { return f(node.x); };
  spec.a = 0.0;
  spec.b = b;
  // t^q is not smooth at 0 for fractional q, and for k near 1 the upper
  // integrand has a narrow peak there; both want the long tail.
  spec.singular_left = true;
  spec.abs_tol = kQuadTol;
  spec.max_level = 12;
  return numerics::integrate(spec).value;
}

struct Amplitude {
  double theta;  // in [0, pi_pq / 2]
  double sin;
};

// Solves am_inv(theta) = r for r in [0, K].
Amplitude solve_amplitude(const EllipticParams& ep, double r) {
  const Params& pq = ep.params();
  const double K = ep.K().value;
  if (r <= 0.0) return {0.0, 0.0};
  if (r >= K) return {pq.pi() / 2, 1.0};
  const double q = pq.q();
  const double kq = std::pow(ep.k(), q);
  const double p_exp = 1.0 / pq.p();
  const double ps_exp = 1.0 / pq.p_star();
  if (r <= ep.lower_total()) {
    const double s_max = std::pow(0.5, 1.0 / q);
    auto g = [&](double s) {
      const double sq = std::pow(s, q);
      const double slope = std::pow(1.0 - sq, -p_exp) * std::pow(1.0 - kq * sq, -ps_exp);
      return numerics::ValueAndSlope{ep.lower(s) - r, slope};
    };
    const double s = numerics::find_root_newton(g, 0.0, s_max, r / ep.lower_total() * s_max,
                                                1e-15);
    return {arcsin_pq(pq, s), s};
  }
  // Above the split: solve upper(w) = K - r for w = cos^{p-1}(theta).
  const double ps = pq.p_star();
  const double w_max = std::pow(0.5, 1.0 / ps);
  const double target = K - r;
  const double upper_total = K - ep.lower_total();
  const double lead = ps / q;
  const double qs_exp = 1.0 / pq.q_star();
  auto g = [&](double w) {
    const double wp = std::pow(w, ps);
    const double slope =
        lead * std::pow(1.0 - wp, -qs_exp) * std::pow(1.0 - kq + kq * wp, -ps_exp);
    return numerics::ValueAndSlope{ep.upper(w) - target, slope};
  };
  const double w =
      numerics::find_root_newton(g, 0.0, w_max, target / upper_total * w_max, 1e-15);
  // cos^{p-1} theta = sin_{q*,p*}((q/p*)(pi/2 - theta)).
  const double theta = pq.pi() / 2 - lead * arcsin_pq(ep.complement(), w);
  const double sin = std::pow(-std::expm1(ps * std::log(w)), 1.0 / q);
  return {theta, w == 0.0 ? 1.0 : sin};
}

}  // namespace

EllipticParams::EllipticParams(const Params& params, double k)
    : params_(params),
      complement_(params.q_star(), params.p_star()),
      k_(k),
      kq_(std::pow(k, params.q())) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("elliptic modulus must lie in [0, 1), got " + std::to_string(k));
  }
  lower_total_ = lower(std::pow(0.5, 1.0 / params_.q()));
  K_.value = lower_total_ + upper(std::pow(0.5, 1.0 / params_.p_star()));
  K_.err_est = 4.0 * kQuadTol * std::max(1.0, K_.value);
  K_.near_singular = k >= 1.0 - kNearSingular;
  if (K_.near_singular) K_.err_est = std::max(K_.err_est, 1e-10 * K_.value);
}

double EllipticParams::lower(double s) const {
  if (k_ == 0.0) return arcsin_pq(params_, s);
  const double q = params_.q();
  const double a = 1.0 / params_.p();
  const double b = 1.0 / params_.p_star();
  const double kq = kq_;
  return integrate_from_zero(
      [=](double t) {
        const double tq = std::pow(t, q);
        return std::pow(1.0 - tq, -a) * std::pow(1.0 - kq * tq, -b);
      },
      s);
}

double EllipticParams::upper(double w) const {
  const double ps = params_.p_star();
  const double lead = ps / params_.q();
  if (k_ == 0.0) return lead * arcsin_pq(complement_, w);
  const double a = 1.0 / params_.q_star();
  const double b = 1.0 / ps;
  const double kq = kq_;
  const double kc = -std::expm1(params_.q() * std::log(k_));  // 1 - k^q
  return lead * integrate_from_zero(
                    [=](double t) {
                      const double tp = std::pow(t, ps);
                      return std::pow(1.0 - tp, -a) * std::pow(kc + kq * tp, -b);
                    },
                    w);
}

double am_inv(const EllipticParams& ep, double x) {
  check_finite(x, "am_inv");
  const Params& pq = ep.params();
  const double half = pq.pi() / 2;
  const double m = std::nearbyint(x / pq.pi());
  const double r = x - m * pq.pi();
  const double y = std::min(std::abs(r), half);
  double value;
  const double split = arcsin_pq(pq, std::pow(0.5, 1.0 / pq.q()));
  if (y <= split) {
    value = ep.lower(sin_pq(pq, y));
  } else {
    value = ep.K().value - ep.upper(flux_pq(pq, y));
  }
  return 2.0 * m * ep.K().value + std::copysign(value, r);
}

numerics::EvalResult K_pq(const EllipticParams& ep) { return ep.K(); }

numerics::EvalResult K_pq(const Params& params, double k) {
  return EllipticParams(params, k).K();
}

double am(const EllipticParams& ep, double x) {
  check_finite(x, "am");
  const double K = ep.K().value;
  const double m = std::nearbyint(x / (2.0 * K));
  const double r = x - 2.0 * m * K;
  const Amplitude a = solve_amplitude(ep, std::abs(r));
  return m * ep.params().pi() + std::copysign(a.theta, r);
}

double sn(const EllipticParams& ep, double x) {
  check_finite(x, "sn");
  const double K = ep.K().value;
  const double m = std::nearbyint(x / (2.0 * K));
  const double r = x - 2.0 * m * K;
  const Amplitude a = solve_amplitude(ep, std::abs(r));
  // sin_pq(m pi + phi) = (-1)^m sin_pq(phi)
  const double sign = std::fmod(std::abs(m), 2.0) == 1.0 ? -1.0 : 1.0;
  return sign * std::copysign(a.sin, r);
}

namespace {

constexpr double kSeriesCut = 0.5;

// sum_n x^{qn+1} / (qn + 1) for 0 <= x <= 1/2.
double artanh_series(double q, double x) {
  if (x == 0.0) return 0.0;
  const double xq = std::pow(x, q);
  double power = x;
  double sum = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double term = power / (q * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
    power *= xq;
  }
  return sum;
}

// artanh_q for x in [0, 1) given an accurate 1 - x. Beyond the series range
// the pole is peeled off: 1/(1 - t^q) = 1/(q(1 - t)) + h(t), h bounded at 1.
double artanh_positive(double q, double x, double one_minus_x) {
  if (x <= kSeriesCut) return artanh_series(q, x);
  const double base = artanh_series(q, kSeriesCut);
  const double log_part = std::log(kSeriesCut / one_minus_x) / q;
  QuadratureSpec spec;
  spec.a = kSeriesCut;
  spec.b = x;
  spec.abs_tol = kQuadTol;
  spec.max_level = 12;
  spec.integrand = [=](const Abscissa& node) {
    const double u = one_minus_x + node.to_right;  // 1 - t
    const double d = one_minus_pow(node.x, u, q);
    if (u < 1e-4) {
      // h(t) = (q-1)/(2q) + (q^2-1)/(12q) u + O(u^2)
      return (q - 1.0) / (2.0 * q) + (q * q - 1.0) / (12.0 * q) * u;
    }
    return 1.0 / d - 1.0 / (q * u);
  };
  return base + log_part + numerics::integrate(spec).value;
}

}  // namespace

double artanh_q(double q, double x) {
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("artanh_q: need q > 1");
  if (!(std::abs(x) < 1.0)) {
    throw DomainError("artanh_q: need |x| < 1, got " + std::to_string(x));
  }
  const double ax = std::abs(x);
  return std::copysign(artanh_positive(q, ax, 1.0 - ax), x);
}

double tanh_q(double q, double x) {
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("tanh_q: need q > 1");
  check_finite(x, "tanh_q");
  const double y = std::abs(x);
  if (y == 0.0) return x;
  // Work in v = -log(1 - t) so the solution stays resolved as t -> 1.
  // artanh_q(t) >= v / q, so v = q y also bounds the root.
  auto g = [&](double v) {
    const double one_minus = std::exp(-v);
    const double t = -std::expm1(-v);
    const double value = artanh_positive(q, t, one_minus) - y;
    const double slope = one_minus / one_minus_pow(t, one_minus, q);
    return numerics::ValueAndSlope{value, slope};
  };
  // With H the integral of the bounded remainder over [1/2, t], 0 <= H <= 1/2,
  // artanh_q(t) = base + (v - log 2) / q + H pins v between two lines.
  const double base = artanh_series(q, kSeriesCut);
  const double v_floor = q * (y - base - 0.5) + std::log(2.0);
  if (v_floor > 40.0) return std::copysign(1.0, x);  // 1 - t < eps / 4
  // The line only applies for t > 1/2, i.e. v > log 2.
  const double v_line = std::max(std::log(2.0), q * (y - base) + std::log(2.0) + 1.0);
  const double v_hi = std::min(q * y, v_line);
  const double v = numerics::find_root_newton(g, 0.0, v_hi, 0.5 * v_hi, 1e-14);
  return std::copysign(-std::expm1(-v), x);
}

}  // namespace gtrig

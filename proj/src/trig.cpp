#include <gtrig/errors.hpp>
#include <gtrig/trig.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

namespace gtrig {

namespace detail {

constexpr std::size_t kChebyshevPoints = 64;

// One inversion problem: s -> I(s) = int_0^s (1 - t^power)^{-exponent} dt,
// restricted to s in [0, 2^{-1/power}] where t^power <= 1/2.
struct Branch {
  double power = 0.0;
  double exponent = 0.0;
  double s_max = 0.0;
  double target_max = 0.0;
  std::array<double, kChebyshevPoints> chebyshev{};
};

struct InverseCache {
  std::once_flag once;
  Branch lower;  // (p, q) itself: power q, exponent 1/p
  Branch upper;  // (q*, p*): power p*, exponent 1/q*; yields cos^{p-1}
  double split = 0.0;
};

}  // namespace detail

namespace {

using detail::Branch;
using numerics::Abscissa;
using numerics::QuadratureSpec;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 1 - t^power given t and an exact 1 - t.
double one_minus_pow(double t, double one_minus_t, double power) {
  if (t > 0.5) return -std::expm1(power * std::log1p(-one_minus_t));
  return 1.0 - std::pow(t, power);
}

double integral_beta(double power, double exponent, double s) {
  if (s <= 0.0) return 0.0;
  const double u = std::pow(s, power);
  const double uc = one_minus_pow(s, 1.0 - s, power);
  return numerics::incomplete_beta(u, uc, 1.0 / power, 1.0 - exponent) / power;
}

double integral_quadrature(double power, double exponent, double s) {
  if (s <= 0.0) return 0.0;
  const double one_minus_s = 1.0 - s;
  QuadratureSpec spec;
  spec.a = 0.0;
  spec.b = s;
  spec.singular_right = s > 0.9;
  spec.abs_tol = 1e-15;
  spec.max_level = 12;
  spec.integrand = [=](const Abscissa& node) {
    const double omt = node.x > 0.5 ? one_minus_s + node.to_right : 1.0 - node.x;
    return std::pow(one_minus_pow(node.x, omt, power), -exponent);
  };
  return numerics::integrate(spec).value;
}

double integral(double power, double exponent, double s, Path path) {
  return path == Path::kIncompleteBeta ? integral_beta(power, exponent, s)
                                       : integral_quadrature(power, exponent, s);
}

double chebyshev_eval(const Branch& br, double target) {
  const double u = 2.0 * target / br.target_max - 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = br.chebyshev.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * u * b1 - b2 + br.chebyshev[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + 0.5 * br.chebyshev[0];
}

struct Inverted {
  double s;
  double last_step;
};

// Solves I(s) = target on [0, s_hi] by Newton with a bisection safeguard.
Inverted invert(const Branch& br, double target, double guess, Path path) {
  if (target <= 0.0) return {0.0, 0.0};
  double lo = 0.0;
  double hi = std::min(1.0, 1.05 * br.s_max);
  double s = (guess > lo && guess < hi) ? guess : std::min(target, 0.5 * hi);
  double last = 0.0;
  for (int iter = 0; iter < 80; ++iter) {
    const double f = integral(br.power, br.exponent, s, path) - target;
    if (f == 0.0) return {s, 0.0};
    if (f < 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    const double t_pow = std::pow(s, br.power);
    const double slope_inv = std::pow(1.0 - t_pow, br.exponent);
    const double step = f * slope_inv;
    double next = s - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    last = std::abs(next - s);
    // Newton error after this step is about curvature * step^2, with
    // curvature = I'' / (2 I').
    const double curvature =
        0.5 * br.exponent * br.power * t_pow / (s * (1.0 - t_pow));
    s = next;
    if (curvature * last * last <= 0.25 * kEps * s || last <= kEps * s || hi - lo <= kEps * s) {
      return {s, last};
    }
  }
  throw NonConvergence("sin_pq: inversion did not converge for target " +
                       std::to_string(target));
}

void build_branch(Branch& br, double power, double exponent) {
  br.power = power;
  br.exponent = exponent;
  br.s_max = std::pow(2.0, -1.0 / power);
  br.target_max = integral_beta(power, exponent, br.s_max);
  constexpr std::size_t n = detail::kChebyshevPoints;
  std::array<double, n> values{};
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = std::numbers::pi * (static_cast<double>(j) + 0.5) / n;
    const double target = 0.5 * br.target_max * (1.0 + std::cos(angle));
    values[j] = invert(br, target, target, Path::kIncompleteBeta).s;
  }
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += values[j] *
             std::cos(std::numbers::pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) / n);
    }
    br.chebyshev[k] = 2.0 * sum / n;
  }
}

// Evaluation on the fundamental interval [0, pi_pq / 2].
struct Fundamental {
  double sin;
  double cos;       // >= 0
  double cos_pm1;   // cos^{p-1}
  double err_est;
};

// `to_crest`, when given, is pi/2 - y computed without cancellation.
Fundamental evaluate_fundamental(const Params& params, double y, Path path,
                                 double to_crest = -1.0) {
  const detail::InverseCache& cache = params.cache();
  const double p = params.p();
  const double q = params.q();
  if (std::pow(y, q) < 1e-9) {
    // Two terms of the inverse series; the next is O(y^{2q}) relative.
    const double yq = std::pow(y, q);
    const double s = y * (1.0 - yq / (p * (q + 1.0)));
    const double rest = 1.0 - std::pow(s, q);
    return {s, std::pow(rest, 1.0 / p), std::pow(rest, 1.0 / params.p_star()), 0.0};
  }
  if (y <= cache.split) {
    const Branch& br = cache.lower;
    const Inverted inv = invert(br, y, chebyshev_eval(br, y), path);
    const double rest = 1.0 - std::pow(inv.s, q);  // >= 1/2
    return {inv.s, std::pow(rest, 1.0 / p), std::pow(rest, 1.0 / params.p_star()),
            inv.last_step};
  }
  const Branch& br = cache.upper;
  if (to_crest < 0.0) to_crest = 0.5 * params.pi() - y;
  const double z = std::max(0.0, (q / params.p_star()) * to_crest);
  const Inverted inv = invert(br, z, chebyshev_eval(br, std::min(z, br.target_max)), path);
  const double w = inv.s;  // cos^{p-1}
  const double sin_q = 1.0 - std::pow(w, params.p_star());  // = 1 - cos^p >= 1/2
  return {std::pow(sin_q, 1.0 / q), std::pow(w, params.p_star() - 1.0), w, inv.last_step};
}

struct Reduced {
  double y;          // in [0, pi / 2]
  double sin_sign;   // sign of sin
  double cos_sign;   // sign of cos
  double pole_dist;  // distance of x from the nearest odd multiple of pi / 2
};

Reduced reduce(const Params& params, double x) {
  const double period = 2.0 * params.pi();
  const double half_pi = 0.5 * params.pi();
  double y = std::remainder(x, period);  // [-pi, pi]
  Reduced r{0.0, 1.0, 1.0, 0.0};
  if (y < 0.0) {
    y = -y;
    r.sin_sign = -1.0;
  }
  r.pole_dist = std::abs(y - half_pi);
  if (y > half_pi) {
    y = params.pi() - y;
    r.cos_sign = -1.0;
  }
  r.y = std::max(0.0, y);
  return r;
}

void check_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite");
  }
}

double signed_pow(double base, double power) {
  return std::copysign(std::pow(std::abs(base), power), base);
}

}  // namespace

Params::Params(double p, double q) : p_(p), q_(q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("Params: need p, q in (1, inf), got p=" + std::to_string(p) +
                      " q=" + std::to_string(q));
  }
  p_star_ = p / (p - 1.0);
  q_star_ = q / (q - 1.0);
  pi_ = 2.0 / q * numerics::beta(1.0 / p_star_, 1.0 / q);
  cache_ = std::make_shared<detail::InverseCache>();
}

const detail::InverseCache& Params::cache() const {
  std::call_once(cache_->once, [this] {
    detail::InverseCache& c = *cache_;
    build_branch(c.lower, q_, 1.0 / p_);
    build_branch(c.upper, p_star_, 1.0 / q_star_);
    c.split = c.lower.target_max;
  });
  return *cache_;
}

double conjugate(double p) {
  if (!(p > 1.0)) throw DomainError("conjugate: need p > 1");
  return p / (p - 1.0);
}

double pi_pq(const Params& params) {
  return 2.0 / params.q() * numerics::beta(1.0 / params.p_star(), 1.0 / params.q());
}

numerics::EvalResult pi_pq_quadrature(const Params& params, double abs_tol) {
  // Split at t^q = 1/2. Past the split, w = (1 - t^q)^{1/p*} turns the rest
  // into (p*/q) * int_0^{2^{-1/p*}} (1 - w^{p*})^{-1/q*} dw. Both integrands
  // stay bounded, whereas the endpoint singularity in t can leave more mass
  // beyond the last tanh-sinh node than the tolerance allows (p near 1).
  auto piece = [&](double power, double exponent, double end) {
    QuadratureSpec spec;
    spec.a = 0.0;
    spec.b = end;
    spec.abs_tol = 0.25 * abs_tol;
    spec.max_level = 12;
    spec.integrand = [=](const Abscissa& node) {
      return std::pow(1.0 - std::pow(node.x, power), -exponent);
    };
    return numerics::integrate(spec);
  };
  const double ps = params.p_star();
  const numerics::EvalResult lo = piece(params.q(), 1.0 / params.p(), std::pow(2.0, -1.0 / params.q()));
  const numerics::EvalResult hi = piece(ps, 1.0 / params.q_star(), std::pow(2.0, -1.0 / ps));
  const double scale = ps / params.q();
  return {2.0 * (lo.value + scale * hi.value), 2.0 * (lo.err_est + scale * hi.err_est),
          lo.work + hi.work, false};
}

double arcsin_pq(const Params& params, double x, Path path) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("arcsin_pq: x must lie in [0, 1], got " + std::to_string(x));
  }
  if (x == 1.0) {
    return path == Path::kIncompleteBeta ? 0.5 * params.pi()
                                         : 0.5 * pi_pq_quadrature(params).value;
  }
  return integral(params.q(), 1.0 / params.p(), x, path);
}

double arcsin_pq_odd(const Params& params, double x, Path path) {
  return std::copysign(arcsin_pq(params, std::abs(x), path), x);
}

SinCos sincos_pq(const Params& params, double x, Path path) {
  check_finite(x, "sin_pq");
  const Reduced r = reduce(params, x);
  const Fundamental f = evaluate_fundamental(params, r.y, path);
  return {r.sin_sign * f.sin, r.cos_sign * f.cos, f.err_est};
}

SinCos sincos_pq_pi(const Params& params, double t, Path path) {
  check_finite(t, "sincos_pq_pi");
  // Each fold below is exact in binary floating point, so multiples of 1/2
  // land exactly on zeros and crests.
  double r = std::fmod(t, 2.0);
  double sin_sign = 1.0;
  double cos_sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sin_sign = -1.0;
  }
  if (r > 1.0) {
    r = 2.0 - r;
    sin_sign = -sin_sign;
  }
  if (r > 0.5) {
    r = 1.0 - r;
    cos_sign = -1.0;
  }
  const Fundamental f = evaluate_fundamental(params, r * params.pi(), path, (0.5 - r) * params.pi());
  return {sin_sign * f.sin, cos_sign * f.cos, f.err_est};
}

double sin_pq(const Params& params, double x, Path path) {
  return sincos_pq(params, x, path).sin;
}

double cos_pq(const Params& params, double x, Path path) {
  return sincos_pq(params, x, path).cos;
}

double flux_pq(const Params& params, double x, Path path) {
  check_finite(x, "flux_pq");
  const Reduced r = reduce(params, x);
  return r.cos_sign * evaluate_fundamental(params, r.y, path).cos_pm1;
}

double tau_pq(const Params& params, double x, Path path) {
  check_finite(x, "tau_pq");
  const Reduced r = reduce(params, x);
  if (r.pole_dist < kPoleGuard * params.pi()) {
    throw PoleError("tau_pq: x = " + std::to_string(x) + " is at a pole");
  }
  const Fundamental f = evaluate_fundamental(params, r.y, path);
  return r.sin_sign * r.cos_sign * f.sin / std::pow(f.cos, params.p() / params.q());
}

double arctau_star(double p, double x) {
  if (!(p > 1.0)) throw DomainError("arctau_star: need p > 1");
  if (!(x >= 0.0)) throw DomainError("arctau_star: need x >= 0");
  // tau^{-1}(x) = (1/p) B(x^p / (1 + x^p); 1/p, 1/p), with the substitution
  // t -> 1/t for x > 1 giving tau^{-1}(x) = pi_{p*,p}/2 - tau^{-1}(1/x).
  const double a = 1.0 / p;
  const double half = numerics::beta(a, a) / p;
  auto lower = [&](double v) {
    const double vp = std::pow(v, p);
    return numerics::incomplete_beta(vp / (1.0 + vp), 1.0 / (1.0 + vp), a, a) / p;
  };
  if (x <= 1.0) return lower(x);
  if (std::isinf(x)) return half;
  return half - lower(1.0 / x);
}

double d_cos_pq(const Params& params, double x, Path path) {
  check_finite(x, "d_cos_pq");
  const Reduced r = reduce(params, x);
  if (params.p() > 2.0 && r.pole_dist < kPoleGuard * params.pi()) {
    throw PoleError("d_cos_pq: derivative is unbounded at x = " + std::to_string(x));
  }
  const Fundamental f = evaluate_fundamental(params, r.y, path);
  const double sin_part = r.sin_sign * std::pow(f.sin, params.q() - 1.0);
  const double cos_part = params.p() == 2.0 ? 1.0 : std::pow(f.cos, 2.0 - params.p());
  return -(params.q() / params.p()) * sin_part * cos_part;
}

double d_flux_pq(const Params& params, double x, Path path) {
  const double s = sin_pq(params, x, path);
  return -(params.q() / params.p_star()) * signed_pow(s, params.q() - 1.0);
}

}  // namespace gtrig

#pragma once

/**
 * @file trig.hpp
 * @brief Generalized trigonometric functions with two parameters.
 *
 * For p, q > 1 the generalized sine is the inverse of
 *
 *     arcsin_pq(x) = int_0^x (1 - t^q)^{-1/p} dt,   0 <= x <= 1,
 *
 * on [0, pi_pq / 2], reflected about pi_pq / 2 and continued as an odd
 * 2 pi_pq-periodic function. The cosine is its derivative and satisfies
 * |cos|^p + |sin|^q = 1.
 *
 * Forward evaluation reduces the argument to [0, pi_pq / 2]. On the lower part
 * of that interval the sine is obtained by inverting arcsin_pq; on the upper
 * part the quantity cos^{p-1} is obtained instead, through
 *
 *     cos_pq(x)^{p-1} = sin_{q*,p*}((q / p*) (pi_pq / 2 - x)),
 *
 * so that the cosine keeps full relative precision near its zeros.
 */

#include <gtrig/numerics.hpp>

#include <memory>

namespace gtrig {

/// Selects how the defining integral is evaluated.
enum class Path {
  /// Closed form through the regularized incomplete beta function.
  kIncompleteBeta,
  /// Tanh-sinh quadrature of the integral itself. Slower; used as an
  /// independent cross-check.
  kQuadrature,
};

namespace detail {
struct InverseCache;
}

/// The exponent pair (p, q), both in (1, inf). Immutable; copies share the
/// lazily built inversion cache, so a Params is cheap to pass by value and
/// safe to share across threads.
class Params {
 public:
  /// Throws DomainError unless p > 1 and q > 1 are finite.
  Params(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }
  /// Conjugate exponent p / (p - 1).
  double p_star() const { return p_star_; }
  /// Conjugate exponent q / (q - 1).
  double q_star() const { return q_star_; }
  /// pi_pq, from the beta-function formula.
  double pi() const { return pi_; }

  const detail::InverseCache& cache() const;

 private:
  double p_;
  double q_;
  double p_star_;
  double q_star_;
  double pi_;
  std::shared_ptr<detail::InverseCache> cache_;
};

/// Conjugate exponent p / (p - 1).
double conjugate(double p);

/// pi_pq = (2 / q) B(1 / p*, 1 / q).
double pi_pq(const Params& params);
/// 2 arcsin_pq(1) by quadrature of the defining integral.
numerics::EvalResult pi_pq_quadrature(const Params& params, double abs_tol = 1e-13);

/// arcsin_pq(x) for x in [0, 1]; DomainError otherwise.
double arcsin_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

/// Odd extension of arcsin_pq to [-1, 1].
double arcsin_pq_odd(const Params& params, double x, Path path = Path::kIncompleteBeta);

struct SinCos {
  double sin;
  double cos;
  /// Magnitude of the last Newton correction of the inversion.
  double err_est;
};

/// sin_pq and cos_pq at the same point. Any finite x.
SinCos sincos_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

/// sincos_pq at t pi_pq, reduced in t so that integer and half-integer t
/// give exact zeros of sin and cos.
SinCos sincos_pq_pi(const Params& params, double t, Path path = Path::kIncompleteBeta);

double sin_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);
double cos_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

/// |cos|^{p-2} cos, the p-Laplacian flux of sin_pq. Keeps relative precision
/// near the zeros of cos.
double flux_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

/// Arguments within this fraction of pi_pq of a pole are rejected.
inline constexpr double kPoleGuard = 1e-8;

/// tau_pq(x) = sin / (|cos|^{p/q - 1} cos). With this power tau_{p*,p} is
/// sin / (|cos|^{p*-2} cos), equal to 1 at pi_{p*,p} / 4 and inverted by
/// arctau_star. PoleError within kPoleGuard * pi_pq of an odd multiple of
/// pi_pq / 2.
double tau_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

/// Inverse of tau_{p*,p} on [0, inf): int_0^x (1 + t^p)^{-2/p} dt.
double arctau_star(double p, double x);

/// Derivative of cos_pq, -(q/p) |sin|^{q-2} sin |cos|^{2-p}. For p > 2 it is
/// unbounded at the zeros of cos; PoleError within the pole guard there.
double d_cos_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

/// Derivative of the flux |cos|^{p-2} cos: -(q/p*) |sin|^{q-2} sin. Bounded
/// everywhere.
double d_flux_pq(const Params& params, double x, Path path = Path::kIncompleteBeta);

}  // namespace gtrig

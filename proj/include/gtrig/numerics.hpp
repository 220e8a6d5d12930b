#pragma once

/**
 * @file numerics.hpp
 * @brief Shared kernels: tanh-sinh quadrature, bracketed root finding,
 *        series summation with acceleration, and gamma/beta functions.
 *
 * Everything here is a pure function of its arguments and works in binary64.
 * Error estimates are heuristic, not rigorous enclosures.
 */

#include <cstdint>
#include <functional>

namespace gtrig::numerics {

/// A computed value together with an estimate of its absolute error.
struct EvalResult {
  double value = 0.0;
  double err_est = 0.0;
  /// Terms summed, quadrature nodes evaluated, or iterations used.
  std::int64_t work = 0;
  /// Set when the input sits so close to a singularity that err_est may be optimistic.
  bool near_singular = false;
};

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// A quadrature node. Near an endpoint `x` itself carries no information about
/// the distance to that endpoint, so both distances are supplied exactly.
struct Abscissa {
  double x;
  double from_left;  ///< x - a, accurate to full relative precision
  double to_right;   ///< b - x, accurate to full relative precision
};

using Integrand = std::function<double(const Abscissa&)>;

struct QuadratureSpec {
  Integrand integrand;
  double a = 0.0;
  double b = 1.0;
  /// Flags an integrable algebraic (or logarithmic) singularity at the endpoint.
  /// Flagged sides get the full double-exponential tail; unflagged sides are
  /// truncated where the weights fall below 1e-22.
  bool singular_left = false;
  bool singular_right = false;
  double abs_tol = 1e-12;
  int max_level = 10;

  /// Wraps a plain f(x) integrand.
  static QuadratureSpec of(std::function<double(double)> f, double a, double b,
                           double abs_tol = 1e-12);
};

/// Tanh-sinh quadrature with level halving. Throws InvalidInterval if a >= b and
/// NonConvergence if successive levels never agree to abs_tol.
EvalResult integrate(const QuadratureSpec& spec);

/// As integrate(), but reports the best estimate instead of throwing when the
/// level budget runs out. `converged` receives whether the tolerance was met.
EvalResult integrate_best_effort(const QuadratureSpec& spec, bool* converged = nullptr);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Brent-Dekker root finder. Requires g(lo)*g(hi) <= 0 (NoBracket otherwise).
/// The returned x lies in [lo, hi] and the final bracket is narrower than tol.
double find_root(const std::function<double(double)>& g, double lo, double hi,
                 double tol = 1e-13, int max_iter = 200);

/// Safeguarded Newton: Newton steps from x0, falling back to bisection whenever
/// a step leaves the current bracket or stalls. `g_dg` returns {g, g'}.
struct ValueAndSlope {
  double value;
  double slope;
};
double find_root_newton(const std::function<ValueAndSlope(double)>& g_dg, double lo,
                        double hi, double x0, double tol = 1e-13, int max_iter = 100);

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

enum class Acceleration {
  /// Euler-van Wijngaarden transform of the tail after a direct partial sum.
  kEuler,
  /// Cohen, Rodriguez Villegas and Zagier, algorithm 1.
  kCohenVillegasZagier,
};

/// Sums an alternating series sum_{n>=0} term(n); `term` includes the sign.
/// Throws NonConvergence when successive accelerated estimates never agree to tol.
EvalResult sum_alternating(const std::function<double(std::int64_t)>& term, double tol,
                           std::int64_t max_terms,
                           Acceleration method = Acceleration::kEuler);

/// Sums a positive series whose tail behaves like sum_j c_j N^{-(tail_exponent + j)}.
/// Partial sums at N, 2N, 4N, ... are Richardson-extrapolated in 1/N.
EvalResult sum_positive(const std::function<double(std::int64_t)>& term,
                        double tail_exponent, double tol, std::int64_t max_terms);

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

/// log Gamma(x) for x > 0 via a Lanczos approximation (g = 7, nine terms).
double ln_gamma(double x);
/// Gamma(x) for x > 0.
double gamma(double x);
/// Complete beta function. Symmetric in (a, b) bit for bit.
double beta(double a, double b);
double ln_beta(double a, double b);
/// Rising factorial a(a+1)...(a+n-1); pochhammer(a, 0) == 1.
double pochhammer(double a, std::int64_t n);

/// Non-regularized incomplete beta B(x; a, b) = int_0^x t^{a-1}(1-t)^{b-1} dt.
/// `one_minus_x` must equal 1 - x; passing it separately keeps precision when x
/// is close to 1.
double incomplete_beta(double x, double one_minus_x, double a, double b);
double incomplete_beta(double x, double a, double b);

}  // namespace gtrig::numerics

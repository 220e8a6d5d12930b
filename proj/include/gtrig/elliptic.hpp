#pragma once

/**
 * @file elliptic.hpp
 * @brief Generalized amplitude, complete elliptic integral of the first kind,
 *        Jacobi-type sn, and the q-hyperbolic tangent.
 *
 *     am_inv(x, k) = int_0^x (1 - k^q |sin_pq t|^q)^{-1/p*} dt
 *     K_pq(k)      = am_inv(pi_pq / 2, k)
 *     sn(x, k)     = sin_pq(am(x, k))
 *     artanh_q(x)  = int_0^x dt / (1 - |t|^q)
 */

#include <gtrig/numerics.hpp>
#include <gtrig/trig.hpp>

namespace gtrig {

/// (p, q, k) with 0 <= k < 1. K is computed once at construction.
class EllipticParams {
 public:
  /// DomainError unless 0 <= k < 1.
  EllipticParams(const Params& params, double k);

  const Params& params() const { return params_; }
  double k() const { return k_; }
  /// K_pq(k). near_singular is set when k >= 1 - 1e-6.
  const numerics::EvalResult& K() const { return K_; }

  // Pieces of am_inv, used by the solvers below.
  /// int_0^s dt / ((1 - t^q)^{1/p} (1 - k^q t^q)^{1/p*}), s <= 2^{-1/q}.
  double lower(double s) const;
  /// int_x^{pi_pq/2} of the am_inv integrand, written in w = cos^{p-1} x:
  /// (p*/q) int_0^w (1 - t^{p*})^{-1/q*} (1 - k^q + k^q t^{p*})^{-1/p*} dt.
  double upper(double w) const;
  /// lower(2^{-1/q}); am_inv at the branch split.
  double lower_total() const { return lower_total_; }
  /// Parameters (q*, p*) of the complementary branch.
  const Params& complement() const { return complement_; }

 private:
  Params params_;
  Params complement_;
  double k_;
  double kq_;
  double lower_total_ = 0.0;
  numerics::EvalResult K_;
};

/// Odd, increasing; am_inv(x + pi_pq) = am_inv(x) + 2K.
double am_inv(const EllipticParams& ep, double x);

numerics::EvalResult K_pq(const EllipticParams& ep);
/// DomainError if k is outside [0, 1).
numerics::EvalResult K_pq(const Params& params, double k);

/// Inverse of am_inv on the whole line; am(x + 2K) = am(x) + pi_pq.
double am(const EllipticParams& ep, double x);

/// sin_pq(am(x)); odd and 4K-periodic.
double sn(const EllipticParams& ep, double x);

/// Inverse q-hyperbolic tangent; DomainError unless |x| < 1.
double artanh_q(double q, double x);

/// Odd, increasing onto (-1, 1). Returns exactly +-1 once 1 - |result| is
/// below binary64 resolution.
double tanh_q(double q, double x);

}  // namespace gtrig

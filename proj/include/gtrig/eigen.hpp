#pragma once

/**
 * @file eigen.hpp
 * @brief Eigenpairs of the one-dimensional p-Laplacian
 *        -(|u'|^{p-2}u')' = λ |u|^{q-2} u on (0, L)
 *        under Dirichlet or Neumann conditions, and the product theorem:
 *        u v is again an eigenfunction, of the (2, p*) problem.
 */

#include <gtrig/trig.hpp>

#include <json.hpp>

#include <cmath>
#include <string>

namespace gtrig {

enum class EigenKind { kDirichlet, kNeumann };

std::string eigen_kind_name(EigenKind kind);

struct EigenPair {
  EigenKind kind = EigenKind::kDirichlet;
  double p = 2.0;
  double q = 2.0;
  int n = 1;
  double L = 1.0;
  double amplitude = 1.0;  ///< R (Dirichlet) or Q (Neumann)
  double lambda = 0.0;     ///< λ (Dirichlet) or μ (Neumann)
  /// (p, q) with its inversion cache; kept in step with p and q by make_eigenpair.
  Params params{2.0, 2.0};

  /// n π_{p,q} / L
  double frequency() const;

  /// u = R sin_{p,q}(ax), or v = Q |cos_{p,p*}(ax)|^{p-2} cos_{p,p*}(ax).
  double value(double x) const;
  double derivative(double x) const;
  /// |u'|^{p-2} u'
  double flux(double x) const;
  /// (|u'|^{p-2} u')' by the chain rule, not by differencing.
  double flux_derivative(double x) const;
  /// -(|u'|^{p-2}u')' - λ |u|^{q-2} u
  double residual(double x) const;
  /// Interior zeros expected: n - 1 (Dirichlet) or n (Neumann).
  int expected_zeros() const;
};

/// λ = (q/p*) (nπ_{p,q}/L)^p |R|^{p-q} for Dirichlet, μ = (nπ_{p,p*}/L)^p
/// |Q|^{p-p*} for Neumann. DomainError on n < 1, L <= 0, zero amplitude or a
/// Neumann q other than p*.
EigenPair make_eigenpair(EigenKind kind, double p, double q, int n, double L, double amplitude);

struct EigenCheck {
  double max_residual = 0.0;       ///< over interior grid points
  double boundary_residual = 0.0;  ///< |u| (Dirichlet) or finite-difference |v'| (Neumann) at 0, L
  int zero_count = 0;
  int expected_zeros = 0;
};

/// Residual, boundary conditions and sign changes on `samples` equally spaced
/// points of [0, L].
EigenCheck check_eigenpair(const EigenPair& pair, int samples = 2001);

struct ProductCheck {
  double lambda = 0.0;
  double mu = 0.0;
  double xi = 0.0;               ///< 2 p* (λ μ)^{1/p}
  double residual_closed = 0.0;  ///< |u v - 2^{-2/p*} R Q sin_{2,p*}(2nπ_{2,p*}x/L)|
  double residual_pde = 0.0;     ///< |-w'' - ξ |w|^{p*-2} w|
  double max_residual = 0.0;
  int zero_count = 0;            ///< interior zeros of w, 2n - 1 expected
};

/// u from the Dirichlet (p, p*) problem, v from the Neumann one, both with
/// mode n on (0, L). DomainError as make_eigenpair.
ProductCheck product_eigen_check(double p, int n, double L, double R, double Q,
                                 int sample_count = 2001);

/// Sign changes of f at the interior points, ignoring |f| <= dead_band.
template <class F>
int count_sign_changes(F&& f, double a, double b, int samples, double dead_band = 1e-12) {
  int changes = 0;
  int last = 0;
  for (int i = 1; i + 1 < samples; ++i) {
    const double v = f(a + (b - a) * i / (samples - 1));
    if (std::abs(v) <= dead_band) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

nlohmann::json to_json(const EigenPair& pair, const EigenCheck& check);
nlohmann::json to_json(const ProductCheck& check);

}  // namespace gtrig

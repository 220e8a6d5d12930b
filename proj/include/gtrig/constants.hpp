#pragma once

/**
 * @file constants.hpp
 * @brief Series and integral representations of pi_{p*,p}, the Catalan-type
 *        constants G_p, the hypergeometric constant C_p, and series for the
 *        lemniscate constant.
 *
 *     pi_{p*,p} / 4 = sum (2/p)_n / n! (-1)^n / (pn + 1)
 *     G_p           = sum (2/p)_n / n! (-1)^n / (pn + 1)^2
 *     C_p           = sum (1/2)_n (1/p)_n / ((1/2 + 1/p)_n n!) / (pn + 1)
 *     pi_{p*,p} / 4 = G_p / C_p
 */

#include <gtrig/numerics.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace gtrig::constants {

enum class Family {
  kGlPq,      ///< pi_{p*,p} / 4 by the alternating Pochhammer series
  kGp,        ///< G_p
  kCp,        ///< C_p
  kLpi1,      ///< varpi / (2 sqrt 2), alternating
  kLpi2,      ///< varpi / 2, positive terms
  kLpiEven,   ///< (2 + sqrt 2) varpi / 8, even-indexed terms of kLpi2
  kLpiOdd,    ///< (2 - sqrt 2) varpi / 8, odd-indexed terms of kLpi2
};

/// Name used in tables and on the command line: GL_PQ, G_P, C_P, LPI1, ...
std::string family_name(Family family);
std::optional<Family> parse_family(const std::string& name);
/// Whether the family depends on p (the lemniscate ones are fixed at p = 4).
bool family_takes_p(Family family);

inline constexpr std::int64_t kDefaultMaxTerms = 1'000'000;

struct SeriesSpec {
  Family family = Family::kGlPq;
  double p = 2.0;
  double tol = 1e-12;
  std::int64_t max_terms = kDefaultMaxTerms;
};

/// n-th term of the family's series, sign included; term(0) = 1.
double series_term(Family family, double p, std::int64_t n);

/// Sums the family's series. NonConvergence if tol is not reached within
/// max_terms; DomainError unless p > 1.
numerics::EvalResult evaluate(const SeriesSpec& spec);

numerics::EvalResult gl_series(double p, double tol = 1e-12,
                               std::int64_t max_terms = kDefaultMaxTerms);
numerics::EvalResult catalan_gp(double p, double tol = 1e-12,
                                std::int64_t max_terms = kDefaultMaxTerms);
numerics::EvalResult cp_series(double p, double tol = 1e-12,
                               std::int64_t max_terms = kDefaultMaxTerms);

struct CatalanIntegrals {
  /// 2^{-2/p} int_0^{pi_{2,p}/2} x / sin_{2,p} x dx
  numerics::EvalResult x_over_sin;
  /// 2^{-2/p} int_0^1 K_{2,p}(k) dk
  numerics::EvalResult k_integral;
};

/// Both integral forms of G_p, computed independently of each other and of
/// the series.
CatalanIntegrals catalan_gp_integral(double p);

/// G_p / C_p, which equals pi_{p*,p} / 4.
numerics::EvalResult pi_ratio(double p, double tol = 1e-12);

enum class Lemniscate { kLpi1, kLpi2, kEven, kOdd };

Family lemniscate_family(Lemniscate variant);
numerics::EvalResult lemniscate_series(Lemniscate variant, double tol = 1e-12);

}  // namespace gtrig::constants

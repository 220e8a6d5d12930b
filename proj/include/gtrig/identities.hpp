#pragma once

/**
 * @file identities.hpp
 * @brief Numerical checks of the multiple-angle, symmetry and product
 *        identities between the (2, p) and (p*, p) function families.
 *
 * Each check evaluates its two sides through different code paths (the
 * incomplete-beta inversion on one side, quadrature inversion on the other)
 * so that a shared bug cannot confirm itself. Residuals are absolute for
 * bounded quantities and relative for products of generalized pi values.
 */

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gtrig::identities {

enum class IdentityId {
  kMaSin,        ///< sin_{2,p}(2^{2/p} x) = 2^{2/p} sin_{p*,p} x |cos|^{p*-2} cos
  kMaCos,        ///< cos_{2,p}(2^{2/p} x) against its three right-hand sides
  kMaTau,        ///< tau_{2,p}(2^{2/p} x) = 2^{2/p} tau / (1 - |tau|^p)
  kPiProduct,    ///< product of pi_{p/(p-k),p} against n^{1-n/p} prod pi_{n/(n-k),p}
  kEgl,          ///< sin_{4/3,4}(2x) closed forms
  kLemMaf,       ///< sl(2x) = 2 sl sqrt(1 - sl^4) / (1 + sl^4)
  kPythagorean,  ///< |cos|^p + |sin|^q = 1 for (p*, p) and (2, p)
  kSymmetry,     ///< sin_{p*,p}(pi/2 - x) = cos^{p*-1} x and its mirror
  kKeyPi,        ///< pi_{2,p} 2^{-2/p} = pi_{p*,p} / 2
  kCubicEgl,     ///< sl(2 sqrt2 x) = sqrt2 s (1 - s^4)^{1/4}, s = sin_{4/3,4}(2x)
};

std::string identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(const std::string& name);
const std::vector<IdentityId>& all_identities();
double default_tolerance(IdentityId id);

double check_ma_sin(double p, double x);
/// Largest pairwise difference among the left side and the three right sides.
double check_ma_cos(double p, double x);
/// Relative residual |L - R| / max(1, |L|). PoleError near either side's poles.
double check_ma_tau(double p, double x);
/// Relative residual, in log space. DomainError unless 2 <= n < p + 1.
double check_pi_product(double p, int n);
/// Max residual of the closed form, its lemniscate rewrite, and eq. (cubic).
/// DomainError unless 0 <= x < pi_{4/3,4} / 4.
double check_egl(double x);
/// DomainError unless 0 <= x <= varpi / 2.
double check_lem_maf(double x);
double check_pythagorean(double p, double x);
/// x in [0, pi_{p*,p} / 2].
double check_symmetry(double p, double x);
/// Relative residual.
double check_key_pi(double p);
/// The cubic relation and the squared closed form 2 s^4 = 8 S^4 / (1 + S^4)^2.
double check_cubic_egl(double x);

struct GridPoint {
  double p = 0.0;  ///< 0 for identities with fixed parameters
  int n = 0;       ///< only for PI_PRODUCT
  double x = 0.0;  ///< 0 for identities without an argument
};

struct IdentityReport {
  IdentityId id;
  std::vector<GridPoint> grid;
  std::vector<double> residuals;  ///< per grid point; +inf where it threw
  std::vector<std::string> errors;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct GridSpec {
  std::vector<IdentityId> ids;
  /// Empty selects each identity's default parameter set.
  std::vector<double> p_values;
  int x_count = 64;
  /// Overrides every identity's default tolerance.
  std::optional<double> tol;
  bool parallel = true;
};

/// All identities on their default grids.
GridSpec default_grid();

/// The grid an identity is checked on under `spec`.
std::vector<GridPoint> make_grid(IdentityId id, const GridSpec& spec);

/// One report per requested identity, in request order. Per-point failures
/// are recorded in the report; the suite itself does not throw.
std::vector<IdentityReport> run_suite(const GridSpec& spec);

/// identity_id, grid_size, max_residual, tol, pass, errors.
nlohmann::json to_json(const IdentityReport& report);

}  // namespace gtrig::identities

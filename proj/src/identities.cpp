#include <gtrig/errors.hpp>
#include <gtrig/identities.hpp>
#include <gtrig/numerics.hpp>
#include <gtrig/trig.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <utility>

namespace gtrig::identities {
namespace {

constexpr Path kBeta = Path::kIncompleteBeta;
constexpr Path kQuad = Path::kQuadrature;

constexpr std::array<std::pair<IdentityId, const char*>, 10> kNames = {{
    {IdentityId::kMaSin, "MA_SIN"},
    {IdentityId::kMaCos, "MA_COS"},
    {IdentityId::kMaTau, "MA_TAU"},
    {IdentityId::kPiProduct, "PI_PRODUCT"},
    {IdentityId::kEgl, "EGL"},
    {IdentityId::kLemMaf, "LEM_MAF"},
    {IdentityId::kPythagorean, "PYTHAGOREAN"},
    {IdentityId::kSymmetry, "SYMMETRY"},
    {IdentityId::kKeyPi, "KEY_PI"},
    {IdentityId::kCubicEgl, "CUBIC_EGL"},
}};

const std::vector<double> kDefaultP = {1.5, 2.0, 2.5, 3.0, 4.0, 7.5};
const std::vector<double> kProductP = {3.5, 5.0, 9.0};

Params star(double p) { return Params(conjugate(p), p); }

double two_pow(double p) { return std::pow(2.0, 2.0 / p); }

const Params& egl_params() {
  static const Params params(4.0 / 3.0, 4.0);
  return params;
}

const Params& lemniscate_params() {
  static const Params params(2.0, 4.0);
  return params;
}

double log_pi(double a, double b) {
  // pi_{a,b} = (2/b) B(1/a*, 1/b)
  return std::log(2.0 / b) + numerics::ln_beta(1.0 - 1.0 / a, 1.0 / b);
}

double relative(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

// Points of [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) return {lo};
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

// Cell midpoints of [lo, hi].
std::vector<double> midpoints(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / count);
  return out;
}

std::vector<double> key_pi_defaults() {
  // 20 values spread geometrically over (1.05, 50).
  std::vector<double> out;
  for (int i = 0; i < 20; ++i) out.push_back(1.05 * std::pow(50.0 / 1.05, (i + 0.5) / 20.0));
  return out;
}

double evaluate_point(IdentityId id, const GridPoint& g) {
  switch (id) {
    case IdentityId::kMaSin:
      return check_ma_sin(g.p, g.x);
    case IdentityId::kMaCos:
      return check_ma_cos(g.p, g.x);
    case IdentityId::kMaTau:
      return check_ma_tau(g.p, g.x);
    case IdentityId::kPiProduct:
      return check_pi_product(g.p, g.n);
    case IdentityId::kEgl:
      return check_egl(g.x);
    case IdentityId::kLemMaf:
      return check_lem_maf(g.x);
    case IdentityId::kPythagorean:
      return check_pythagorean(g.p, g.x);
    case IdentityId::kSymmetry:
      return check_symmetry(g.p, g.x);
    case IdentityId::kKeyPi:
      return check_key_pi(g.p);
    case IdentityId::kCubicEgl:
      return check_cubic_egl(g.x);
  }
  throw DomainError("unknown identity");
}

IdentityReport run_one(IdentityId id, const GridSpec& spec) {
  IdentityReport report{id, {}, {}, {}, 0.0, spec.tol.value_or(default_tolerance(id)), false};
  try {
    report.grid = make_grid(id, spec);
  } catch (const std::exception& e) {
    report.errors.push_back(std::string("grid: ") + e.what());
  }
  for (const GridPoint& g : report.grid) {
    double r;
    try {
      r = evaluate_point(id, g);
      if (!std::isfinite(r)) throw NonConvergence("non-finite residual");
    } catch (const std::exception& e) {
      char where[96];
      std::snprintf(where, sizeof where, "p=%.17g n=%d x=%.17g: ", g.p, g.n, g.x);
      report.errors.push_back(where + std::string(e.what()));
      r = std::numeric_limits<double>::infinity();
    }
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  if (report.grid.empty()) report.max_residual = std::numeric_limits<double>::infinity();
  report.pass = report.max_residual <= report.tol;
  return report;
}

}  // namespace

std::string identity_name(IdentityId id) {
  for (const auto& [i, name] : kNames) {
    if (i == id) return name;
  }
  return "?";
}

std::optional<IdentityId> parse_identity(const std::string& name) {
  for (const auto& [i, n] : kNames) {
    if (name == n) return i;
  }
  return std::nullopt;
}

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return ids;
}

double default_tolerance(IdentityId id) {
  switch (id) {
    case IdentityId::kPiProduct:
    case IdentityId::kKeyPi:
      return 1e-12;
    case IdentityId::kLemMaf:
      return 1e-10;
    default:
      return 1e-9;
  }
}

double check_ma_sin(double p, double x) {
  const Params two(2.0, p);
  const Params s = star(p);
  const double lhs = sin_pq(two, two_pow(p) * x, kBeta);
  const double rhs = two_pow(p) * sin_pq(s, x, kQuad) * flux_pq(s, x, kQuad);
  return std::abs(lhs - rhs);
}

double check_ma_cos(double p, double x) {
  const Params two(2.0, p);
  const Params s = star(p);
  const double lhs = cos_pq(two, two_pow(p) * x, kBeta);
  const SinCos sc = sincos_pq(s, x, kQuad);
  const double sp = std::pow(std::abs(sc.sin), p);
  const double cp = std::pow(std::abs(sc.cos), s.p());
  const std::array<double, 4> sides = {lhs, cp - sp, 1.0 - 2.0 * sp, 2.0 * cp - 1.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (std::size_t j = i + 1; j < sides.size(); ++j) {
      worst = std::max(worst, std::abs(sides[i] - sides[j]));
    }
  }
  return worst;
}

double check_ma_tau(double p, double x) {
  const Params two(2.0, p);
  const Params s = star(p);
  const double lhs = tau_pq(two, two_pow(p) * x, kBeta);
  const double t = tau_pq(s, x, kQuad);
  const double rhs = two_pow(p) * t / (1.0 - std::pow(std::abs(t), p));
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double check_pi_product(double p, int n) {
  if (!(p > 1.0) || n < 2 || !(n < p + 1.0)) {
    throw DomainError("check_pi_product: need 2 <= n < p + 1");
  }
  double lhs = 0.0;
  double rhs = (1.0 - n / p) * std::log(static_cast<double>(n));
  for (int k = 1; k < n; ++k) {
    lhs += log_pi(p / (p - k), p);
    rhs += log_pi(static_cast<double>(n) / (n - k), p);
  }
  // |e^{lhs - rhs} - 1|
  return std::abs(std::expm1(lhs - rhs));
}

double check_egl(double x) {
  const Params& e = egl_params();
  if (!(x >= 0.0 && x < e.pi() / 4)) {
    throw DomainError("check_egl: need 0 <= x < pi_{4/3,4} / 4");
  }
  const double lhs = sin_pq(e, 2.0 * x, kBeta);
  // 2 s c^{1/3} / sqrt(1 + 4 s^4 c^{4/3}); c^{1/3} is the flux for p = 4/3.
  const double s = sin_pq(e, x, kQuad);
  const double c13 = flux_pq(e, x, kQuad);
  const double s4 = s * s * s * s;
  const double c43 = c13 * c13 * c13 * c13;
  const double closed = 2.0 * s * c13 / std::sqrt(1.0 + 4.0 * s4 * c43);
  const double sl = sin_pq(lemniscate_params(), std::numbers::sqrt2 * x, kQuad);
  const double sl4 = sl * sl * sl * sl;
  const double rewrite = std::numbers::sqrt2 * sl / std::sqrt(1.0 + sl4);
  return std::max({std::abs(lhs - closed), std::abs(lhs - rewrite), check_cubic_egl(x)});
}

double check_cubic_egl(double x) {
  const Params& e = egl_params();
  if (!(x >= 0.0 && x < e.pi() / 4)) {
    throw DomainError("check_cubic_egl: need 0 <= x < pi_{4/3,4} / 4");
  }
  const double lhs = sin_pq(lemniscate_params(), 2.0 * std::numbers::sqrt2 * x, kBeta);
  // (1 - s^4)^{1/4} = cos^{1/3} on [0, pi/2], taken as the flux so it keeps
  // its digits where s is close to 1.
  const double s = sin_pq(e, 2.0 * x, kQuad);
  const double root = flux_pq(e, 2.0 * x, kQuad);
  const double cubic = std::abs(lhs - std::numbers::sqrt2 * s * root);
  const double big_s = sin_pq(lemniscate_params(), std::numbers::sqrt2 * x, kBeta);
  const double s4 = big_s * big_s * big_s * big_s;
  const double squared = std::abs(2.0 * s * s * s * s - 8.0 * s4 / ((1.0 + s4) * (1.0 + s4)));
  return std::max(cubic, squared);
}

double check_lem_maf(double x) {
  const Params& l = lemniscate_params();
  if (!(x >= 0.0 && x <= l.pi() / 2)) {
    throw DomainError("check_lem_maf: need 0 <= x <= varpi / 2");
  }
  const double lhs = sin_pq(l, 2.0 * x, kBeta);
  // sqrt(1 - sl^4) is cos_{2,4} on [0, varpi/2].
  const SinCos sc = sincos_pq(l, x, kQuad);
  const double s4 = std::pow(sc.sin, 4);
  return std::abs(lhs - 2.0 * sc.sin * sc.cos / (1.0 + s4));
}

double check_pythagorean(double p, double x) {
  double worst = 0.0;
  for (const Params& pq : {star(p), Params(2.0, p)}) {
    for (Path path : {kBeta, kQuad}) {
      const SinCos sc = sincos_pq(pq, x, path);
      const double r =
          std::pow(std::abs(sc.cos), pq.p()) + std::pow(std::abs(sc.sin), pq.q()) - 1.0;
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

double check_symmetry(double p, double x) {
  const Params s = star(p);
  const double half = s.pi() / 2;
  if (!(x >= 0.0 && x <= half)) {
    throw DomainError("check_symmetry: need 0 <= x <= pi_{p*,p} / 2");
  }
  const double e = s.p() - 1.0;
  const double first = std::abs(sin_pq(s, half - x, kBeta) - std::pow(cos_pq(s, x, kQuad), e));
  const double second = std::abs(std::pow(cos_pq(s, half - x, kBeta), e) - sin_pq(s, x, kQuad));
  return std::max(first, second);
}

double check_key_pi(double p) {
  const Params two(2.0, p);
  const Params s = star(p);
  const double lhs = two.pi() / two_pow(p);
  const double rhs = pi_pq_quadrature(s).value / 2.0;
  return relative(lhs, rhs);
}

GridSpec default_grid() {
  GridSpec spec;
  spec.ids = all_identities();
  return spec;
}

std::vector<GridPoint> make_grid(IdentityId id, const GridSpec& spec) {
  if (spec.x_count < 1) throw DomainError("grid: x_count must be positive");
  const int count = spec.x_count;
  std::vector<GridPoint> grid;
  const auto& p_values = spec.p_values;
  switch (id) {
    case IdentityId::kMaSin:
    case IdentityId::kMaCos:
    case IdentityId::kPythagorean:
      // Two full periods of the (p*, p) functions.
      for (double p : p_values.empty() ? kDefaultP : p_values) {
        const double period = star(p).pi();
        for (double x : linspace(-period, period, count)) grid.push_back({p, 0, x});
      }
      break;
    case IdentityId::kMaTau:
      // Midpoints of 4 pi / count cells stay at least pi / (2 count) away
      // from the odd multiples of pi / 4, where both sides have their poles.
      for (double p : p_values.empty() ? kDefaultP : p_values) {
        const double period = star(p).pi();
        for (double x : midpoints(-period, period, count)) grid.push_back({p, 0, x});
      }
      break;
    case IdentityId::kSymmetry:
      for (double p : p_values.empty() ? kDefaultP : p_values) {
        for (double x : linspace(0.0, star(p).pi() / 2, count)) grid.push_back({p, 0, x});
      }
      break;
    case IdentityId::kPiProduct:
      for (double p : p_values.empty() ? kProductP : p_values) {
        for (int n = 2; n < p + 1.0; ++n) grid.push_back({p, n, 0.0});
      }
      break;
    case IdentityId::kKeyPi:
      for (double p : p_values.empty() ? key_pi_defaults() : p_values) {
        grid.push_back({p, 0, 0.0});
      }
      break;
    case IdentityId::kEgl:
    case IdentityId::kCubicEgl: {
      // [0, pi/4) with the right end left out; both halves around pi/8 occur.
      const double quarter = egl_params().pi() / 4;
      for (int i = 0; i < count; ++i) grid.push_back({0.0, 0, quarter * i / count});
      break;
    }
    case IdentityId::kLemMaf:
      for (double x : linspace(0.0, lemniscate_params().pi() / 2, count)) {
        grid.push_back({0.0, 0, x});
      }
      break;
  }
  return grid;
}

std::vector<IdentityReport> run_suite(const GridSpec& spec) {
  std::vector<IdentityReport> reports;
  if (!spec.parallel) {
    for (IdentityId id : spec.ids) reports.push_back(run_one(id, spec));
    return reports;
  }
  std::vector<std::future<IdentityReport>> jobs;
  for (IdentityId id : spec.ids) {
    jobs.push_back(std::async(std::launch::async, run_one, id, std::cref(spec)));
  }
  for (auto& job : jobs) reports.push_back(job.get());
  return reports;
}

nlohmann::json to_json(const IdentityReport& report) {
  nlohmann::json j;
  j["identity_id"] = identity_name(report.id);
  j["grid_size"] = report.grid.size();
  // JSON has no infinity; a failed point shows up as null.
  if (std::isfinite(report.max_residual)) {
    j["max_residual"] = report.max_residual;
  } else {
    j["max_residual"] = nullptr;
  }
  j["tol"] = report.tol;
  j["pass"] = report.pass;
  j["errors"] = report.errors;
  return j;
}

}  // namespace gtrig::identities

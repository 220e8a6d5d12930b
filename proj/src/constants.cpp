#include <gtrig/constants.hpp>
#include <gtrig/elliptic.hpp>
#include <gtrig/errors.hpp>
#include <gtrig/trig.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gtrig::constants {
namespace {

using numerics::EvalResult;

constexpr std::array<std::pair<Family, const char*>, 7> kNames = {{
    {Family::kGlPq, "GL_PQ"},
    {Family::kGp, "G_P"},
    {Family::kCp, "C_P"},
    {Family::kLpi1, "LPI1"},
    {Family::kLpi2, "LPI2"},
    {Family::kLpiEven, "LPI_EVEN"},
    {Family::kLpiOdd, "LPI_ODD"},
}};

void require_p(double p, const char* who) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError(std::string(who) + ": need p > 1, got " + std::to_string(p));
  }
}

// Coefficients built by their ratios, extended on demand. The summation
// kernels ask for indices in increasing order, so this stays linear.
class Coefficients {
 public:
  using Ratio = double (*)(double p, std::int64_t n);  // c_{n+1} / c_n
  Coefficients(double p, Ratio ratio) : p_(p), ratio_(ratio), values_{1.0} {}

  double operator()(std::int64_t n) {
    while (static_cast<std::int64_t>(values_.size()) <= n) {
      const auto k = static_cast<std::int64_t>(values_.size()) - 1;
      values_.push_back(values_.back() * ratio_(p_, k));
    }
    return values_[static_cast<std::size_t>(n)];
  }

 private:
  double p_;
  Ratio ratio_;
  std::vector<double> values_;
};

// (2/p)_n / n!
double gl_ratio(double p, std::int64_t n) {
  const double nd = static_cast<double>(n);
  return (2.0 / p + nd) / (nd + 1.0);
}

// (1/2)_n (1/p)_n / ((1/2 + 1/p)_n n!)
double cp_ratio(double p, std::int64_t n) {
  const double nd = static_cast<double>(n);
  return (0.5 + nd) * (1.0 / p + nd) / ((0.5 + 1.0 / p + nd) * (nd + 1.0));
}

// (2n-1)!! / (2n)!! = (1/2)_n / n!
double half_ratio(double, std::int64_t n) {
  const double nd = static_cast<double>(n);
  return (0.5 + nd) / (nd + 1.0);
}

double alternate(std::int64_t n) { return n % 2 == 0 ? 1.0 : -1.0; }

// Index m of the lemniscate family mapped onto the index of the LPI2 series.
std::int64_t lemniscate_index(Family family, std::int64_t n) {
  switch (family) {
    case Family::kLpiEven:
      return 2 * n;
    case Family::kLpiOdd:
      return 2 * n + 1;
    default:
      return n;
  }
}

std::function<double(std::int64_t)> make_term(Family family, double p,
                                              std::shared_ptr<Coefficients> c) {
  switch (family) {
    case Family::kGlPq:
      return [c, p](std::int64_t n) {
        return alternate(n) * (*c)(n) / (p * static_cast<double>(n) + 1.0);
      };
    case Family::kGp:
      return [c, p](std::int64_t n) {
        const double d = p * static_cast<double>(n) + 1.0;
        return alternate(n) * (*c)(n) / (d * d);
      };
    case Family::kCp:
      return [c, p](std::int64_t n) {
        return (*c)(n) / (p * static_cast<double>(n) + 1.0);
      };
    case Family::kLpi1:
      return [c](std::int64_t n) {
        return alternate(n) * (*c)(n) / (4.0 * static_cast<double>(n) + 1.0);
      };
    case Family::kLpi2:
    case Family::kLpiEven:
    case Family::kLpiOdd:
      return [c, family](std::int64_t n) {
        const std::int64_t m = lemniscate_index(family, n);
        return (*c)(m) / (4.0 * static_cast<double>(m) + 1.0);
      };
  }
  throw DomainError("unknown series family");
}

std::shared_ptr<Coefficients> make_coefficients(Family family, double p) {
  switch (family) {
    case Family::kGlPq:
    case Family::kGp:
      return std::make_shared<Coefficients>(p, gl_ratio);
    case Family::kCp:
      return std::make_shared<Coefficients>(p, cp_ratio);
    default:
      return std::make_shared<Coefficients>(4.0, half_ratio);
  }
}

// Leading power of the tail sum_{n >= N} of the positive series: terms decay
// like n^{-3/2} for the double-factorial series and n^{-2} for C_p.
double tail_exponent(Family family) { return family == Family::kCp ? 1.0 : 0.5; }

}  // namespace

std::string family_name(Family family) {
  for (const auto& [f, name] : kNames) {
    if (f == family) return name;
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& name) {
  for (const auto& [f, n] : kNames) {
    if (name == n) return f;
  }
  return std::nullopt;
}

bool family_takes_p(Family family) {
  return family == Family::kGlPq || family == Family::kGp || family == Family::kCp;
}

double series_term(Family family, double p, std::int64_t n) {
  if (family_takes_p(family)) require_p(p, "series_term");
  if (n < 0) throw DomainError("series_term: n must be non-negative");
  return make_term(family, p, make_coefficients(family, p))(n);
}

EvalResult evaluate(const SeriesSpec& spec) {
  const bool takes_p = family_takes_p(spec.family);
  if (takes_p) require_p(spec.p, family_name(spec.family).c_str());
  if (!(spec.tol > 0.0) || spec.max_terms < 1) {
    throw DomainError("series: need tol > 0 and max_terms >= 1");
  }
  const double p = takes_p ? spec.p : 4.0;
  auto term = make_term(spec.family, p, make_coefficients(spec.family, p));
  switch (spec.family) {
    case Family::kGlPq:
    case Family::kGp:
    case Family::kLpi1:
      return numerics::sum_alternating(term, spec.tol, spec.max_terms);
    default: {
      // The odd/even split halves the number of LPI2 terms per index.
      std::int64_t budget = spec.max_terms;
      if (spec.family == Family::kLpiEven || spec.family == Family::kLpiOdd) budget /= 2;
      return numerics::sum_positive(term, tail_exponent(spec.family), spec.tol,
                                    std::max<std::int64_t>(budget, 1));
    }
  }
}

EvalResult gl_series(double p, double tol, std::int64_t max_terms) {
  return evaluate({Family::kGlPq, p, tol, max_terms});
}

EvalResult catalan_gp(double p, double tol, std::int64_t max_terms) {
  return evaluate({Family::kGp, p, tol, max_terms});
}

EvalResult cp_series(double p, double tol, std::int64_t max_terms) {
  return evaluate({Family::kCp, p, tol, max_terms});
}

CatalanIntegrals catalan_gp_integral(double p) {
  require_p(p, "catalan_gp_integral");
  const Params pq(2.0, p);
  const double scale = std::pow(2.0, -2.0 / p);
  CatalanIntegrals out;

  numerics::QuadratureSpec a;
  a.a = 0.0;
  a.b = pq.pi() / 2;
  a.abs_tol = 1e-13;
  a.max_level = 12;
  // x / sin_{2,p} x extends by 1 at 0; the nodes never touch the endpoint.
  a.integrand = [&pq](const numerics::Abscissa& t) { return t.x / sin_pq(pq, t.x); };
  out.x_over_sin = numerics::integrate(a);

  numerics::QuadratureSpec b;
  b.a = 0.0;
  b.b = 1.0;
  b.singular_right = true;  // K grows like log(1 / (1 - k))
  b.abs_tol = 1e-12;
  b.max_level = 10;
  const double k_cap = std::nextafter(1.0, 0.0);
  b.integrand = [&pq, k_cap](const numerics::Abscissa& t) {
    return EllipticParams(pq, std::min(t.x, k_cap)).K().value;
  };
  bool converged = false;
  out.k_integral = numerics::integrate_best_effort(b, &converged);
  if (!converged) {
    throw NonConvergence("catalan_gp_integral: K-integral did not settle");
  }
  for (EvalResult* r : {&out.x_over_sin, &out.k_integral}) {
    r->value *= scale;
    r->err_est *= scale;
  }
  return out;
}

EvalResult pi_ratio(double p, double tol) {
  const EvalResult g = catalan_gp(p, tol);
  const EvalResult c = cp_series(p, tol);
  EvalResult out;
  out.value = g.value / c.value;
  out.err_est = std::abs(out.value) * (g.err_est / std::abs(g.value) + c.err_est / c.value);
  out.work = g.work + c.work;
  return out;
}

Family lemniscate_family(Lemniscate variant) {
  switch (variant) {
    case Lemniscate::kLpi1:
      return Family::kLpi1;
    case Lemniscate::kLpi2:
      return Family::kLpi2;
    case Lemniscate::kEven:
      return Family::kLpiEven;
    case Lemniscate::kOdd:
      return Family::kLpiOdd;
  }
  throw DomainError("unknown lemniscate series");
}

EvalResult lemniscate_series(Lemniscate variant, double tol) {
  return evaluate({lemniscate_family(variant), 4.0, tol, kDefaultMaxTerms});
}

}  // namespace gtrig::constants

#include <gtrig/eigen.hpp>
#include <gtrig/errors.hpp>
#include <gtrig/trig.hpp>

#include <algorithm>
#include <cmath>

namespace gtrig {
namespace {

double signed_pow(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

void check_mode(int n, double L, double amplitude) {
  if (n < 1) throw DomainError("eigen: mode index n must be >= 1");
  if (!(L > 0.0 && std::isfinite(L))) throw DomainError("eigen: L must be positive");
  if (!(amplitude != 0.0 && std::isfinite(amplitude))) {
    throw DomainError("eigen: amplitude must be nonzero");
  }
}

}  // namespace

std::string eigen_kind_name(EigenKind kind) {
  return kind == EigenKind::kDirichlet ? "DIRICHLET" : "NEUMANN";
}

double EigenPair::frequency() const { return n * params.pi() / L; }

// Arguments go in as phases n x / L, in units of pi_pq, so the zeros at
// multiples of L / (2n) come out exact. The |u|^{q-2}u term is not Lipschitz
// at zeros for q < 2 and would amplify any rounding residue there.
double EigenPair::value(double x) const {
  const SinCos sc = sincos_pq_pi(params, n * x / L);
  return kind == EigenKind::kDirichlet ? amplitude * sc.sin
                                       : amplitude * signed_pow(sc.cos, p - 1.0);
}

double EigenPair::derivative(double x) const {
  const SinCos sc = sincos_pq_pi(params, n * x / L);
  const double a = frequency();
  return kind == EigenKind::kDirichlet
             ? amplitude * a * sc.cos
             : -amplitude * a * (q / conjugate(p)) * signed_pow(sc.sin, q - 1.0);
}

double EigenPair::flux(double x) const { return signed_pow(derivative(x), p - 1.0); }

double EigenPair::flux_derivative(double x) const {
  // Quadrature path here, beta path in value(), so residual() compares two
  // independent evaluations.
  const double a = frequency();
  const double ra = signed_pow(amplitude * a, p - 1.0);
  const SinCos sc = sincos_pq_pi(params, n * x / L, Path::kQuadrature);
  if (kind == EigenKind::kDirichlet) {
    // |u'|^{p-2}u' = |Ra|^{p-2} Ra |cos|^{p-2}cos, whose derivative is
    // -(q/p*) |sin|^{q-2} sin times a.
    return -ra * a * (q / conjugate(p)) * signed_pow(sc.sin, q - 1.0);
  }
  // v' = -Qa |sin|^{p*-2} sin, so |v'|^{p-2}v' = -|Qa|^{p-2} Qa sin(ax)
  // because (p*-1)(p-1) = 1; sin' = cos.
  return -ra * a * sc.cos;
}

double EigenPair::residual(double x) const {
  return -flux_derivative(x) - lambda * signed_pow(value(x), q - 1.0);
}

int EigenPair::expected_zeros() const { return kind == EigenKind::kDirichlet ? n - 1 : n; }

EigenPair make_eigenpair(EigenKind kind, double p, double q, int n, double L, double amplitude) {
  const Params pq(p, q);
  check_mode(n, L, amplitude);
  if (kind == EigenKind::kNeumann && std::abs(q - pq.p_star()) > 1e-12 * q) {
    throw DomainError("eigen: the Neumann pair needs q = p*");
  }
  EigenPair e{kind, p, q, n, L, amplitude, 0.0, pq};
  const double a = e.frequency();
  if (kind == EigenKind::kDirichlet) {
    e.lambda = q / pq.p_star() * std::pow(a, p) * std::pow(std::abs(amplitude), p - q);
  } else {
    e.q = pq.p_star();
    e.params = Params(p, e.q);
    e.lambda = std::pow(a, p) * std::pow(std::abs(amplitude), p - e.q);
  }
  return e;
}

EigenCheck check_eigenpair(const EigenPair& pair, int samples) {
  if (samples < 3) throw DomainError("eigen: need at least 3 samples");
  EigenCheck out;
  out.expected_zeros = pair.expected_zeros();
  for (int i = 1; i + 1 < samples; ++i) {
    const double x = pair.L * i / (samples - 1);
    out.max_residual = std::max(out.max_residual, std::abs(pair.residual(x)));
  }
  if (pair.kind == EigenKind::kDirichlet) {
    out.boundary_residual = std::max(std::abs(pair.value(0.0)), std::abs(pair.value(pair.L)));
  } else {
    const double h = 1e-6 * pair.L;
    auto fd = [&](double x) { return (pair.value(x + h) - pair.value(x - h)) / (2.0 * h); };
    out.boundary_residual = std::max(std::abs(fd(0.0)), std::abs(fd(pair.L)));
  }
  const double band = 1e-12 * std::max(1.0, std::abs(pair.amplitude));
  out.zero_count = count_sign_changes([&](double x) { return pair.value(x); }, 0.0, pair.L,
                                      samples, band);
  return out;
}

ProductCheck product_eigen_check(double p, int n, double L, double R, double Q, int sample_count) {
  if (sample_count < 3) throw DomainError("eigen: need at least 3 samples");
  const double ps = conjugate(p);
  const EigenPair u = make_eigenpair(EigenKind::kDirichlet, p, ps, n, L, R);
  const EigenPair v = make_eigenpair(EigenKind::kNeumann, p, ps, n, L, Q);
  const Params two(2.0, ps);

  ProductCheck out;
  out.lambda = u.lambda;
  out.mu = v.lambda;
  out.xi = 2.0 * ps * std::pow(u.lambda * v.lambda, 1.0 / p);

  const double amp = std::pow(2.0, -2.0 / ps) * R * Q;
  const double c = 2.0 * n * two.pi() / L;
  auto w = [&](double x) { return u.value(x) * v.value(x); };
  for (int i = 0; i < sample_count; ++i) {
    const double x = L * i / (sample_count - 1);
    const double wx = w(x);
    const SinCos sc = sincos_pq_pi(two, 2.0 * n * x / L, Path::kQuadrature);
    out.residual_closed = std::max(out.residual_closed, std::abs(wx - amp * sc.sin));
    // (cos_{2,p*})' = -(p*/2) |sin|^{p*-2} sin
    const double minus_w2 = amp * c * c * (ps / 2.0) * signed_pow(sc.sin, ps - 1.0);
    out.residual_pde = std::max(out.residual_pde, std::abs(minus_w2 - out.xi * signed_pow(wx, ps - 1.0)));
  }
  out.max_residual = std::max(out.residual_closed, out.residual_pde);
  const double band = 1e-12 * std::max(1.0, std::abs(amp));
  out.zero_count = count_sign_changes(w, 0.0, L, sample_count, band);
  return out;
}

nlohmann::json to_json(const EigenPair& pair, const EigenCheck& check) {
  return {{"kind", eigen_kind_name(pair.kind)},
          {"p", pair.p},
          {"q", pair.q},
          {"n", pair.n},
          {"L", pair.L},
          {"amplitude", pair.amplitude},
          {"eigenvalue", pair.lambda},
          {"max_residual", check.max_residual},
          {"boundary_residual", check.boundary_residual},
          {"zero_count", check.zero_count},
          {"expected_zeros", check.expected_zeros}};
}

nlohmann::json to_json(const ProductCheck& check) {
  return {{"lambda", check.lambda},
          {"mu", check.mu},
          {"xi", check.xi},
          {"residual_closed", check.residual_closed},
          {"residual_pde", check.residual_pde},
          {"max_residual", check.max_residual},
          {"zero_count", check.zero_count}};
}

}  // namespace gtrig

#include <gtrig/errors.hpp>
#include <gtrig/numerics.hpp>
#include <gtrig/trig.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

using namespace gtrig;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVarpi = 2.62205755429211981046;

Params conj_pair(double p) { return Params(conjugate(p), p); }

// Composite Simpson on n panels of the defining integrand; fine for x well below 1.
double arcsin_simpson(double p, double q, double x, int n = 20000) {
  auto f = [p, q](double t) { return std::pow(1.0 - std::pow(t, q), -1.0 / p); };
  const double h = x / n;
  double sum = f(0.0) + f(x);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

const std::vector<std::pair<double, double>> kPairs = {
    {2.0, 2.0}, {2.0, 4.0}, {4.0, 4.0}, {1.5, 3.0}, {3.0, 1.5}, {1.1, 9.0},
    {9.0, 1.1}, {4.0 / 3.0, 4.0}, {7.5, 7.5 / 6.5}, {1.25, 1.25}, {6.0, 2.5}};

}  // namespace

TEST(Params, Validation) {
  EXPECT_THROW(Params(1.0, 2.0), DomainError);
  EXPECT_THROW(Params(2.0, 0.5), DomainError);
  EXPECT_THROW(Params(2.0, std::nan("")), DomainError);
  const Params pq(3.0, 5.0);
  EXPECT_NEAR(pq.p_star() * (pq.p() - 1.0), pq.p(), 1e-15);
  EXPECT_NEAR(pq.q_star(), 1.25, 1e-15);
}

TEST(PiPq, Examples) {
  EXPECT_NEAR(pi_pq(Params(2, 2)), kPi, 1e-14);
  EXPECT_NEAR(pi_pq(Params(2, 4)), kVarpi, 1e-14);
  EXPECT_NEAR(pi_pq(Params(2, 4)), 2.6220, 5e-4);
  EXPECT_NEAR(pi_pq(Params(4, 4)), 0.5 * kPi / std::sin(kPi / 4), 1e-14);
}

TEST(PiPq, AtLeastTwoOnDiagonal) {
  for (double p : {1.01, 1.5, 2.0, 3.0, 10.0, 100.0}) EXPECT_GE(pi_pq(Params(p, p)), 2.0);
}

TEST(PiPq, QuadratureAgreesWithBeta) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(1.1, 10.0);
  for (int i = 0; i < 20; ++i) {
    const Params pq(d(rng), d(rng));
    const double oracle = std::exp(std::lgamma(1.0 / pq.p_star()) + std::lgamma(1.0 / pq.q()) -
                                   std::lgamma(1.0 / pq.p_star() + 1.0 / pq.q())) *
                          2.0 / pq.q();
    EXPECT_NEAR(pq.pi() / oracle, 1.0, 1e-12);
    EXPECT_NEAR(pi_pq_quadrature(pq).value, pq.pi(), 1e-11) << pq.p() << " " << pq.q();
  }
}

TEST(Arcsin, Examples) {
  const Params pq(2, 4);
  EXPECT_EQ(arcsin_pq(pq, 0.0), 0.0);
  EXPECT_NEAR(arcsin_pq(pq, 1.0), pq.pi() / 2, 1e-12);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const Params s = conj_pair(p);
    EXPECT_NEAR(arcsin_pq(s, std::pow(2.0, -1.0 / p)), s.pi() / 4, 1e-13);
  }
  numerics::QuadratureSpec spec;
  spec.integrand = [](const numerics::Abscissa& t) {
    return 1.0 / std::sqrt(1.0 - std::pow(t.x, 4));
  };
  spec.b = 0.6;
  spec.abs_tol = 1e-14;
  const double oracle = numerics::integrate(spec).value;
  EXPECT_NEAR(arcsin_pq(pq, 0.6), oracle, 1e-14);
  EXPECT_NEAR(arcsin_pq(pq, 0.6, Path::kQuadrature), oracle, 1e-14);
  EXPECT_NEAR(oracle, arcsin_simpson(2, 4, 0.6), 1e-12);
}

TEST(Arcsin, DomainErrors) {
  const Params pq(2, 3);
  EXPECT_THROW(arcsin_pq(pq, -0.1), DomainError);
  EXPECT_THROW(arcsin_pq(pq, 1.0 + 1e-12), DomainError);
  EXPECT_NEAR(arcsin_pq_odd(pq, -0.4), -arcsin_pq(pq, 0.4), 1e-16);
}

TEST(Arcsin, RootOfShiftedInverseMatchesTabulation) {
  // Bisection on a Simpson tabulation of the defining integral.
  double lo = 0.0;
  double hi = 0.99;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (arcsin_simpson(2, 4, mid, 4000) < 0.7 ? lo : hi) = mid;
  }
  const Params pq(2, 4);
  const double r = numerics::find_root([&](double x) { return arcsin_pq(pq, x) - 0.7; }, 0, 1);
  EXPECT_NEAR(r, 0.5 * (lo + hi), 1e-11);
  EXPECT_NEAR(sin_pq(pq, 0.7), r, 1e-12);
}

TEST(Sin, Examples) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    EXPECT_NEAR(sin_pq(pq, pq.pi() / 2), 1.0, 1e-15);
    EXPECT_EQ(sin_pq(pq, 0.0), 0.0);
  }
  EXPECT_NEAR(sin_pq(Params(2, 2), kPi / 6), 0.5, 1e-15);

  // sin_{4/3,4}(0.9): bracket on a dense table of arcsin, then Brent.
  const Params pq(4.0 / 3.0, 4.0);
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 1; i <= 1000; ++i) {
    const double x = i / 1000.0;
    if (arcsin_pq(pq, x, Path::kQuadrature) >= 0.9) {
      hi = x;
      lo = (i - 1) / 1000.0;
      break;
    }
  }
  const double oracle = numerics::find_root(
      [&](double x) { return arcsin_pq(pq, x, Path::kQuadrature) - 0.9; }, lo, hi, 1e-15);
  EXPECT_NEAR(sin_pq(pq, 0.9), oracle, 1e-13);
}

TEST(Cos, Examples) {
  EXPECT_EQ(cos_pq(Params(3, 5), 0.0), 1.0);
  for (double p : {1.5, 2.0, 3.0, 4.0, 7.5}) {
    const Params s = conj_pair(p);
    EXPECT_NEAR(cos_pq(s, s.pi() / 4), std::pow(2.0, -1.0 / s.p()), 1e-14);
  }
  const Params pq(2, 4);
  auto sine = [&](double x) { return sin_pq(pq, x); };
  EXPECT_NEAR(cos_pq(pq, 1.0), richardson_derivative(sine, 1.0, 1e-6), 1e-8);
  EXPECT_NEAR(cos_pq(pq, 1.0), richardson_derivative(sine, 1.0, 2e-3), 1e-11);
}

TEST(Cos, ZeroAtQuarterPeriodAndSignConvention) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    EXPECT_EQ(cos_pq(pq, pq.pi() / 2), 0.0);
    EXPECT_GT(cos_pq(pq, 0.4 * pq.pi()), 0.0);
    EXPECT_LT(cos_pq(pq, 0.6 * pq.pi()), 0.0);
    EXPECT_LT(cos_pq(pq, 1.4 * pq.pi()), 0.0);
    EXPECT_GT(cos_pq(pq, 1.6 * pq.pi()), 0.0);
    EXPECT_GT(cos_pq(pq, -0.4 * pq.pi()), 0.0);
  }
}

TEST(Tau, Examples) {
  const Params classical(2, 2);
  EXPECT_EQ(tau_pq(classical, 0.0), 0.0);
  EXPECT_NEAR(tau_pq(classical, kPi / 3), std::sqrt(3.0), 1e-14);
  for (double p : {1.5, 3.0, 4.0}) {
    const Params s = conj_pair(p);
    EXPECT_NEAR(tau_pq(s, s.pi() / 4), 1.0, 1e-13);
    EXPECT_NEAR(tau_pq(s, -0.3), -tau_pq(s, 0.3), 1e-16);
  }
}

TEST(Tau, PoleGuard) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    const double pole = pq.pi() / 2;
    EXPECT_THROW(tau_pq(pq, pole), PoleError);
    EXPECT_THROW(tau_pq(pq, pole + 0.5e-8 * pq.pi()), PoleError);
    EXPECT_THROW(tau_pq(pq, -3.0 * pole), PoleError);
    EXPECT_NO_THROW(tau_pq(pq, pole - 2e-8 * pq.pi()));
  }
}

TEST(ArctauStar, Examples) {
  EXPECT_EQ(arctau_star(3.0, 0.0), 0.0);
  EXPECT_NEAR(arctau_star(2.0, 1.0), kPi / 4, 4e-15);
  // pi_{4/3,4} / 4 = varpi / (2 sqrt 2)
  EXPECT_NEAR(arctau_star(4.0, 1.0), kVarpi / (2.0 * std::numbers::sqrt2), 1e-14);
  EXPECT_NEAR(arctau_star(2.0, 7.0), std::atan(7.0), 1e-14);
}

TEST(ArctauStar, InvertsTau) {
  for (double p : {1.5, 2.5, 4.0, 9.0}) {
    const Params s = conj_pair(p);
    for (double x = 0.0; x < 0.49 * s.pi(); x += 0.0371) {
      EXPECT_NEAR(arctau_star(p, tau_pq(s, x)), x, 1e-12) << p << " " << x;
    }
  }
}

TEST(DCos, Examples) {
  EXPECT_EQ(d_cos_pq(Params(3, 3), 0.0), 0.0);
  EXPECT_NEAR(d_cos_pq(Params(2, 2), kPi / 4), -std::sqrt(0.5), 1e-15);
  const Params pq(2, 4);
  auto cosine = [&](double x) { return cos_pq(pq, x); };
  EXPECT_NEAR(d_cos_pq(pq, 0.8), richardson_derivative(cosine, 0.8, 2e-3), 1e-10);
}

TEST(DCos, PoleGuardOnlyWhenPAboveTwo) {
  const Params steep(3, 2);
  EXPECT_THROW(d_cos_pq(steep, steep.pi() / 2), PoleError);
  const Params mild(1.5, 2);
  EXPECT_NO_THROW(d_cos_pq(mild, mild.pi() / 2));
  EXPECT_EQ(d_cos_pq(mild, mild.pi() / 2), 0.0);
}

TEST(DFlux, MatchesFiniteDifference) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    auto flux = [&](double x) { return flux_pq(pq, x); };
    // Finite differences only away from the crest, where the flux is not smooth.
    for (double x : {0.3, 1.0, 0.3 * pq.pi(), 0.7 * pq.pi(), -1.3}) {
      EXPECT_NEAR(d_flux_pq(pq, x), richardson_derivative(flux, x, 1e-3), 1e-7)
          << p << " " << q << " " << x;
    }
    EXPECT_NEAR(d_flux_pq(pq, pq.pi() / 2), -q / pq.p_star(), 1e-14);
  }
}

// Properties over many (p, q) and the whole line.

TEST(Property, Pythagorean) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    for (double x = -7.0; x <= 7.0; x += 0.0173) {
      const SinCos sc = sincos_pq(pq, x);
      const double r = std::pow(std::abs(sc.cos), p) + std::pow(std::abs(sc.sin), q) - 1.0;
      ASSERT_LE(std::abs(r), 1e-11) << p << " " << q << " " << x;
      ASSERT_LE(std::abs(sc.sin), 1.0);
    }
  }
}

// Near the crest cos behaves like (pi/2 - x)^{p*-1}; for small p that is flat
// enough that a 1e-10 round trip exceeds what binary64 can carry.
bool extreme(double p, double /*q*/) { return p < 1.3; }

TEST(Property, RoundTrip) {
  for (const auto& [p, q] : kPairs) {
    if (extreme(p, q)) continue;
    const Params pq(p, q);
    for (int i = 0; i <= 200; ++i) {
      const double x = pq.pi() / 2 * i / 200.0;
      ASSERT_NEAR(arcsin_pq(pq, sin_pq(pq, x)), x, 1e-10) << p << " " << q << " " << x;
    }
  }
}

// There, rounding sin to a double already moves x by about eps / cos.
TEST(Property, RoundTripIllConditioned) {
  for (const auto& [p, q] : kPairs) {
    if (!extreme(p, q)) continue;
    const Params pq(p, q);
    for (int i = 0; i <= 200; ++i) {
      const double x = pq.pi() / 2 * i / 200.0;
      const SinCos sc = sincos_pq(pq, x);
      const double limit = std::max(1e-10, 8.0 * 2.2e-16 / sc.cos);
      ASSERT_NEAR(arcsin_pq(pq, sc.sin), x, limit) << p << " " << q << " " << x;
    }
  }
}

TEST(Property, OddAndPeriodic) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    for (double x = -4.0; x <= 4.0; x += 0.0917) {
      ASSERT_NEAR(sin_pq(pq, -x), -sin_pq(pq, x), 1e-15);
      ASSERT_NEAR(sin_pq(pq, x + 2 * pq.pi()), sin_pq(pq, x), 1e-11);
      ASSERT_NEAR(cos_pq(pq, x + 2 * pq.pi()), cos_pq(pq, x), 1e-11);
      ASSERT_NEAR(sin_pq(pq, pq.pi() - x), sin_pq(pq, x), 1e-11);
    }
  }
}

TEST(Property, Symmetry) {
  for (double p : {1.2, 1.5, 2.0, 3.0, 4.0, 7.5}) {
    const Params s = conj_pair(p);
    for (int i = 0; i <= 100; ++i) {
      const double x = s.pi() / 2 * i / 100.0;
      const double lhs = sin_pq(s, s.pi() / 2 - x);
      const double rhs = std::pow(cos_pq(s, x), s.p() - 1.0);
      ASSERT_NEAR(lhs, rhs, 1e-10) << p << " " << x;
      ASSERT_NEAR(flux_pq(s, x), rhs, 1e-12);
    }
  }
}

TEST(Property, DerivativeConvergesAtSecondOrder) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    const double x = 0.3 * pq.pi();
    const double exact = cos_pq(pq, x);
    auto err = [&](double h) {
      return std::abs((sin_pq(pq, x + h) - sin_pq(pq, x - h)) / (2 * h) - exact);
    };
    const double order = std::log2(err(0.02) / err(0.01));
    EXPECT_NEAR(order, 2.0, 0.1) << p << " " << q;
  }
}

TEST(Property, BothPathsAgree) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    for (double x = -3.0; x <= 3.0; x += 0.377) {
      const SinCos a = sincos_pq(pq, x);
      const SinCos b = sincos_pq(pq, x, Path::kQuadrature);
      ASSERT_NEAR(a.sin, b.sin, 1e-12);
      ASSERT_NEAR(a.cos, b.cos, 1e-12);
    }
  }
}

TEST(Property, ClassicalDegeneration) {
  const Params c(2, 2);
  for (double x = -10.0; x <= 10.0; x += 0.0123) {
    ASSERT_NEAR(sin_pq(c, x), std::sin(x), 1e-12) << x;
    ASSERT_NEAR(cos_pq(c, x), std::cos(x), 1e-12) << x;
    if (std::abs(std::cos(x)) > 1e-3) {
      ASSERT_NEAR(tau_pq(c, x), std::tan(x), 1e-12 * std::max(1.0, std::pow(std::tan(x), 2)))
          << x;
    }
  }
}

TEST(Property, SharedParamsAcrossThreadsIsDeterministic) {
  const Params pq(3.3, 1.7);
  std::vector<double> serial;
  for (int i = 0; i < 64; ++i) serial.push_back(sin_pq(Params(3.3, 1.7), 0.1 * i));
  std::vector<double> parallel(64);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < 64; i += 4) parallel[i] = sin_pq(pq, 0.1 * i);
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(serial, parallel);
}

TEST(Sin, TinyArguments) {
  // Inverting arcsin s = s + a s^{q+1} + c s^{2q+1} + ... gives
  // sin x = x - a x^{q+1} + (a^2 (q+1) - c) x^{2q+1} + O(x^{3q+1}).
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    const double a = 1 / (p * (q + 1));
    const double c = (1 / p) * (1 / p + 1) / (2 * (2 * q + 1));
    for (double x : {1e-300, 1e-100, 1e-20, 1e-8, 1e-4}) {
      const double series = x - a * std::pow(x, q + 1) + (a * a * (q + 1) - c) * std::pow(x, 2 * q + 1);
      EXPECT_NEAR(sin_pq(pq, x) / series, 1.0, 4e-15) << p << " " << q << " " << x;
      EXPECT_NEAR(sin_pq(pq, -x) / series, -1.0, 4e-15);
    }
  }
}

TEST(SinCosPi, MatchesPlainArgument) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    for (double t : {-3.7, -1.25, 0.1, 0.49, 0.77, 1.3, 5.6}) {
      const SinCos a = sincos_pq_pi(pq, t);
      const SinCos b = sincos_pq(pq, t * pq.pi());
      EXPECT_NEAR(a.sin, b.sin, 1e-13) << p << " " << q << " " << t;
      EXPECT_NEAR(a.cos, b.cos, 1e-12) << p << " " << q << " " << t;
    }
  }
}

TEST(SinCosPi, ExactAtHalfIntegers) {
  for (const auto& [p, q] : kPairs) {
    const Params pq(p, q);
    for (int m = -8; m <= 8; ++m) {
      const SinCos at = sincos_pq_pi(pq, 0.5 * m);
      if (m % 2 == 0) {
        EXPECT_EQ(at.sin, 0.0);
        EXPECT_EQ(std::abs(at.cos), 1.0);
      } else {
        EXPECT_EQ(at.cos, 0.0);
        EXPECT_EQ(std::abs(at.sin), 1.0);
      }
    }
    EXPECT_EQ(sincos_pq_pi(pq, 0.5).sin, 1.0);
    EXPECT_EQ(sincos_pq_pi(pq, 1.5).sin, -1.0);
    EXPECT_EQ(sincos_pq_pi(pq, 1.0).cos, -1.0);
  }
  EXPECT_THROW(sincos_pq_pi(Params(2, 2), NAN), DomainError);
}

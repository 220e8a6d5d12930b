#include <gtrig/constants.hpp>
#include <gtrig/errors.hpp>
#include <gtrig/trig.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace gtrig;
using namespace gtrig::constants;
using numerics::EvalResult;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kVarpi = 2.62205755429211981046;
constexpr double kCatalan = 0.91596559417721901505;

// pi_{p*,p} from the beta function via std::lgamma.
double pi_star_oracle(double p) {
  const double a = 1.0 / p;
  return 2.0 / p * std::exp(2 * std::lgamma(a) - std::lgamma(2 * a));
}

}  // namespace

TEST(Names, RoundTrip) {
  for (Family f : {Family::kGlPq, Family::kGp, Family::kCp, Family::kLpi1, Family::kLpi2,
                   Family::kLpiEven, Family::kLpiOdd}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_FALSE(parse_family("nope").has_value());
  EXPECT_EQ(family_name(Family::kGp), "G_P");
}

TEST(GlSeries, Examples) {
  EXPECT_NEAR(gl_series(2.0).value, kPi / 4, 1e-14);
  EXPECT_NEAR(gl_series(4.0).value, kVarpi / (2 * kSqrt2), 1e-14);
  EXPECT_NEAR(gl_series(3.0).value, pi_star_oracle(3.0) / 4, 1e-14);
}

TEST(GlSeries, MatchesPiStar) {
  for (double p : {1.5, 2.0, 3.0, 4.0, 6.0, 1.05, 25.0}) {
    const EvalResult r = gl_series(p);
    EXPECT_NEAR(4 * r.value, pi_pq(Params(conjugate(p), p)), 1e-8) << p;
    EXPECT_NEAR(4 * r.value, pi_star_oracle(p), 1e-12) << p;
    EXPECT_GE(r.err_est, 0.0);
    EXPECT_GT(r.work, 0);
  }
}

TEST(GlSeries, DomainAndBudget) {
  EXPECT_THROW(gl_series(1.0), DomainError);
  EXPECT_THROW(gl_series(2.0, 1e-14, 4), NonConvergence);
}

TEST(CatalanGp, Examples) {
  EXPECT_NEAR(catalan_gp(2.0).value, kCatalan, 1e-14);
  EXPECT_NEAR(catalan_gp(2.0).value, 0.9159655942, 1e-8);
  // Two accelerations must agree on G_4.
  auto term = [](std::int64_t n) { return series_term(Family::kGp, 4.0, n); };
  const double cvz =
      numerics::sum_alternating(term, 1e-14, 100000, numerics::Acceleration::kCohenVillegasZagier)
          .value;
  EXPECT_NEAR(catalan_gp(4.0).value, cvz, 1e-14);
  // The first term dominates as p grows.
  double previous = 0.0;
  for (double p : {2.0, 5.0, 20.0, 100.0, 1000.0}) {
    const double g = catalan_gp(p).value;
    EXPECT_GT(g, previous);
    EXPECT_LT(g, 1.0);
    previous = g;
  }
  EXPECT_NEAR(previous, 1.0, 1e-5);
}

TEST(CatalanGp, IntegralForms) {
  const auto two = catalan_gp_integral(2.0);
  EXPECT_NEAR(two.x_over_sin.value, kCatalan, 1e-12);
  EXPECT_NEAR(two.k_integral.value, kCatalan, 1e-12);
  for (double p : {1.5, 3.0, 4.0}) {
    const double g = catalan_gp(p).value;
    const auto both = catalan_gp_integral(p);
    EXPECT_NEAR(both.x_over_sin.value, g, 1e-7) << p;
    EXPECT_NEAR(both.k_integral.value, g, 1e-7) << p;
    EXPECT_NEAR(both.x_over_sin.value, both.k_integral.value, 1e-7) << p;
  }
}

TEST(CatalanGp, IntegrandLimitAtZero) {
  for (double p : {1.5, 2.0, 4.0}) {
    const Params pq(2.0, p);
    EXPECT_NEAR(1e-8 / sin_pq(pq, 1e-8), 1.0, 1e-12);
  }
}

TEST(CpSeries, Examples) {
  for (double p : {1.5, 2.0, 4.0, 7.0}) EXPECT_EQ(series_term(Family::kCp, p, 0), 1.0);
  EXPECT_NEAR(cp_series(2.0).value, 4 * kCatalan / kPi, 1e-10);
  EXPECT_NEAR(catalan_gp(4.0).value / cp_series(4.0).value, kVarpi / (2 * kSqrt2), 1e-10);
}

TEST(PiRatio, Examples) {
  EXPECT_NEAR(pi_ratio(2.0).value, kPi / 4, 1e-10);
  EXPECT_NEAR(pi_ratio(4.0).value, kVarpi / (2 * kSqrt2), 1e-10);
  EXPECT_NEAR(pi_ratio(3.0).value, pi_star_oracle(3.0) / 4, 1e-10);
}

TEST(PiRatio, KeyConsistency) {
  for (double p : {1.5, 2.0, 3.0, 5.0, 8.0}) {
    const double lhs = 4 * pi_ratio(p).value;
    const double rhs = std::pow(2.0, 1.0 - 2.0 / p) * pi_pq(Params(2.0, p));
    EXPECT_NEAR(lhs, rhs, 1e-7) << p;
  }
}

TEST(Lemniscate, PartialSumsAsPrinted) {
  const double expected_terms[] = {1.0, 1.0 / 10, 1.0 / 24, 5.0 / 208};
  double partial = 0.0;
  double printed = 0.0;
  for (int n = 0; n < 4; ++n) {
    EXPECT_EQ(series_term(Family::kLpi2, 4.0, n), expected_terms[n]);
    EXPECT_EQ(std::abs(series_term(Family::kLpi1, 4.0, n)), expected_terms[n]);
    EXPECT_EQ(series_term(Family::kLpi1, 4.0, n), (n % 2 ? -1.0 : 1.0) * expected_terms[n]);
    partial += series_term(Family::kLpi2, 4.0, n);
    printed += expected_terms[n];
    EXPECT_EQ(partial, printed);
  }
  EXPECT_EQ(series_term(Family::kLpiEven, 4.0, 1), 1.0 / 24);
  EXPECT_EQ(series_term(Family::kLpiOdd, 4.0, 0), 1.0 / 10);
  EXPECT_EQ(series_term(Family::kLpiOdd, 4.0, 1), 5.0 / 208);
}

TEST(Lemniscate, Limits) {
  EXPECT_NEAR(lemniscate_series(Lemniscate::kLpi1).value, kVarpi / (2 * kSqrt2), 1e-8);
  EXPECT_NEAR(lemniscate_series(Lemniscate::kLpi2).value, kVarpi / 2, 1e-8);
  EXPECT_NEAR(lemniscate_series(Lemniscate::kLpi2).value, 1.3110, 5e-5);
  EXPECT_NEAR(lemniscate_series(Lemniscate::kEven).value, (2 + kSqrt2) * kVarpi / 8, 1e-8);
  EXPECT_NEAR(lemniscate_series(Lemniscate::kOdd).value, (2 - kSqrt2) * kVarpi / 8, 1e-8);
}

TEST(Lemniscate, Recombination) {
  const double even = lemniscate_series(Lemniscate::kEven).value;
  const double odd = lemniscate_series(Lemniscate::kOdd).value;
  EXPECT_NEAR(even + odd, lemniscate_series(Lemniscate::kLpi2).value, 1e-9);
  EXPECT_NEAR(even - odd, lemniscate_series(Lemniscate::kLpi1).value, 1e-9);
}

TEST(Lemniscate, DoubleFactorialRatio) {
  double odd = 1.0;   // (2n-1)!!, with (-1)!! = 1
  double even = 1.0;  // (2n)!!
  double factorial = 1.0;
  for (int n = 0; n <= 30; ++n) {
    if (n > 0) {
      odd *= 2.0 * n - 1.0;
      even *= 2.0 * n;
      factorial *= n;
    }
    const double ratio = numerics::pochhammer(0.5, n) / factorial;
    EXPECT_NEAR(odd / even, ratio, 1e-14 * ratio) << n;
    EXPECT_NEAR(series_term(Family::kLpi2, 4.0, n) * (4.0 * n + 1.0), ratio, 1e-14 * ratio);
  }
}

TEST(Evaluate, PositiveSeriesBudget) {
  EXPECT_THROW(evaluate({Family::kLpi2, 4.0, 1e-14, 200}), NonConvergence);
  EXPECT_THROW(evaluate({Family::kGp, 0.5, 1e-10, 1000}), DomainError);
}

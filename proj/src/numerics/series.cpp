#include <gtrig/errors.hpp>
#include <gtrig/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gtrig::numerics {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Magnitudes a_n = (-1)^n term(n), fetched lazily and memoized.
class Magnitudes {
 public:
  explicit Magnitudes(const std::function<double(std::int64_t)>& term) : term_(term) {}
  double operator()(std::int64_t n) {
    while (static_cast<std::int64_t>(cache_.size()) <= n) {
      const auto k = static_cast<std::int64_t>(cache_.size());
      const double t = term_(k);
      cache_.push_back((k % 2 == 0) ? t : -t);
    }
    return cache_[static_cast<std::size_t>(n)];
  }
  std::int64_t used() const { return static_cast<std::int64_t>(cache_.size()); }

 private:
  const std::function<double(std::int64_t)>& term_;
  std::vector<double> cache_;
};

// Direct partial sum of the first `head` terms, then the Euler transform
// sum_k (-1)^k Delta^k a_head / 2^{k+1} over `depth` differences.
double euler_estimate(Magnitudes& a, std::int64_t head, std::int64_t depth) {
  CompensatedSum sum;
  for (std::int64_t n = 0; n < head; ++n) {
    sum.add((n % 2 == 0) ? a(n) : -a(n));
  }
  std::vector<double> diff(static_cast<std::size_t>(depth));
  for (std::int64_t j = 0; j < depth; ++j) diff[static_cast<std::size_t>(j)] = a(head + j);
  CompensatedSum tail;
  double scale = 0.5;
  for (std::int64_t k = 0; k < depth; ++k) {
    const double term = diff[0] * scale;
    tail.add((k % 2 == 0) ? term : -term);
    scale *= 0.5;
    for (std::size_t j = 0; j + 1 < diff.size() - static_cast<std::size_t>(k); ++j) {
      diff[j] = diff[j + 1] - diff[j];
    }
  }
  const double t = tail.value();
  sum.add((head % 2 == 0) ? t : -t);
  return sum.value();
}

double cvz_estimate(Magnitudes& a, std::int64_t n) {
  const double nd = static_cast<double>(n);
  double d = std::pow(3.0 + std::sqrt(8.0), nd);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  CompensatedSum s;
  for (std::int64_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    c = b - c;
    s.add(c * a(k));
    b = (kd + nd) * (kd - nd) * b / ((kd + 0.5) * (kd + 1.0));
  }
  return s.value() / d;
}

}  // namespace

EvalResult sum_alternating(const std::function<double(std::int64_t)>& term, double tol,
                           std::int64_t max_terms, Acceleration method) {
  if (!(tol > 0.0) || max_terms < 1) {
    throw DomainError("sum_alternating: need tol > 0 and max_terms >= 1");
  }
  Magnitudes a(term);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double previous = std::numeric_limits<double>::quiet_NaN();
  EvalResult result;
  // Both methods converge geometrically in their size parameter; double it
  // until two estimates agree.
  for (std::int64_t size = 8; ; size *= 2) {
    const std::int64_t needed = method == Acceleration::kEuler ? 2 * size : size;
    if (needed > max_terms) break;
    // (3 + sqrt 8)^size overflows past ~400.
    if (method == Acceleration::kCohenVillegasZagier && size > 256) break;
    const double estimate =
        method == Acceleration::kEuler ? euler_estimate(a, size, size) : cvz_estimate(a, size);
    const double diff = std::abs(estimate - previous);
    result.value = estimate;
    result.err_est = std::isfinite(diff) ? std::max(diff, eps * std::abs(estimate)) : 0.0;
    result.work = a.used();
    if (std::isfinite(diff) && diff <= std::max(tol, 8.0 * eps * std::abs(estimate))) {
      return result;
    }
    previous = estimate;
    if (size > (std::int64_t{1} << 40)) break;
  }
  throw NonConvergence("sum_alternating: estimates still differ by " +
                       std::to_string(result.err_est) + " within " +
                       std::to_string(max_terms) + " terms");
}

EvalResult sum_positive(const std::function<double(std::int64_t)>& term, double tail_exponent,
                        double tol, std::int64_t max_terms) {
  if (!(tol > 0.0) || !(tail_exponent > 0.0) || max_terms < 1) {
    throw DomainError("sum_positive: need tol > 0, tail_exponent > 0, max_terms >= 1");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr std::int64_t kFirstCut = 128;
  CompensatedSum partial;
  std::int64_t n = 0;
  // table[j][m]: partial sum at N_j with the first m tail orders removed.
  std::vector<std::vector<double>> table;
  EvalResult result;
  for (std::int64_t cut = kFirstCut; cut <= max_terms; cut *= 2) {
    for (; n < cut; ++n) partial.add(term(n));
    std::vector<double> row{partial.value()};
    const std::size_t j = table.size();
    for (std::size_t m = 1; m <= j; ++m) {
      const double factor = std::pow(2.0, tail_exponent + static_cast<double>(m - 1)) - 1.0;
      row.push_back(row[m - 1] + (row[m - 1] - table[j - 1][m - 1]) / factor);
    }
    table.push_back(row);
    result.value = row.back();
    result.work = n;
    if (j >= 2) {
      const double diff = std::abs(row.back() - table[j - 1].back());
      result.err_est = std::max(diff, eps * std::abs(result.value));
      if (diff <= std::max(tol, 16.0 * eps * std::abs(result.value))) return result;
    }
  }
  throw NonConvergence("sum_positive: extrapolated sums still differ by " +
                       std::to_string(result.err_est) + " within " +
                       std::to_string(max_terms) + " terms");
}

}  // namespace gtrig::numerics

#include <gtrig/errors.hpp>
#include <gtrig/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace gtrig::numerics {
namespace {

constexpr int kFinestLevel = 12;
constexpr double kRegularTailT = 3.6;   // weights ~1e-23 beyond this
constexpr double kSingularTailT = 6.0;  // 1 - tanh(pi/2 sinh t) ~1e-275 here

// Tanh-sinh nodes on [-1, 1] for t >= 0 at the finest spacing.
struct NodeTable {
  std::vector<double> abscissa;    // tanh(pi/2 sinh t)
  std::vector<double> complement;  // 1 - abscissa, computed without cancellation
  std::vector<double> weight;      // pi/2 cosh t / cosh^2(pi/2 sinh t)
  double spacing;

  NodeTable() {
    spacing = std::ldexp(1.0, -kFinestLevel);
    const auto count = static_cast<std::size_t>(kSingularTailT / spacing) + 1;
    abscissa.resize(count);
    complement.resize(count);
    weight.resize(count);
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (std::size_t j = 0; j < count; ++j) {
      const double t = static_cast<double>(j) * spacing;
      const double z = half_pi * std::sinh(t);
      const double e = std::exp(-2.0 * z);
      abscissa[j] = std::tanh(z);
      complement[j] = 2.0 * e / (1.0 + e);
      weight[j] = half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    }
  }
};

const NodeTable& nodes() {
  static const NodeTable table;
  return table;
}

struct LevelSum {
  double sum = 0.0;
  double abs_sum = 0.0;
  std::int64_t evaluations = 0;
  bool skipped_nonfinite = false;
};

// Adds the nodes belonging to `level` (all of them for level 0, the odd
// multiples of the spacing otherwise).
void accumulate_level(const QuadratureSpec& spec, int level, LevelSum& acc) {
  const NodeTable& table = nodes();
  const double half = 0.5 * (spec.b - spec.a);
  const double mid = spec.a + half;
  const std::size_t stride = std::size_t{1} << (kFinestLevel - level);
  const std::size_t first = level == 0 ? 0 : stride;
  const std::size_t step = level == 0 ? stride : 2 * stride;
  const double right_tail = spec.singular_right ? kSingularTailT : kRegularTailT;
  const double left_tail = spec.singular_left ? kSingularTailT : kRegularTailT;

  auto add = [&](double w, const Abscissa& node) {
    const double f = spec.integrand(node);
    ++acc.evaluations;
    if (!std::isfinite(f)) {
      acc.skipped_nonfinite = true;
      return;
    }
    acc.sum += w * f;
    acc.abs_sum += w * std::abs(f);
  };

  if (level == 0) {
    add(table.weight[0], Abscissa{mid, half, half});
  }
  for (std::size_t j = first; j < table.abscissa.size(); j += step) {
    const double t = static_cast<double>(j) * table.spacing;
    if (t == 0.0) continue;
    const double w = table.weight[j];
    const double near = half * table.complement[j];
    const double far = half * (2.0 - table.complement[j]);
    if (t <= right_tail && near > 0.0) {
      add(w, Abscissa{spec.b - near, far, near});
    }
    if (t <= left_tail && near > 0.0) {
      add(w, Abscissa{spec.a + near, near, far});
    }
    if (t > right_tail && t > left_tail) break;
  }
}

}  // namespace

QuadratureSpec QuadratureSpec::of(std::function<double(double)> f, double a, double b,
                                  double abs_tol) {
  QuadratureSpec spec;
  spec.integrand = [f = std::move(f)](const Abscissa& node) { return f(node.x); };
  spec.a = a;
  spec.b = b;
  spec.abs_tol = abs_tol;
  return spec;
}

EvalResult integrate_best_effort(const QuadratureSpec& spec, bool* converged) {
  if (!(spec.a < spec.b)) {
    throw InvalidInterval("integrate: need a < b, got [" + std::to_string(spec.a) + ", " +
                          std::to_string(spec.b) + "]");
  }
  if (!(spec.abs_tol > 0.0)) {
    throw DomainError("integrate: abs_tol must be positive");
  }
  const int max_level = std::min(spec.max_level, kFinestLevel);
  const double half = 0.5 * (spec.b - spec.a);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  LevelSum acc;
  double previous = 0.0;
  EvalResult result;
  bool done = false;
  for (int level = 0; level <= max_level; ++level) {
    accumulate_level(spec, level, acc);
    const double h = std::ldexp(1.0, -level);
    const double estimate = half * h * acc.sum;
    const double l1 = half * h * acc.abs_sum;
    const double diff = std::abs(estimate - previous);
    previous = estimate;
    result.value = estimate;
    result.err_est = std::max(diff, 4.0 * eps * l1);
    result.work = acc.evaluations;
    if (level >= 3 && diff <= std::max(spec.abs_tol, 64.0 * eps * l1)) {
      done = true;
      break;
    }
  }
  result.near_singular = acc.skipped_nonfinite;
  if (converged != nullptr) *converged = done;
  return result;
}

EvalResult integrate(const QuadratureSpec& spec) {
  bool converged = false;
  EvalResult result = integrate_best_effort(spec, &converged);
  if (!converged) {
    throw NonConvergence("integrate: error estimate " + std::to_string(result.err_est) +
                         " above tolerance " + std::to_string(spec.abs_tol) + " after " +
                         std::to_string(result.work) + " nodes");
  }
  return result;
}

}  // namespace gtrig::numerics

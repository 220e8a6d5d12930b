#include <gtrig/errors.hpp>
#include <gtrig/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace gtrig::numerics {

double find_root(const std::function<double(double)>& g, double lo, double hi, double tol,
                 int max_iter) {
  if (lo > hi) std::swap(lo, hi);
  double a = lo;
  double b = hi;
  double fa = g(a);
  double fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NoBracket("find_root: g has the same sign at " + std::to_string(lo) + " and " +
                    std::to_string(hi));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points differ.
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = g(b);
  }
  throw NonConvergence("find_root: no convergence after " + std::to_string(max_iter) +
                       " iterations");
}

double find_root_newton(const std::function<ValueAndSlope(double)>& g_dg, double lo,
                        double hi, double x0, double tol, int max_iter) {
  if (lo > hi) std::swap(lo, hi);
  const ValueAndSlope at_lo = g_dg(lo);
  const ValueAndSlope at_hi = g_dg(hi);
  if (at_lo.value == 0.0) return lo;
  if (at_hi.value == 0.0) return hi;
  if ((at_lo.value > 0.0) == (at_hi.value > 0.0)) {
    throw NoBracket("find_root_newton: g has the same sign at " + std::to_string(lo) +
                    " and " + std::to_string(hi));
  }
  // Orient so that g(neg) < 0 < g(pos).
  double neg = at_lo.value < 0.0 ? lo : hi;
  double pos = at_lo.value < 0.0 ? hi : lo;
  double x = (x0 >= lo && x0 <= hi) ? x0 : 0.5 * (lo + hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  ValueAndSlope cur = g_dg(x);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (cur.value == 0.0) return x;
    if (cur.value < 0.0) {
      neg = x;
    } else {
      pos = x;
    }
    const bool newton_leaves_bracket =
        ((x - pos) * cur.slope - cur.value) * ((x - neg) * cur.slope - cur.value) > 0.0;
    const bool newton_too_slow = std::abs(2.0 * cur.value) > std::abs(dx_old * cur.slope);
    dx_old = dx;
    if (cur.slope == 0.0 || newton_leaves_bracket || newton_too_slow) {
      dx = 0.5 * (pos - neg);
      x = neg + dx;
    } else {
      dx = cur.value / cur.slope;
      x -= dx;
    }
    if (std::abs(dx) < tol || std::abs(pos - neg) < tol) return x;
    cur = g_dg(x);
  }
  throw NonConvergence("find_root_newton: no convergence after " +
                       std::to_string(max_iter) + " iterations");
}

}  // namespace gtrig::numerics

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "endorev/errors.hpp"

namespace endorev {

struct ScalarMaximum {
  double x;
  double value;
  int iterations;
  double lo;  // final bracket
  double hi;
};

namespace detail {

template <class F>
double finite_value(F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw OptimizationError(OptimizationError::Kind::NonFinite,
                            "objective is not finite at x = " + std::to_string(x));
  return v;
}

}  // namespace detail

/// Golden-section maximization of a unimodal objective on [lo, hi]. Stops
/// once hi - lo <= tol * max(1, |x*|). Deterministic for identical inputs.
template <class F>
ScalarMaximum scalar_maximize(F&& objective, double lo, double hi, double tol = 1e-10,
                              int max_iter = 200) {
  if (!(lo < hi)) throw InvalidInput("scalar_maximize requires lo < hi");
  if (!(tol > 0.0)) throw InvalidInput("scalar_maximize requires tol > 0");

  constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = detail::finite_value(objective, c);
  double fd = detail::finite_value(objective, d);

  for (int iter = 1; iter <= max_iter; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = detail::finite_value(objective, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = detail::finite_value(objective, d);
    }
    const double mid = 0.5 * (a + b);
    if (b - a <= tol * std::max(1.0, std::abs(mid))) {
      return {mid, detail::finite_value(objective, mid), iter, a, b};
    }
  }
  throw OptimizationError(OptimizationError::Kind::NonConvergence,
                          "golden-section search did not converge in " +
                              std::to_string(max_iter) + " iterations");
}

/// Central five-point derivative estimate, O(h^4) truncation error.
template <class F>
double five_point_derivative(F&& f, double x, double h) {
  return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

template <class F>
double central_derivative(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct RootBracket {
  double x;
  int iterations;
  double width;
};

/// Bisection for a sign change of g on [lo, hi] where g(lo) > 0 > g(hi).
/// Runs until the bracket cannot shrink further.
template <class G>
RootBracket bisect_decreasing_root(G&& g, double lo, double hi, int max_iter = 200) {
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (!std::isfinite(gm))
      throw OptimizationError(OptimizationError::Kind::NonFinite, "derivative is not finite");
    if (gm == 0.0) return {mid, iter + 1, 0.0};
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {0.5 * (lo + hi), iter, hi - lo};
}

}  // namespace endorev

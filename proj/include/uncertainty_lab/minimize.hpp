#pragma once

// Nelder-Mead simplex descent. Deterministic: no random restarts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "uncertainty_lab/errors.hpp"

namespace uncertainty_lab {

struct MinimizeOptions {
  std::size_t max_evaluations = 2000;
  double initial_step = 0.1;  // simplex edge along each coordinate
  double f_tolerance = 1e-12;  // spread of simplex values
  double x_tolerance = 1e-8;   // simplex diameter
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool exhausted = false;  // max_evaluations hit before convergence
};

using Objective = std::function<double(const std::vector<double>&)>;

inline MinimizeResult minimize(const Objective& f, std::vector<double> start,
                               const MinimizeOptions& opt = {}) {
  if (start.empty()) throw InvalidArgument("minimize: empty start vector");
  const std::size_t n = start.size();
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : HUGE_VAL;
  };

  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  values[0] = eval(start);
  if (!std::isfinite(values[0])) throw InvalidArgument("minimize: objective not finite at start");
  for (std::size_t i = 0; i < n; ++i) {
    const double h = start[i] != 0.0 ? opt.initial_step * std::max(1.0, std::abs(start[i]))
                                      : opt.initial_step;
    simplex[i + 1][i] += h;
    values[i + 1] = eval(simplex[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s(n + 1);
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s[i] = simplex[order[i]];
      v[i] = values[order[i]];
    }
    simplex.swap(s);
    values.swap(v);
  };

  auto affine = [n](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  bool converged = false;
  while (evals < opt.max_evaluations) {
    sort_simplex();
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(simplex[i][d] - simplex[0][d]));
    if (values[n] - values[0] <= opt.f_tolerance && diameter <= opt.x_tolerance) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);

    const std::vector<double> xr = affine(centroid, simplex[n], -1.0);
    const double fr = eval(xr);
    if (fr < values[0]) {
      const std::vector<double> xe = affine(centroid, simplex[n], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        values[n] = fe;
      } else {
        simplex[n] = xr;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = xr;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      const std::vector<double> xc =
          outside ? affine(centroid, xr, 0.5) : affine(centroid, simplex[n], 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[n])) {
        simplex[n] = xc;
        values[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          simplex[i] = affine(simplex[0], simplex[i], 0.5);
          values[i] = eval(simplex[i]);
        }
      }
    }
  }
  sort_simplex();
  return {simplex[0], values[0], evals, !converged};
}

}  // namespace uncertainty_lab

#pragma once

// Shared numerical building blocks of the predicate and oracle layers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "bjg/bj_core.hpp"
#include "bjg/line_search.hpp"

namespace bjg::detail {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

inline Scalar unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

enum class Ray { NonNegative, NonPositive, Line };

/// Minimises the convex objective alpha -> objective(alpha) on the ray.
template <class F>
LineMinimum minimize_on_ray(F&& objective, Ray ray, double reach) {
  const double a = ray == Ray::NonNegative ? 0.0 : -reach;
  const double b = ray == Ray::NonPositive ? 0.0 : reach;
  return minimize_unimodal(objective, a, b, 1e-13 * reach, 300);
}

/// Minimises a jointly convex objective of a complex parameter over the
/// square [-reach, reach]^2 by nested golden sections (the partial minimum
/// over the imaginary part is convex in the real part).
template <class F>
std::pair<Scalar, double> minimize_complex(F&& objective, double reach) {
  const double width = 1e-12 * reach;
  auto inner = [&](double re) {
    return minimize_unimodal([&](double im) { return objective(Scalar{re, im}); }, -reach, reach, width, 90);
  };
  const auto outer = minimize_unimodal([&](double re) { return inner(re).value; }, -reach, reach, width, 90);
  const auto in = inner(outer.arg);
  return {Scalar{outer.arg, in.arg}, in.value};
}

struct CircleScan {
  double min_score = std::numeric_limits<double>::infinity();
  double angle = 0.0;
};

/// Minimum over the whole circle of a score that is `lipschitz`-Lipschitz in
/// the angle. Scores are sampled at n equispaced angles; every cell whose
/// Lipschitz lower bound could fall below -tau is refined by golden section.
template <class Score>
CircleScan scan_circle(Score&& score, std::size_t n, double lipschitz, double tau) {
  n = std::max<std::size_t>(n, 4);
  const double h = kTwoPi / static_cast<double>(n);
  std::vector<double> values(n);
  CircleScan best;
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = score(h * static_cast<double>(j));
    if (values[j] < best.min_score) best = {values[j], h * static_cast<double>(j)};
  }
  if (best.min_score < -tau) return best;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = std::min(values[j], values[(j + 1) % n]);
    if (lo - lipschitz * h / 2 >= -tau) continue;
    const double a = h * static_cast<double>(j);
    const auto m = minimize_unimodal(score, a, a + h, 1e-10, 80);
    if (m.value < best.min_score) best = {m.value, m.arg};
    if (best.min_score < -tau) break;
  }
  return best;
}

/// Grid over [-range, range]: half linear, half logarithmic towards 0.
inline std::vector<double> sweep_grid(double range, std::size_t points) {
  std::vector<double> g;
  g.reserve(points + 1);
  const std::size_t lin = std::max<std::size_t>(points / 2, 3);
  for (std::size_t i = 0; i < lin; ++i) {
    g.push_back(-range + 2 * range * static_cast<double>(i) / static_cast<double>(lin - 1));
  }
  const std::size_t per_side = (points - std::min(points, lin)) / 2;
  for (std::size_t i = 0; i < per_side; ++i) {
    const double e = -12.0 * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(per_side - 1, 1));
    const double v = range * std::pow(10.0, e);
    g.push_back(v);
    g.push_back(-v);
  }
  g.push_back(0.0);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

/// Grid-then-refine minimisation of a convex function of a real parameter.
template <class F>
LineMinimum sweep_real(F&& objective, const std::vector<double>& grid) {
  std::size_t arg = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = objective(grid[i]);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  const double a = grid[arg == 0 ? 0 : arg - 1];
  const double b = grid[std::min(arg + 1, grid.size() - 1)];
  auto m = minimize_unimodal(objective, a, b, 1e-12 * std::max(grid.back(), 1e-300), 200);
  if (m.value > best) m = {grid[arg], best};
  return m;
}

/// Shared oracle: minimises lambda -> objective(lambda) over real lambda, or
/// over complex lambda = alpha * exp(i theta) with theta in [0, pi).
template <class F>
OracleResult sweep_oracle(F&& objective, bool complex, const SweepOptions& opt) {
  const double range = opt.range;
  if (!complex) {
    const auto grid = sweep_grid(range, opt.grid_points);
    const auto m = sweep_real([&](double l) { return objective(Scalar{l, 0.0}); }, grid);
    return {m.value, Scalar{m.arg, 0.0}};
  }
  const auto alpha_grid = sweep_grid(range, std::max<std::size_t>(opt.alpha_points, 3));
  const std::size_t dirs = std::max<std::size_t>(opt.directions, 4);
  const double h = kPi / static_cast<double>(dirs);

  auto along = [&](double theta) {
    const Scalar t = unit_at(theta);
    return sweep_real([&](double a) { return objective(a * t); }, alpha_grid);
  };

  std::vector<std::pair<double, double>> per_dir;  // (value, theta)
  per_dir.reserve(dirs);
  OracleResult best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t j = 0; j < dirs; ++j) {
    const double theta = h * static_cast<double>(j);
    const auto m = along(theta);
    per_dir.emplace_back(m.value, theta);
    if (m.value < best.min_value) best = {m.value, m.arg * unit_at(theta)};
  }
  std::partial_sort(per_dir.begin(), per_dir.begin() + std::min<std::size_t>(3, per_dir.size()), per_dir.end());
  for (std::size_t r = 0; r < std::min<std::size_t>(3, per_dir.size()); ++r) {
    const double c = per_dir[r].second;
    const auto m = minimize_unimodal([&](double theta) { return along(theta).value; }, c - h, c + h, 1e-9, 60);
    const auto at = along(m.arg);
    if (at.value < best.min_value) best = {at.value, at.arg * unit_at(m.arg)};
  }
  return best;
}

}  // namespace bjg::detail

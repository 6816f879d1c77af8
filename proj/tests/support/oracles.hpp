#pragma once

// Brute-force reference computations for the tests. Deliberately independent
// of the library: norms are re-implemented on std::complex vectors and minima
// are found by dense grids plus shrinking windows, never by derivatives.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;

struct Norm {
  enum Kind { Lp, Sup, WeightedSup } kind = Lp;
  double p = 2.0;
  std::vector<double> weights;
};

inline Norm lp(double p) { return {Norm::Lp, p, {}}; }
inline Norm sup() { return {Norm::Sup, 0.0, {}}; }

inline double norm(const Norm& n, const Vec& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    switch (n.kind) {
      case Norm::Lp:
        acc += std::pow(a, n.p);
        break;
      case Norm::Sup:
        acc = std::max(acc, a);
        break;
      case Norm::WeightedSup:
        acc = std::max(acc, n.weights[i] * a);
        break;
    }
  }
  return n.kind == Norm::Lp ? std::pow(acc, 1.0 / n.p) : acc;
}

inline Vec axpy(const Vec& x, C s, const Vec& y) {
  Vec out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (i < x.size() ? x[i] : C{}) + s * (i < y.size() ? y[i] : C{});
  }
  return out;
}

/// Minimum of a convex function of real lambda on [-range, range].
inline std::pair<double, double> min_real(const std::function<double(double)>& f, double range) {
  double lo = -range;
  double hi = range;
  double best_x = 0.0;
  double best = f(0.0);
  for (int round = 0; round < 60; ++round) {
    constexpr int n = 400;
    const double h = (hi - lo) / n;
    for (int i = 0; i <= n; ++i) {
      const double x = lo + h * i;
      const double v = f(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    lo = best_x - 2 * h;
    hi = best_x + 2 * h;
    if (h < 1e-15 * std::max(1.0, std::fabs(best_x))) break;
  }
  return {best, best_x};
}

/// Minimum of a convex function of complex lambda on the square [-r, r]^2.
inline std::pair<double, C> min_complex(const std::function<double(C)>& f, double range) {
  double cx = 0.0;
  double cy = 0.0;
  double half = range;
  double best = f(0.0);
  C best_z{};
  for (int round = 0; round < 80; ++round) {
    constexpr int n = 40;
    const double h = 2 * half / n;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const C z{cx - half + h * i, cy - half + h * j};
        const double v = f(z);
        if (v < best) {
          best = v;
          best_z = z;
        }
      }
    }
    cx = best_z.real();
    cy = best_z.imag();
    half = 3 * h;
    if (h < 1e-14 * std::max(1.0, std::abs(best_z))) break;
  }
  return {best, best_z};
}

/// One-sided slopes of t -> phi(t) at 0 by Richardson-extrapolated quotients.
inline std::pair<double, double> slopes(const std::function<double(double)>& phi, double h = 1e-6) {
  const double p0 = phi(0.0);
  auto fwd = [&](double t) { return (phi(t) - p0) / t; };
  auto bwd = [&](double t) { return (p0 - phi(-t)) / t; };
  return {2 * fwd(h / 2) - fwd(h), 2 * bwd(h / 2) - bwd(h)};
}

/// Pointwise sup norm of a function given as one vector per point.
inline double sup_norm(const Norm& n, const std::vector<Vec>& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, norm(n, v));
  return m;
}

/// min over real lambda of ||f + lambda g|| in C(K, X).
inline std::pair<double, double> function_min_real(const Norm& n, const std::vector<Vec>& f,
                                                   const std::vector<Vec>& g, double range) {
  return min_real(
      [&](double l) {
        double m = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, norm(n, axpy(f[k], l, g[k])));
        return m;
      },
      range);
}

inline std::pair<double, C> function_min_complex(const Norm& n, const std::vector<Vec>& f,
                                                 const std::vector<Vec>& g, double range) {
  return min_complex(
      [&](C l) {
        double m = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, norm(n, axpy(f[k], l, g[k])));
        return m;
      },
      range);
}

}  // namespace oracle

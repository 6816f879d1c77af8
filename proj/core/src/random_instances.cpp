#include "bjg/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bjg/errors.hpp"
#include "detail.hpp"

namespace bjg {

Vector random_vector(Field field, std::size_t dim, Rng& rng) {
  std::vector<Scalar> c(dim);
  for (auto& z : c) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = field == Field::Complex ? rng.uniform(-1.0, 1.0) : 0.0;
    z = {re, im};
  }
  return Vector(field, std::move(c));
}

Vector random_nonzero_vector(const NormedSpace& space, std::size_t dim, Rng& rng, double min_norm) {
  if (dim == 0) throw DomainError("dimension must be positive");
  for (;;) {
    auto x = random_vector(space.field, dim, rng);
    if (norm(space, x) >= min_norm) return x;
  }
}

Vector random_unit_vector(const NormedSpace& space, std::size_t dim, Rng& rng) {
  auto x = random_nonzero_vector(space, dim, rng);
  return (1.0 / norm(space, x)) * x;
}

CFunction random_function(const KModel& k, const NormedSpace& space, std::size_t dim, Rng& rng,
                          FunctionShape shape) {
  const std::size_t n = k.size();
  std::vector<Vector> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) values.push_back(random_nonzero_vector(space, dim, rng));
  auto set_norm = [&](std::size_t i, double r) { values[i] = (r / norm(space, values[i])) * values[i]; };

  switch (shape) {
    case FunctionShape::Plain:
      break;
    case FunctionShape::FullNormSet:
      for (std::size_t i = 0; i < n; ++i) set_norm(i, 1.0);
      break;
    case FunctionShape::SingletonNormSet:
    case FunctionShape::TwoPointNormSet: {
      const std::size_t peaks = shape == FunctionShape::SingletonNormSet ? 1 : 2;
      if (n < peaks) throw DomainError("not enough points for the requested norm attaining set");
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      for (std::size_t i = 0; i < peaks; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
      for (std::size_t i = 0; i < n; ++i) set_norm(order[i], i < peaks ? 1.0 : rng.uniform(0.1, 0.9));
      break;
    }
  }
  return CFunction(k, space, std::move(values));
}

namespace {

Scalar mix_functionals(const std::vector<Vector>& fs, const Vector& y, Rng& rng) {
  const auto& a = fs[rng.below(fs.size())];
  const auto& b = fs[rng.below(fs.size())];
  const double w = rng.uniform01();
  return w * apply_functional(a, y) + (1.0 - w) * apply_functional(b, y);
}

// Projections that cancel exactly (e.g. in dimension one) leave roundoff;
// report those as the zero vector they are.
constexpr double kCancelled = 1e-10;

Vector snap(const NormedSpace& space, Vector v, double scale) {
  if (norm(space, v) <= kCancelled * scale) return Vector::zeros(v.field(), v.size());
  return v;
}

// s -> max_k ||y_k + s d_k|| is convex, so its right derivative (Danskin over
// the maximisers) is nondecreasing. Bisecting its sign pins the minimiser to
// machine precision; golden search stalls near sqrt(eps) at smooth minima.
double argmin_by_slope(const NormSpec& spec, const std::vector<Vector>& y, const std::vector<Vector>& d, double lo,
                       double hi) {
  auto value = [&](double s) {
    double m = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) m = std::max(m, norm(spec, axpy(y[k], s, d[k])));
    return m;
  };
  auto slope = [&](double s) {
    std::vector<Vector> z;
    std::vector<double> nz;
    for (std::size_t k = 0; k < y.size(); ++k) {
      z.push_back(axpy(y[k], s, d[k]));
      nz.push_back(norm(spec, z.back()));
    }
    const double m = *std::max_element(nz.begin(), nz.end());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (nz[k] < m * (1.0 - 1e-12)) continue;
      best = std::max(best, z[k].is_zero() ? norm(spec, d[k]) : exact_derivatives(spec, z[k], d[k]).plus);
    }
    return best;
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return value(lo) <= value(hi) ? lo : hi;
}

double reach_of(const NormSpec& spec, const std::vector<Vector>& y, const std::vector<Vector>& d) {
  double ny = 0.0;
  double nd = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    ny = std::max(ny, norm(spec, y[k]));
    nd = std::max(nd, norm(spec, d[k]));
  }
  return 2.0 * ny / nd + 1.0;
}

// Minimiser of s -> max_k ||y_k + s x_k||; complex s starts from a nested
// golden search and is polished by alternating exact line minimisations
// along x and i x, which never increase the objective.
Scalar right_scalar(const NormedSpace& space, const std::vector<Vector>& y, const std::vector<Vector>& x) {
  const double reach = reach_of(space.norm, y, x);
  if (space.is_real()) return argmin_by_slope(space.norm, y, x, -reach, reach);
  Scalar s = detail::minimize_complex(
                 [&](Scalar t) {
                   double m = 0.0;
                   for (std::size_t k = 0; k < y.size(); ++k) m = std::max(m, norm(space, axpy(y[k], t, x[k])));
                   return m;
                 },
                 reach)
                 .first;
  std::vector<Vector> ix;
  for (const auto& v : x) ix.push_back(Scalar{0.0, 1.0} * v);
  for (int round = 0; round < 3; ++round) {
    for (const std::vector<Vector>* dir : {&x, static_cast<const std::vector<Vector>*>(&ix)}) {
      std::vector<Vector> shifted;
      for (std::size_t k = 0; k < y.size(); ++k) shifted.push_back(axpy(y[k], s, x[k]));
      const double r = reach_of(space.norm, shifted, *dir);
      const double a = argmin_by_slope(space.norm, shifted, *dir, -r, r);
      s += dir == &x ? Scalar{a, 0.0} : Scalar{0.0, a};
    }
  }
  return s;
}

CFunction snap(CFunction g, double scale) {
  if (sup_norm(g) > kCancelled * scale) return g;
  std::vector<Vector> zeros;
  for (const auto& v : g.values()) zeros.push_back(Vector::zeros(v.field(), v.size()));
  return g.with_values(std::move(zeros));
}

}  // namespace

Vector left_projection(const NormedSpace& space, const Vector& x, const Vector& y0, Rng& rng) {
  const auto fs = norming_functionals(space, x, kActiveTieTolerance);
  Scalar s = -mix_functionals(fs, y0, rng) / norm(space, x);
  if (space.is_real()) s = s.real();
  return snap(space, axpy(y0, s, x), norm(space, y0));
}

Vector right_projection(const NormedSpace& space, const Vector& x, const Vector& y0) {
  space.check(x, y0);
  if (x.is_zero()) throw DomainError("projection needs x != 0");
  return snap(space, axpy(y0, right_scalar(space, {y0}, {x}), x), norm(space, y0));
}

CFunction left_projection(const CFunction& f, const CFunction& g0, Rng& rng, double mf_tol) {
  check_compatible(f, g0);
  if (f.is_zero()) throw DomainError("projection needs f != 0");
  const auto mf = norm_attaining_set(f, mf_tol);
  const std::size_t k = mf[rng.below(mf.size())];
  // F(h) = phi(h(k)) with phi norming f(k) is a norming functional of f.
  const auto fs = norming_functionals(f.space(), f[k], kActiveTieTolerance);
  Scalar s = -mix_functionals(fs, g0[k], rng) / sup_norm(f);
  if (f.space().is_real()) s = s.real();
  return snap(axpy(g0, s, f), sup_norm(g0));
}

CFunction right_projection(const CFunction& f, const CFunction& g0) {
  check_compatible(f, g0);
  if (f.is_zero()) throw DomainError("projection needs f != 0");
  return snap(axpy(g0, right_scalar(f.space(), g0.values(), f.values()), f), sup_norm(g0));
}

}  // namespace bjg

#pragma once

// Seeded generators for vectors and functions, including the structured
// shapes the suites need (prescribed norm attaining sets, orthogonal pairs).

#include <cstddef>

#include "bjg/function_space.hpp"
#include "bjg/random.hpp"

namespace bjg {

/// Coordinates uniform in [-1, 1]; complex fields draw both parts.
Vector random_vector(Field field, std::size_t dim, Rng& rng);

/// random_vector, redrawn until ||x|| >= min_norm.
Vector random_nonzero_vector(const NormedSpace& space, std::size_t dim, Rng& rng, double min_norm = 0.1);

Vector random_unit_vector(const NormedSpace& space, std::size_t dim, Rng& rng);

enum class FunctionShape {
  /// Independent random values.
  Plain,
  /// ||f(k)|| = 1 for every k, so M_f = K.
  FullNormSet,
  /// One point of norm 1, every other point of norm at most 0.9.
  SingletonNormSet,
  /// Two points of norm 1, every other point of norm at most 0.9.
  TwoPointNormSet,
};

/// Needs |K| >= 2 for TwoPointNormSet.
CFunction random_function(const KModel& k, const NormedSpace& space, std::size_t dim, Rng& rng,
                          FunctionShape shape = FunctionShape::Plain);

/// x _|_ result: y0 - F(y0)/||x|| x for a random convex combination F of two
/// extreme norming functionals of x.
Vector left_projection(const NormedSpace& space, const Vector& x, const Vector& y0, Rng& rng);

/// result _|_ x: y0 + s x with s minimising ||y0 + s x||.
Vector right_projection(const NormedSpace& space, const Vector& x, const Vector& y0);

/// f _|_ result, using a norming functional of f at a random point of M_f.
CFunction left_projection(const CFunction& f, const CFunction& g0, Rng& rng, double mf_tol = 1e-9);

/// result _|_ f: g0 + s f with s minimising ||g0 + s f||.
CFunction right_projection(const CFunction& f, const CFunction& g0);

}  // namespace bjg

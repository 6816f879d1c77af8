#pragma once

// Point-level predicates in a normed space X: Birkhoff-James orthogonality,
// the cones x+/x- and x_u+/x_u-, directional orthogonality, smoothness, and
// semidecision searches for left/right symmetric points.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "bjg/normed_space.hpp"
#include "bjg/verdict.hpp"

namespace bjg {

/// x _|_ y: ||x + lambda y|| >= ||x|| for every scalar lambda.
///
/// Real field: decided from the one-sided derivatives, rho'_- <= 0 <= rho'_+.
/// Complex field: x must be orthogonal to y in every direction t of the
/// T grid (tol.t_grid points); cells between grid points are refined using
/// the Lipschitz bound of t -> rho'(x, t y), so narrow failing arcs are not
/// skipped. x = 0 or y = 0 always holds.
Verdict is_bj_orthogonal(const NormedSpace& space, const Vector& x, const Vector& y,
                         const Tolerances& tol = {});

/// y in x+ (||x + lambda y|| >= ||x|| for lambda >= 0). Real field only.
Verdict in_plus_cone(const NormedSpace& space, const Vector& x, const Vector& y,
                     const Tolerances& tol = {});
/// y in x- (||x + lambda y|| >= ||x|| for lambda <= 0). Real field only.
Verdict in_minus_cone(const NormedSpace& space, const Vector& x, const Vector& y,
                      const Tolerances& tol = {});

/// y in x_u+ : ||x + u alpha y|| >= ||x|| for alpha >= 0, with |u| = 1 and
/// arg u in [0, pi).
Verdict in_u_plus_cone(const NormedSpace& space, const Vector& x, const Vector& y, Scalar u,
                       const Tolerances& tol = {});
Verdict in_u_minus_cone(const NormedSpace& space, const Vector& x, const Vector& y, Scalar u,
                        const Tolerances& tol = {});

/// x _|_t y: ||x + alpha t y|| >= ||x|| for every real alpha.
Verdict directional_orthogonal(const NormedSpace& space, const Vector& x, const Vector& y, Scalar t,
                               const Tolerances& tol = {});

struct OracleResult {
  double min_value = 0.0;
  Scalar argmin{};
};

struct SweepOptions {
  /// Half-width of the real lambda grid (and alpha range per direction).
  double range = 0.0;
  std::size_t grid_points = 2049;
  /// Complex field: directions on the half circle and alpha samples per direction.
  std::size_t directions = 720;
  std::size_t alpha_points = 33;
};

/// Default sweep range 4 ||x|| / max(||y||, tol).
double default_sweep_range(double norm_x, double norm_y, const Tolerances& tol = {});

/// Direct minimisation of lambda -> ||x + lambda y|| without any derivative
/// machinery: grid over [-range, range] (linear plus logarithmic spacing near
/// 0) followed by golden-section refinement; the complex field uses a polar
/// grid and refines both the modulus and the angle. Throws DomainError for
/// range <= 0 or grid_points < 3.
OracleResult lambda_sweep_oracle(const NormedSpace& space, const Vector& x, const Vector& y,
                                 const SweepOptions& options);
OracleResult lambda_sweep_oracle(const NormedSpace& space, const Vector& x, const Vector& y,
                                 double range, std::size_t grid_points = 2049);

struct SmoothnessPlan {
  std::size_t random_directions = 16;
  std::uint64_t seed = 7;
  bool use_fast_path = true;
};

/// Fast-path smoothness of x != 0: Sup-type norms need a unique (weighted)
/// maximal coordinate, Lp(1) needs no zero coordinate, Lp(p > 1) is smooth.
/// Ties and zeros are decided at kActiveTieTolerance relative to ||x||.
Verdict smooth_fast_path(const NormedSpace& space, const Vector& x, const Tolerances& tol = {});

/// Sampled smoothness test from difference-quotient brackets over the
/// canonical basis (and i e_j for complex), its negatives and seeded random
/// unit directions. Fails with the first splitting direction.
Verdict smooth_generic_path(const NormedSpace& space, const Vector& x, const SmoothnessPlan& plan,
                            const Tolerances& tol = {});

/// Smoothness of x != 0. Throws DomainError for x = 0.
Verdict is_smooth_point(const NormedSpace& space, const Vector& x, const SmoothnessPlan& plan = {},
                        const Tolerances& tol = {});

struct SymmetrySearch {
  std::optional<Vector> counterexample;
  /// For left searches: x _|_ y then y _|_ x. For right searches: y _|_ x
  /// then x _|_ y. Only filled when a counterexample was found.
  Verdict first;
  Verdict second;
  std::size_t trials_used = 0;

  bool found() const { return counterexample.has_value(); }
};

/// Semidecision for "x is left symmetric": looks for y with x _|_ y holding
/// and y _|_ x failing. Structured candidates first (basis vectors, sign
/// patterns, pieces of x on and off its maximal coordinates), then seeded
/// random vectors moved onto x's orthogonal face along the pencil y0 + s x.
/// Throws DomainError for x = 0 or trials == 0.
SymmetrySearch left_symmetric_search(const NormedSpace& space, const Vector& x, std::size_t trials,
                                     std::uint64_t seed, const Tolerances& tol = {});

/// Mirror image: y with y _|_ x holding and x _|_ y failing. Candidates are
/// projected with s* = argmin ||y0 + s x||, which forces y _|_ x.
SymmetrySearch right_symmetric_search(const NormedSpace& space, const Vector& x, std::size_t trials,
                                      std::uint64_t seed, const Tolerances& tol = {});

}  // namespace bjg

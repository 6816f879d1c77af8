#pragma once

// Finite models of K and of C(K, X) with the sup norm, the norm attaining
// set, and the characterizations of f _|_ g in terms of pointwise data.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bjg/bj_core.hpp"
#include "bjg/normed_space.hpp"
#include "bjg/verdict.hpp"

namespace bjg {

/// A finite point set standing in for K. Points of a sampled interval carry
/// their position in `coordinates`, which is what tent functions use.
struct KModel {
  std::vector<std::string> points;
  std::vector<bool> isolated;
  bool connected = false;
  std::string description;
  std::vector<std::optional<double>> coordinates;

  /// n isolated points k0 .. k{n-1}.
  static KModel discrete(std::size_t n);
  static KModel discrete(std::vector<std::string> ids);
  /// `samples` equispaced points of [a, b]; connected, nothing isolated.
  static KModel sampled_interval(std::size_t samples, double a = 0.0, double b = 1.0);
  /// `samples` points of [0, 1] plus the isolated point "2".
  static KModel interval_plus_point(std::size_t samples);

  std::size_t size() const { return points.size(); }
  /// Throws DataError for an unknown identifier.
  std::size_t index_of(const std::string& id) const;
  bool is_isolated(std::size_t k) const { return isolated[k]; }
  bool is_sampled() const;

  /// Throws DataError when identifiers repeat, the model is empty, or a
  /// connected model flags isolated points.
  void validate() const;

  bool operator==(const KModel&) const = default;
};

/// f in C(K, X): one vector per point of the model.
class CFunction {
 public:
  CFunction() = default;
  /// Validates every value against the space. Throws DataError when the
  /// number of values differs from |K|, ConfigError on dimension mismatch.
  CFunction(KModel k, NormedSpace space, std::vector<Vector> values);

  static CFunction constant(KModel k, NormedSpace space, const Vector& x);
  /// x at k0, zero elsewhere.
  static CFunction indicator(KModel k, NormedSpace space, std::size_t k0, const Vector& x);

  const KModel& model() const { return k_; }
  const NormedSpace& space() const { return space_; }
  const std::vector<Vector>& values() const { return values_; }
  const Vector& operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }
  /// Common coordinate length (the longest value for finite-support spaces).
  std::size_t dim() const;

  double pointwise_norm(std::size_t k) const { return norm(space_, values_[k]); }
  std::vector<double> pointwise_norms() const;
  bool is_zero() const;
  /// Points where the value is not the zero vector.
  std::vector<std::size_t> support() const;

  /// Pointwise h(k) * f(k) for a real scalar function h.
  CFunction scaled_by(const std::vector<double>& h) const;
  /// Same model and space, new values.
  CFunction with_values(std::vector<Vector> values) const;

  friend bool operator==(const CFunction&, const CFunction&) = default;

 private:
  KModel k_;
  NormedSpace space_;
  std::vector<Vector> values_;
};

/// f + s g. Throws ConfigError when models or spaces differ.
CFunction axpy(const CFunction& f, Scalar s, const CFunction& g);
CFunction operator+(const CFunction& f, const CFunction& g);
CFunction operator-(const CFunction& f, const CFunction& g);
CFunction operator*(Scalar s, const CFunction& f);

/// Throws ConfigError unless f and g live on the same model and space.
void check_compatible(const CFunction& f, const CFunction& g);

double sup_norm(const CFunction& f);

/// {k : ||f(k)|| >= ||f|| (1 - tol)}; every point when f = 0.
std::vector<std::size_t> norm_attaining_set(const CFunction& f, double tol = 1e-9);

/// Real field: f _|_ g iff some u1 in M_f has g(u1) in f(u1)+ and some u2 in
/// M_f has g(u2) in f(u2)-. `points` holds {u1, u2} on Holds. Fails carries a
/// lambda verified on the sup norm. Throws ConfigError for a complex space.
Verdict ckx_orthogonal_real(const CFunction& f, const CFunction& g, const Tolerances& tol = {});

/// Complex field: for each u in U there are k_u, k'_u in M_f with
/// g(k_u) in f(k_u)_u+ and g(k'_u) in f(k'_u)_u-. The U grid has tol.u_grid
/// points; cells are refined with the Lipschitz bound in u. `points` holds
/// the k_u and k'_u used on the grid. Throws ConfigError for a real space.
Verdict ckx_orthogonal_complex(const CFunction& f, const CFunction& g, const Tolerances& tol = {});

/// Requires M_f connected: |M_f| = 1, or a model flagged connected
/// (PreconditionError otherwise). Holds iff for each t in T some k_t in M_f
/// has f(k_t) _|_t g(k_t); the real field reduces to a single k with
/// f(k) _|_ g(k). Fails only with a lambda verified on the sup norm.
Verdict ckx_orthogonal_directional(const CFunction& f, const CFunction& g, const Tolerances& tol = {});

/// The characterization matching the field of the space.
Verdict ckx_orthogonal(const CFunction& f, const CFunction& g, const Tolerances& tol = {});

/// Minimum of lambda -> ||f + lambda g|| by the same sweep as
/// lambda_sweep_oracle. A range of 0 selects default_sweep_range.
OracleResult ckx_oracle(const CFunction& f, const CFunction& g, const SweepOptions& options);
OracleResult ckx_oracle(const CFunction& f, const CFunction& g, double range = 0.0,
                        std::size_t grid_points = 2049);

}  // namespace bjg

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bjg/normed_space.hpp"

namespace bjg {

enum class Status { Holds, Fails, Undetermined };

std::string to_string(Status status);

/// Evidence attached to a failing predicate. `lambda` is the scalar at which
/// the defining inequality ||x + lambda y|| >= ||x|| is violated and `value`
/// the left-hand side there; `unit` is the direction t (or u) on the circle
/// that exposed the failure; `direction` is a vector witness (a splitting
/// direction for smoothness, or a counterexample y for symmetry searches).
struct Witness {
  std::optional<Scalar> lambda;
  std::optional<double> value;
  std::optional<Scalar> unit;
  std::optional<Vector> direction;
};

/// Three-valued certified answer.
///
/// Fails always carries a witness that re-checks independently. Undetermined
/// means the decisive quantity sits within tolerance of its threshold; treat
/// it as "refine", never as Holds. `margin` is the signed, scale-free
/// distance of the decisive quantity from its threshold (positive on the
/// Holds side). `points` lists indices of K used as evidence (u1/u2, k_u, k_t).
struct Verdict {
  Status status = Status::Undetermined;
  std::optional<Witness> witness;
  double margin = 0.0;
  std::vector<std::size_t> points;
  std::string note;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
  bool undetermined() const { return status == Status::Undetermined; }
};

/// Numerical knobs shared by every predicate. Tolerances are relative to the
/// natural scale of the compared quantity, with an absolute floor.
struct Tolerances {
  double rel = 1e-9;
  double abs_floor = 1e-12;
  /// Relative tolerance of the norm attaining set M_f.
  double mf = 1e-9;
  std::size_t t_grid = 360;
  std::size_t u_grid = 180;

  double scaled(double scale) const;
};

/// Finite sample of unit scalars: the full circle T (t = exp(2 pi i j / n))
/// or the half circle U (u = exp(pi i j / n), arg u in [0, pi)).
struct DirectionGrid {
  enum class Set { FullCircle, HalfCircle };

  std::size_t count = 360;
  Set set = Set::FullCircle;

  static DirectionGrid full(std::size_t n) { return {n, Set::FullCircle}; }
  static DirectionGrid half(std::size_t n) { return {n, Set::HalfCircle}; }

  double angle(std::size_t j) const;
  std::vector<Scalar> points() const;
};

}  // namespace bjg

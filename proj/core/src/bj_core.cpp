#include "bjg/bj_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bjg/errors.hpp"
#include "bjg/random.hpp"
#include "bjg/random_instances.hpp"
#include "detail.hpp"

namespace bjg {

std::string to_string(Status status) {
  switch (status) {
    case Status::Holds:
      return "holds";
    case Status::Fails:
      return "fails";
    case Status::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

double Tolerances::scaled(double scale) const { return std::max(rel * scale, abs_floor); }

double DirectionGrid::angle(std::size_t j) const {
  const double span = set == Set::FullCircle ? detail::kTwoPi : detail::kPi;
  return span * static_cast<double>(j) / static_cast<double>(count);
}

std::vector<Scalar> DirectionGrid::points() const {
  std::vector<Scalar> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(detail::unit_at(angle(j)));
  return out;
}

namespace {

enum class Need { Plus, Minus, Both };

Verdict trivially_holds(const char* why) {
  Verdict v;
  v.status = Status::Holds;
  v.margin = 1.0;
  v.note = why;
  return v;
}

// Decides ||x + alpha d|| >= ||x|| on the half-lines selected by `need`.
// Witness scalars are reported as alpha * unit, i.e. relative to y with d = unit * y.
Verdict decide_line(const NormedSpace& space, const Vector& x, const Vector& d, Need need,
                    const Tolerances& tol, Scalar unit) {
  if (x.is_zero()) return trivially_holds("x = 0");
  if (d.is_zero()) return trivially_holds("y = 0");
  const double nx = norm(space, x);
  const double nd = norm(space, d);
  const auto ex = exact_derivatives(space.norm, x, d, tol.rel);
  const double tau = tol.rel * nd;

  double margin = 1.0;
  std::optional<detail::Ray> failing;
  if (need != Need::Minus) {
    if (ex.plus >= -tau) {
      margin = std::min(margin, ex.plus / nd);
    } else {
      failing = detail::Ray::NonNegative;
    }
  }
  if (need != Need::Plus && !failing) {
    if (ex.minus <= tau) {
      margin = std::min(margin, -ex.minus / nd);
    } else {
      failing = detail::Ray::NonPositive;
    }
  }

  Verdict v;
  if (!failing) {
    v.status = Status::Holds;
    v.margin = margin;
    return v;
  }
  // ||x + alpha d|| >= |alpha| ||d|| - ||x|| >= ||x|| once |alpha| >= 2 ||x|| / ||d||.
  const double reach = 2.0 * nx / nd * (1.0 + 1e-9);
  const auto m = detail::minimize_on_ray([&](double a) { return norm(space, axpy(x, a, d)); }, *failing, reach);
  v.margin = (m.value - nx) / nx;
  if (nx - m.value > tol.scaled(nx)) {
    v.status = Status::Fails;
    v.witness = Witness{m.arg * unit, m.value, unit, std::nullopt};
  } else {
    v.status = Status::Undetermined;
    v.note = "one-sided derivative excludes 0 but the decrease is within tolerance";
  }
  return v;
}

Scalar checked_unit(Scalar t, const NormedSpace& space) {
  if (std::fabs(std::abs(t) - 1.0) > 1e-9) throw DomainError("direction must have modulus 1");
  if (space.is_real() && t.imag() != 0.0) throw ConfigError("non-real direction in a real space");
  return t / std::abs(t);
}

Scalar checked_half_circle(Scalar u, const NormedSpace& space) {
  u = checked_unit(u, space);
  double a = std::arg(u);
  if (a < 0.0 && a > -1e-12) a = 0.0;
  if (a < 0.0 || a >= detail::kPi) throw DomainError("u must satisfy arg u in [0, pi)");
  return u;
}

}  // namespace

Verdict is_bj_orthogonal(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerances& tol) {
  space.check(x, y);
  if (space.is_real()) return decide_line(space, x, y, Need::Both, tol, 1.0);
  if (x.is_zero()) return trivially_holds("x = 0");
  if (y.is_zero()) return trivially_holds("y = 0");

  const double ny = norm(space, y);
  const double tau = tol.rel * ny;
  auto score = [&](double theta) {
    const auto ex = exact_derivatives(space.norm, x, detail::unit_at(theta) * y, tol.rel);
    return std::min(ex.plus, -ex.minus);
  };
  const auto scan = detail::scan_circle(score, tol.t_grid, ny, tau);
  if (scan.min_score >= -tau) {
    Verdict v;
    v.status = Status::Holds;
    v.margin = scan.min_score / ny;
    return v;
  }
  const Scalar t = detail::unit_at(scan.angle);
  Verdict v = decide_line(space, x, t * y, Need::Both, tol, t);
  if (v.status == Status::Holds) {
    // The refined angle and the re-evaluation disagree only at tolerance level.
    v.status = Status::Undetermined;
    v.margin = scan.min_score / ny;
  }
  return v;
}

Verdict in_plus_cone(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerances& tol) {
  space.check(x, y);
  if (!space.is_real()) throw ConfigError("x+ is defined for real spaces; use in_u_plus_cone");
  return decide_line(space, x, y, Need::Plus, tol, 1.0);
}

Verdict in_minus_cone(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerances& tol) {
  space.check(x, y);
  if (!space.is_real()) throw ConfigError("x- is defined for real spaces; use in_u_minus_cone");
  return decide_line(space, x, y, Need::Minus, tol, 1.0);
}

Verdict in_u_plus_cone(const NormedSpace& space, const Vector& x, const Vector& y, Scalar u,
                       const Tolerances& tol) {
  space.check(x, y);
  if (space.is_real()) throw ConfigError("x_u+ is defined for complex spaces");
  u = checked_half_circle(u, space);
  return decide_line(space, x, u * y, Need::Plus, tol, u);
}

Verdict in_u_minus_cone(const NormedSpace& space, const Vector& x, const Vector& y, Scalar u,
                        const Tolerances& tol) {
  space.check(x, y);
  if (space.is_real()) throw ConfigError("x_u- is defined for complex spaces");
  u = checked_half_circle(u, space);
  return decide_line(space, x, u * y, Need::Minus, tol, u);
}

Verdict directional_orthogonal(const NormedSpace& space, const Vector& x, const Vector& y, Scalar t,
                               const Tolerances& tol) {
  space.check(x, y);
  t = checked_unit(t, space);
  return decide_line(space, x, t * y, Need::Both, tol, t);
}

// ---------------------------------------------------------------------------
// Oracle

double default_sweep_range(double norm_x, double norm_y, const Tolerances& tol) {
  return 4.0 * std::max(norm_x, tol.abs_floor) / std::max(norm_y, tol.rel);
}

OracleResult lambda_sweep_oracle(const NormedSpace& space, const Vector& x, const Vector& y,
                                 const SweepOptions& options) {
  space.check(x, y);
  if (!(options.range > 0.0)) throw DomainError("sweep range must be positive");
  if (options.grid_points < 3) throw DomainError("sweep needs at least 3 grid points");
  return detail::sweep_oracle([&](Scalar l) { return norm(space, axpy(x, l, y)); }, !space.is_real(), options);
}

OracleResult lambda_sweep_oracle(const NormedSpace& space, const Vector& x, const Vector& y, double range,
                                 std::size_t grid_points) {
  SweepOptions o;
  o.range = range;
  o.grid_points = grid_points;
  return lambda_sweep_oracle(space, x, y, o);
}

// ---------------------------------------------------------------------------
// Smoothness

Verdict smooth_fast_path(const NormedSpace& space, const Vector& x, const Tolerances& /*tol*/) {
  space.check(x);
  if (x.is_zero()) throw DomainError("smoothness is defined at non-zero points");
  const Field f = space.field;
  const std::size_t dim = x.size();
  auto mag = [&](const Scalar& z) { return f == Field::Real ? std::fabs(z.real()) : std::abs(z); };
  auto phase = [&](const Scalar& z) { return z / mag(z); };

  Verdict v;
  v.status = Status::Holds;
  v.note = "fast path";

  const auto* lp = std::get_if<Lp>(&space.norm);
  if (lp != nullptr && lp->p > 1.0) {
    v.margin = 1.0;
    return v;
  }

  Vector split;
  if (lp != nullptr) {
    // Lp(1): smooth iff no coordinate vanishes.
    const double nx = norm(space, x);
    double smallest = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (mag(x[i]) < smallest) {
        smallest = mag(x[i]);
        arg = i;
      }
    }
    v.margin = smallest / nx - kActiveTieTolerance;
    if (smallest > kActiveTieTolerance * nx) return v;
    split = Vector::basis(f, dim, arg);
  } else {
    const auto* ws = std::get_if<WeightedSup>(&space.norm);
    auto weight = [&](std::size_t i) { return ws ? ws->weights[i] : 1.0; };
    std::size_t first = 0;
    double m1 = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (weight(i) * mag(x[i]) > m1) {
        m1 = weight(i) * mag(x[i]);
        first = i;
      }
    }
    std::size_t second = dim;
    double m2 = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i != first && weight(i) * mag(x[i]) > m2) {
        m2 = weight(i) * mag(x[i]);
        second = i;
      }
    }
    if (second == dim) m2 = 0.0;
    v.margin = (m1 - m2) / m1 - kActiveTieTolerance;
    if (second == dim || m2 < m1 * (1.0 - kActiveTieTolerance)) return v;
    std::vector<Scalar> c(dim);
    c[first] = phase(x[first]) / weight(first);
    c[second] = -phase(x[second]) / weight(second);
    split = Vector(f, std::move(c));
  }
  v.status = Status::Fails;
  const auto ex = exact_derivatives(space.norm, x, split, kActiveTieTolerance);
  v.witness = Witness{std::nullopt, ex.plus - ex.minus, std::nullopt, split};
  return v;
}

Verdict smooth_generic_path(const NormedSpace& space, const Vector& x, const SmoothnessPlan& plan,
                            const Tolerances& /*tol*/) {
  space.check(x);
  if (x.is_zero()) throw DomainError("smoothness is defined at non-zero points");
  const Field f = space.field;
  const std::size_t dim = x.size();

  std::vector<Vector> dirs;
  for (std::size_t j = 0; j < dim; ++j) {
    dirs.push_back(Vector::basis(f, dim, j));
    if (f == Field::Complex) dirs.push_back(Scalar{0, 1} * Vector::basis(f, dim, j));
  }
  const std::size_t structured = dirs.size();
  for (std::size_t j = 0; j < structured; ++j) dirs.push_back(-dirs[j]);
  Rng rng(plan.seed);
  for (std::size_t r = 0; r < plan.random_directions; ++r) dirs.push_back(random_unit_vector(space, dim, rng));

  // Splits below this are indistinguishable from bracket noise.
  constexpr double kSplitTolerance = 1e-6;
  Verdict v;
  v.status = Status::Holds;
  v.margin = std::numeric_limits<double>::infinity();
  for (const auto& y : dirs) {
    const double ny = norm(space, y);
    const auto b = difference_quotient_brackets(space.norm, x, y, default_initial_step(space.norm, x, y));
    const double split = b.rho_plus.lo - b.rho_minus.hi;
    v.margin = std::min(v.margin, -split / ny);
    if (split > kSplitTolerance * ny) {
      v.status = Status::Fails;
      v.margin = -split / ny;
      v.witness = Witness{std::nullopt, split, std::nullopt, y};
      return v;
    }
    if (split > 0.0) v.status = Status::Undetermined;
  }
  if (v.status == Status::Undetermined) v.note = "bracket overlap within split tolerance";
  v.margin = std::min(v.margin, 1.0);
  return v;
}

Verdict is_smooth_point(const NormedSpace& space, const Vector& x, const SmoothnessPlan& plan,
                        const Tolerances& tol) {
  if (x.is_zero()) throw DomainError("smoothness is defined at non-zero points");
  return plan.use_fast_path ? smooth_fast_path(space, x, tol) : smooth_generic_path(space, x, plan, tol);
}

// ---------------------------------------------------------------------------
// Symmetry searches

namespace {

std::vector<Vector> structured_candidates(const NormedSpace& space, const Vector& x, bool right) {
  const Field f = space.field;
  const std::size_t dim = x.size();
  std::vector<Vector> out;
  for (std::size_t j = 0; j < dim; ++j) {
    out.push_back(Vector::basis(f, dim, j));
    if (f == Field::Complex) out.push_back(Scalar{0, 1} * Vector::basis(f, dim, j));
  }
  if (dim >= 2 && dim <= 6) {
    // Sign patterns up to a global sign.
    for (std::size_t mask = 0; mask < (std::size_t{1} << (dim - 1)); ++mask) {
      std::vector<Scalar> c(dim, 1.0);
      for (std::size_t j = 1; j < dim; ++j) {
        if (mask & (std::size_t{1} << (j - 1))) c[j] = -1.0;
      }
      out.emplace_back(f, std::move(c));
    }
  }
  // Pieces of x on and off its maximal coordinates.
  double m = 0.0;
  for (const auto& z : x.coords()) m = std::max(m, std::abs(z));
  std::vector<Scalar> on(dim);
  std::vector<Scalar> off(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    (std::abs(x[j]) >= m * (1.0 - kActiveTieTolerance) ? on : off)[j] = x[j];
  }
  Vector on_v(x.field(), on);
  Vector off_v(x.field(), off);
  if (!off_v.is_zero()) {
    out.push_back(off_v);
    out.push_back(on_v - off_v);
  }
  if (right) {
    // x + e_j on vanishing coordinates, including the first free slot of a
    // finite-support space.
    std::size_t limit = dim;
    if (const auto* c = std::get_if<FiniteSupportSup>(&space.norm)) {
      limit = std::max(dim, std::min(c->max_dim, x.support_length() + 1));
    }
    for (std::size_t j = 0; j < limit; ++j) {
      if (x.at_padded(j) == Scalar{}) out.push_back(x + Vector::basis(f, limit, j));
    }
  }
  return out;
}

// Runs the candidate stream; `test` returns true when y is a counterexample.
template <class Make, class Test>
SymmetrySearch run_search(std::size_t trials, Make&& make, Test&& test) {
  SymmetrySearch out;
  for (std::size_t i = 0; i < trials; ++i) {
    auto y = make(i);
    ++out.trials_used;
    if (!y || y->is_zero()) continue;
    if (test(*y, out)) {
      out.counterexample = *y;
      return out;
    }
  }
  return out;
}

}  // namespace

SymmetrySearch left_symmetric_search(const NormedSpace& space, const Vector& x, std::size_t trials,
                                     std::uint64_t seed, const Tolerances& tol) {
  space.check(x);
  if (trials == 0) throw DomainError("trials must be positive");
  if (x.is_zero()) throw DomainError("symmetry searches need x != 0");
  const auto structured = structured_candidates(space, x, false);
  Rng rng(seed);

  auto make = [&](std::size_t i) -> std::optional<Vector> {
    // Structured candidates raw, then projected; then random projections.
    if (i < structured.size()) return structured[i];
    if (i < 2 * structured.size()) return left_projection(space, x, structured[i - structured.size()], rng);
    return left_projection(space, x, random_vector(space.field, x.size(), rng), rng);
  };
  auto test = [&](const Vector& y, SymmetrySearch& out) {
    auto fwd = is_bj_orthogonal(space, x, y, tol);
    if (!fwd.holds()) return false;
    auto bwd = is_bj_orthogonal(space, y, x, tol);
    if (!bwd.fails()) return false;
    out.first = std::move(fwd);
    out.second = std::move(bwd);
    return true;
  };
  return run_search(trials, make, test);
}

SymmetrySearch right_symmetric_search(const NormedSpace& space, const Vector& x, std::size_t trials,
                                      std::uint64_t seed, const Tolerances& tol) {
  space.check(x);
  if (trials == 0) throw DomainError("trials must be positive");
  if (x.is_zero()) throw DomainError("symmetry searches need x != 0");
  const auto structured = structured_candidates(space, x, true);
  Rng rng(seed);

  auto make = [&](std::size_t i) -> std::optional<Vector> {
    if (i < structured.size()) return structured[i];
    if (i < 2 * structured.size()) return right_projection(space, x, structured[i - structured.size()]);
    return right_projection(space, x, random_vector(space.field, x.size(), rng));
  };
  auto test = [&](const Vector& y, SymmetrySearch& out) {
    auto fwd = is_bj_orthogonal(space, y, x, tol);
    if (!fwd.holds()) return false;
    auto bwd = is_bj_orthogonal(space, x, y, tol);
    if (!bwd.fails()) return false;
    out.first = std::move(fwd);
    out.second = std::move(bwd);
    return true;
  };
  return run_search(trials, make, test);
}

}  // namespace bjg

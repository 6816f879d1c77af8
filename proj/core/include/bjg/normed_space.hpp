#pragma once

// Finite-dimensional normed spaces over R or C: vectors, the norm catalog,
// one-sided directional derivatives of the norm and norming functionals.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bjg {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

std::string to_string(Field field);

/// Coordinate vector over R or C. Real vectors keep every imaginary part at
/// exactly zero. Vectors of different length are zero-padded by arithmetic;
/// whether that is legal is decided by the space (see NormedSpace::check).
class Vector {
 public:
  Vector() = default;
  Vector(Field field, std::vector<Scalar> coords);

  static Vector real(std::initializer_list<double> values);
  static Vector real(std::span<const double> values);
  static Vector complex(std::vector<Scalar> values);
  static Vector zeros(Field field, std::size_t dim);
  static Vector basis(Field field, std::size_t dim, std::size_t index);

  Field field() const { return field_; }
  std::size_t size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Scalar> coords() const { return coords_; }

  /// Coordinate i, or zero past the end.
  Scalar at_padded(std::size_t i) const {
    return i < coords_.size() ? coords_[i] : Scalar{};
  }

  bool is_zero() const;

  /// Index of the last non-zero coordinate plus one (0 for the zero vector).
  std::size_t support_length() const;

  /// Copy with the given length; extra coordinates are zero.
  Vector resized(std::size_t dim) const;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  Field field_ = Field::Real;
  std::vector<Scalar> coords_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(Scalar s, const Vector& a);
inline Vector operator*(double s, const Vector& a) { return Scalar{s} * a; }

/// a + s * b without the temporary.
Vector axpy(const Vector& a, Scalar s, const Vector& b);

// Norm catalog.
struct Lp {
  double p = 2.0;
  friend bool operator==(const Lp&, const Lp&) = default;
};
struct Sup {
  friend bool operator==(const Sup&, const Sup&) = default;
};
struct WeightedSup {
  std::vector<double> weights;
  friend bool operator==(const WeightedSup&, const WeightedSup&) = default;
};
/// Sup norm on finitely supported sequences, at most max_dim coordinates.
struct FiniteSupportSup {
  std::size_t max_dim = 1;
  friend bool operator==(const FiniteSupportSup&, const FiniteSupportSup&) = default;
};

using NormSpec = std::variant<Lp, Sup, WeightedSup, FiniteSupportSup>;

/// Throws ConfigError for p < 1, non-positive weights, max_dim == 0.
void validate(const NormSpec& spec);
std::string describe(const NormSpec& spec);

bool is_hilbert(const NormSpec& spec);

/// The "X" of C(K,X).
struct NormedSpace {
  Field field = Field::Real;
  NormSpec norm = Lp{2.0};

  /// Checks a single vector: field, finiteness, dimension rules.
  void check(const Vector& x) const;
  /// Checks a pair of vectors that will be combined arithmetically.
  void check(const Vector& x, const Vector& y) const;

  bool is_real() const { return field == Field::Real; }
  bool operator==(const NormedSpace&) const = default;
};

double norm(const NormSpec& spec, const Vector& x);
inline double norm(const NormedSpace& space, const Vector& x) { return norm(space.norm, x); }

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double v, double slack = 0.0) const {
    return v >= lo - slack && v <= hi + slack;
  }
};

/// Brackets for rho'_+(x,y) and rho'_-(x,y), the right and left derivatives of
/// t -> ||x + t y|| at t = 0.
struct OneSidedDerivatives {
  Interval rho_plus;
  Interval rho_minus;
  double step_used = 0.0;
  bool exact = false;
};

/// Closed-form one-sided derivatives; every norm in the catalog has one.
struct ExactDerivatives {
  double plus = 0.0;
  double minus = 0.0;
};

/// Relative tie tolerance at machine level.
inline constexpr double kExactTie = 4 * 2.220446049250313e-16;

/// `tie` is the relative tolerance under which near-maximal coordinates (Sup
/// types) count as active and near-zero coordinates (Lp(1)) count as zero.
/// A positive tie widens [rho'_-, rho'_+] so that kinks at distance
/// ~tie * ||x|| are seen; the predicates use their tolerance here.
ExactDerivatives exact_derivatives(const NormSpec& spec, const Vector& x, const Vector& y,
                                   double tie = kExactTie);

/// Default first step of the schedule: 1e-3 * ||x|| / max(1, ||y||).
double default_initial_step(const NormSpec& spec, const Vector& x, const Vector& y);

/// Difference-quotient brackets. The step is halved from `step` until both
/// bracket widths drop below 1e-9 * ||y|| or rounding starts to dominate; the
/// tightest bracket seen is returned. The outer endpoints are the forward and
/// backward quotients, the inner ones Richardson estimates clamped into them.
/// Throws DomainError for x = 0 or step <= 0.
OneSidedDerivatives difference_quotient_brackets(const NormSpec& spec, const Vector& x,
                                                 const Vector& y, double step);

enum class DerivativeMethod { Auto, Brackets };

/// Auto uses the exact path (point intervals); Brackets forces the generic
/// difference-quotient construction.
OneSidedDerivatives one_sided_derivatives(const NormedSpace& space, const Vector& x,
                                          const Vector& y, double step,
                                          DerivativeMethod method = DerivativeMethod::Auto);
OneSidedDerivatives one_sided_derivatives(const NormedSpace& space, const Vector& x,
                                          const Vector& y,
                                          DerivativeMethod method = DerivativeMethod::Auto);

/// F(y) = sum_i conj(w_i) y_i for the dual vector w.
Scalar apply_functional(const Vector& w, const Vector& y);

/// Extreme norm-one functionals F with F(x) = ||x||, as dual vectors. Unique
/// at smooth points; for Sup-type norms one per active coordinate; for Lp(1)
/// one per sign (or phase) choice on zero coordinates, capped at 64. Ties and
/// zeros are decided at relative tolerance `tie`.
/// Throws DomainError for x = 0.
std::vector<Vector> norming_functionals(const NormedSpace& space, const Vector& x,
                                        double tie = kExactTie);

/// Relative tolerance used to decide ties among the largest coordinates.
inline constexpr double kActiveTieTolerance = 1e-9;

}  // namespace bjg

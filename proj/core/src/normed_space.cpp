#include "bjg/normed_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bjg/errors.hpp"

namespace bjg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double magnitude(const Scalar& z, Field field) {
  return field == Field::Real ? std::fabs(z.real()) : std::abs(z);
}

Field join(Field a, Field b) {
  return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real;
}

double sup_of(const Vector& x) {
  double m = 0.0;
  for (const auto& z : x.coords()) m = std::max(m, magnitude(z, x.field()));
  return m;
}

// Derivative of s -> |a + s b| at 0 from the right; the left derivative
// differs only when a = 0.
double coordinate_slope(const Scalar& a, const Scalar& b, Field field, bool right) {
  const double ma = magnitude(a, field);
  if (ma == 0.0) {
    const double mb = magnitude(b, field);
    return right ? mb : -mb;
  }
  return (std::conj(a) * b).real() / ma;
}

ExactDerivatives sup_like_derivatives(const Vector& x, const Vector& y,
                                      const std::vector<double>* weights, double tie) {
  const std::size_t n = std::max(x.size(), y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    m = std::max(m, w * magnitude(x[i], x.field()));
  }
  const Field f = join(x.field(), y.field());
  double plus = -std::numeric_limits<double>::infinity();
  double minus = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    const Scalar a = x.at_padded(i);
    if (w * magnitude(a, f) < m * (1.0 - tie)) continue;
    const Scalar b = y.at_padded(i);
    plus = std::max(plus, w * coordinate_slope(a, b, f, true));
    minus = std::min(minus, w * coordinate_slope(a, b, f, false));
  }
  return {plus, minus};
}

}  // namespace

std::string to_string(Field field) { return field == Field::Real ? "real" : "complex"; }

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(Field field, std::vector<Scalar> coords) : field_(field), coords_(std::move(coords)) {
  if (field_ == Field::Real) {
    for (auto& z : coords_) {
      if (z.imag() != 0.0) throw DomainError("real vector with non-zero imaginary part");
    }
  }
}

Vector Vector::real(std::initializer_list<double> values) {
  return real(std::span<const double>(values.begin(), values.size()));
}

Vector Vector::real(std::span<const double> values) {
  std::vector<Scalar> c(values.begin(), values.end());
  return Vector(Field::Real, std::move(c));
}

Vector Vector::complex(std::vector<Scalar> values) { return Vector(Field::Complex, std::move(values)); }

Vector Vector::zeros(Field field, std::size_t dim) {
  return Vector(field, std::vector<Scalar>(dim));
}

Vector Vector::basis(Field field, std::size_t dim, std::size_t index) {
  std::vector<Scalar> c(dim);
  c.at(index) = 1.0;
  return Vector(field, std::move(c));
}

bool Vector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& z) { return z == Scalar{}; });
}

std::size_t Vector::support_length() const {
  std::size_t n = coords_.size();
  while (n > 0 && coords_[n - 1] == Scalar{}) --n;
  return n;
}

Vector Vector::resized(std::size_t dim) const {
  std::vector<Scalar> c(dim);
  std::copy_n(coords_.begin(), std::min(dim, coords_.size()), c.begin());
  return Vector(field_, std::move(c));
}

Vector axpy(const Vector& a, Scalar s, const Vector& b) {
  Field f = join(a.field(), b.field());
  if (s.imag() != 0.0) f = Field::Complex;
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<Scalar> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a.at_padded(i) + s * b.at_padded(i);
  if (f == Field::Real) {
    for (auto& z : c) z.imag(0.0);
  }
  return Vector(f, std::move(c));
}

Vector operator+(const Vector& a, const Vector& b) { return axpy(a, 1.0, b); }
Vector operator-(const Vector& a, const Vector& b) { return axpy(a, -1.0, b); }
Vector operator-(const Vector& a) { return Scalar{-1.0} * a; }

Vector operator*(Scalar s, const Vector& a) {
  Field f = a.field();
  if (s.imag() != 0.0) f = Field::Complex;
  std::vector<Scalar> c(a.coords().begin(), a.coords().end());
  for (auto& z : c) z *= s;
  return Vector(f, std::move(c));
}

// ---------------------------------------------------------------------------
// Norm catalog

void validate(const NormSpec& spec) {
  std::visit(Overloaded{
                 [](const Lp& n) {
                   if (!(n.p >= 1.0) || !std::isfinite(n.p)) throw ConfigError("Lp norm needs 1 <= p < inf");
                 },
                 [](const Sup&) {},
                 [](const WeightedSup& n) {
                   if (n.weights.empty()) throw ConfigError("weighted sup norm needs weights");
                   for (double w : n.weights) {
                     if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("sup-norm weights must be positive");
                   }
                 },
                 [](const FiniteSupportSup& n) {
                   if (n.max_dim == 0) throw ConfigError("finite-support space needs maxDim >= 1");
                 },
             },
             spec);
}

std::string describe(const NormSpec& spec) {
  return std::visit(Overloaded{
                        [](const Lp& n) {
                          std::ostringstream os;
                          os << "lp(" << n.p << ")";
                          return os.str();
                        },
                        [](const Sup&) { return std::string("sup"); },
                        [](const WeightedSup& n) {
                          return "wsup(" + std::to_string(n.weights.size()) + " weights)";
                        },
                        [](const FiniteSupportSup& n) { return "c00(maxDim=" + std::to_string(n.max_dim) + ")"; },
                    },
                    spec);
}

bool is_hilbert(const NormSpec& spec) {
  const auto* lp = std::get_if<Lp>(&spec);
  return lp != nullptr && lp->p == 2.0;
}

void NormedSpace::check(const Vector& x) const {
  if (x.empty()) throw DomainError("empty vector");
  if (field == Field::Real && x.field() == Field::Complex) {
    for (const auto& z : x.coords()) {
      if (z.imag() != 0.0) throw ConfigError("complex vector in a real space");
    }
  }
  for (const auto& z : x.coords()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite coordinate");
  }
  if (const auto* w = std::get_if<WeightedSup>(&norm)) {
    if (w->weights.size() != x.size()) throw ConfigError("vector dimension does not match sup-norm weights");
  }
  if (const auto* c = std::get_if<FiniteSupportSup>(&norm)) {
    if (x.support_length() > c->max_dim) throw CapacityError("vector exceeds finite-support capacity");
  }
}

void NormedSpace::check(const Vector& x, const Vector& y) const {
  check(x);
  check(y);
  if (!std::holds_alternative<FiniteSupportSup>(norm) && x.size() != y.size()) {
    throw ConfigError("dimension mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
}

double norm(const NormSpec& spec, const Vector& x) {
  if (x.empty()) throw DomainError("norm of an empty vector");
  const Field f = x.field();
  return std::visit(Overloaded{
                        [&](const Lp& n) {
                          const double m = sup_of(x);
                          if (m == 0.0) return 0.0;
                          if (n.p == 1.0) {
                            double s = 0.0;
                            for (const auto& z : x.coords()) s += magnitude(z, f);
                            return s;
                          }
                          double s = 0.0;
                          if (n.p == 2.0) {
                            for (const auto& z : x.coords()) {
                              const double r = magnitude(z, f) / m;
                              s += r * r;
                            }
                            return m * std::sqrt(s);
                          }
                          for (const auto& z : x.coords()) s += std::pow(magnitude(z, f) / m, n.p);
                          return m * std::pow(s, 1.0 / n.p);
                        },
                        [&](const Sup&) { return sup_of(x); },
                        [&](const WeightedSup& n) {
                          if (n.weights.size() != x.size()) throw ConfigError("dimension does not match weights");
                          double m = 0.0;
                          for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, n.weights[i] * magnitude(x[i], f));
                          return m;
                        },
                        [&](const FiniteSupportSup& n) {
                          if (x.support_length() > n.max_dim) throw CapacityError("vector exceeds finite-support capacity");
                          return sup_of(x);
                        },
                    },
                    spec);
}

// ---------------------------------------------------------------------------
// One-sided derivatives

ExactDerivatives exact_derivatives(const NormSpec& spec, const Vector& x, const Vector& y, double tie) {
  if (x.is_zero()) throw DomainError("one-sided derivatives need x != 0");
  const Field f = join(x.field(), y.field());
  return std::visit(Overloaded{
                        [&](const Lp& n) -> ExactDerivatives {
                          const std::size_t dim = std::max(x.size(), y.size());
                          if (n.p == 1.0) {
                            const double zero = tie * norm(spec, x);
                            double base = 0.0;
                            double free = 0.0;
                            for (std::size_t i = 0; i < dim; ++i) {
                              const Scalar a = x.at_padded(i);
                              const Scalar b = y.at_padded(i);
                              if (magnitude(a, f) <= zero) {
                                free += magnitude(b, f);
                              } else {
                                base += coordinate_slope(a, b, f, true);
                              }
                            }
                            return {base + free, base - free};
                          }
                          // Smooth for p > 1: sum |x_i|^(p-2) Re(conj(x_i) y_i) / ||x||^(p-1),
                          // evaluated on x / max|x_i| to avoid overflow.
                          const double m = sup_of(x);
                          const double nx = norm(spec, x) / m;
                          double s = 0.0;
                          for (std::size_t i = 0; i < dim; ++i) {
                            const Scalar a = x.at_padded(i) / m;
                            const double ma = magnitude(a, f);
                            if (ma == 0.0) continue;
                            s += std::pow(ma, n.p - 2.0) * (std::conj(a) * y.at_padded(i)).real();
                          }
                          const double d = s / std::pow(nx, n.p - 1.0);
                          return {d, d};
                        },
                        [&](const Sup&) { return sup_like_derivatives(x, y, nullptr, tie); },
                        [&](const WeightedSup& n) { return sup_like_derivatives(x, y, &n.weights, tie); },
                        [&](const FiniteSupportSup&) { return sup_like_derivatives(x, y, nullptr, tie); },
                    },
                    spec);
}

double default_initial_step(const NormSpec& spec, const Vector& x, const Vector& y) {
  return 1e-3 * norm(spec, x) / std::max(1.0, norm(spec, y));
}

OneSidedDerivatives difference_quotient_brackets(const NormSpec& spec, const Vector& x, const Vector& y,
                                                 double step) {
  if (!(step > 0.0)) throw DomainError("step must be positive");
  if (x.is_zero()) throw DomainError("one-sided derivatives need x != 0");

  const double nx = norm(spec, x);
  const double ny = norm(spec, y);
  auto phi = [&](double s) { return norm(spec, axpy(x, s, y)); };

  const double target = 1e-9 * std::max(ny, 1e-12);
  const double floor_step = 1e-9 * step;

  OneSidedDerivatives best;
  double best_width = std::numeric_limits<double>::infinity();

  double t = step;
  double f1 = phi(t);
  double b1 = phi(-t);
  while (true) {
    const double f2 = phi(t / 2);
    const double b2 = phi(-t / 2);
    const double fq = (f1 - nx) / t;
    const double bq = (nx - b1) / t;
    const double fq_half = (f2 - nx) / (t / 2);
    const double bq_half = (nx - b2) / (t / 2);
    // Rounding in the quotients, dominant once t is tiny.
    const double pad = 8 * kEps * (nx + std::max(f1, b1)) / t;

    const double lo_plus = std::clamp(2 * fq_half - fq, std::min(bq, fq), fq);
    const double hi_minus = std::clamp(2 * bq_half - bq, bq, std::max(bq, fq));

    OneSidedDerivatives cur;
    cur.rho_plus = {lo_plus - pad, fq + pad};
    cur.rho_minus = {bq - pad, hi_minus + pad};
    cur.step_used = t;
    const double width = std::max(cur.rho_plus.width(), cur.rho_minus.width());

    if (width <= best_width) {
      best = cur;
      best_width = width;
    }
    if (width <= target || t / 2 < floor_step || width > 4 * best_width) break;
    t /= 2;
    f1 = f2;
    b1 = b2;
  }
  return best;
}

OneSidedDerivatives one_sided_derivatives(const NormedSpace& space, const Vector& x, const Vector& y, double step,
                                          DerivativeMethod method) {
  space.check(x, y);
  if (!(step > 0.0)) throw DomainError("step must be positive");
  if (x.is_zero()) throw DomainError("one-sided derivatives need x != 0");
  if (method == DerivativeMethod::Brackets) return difference_quotient_brackets(space.norm, x, y, step);
  const auto e = exact_derivatives(space.norm, x, y);
  OneSidedDerivatives out;
  out.rho_plus = {e.plus, e.plus};
  out.rho_minus = {e.minus, e.minus};
  out.step_used = step;
  out.exact = true;
  return out;
}

OneSidedDerivatives one_sided_derivatives(const NormedSpace& space, const Vector& x, const Vector& y,
                                          DerivativeMethod method) {
  space.check(x, y);
  if (x.is_zero()) throw DomainError("one-sided derivatives need x != 0");
  return one_sided_derivatives(space, x, y, default_initial_step(space.norm, x, y), method);
}

// ---------------------------------------------------------------------------
// Norming functionals

Scalar apply_functional(const Vector& w, const Vector& y) {
  Scalar s{};
  const std::size_t n = std::max(w.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) s += std::conj(w.at_padded(i)) * y.at_padded(i);
  return s;
}

std::vector<Vector> norming_functionals(const NormedSpace& space, const Vector& x, double tie) {
  space.check(x);
  if (x.is_zero()) throw DomainError("norming functionals need x != 0");
  const Field f = space.field;
  const std::size_t dim = x.size();
  auto phase = [&](const Scalar& z) { return z / magnitude(z, f); };

  auto sup_like = [&](const std::vector<double>* weights) {
    double m = 0.0;
    for (std::size_t i = 0; i < dim; ++i) m = std::max(m, (weights ? (*weights)[i] : 1.0) * magnitude(x[i], f));
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim; ++i) {
      const double w = weights ? (*weights)[i] : 1.0;
      if (w * magnitude(x[i], f) < m * (1.0 - tie)) continue;
      std::vector<Scalar> c(dim);
      c[i] = w * phase(x[i]);
      out.emplace_back(f, std::move(c));
    }
    return out;
  };

  return std::visit(Overloaded{
                        [&](const Lp& n) -> std::vector<Vector> {
                          if (n.p == 1.0) {
                            const double zero = tie * norm(space.norm, x);
                            std::vector<std::size_t> zeros;
                            std::vector<Scalar> base(dim);
                            for (std::size_t i = 0; i < dim; ++i) {
                              if (magnitude(x[i], f) <= zero) {
                                zeros.push_back(i);
                              } else {
                                base[i] = phase(x[i]);
                              }
                            }
                            const std::vector<Scalar> choices =
                                f == Field::Real ? std::vector<Scalar>{1.0, -1.0}
                                                 : std::vector<Scalar>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                            std::vector<Vector> out{Vector(f, base)};
                            for (std::size_t z : zeros) {
                              std::vector<Vector> next;
                              for (const auto& v : out) {
                                for (const auto& ch : choices) {
                                  if (next.size() >= 64) break;
                                  std::vector<Scalar> c(v.coords().begin(), v.coords().end());
                                  c[z] = ch;
                                  next.emplace_back(f, std::move(c));
                                }
                              }
                              out = std::move(next);
                            }
                            return out;
                          }
                          const double m = sup_of(x);
                          const double nx = norm(space.norm, x) / m;
                          std::vector<Scalar> c(dim);
                          for (std::size_t i = 0; i < dim; ++i) {
                            const Scalar a = x[i] / m;
                            const double ma = magnitude(a, f);
                            if (ma == 0.0) continue;
                            c[i] = std::pow(ma, n.p - 2.0) * a / std::pow(nx, n.p - 1.0);
                          }
                          return {Vector(f, std::move(c))};
                        },
                        [&](const Sup&) { return sup_like(nullptr); },
                        [&](const WeightedSup& n) { return sup_like(&n.weights); },
                        [&](const FiniteSupportSup&) { return sup_like(nullptr); },
                    },
                    space.norm);
}

}  // namespace bjg

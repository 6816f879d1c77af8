#include "bjg/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "bjg/errors.hpp"
#include "detail.hpp"

namespace bjg {

// ---------------------------------------------------------------------------
// KModel

KModel KModel::discrete(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("k" + std::to_string(i));
  return discrete(std::move(ids));
}

KModel KModel::discrete(std::vector<std::string> ids) {
  KModel k;
  const std::size_t n = ids.size();
  k.points = std::move(ids);
  k.isolated.assign(n, true);
  k.connected = n == 1;
  k.coordinates.assign(n, std::nullopt);
  k.description = "discrete " + std::to_string(n) + " points";
  k.validate();
  return k;
}

KModel KModel::sampled_interval(std::size_t samples, double a, double b) {
  if (samples < 2) throw DomainError("a sampled interval needs at least 2 samples");
  KModel k;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
    std::ostringstream id;
    id << "t" << i;
    k.points.push_back(id.str());
    k.coordinates.emplace_back(t);
  }
  k.isolated.assign(samples, false);
  k.connected = true;
  std::ostringstream d;
  d << samples << " samples of [" << a << "," << b << "] (sampled, approximate)";
  k.description = d.str();
  return k;
}

KModel KModel::interval_plus_point(std::size_t samples) {
  KModel k = sampled_interval(samples, 0.0, 1.0);
  k.points.emplace_back("2");
  k.isolated.push_back(true);
  k.coordinates.emplace_back(2.0);
  k.connected = false;
  k.description = std::to_string(samples) + " samples of [0,1] plus isolated {2} (sampled, approximate)";
  return k;
}

std::size_t KModel::index_of(const std::string& id) const {
  const auto it = std::find(points.begin(), points.end(), id);
  if (it == points.end()) throw DataError("unknown point '" + id + "'");
  return static_cast<std::size_t>(it - points.begin());
}

bool KModel::is_sampled() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!isolated[i]) return true;
  }
  return false;
}

void KModel::validate() const {
  if (points.empty()) throw DataError("K needs at least one point");
  if (isolated.size() != points.size()) throw DataError("isolated flags do not match the points of K");
  if (!coordinates.empty() && coordinates.size() != points.size()) {
    throw DataError("coordinates do not match the points of K");
  }
  std::set<std::string> seen(points.begin(), points.end());
  if (seen.size() != points.size()) throw DataError("point identifiers of K must be unique");
  if (connected && points.size() > 1 && std::find(isolated.begin(), isolated.end(), true) != isolated.end()) {
    throw DataError("a connected model cannot have isolated points");
  }
}

// ---------------------------------------------------------------------------
// CFunction

CFunction::CFunction(KModel k, NormedSpace space, std::vector<Vector> values)
    : k_(std::move(k)), space_(std::move(space)), values_(std::move(values)) {
  k_.validate();
  if (k_.coordinates.empty()) k_.coordinates.assign(k_.points.size(), std::nullopt);
  validate(space_.norm);
  if (values_.size() != k_.size()) throw DataError("a function needs one value per point of K");
  const bool c00 = std::holds_alternative<FiniteSupportSup>(space_.norm);
  for (auto& v : values_) {
    space_.check(v);
    if (!c00 && v.size() != values_.front().size()) throw ConfigError("values of a function differ in dimension");
    if (v.field() != space_.field) v = Vector(space_.field, {v.coords().begin(), v.coords().end()});
  }
}

CFunction CFunction::constant(KModel k, NormedSpace space, const Vector& x) {
  std::vector<Vector> v(k.size(), x);
  return CFunction(std::move(k), std::move(space), std::move(v));
}

CFunction CFunction::indicator(KModel k, NormedSpace space, std::size_t k0, const Vector& x) {
  if (k0 >= k.size()) throw DomainError("indicator point out of range");
  std::vector<Vector> v(k.size(), Vector::zeros(x.field(), x.size()));
  v[k0] = x;
  return CFunction(std::move(k), std::move(space), std::move(v));
}

std::size_t CFunction::dim() const {
  std::size_t d = 0;
  for (const auto& v : values_) d = std::max(d, v.size());
  return d;
}

std::vector<double> CFunction::pointwise_norms() const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(norm(space_, v));
  return out;
}

bool CFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Vector& v) { return v.is_zero(); });
}

std::vector<std::size_t> CFunction::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!values_[k].is_zero()) out.push_back(k);
  }
  return out;
}

CFunction CFunction::scaled_by(const std::vector<double>& h) const {
  if (h.size() != values_.size()) throw DomainError("scalar function does not match K");
  std::vector<Vector> v;
  v.reserve(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) v.push_back(h[k] * values_[k]);
  return with_values(std::move(v));
}

CFunction CFunction::with_values(std::vector<Vector> values) const { return CFunction(k_, space_, std::move(values)); }

void check_compatible(const CFunction& f, const CFunction& g) {
  if (!(f.model() == g.model())) throw ConfigError("functions live on different models of K");
  if (!(f.space() == g.space())) throw ConfigError("functions take values in different spaces");
}

CFunction axpy(const CFunction& f, Scalar s, const CFunction& g) {
  check_compatible(f, g);
  if (f.space().is_real() && s.imag() != 0.0) throw ConfigError("complex scalar in a real space");
  std::vector<Vector> v;
  v.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) v.push_back(axpy(f[k], s, g[k]));
  return f.with_values(std::move(v));
}

CFunction operator+(const CFunction& f, const CFunction& g) { return axpy(f, 1.0, g); }
CFunction operator-(const CFunction& f, const CFunction& g) { return axpy(f, -1.0, g); }

CFunction operator*(Scalar s, const CFunction& f) {
  std::vector<Vector> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(s * x);
  return f.with_values(std::move(v));
}

double sup_norm(const CFunction& f) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, f.pointwise_norm(k));
  return m;
}

std::vector<std::size_t> norm_attaining_set(const CFunction& f, double tol) {
  if (tol < 0.0) throw DomainError("tolerance must be non-negative");
  const auto n = f.pointwise_norms();
  const double m = *std::max_element(n.begin(), n.end());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n.size(); ++k) {
    if (n[k] >= m * (1.0 - tol)) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characterizations

namespace {

double sup_along(const CFunction& f, Scalar s, const CFunction& g) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, norm(f.space(), axpy(f[k], s, g[k])));
  return m;
}

Verdict trivial(const char* why) {
  Verdict v;
  v.status = Status::Holds;
  v.margin = 1.0;
  v.note = why;
  return v;
}

ExactDerivatives point_derivatives(const CFunction& f, const CFunction& g, std::size_t k, Scalar t,
                                   const Tolerances& tol) {
  if (g[k].is_zero()) return {0.0, 0.0};
  return exact_derivatives(f.space().norm, f[k], t * g[k], tol.rel);
}

// Looks for a decrease of the sup norm along lambda = alpha * t, alpha on the
// ray; falls back to the full oracle. Returns Fails with the witness or
// Undetermined with the observed relative margin.
Verdict seek_witness(const CFunction& f, const CFunction& g, Scalar t, detail::Ray ray, const Tolerances& tol,
                     std::string note) {
  const double nf = sup_norm(f);
  const double ng = sup_norm(g);
  const double reach = 2.0 * nf / ng * (1.0 + 1e-9);
  const auto m = detail::minimize_on_ray([&](double a) { return sup_along(f, a * t, g); }, ray, reach);
  Verdict v;
  v.note = std::move(note);
  Scalar lambda = m.arg * t;
  double value = m.value;
  if (nf - value <= tol.scaled(nf)) {
    const auto o = ckx_oracle(f, g);
    if (o.min_value < value) {
      lambda = o.argmin;
      value = o.min_value;
    }
  }
  v.margin = (value - nf) / nf;
  if (nf - value > tol.scaled(nf)) {
    v.status = Status::Fails;
    v.witness = Witness{lambda, value, t, std::nullopt};
  } else {
    v.status = Status::Undetermined;
    v.note += "; no decrease beyond tolerance was found";
  }
  return v;
}

}  // namespace

Verdict ckx_orthogonal_real(const CFunction& f, const CFunction& g, const Tolerances& tol) {
  check_compatible(f, g);
  if (!f.space().is_real()) throw ConfigError("real characterization on a complex space");
  if (f.is_zero()) return trivial("f = 0");
  if (g.is_zero()) return trivial("g = 0");
  const double ng = sup_norm(g);
  const double tau = tol.rel * ng;
  const auto mf = norm_attaining_set(f, tol.mf);

  double best_plus = -std::numeric_limits<double>::infinity();
  double best_minus = std::numeric_limits<double>::infinity();
  std::size_t u1 = mf.front();
  std::size_t u2 = mf.front();
  for (std::size_t k : mf) {
    const auto ex = point_derivatives(f, g, k, 1.0, tol);
    if (ex.plus > best_plus) {
      best_plus = ex.plus;
      u1 = k;
    }
    if (ex.minus < best_minus) {
      best_minus = ex.minus;
      u2 = k;
    }
  }
  const bool plus_ok = best_plus >= -tau;
  const bool minus_ok = best_minus <= tau;
  if (plus_ok && minus_ok) {
    Verdict v;
    v.status = Status::Holds;
    v.margin = std::min({best_plus / ng, -best_minus / ng, 1.0});
    v.points = {u1, u2};
    return v;
  }
  if (!plus_ok) {
    return seek_witness(f, g, 1.0, detail::Ray::NonNegative, tol, "no point of M_f has g(u) in f(u)+");
  }
  return seek_witness(f, g, 1.0, detail::Ray::NonPositive, tol, "no point of M_f has g(u) in f(u)-");
}

Verdict ckx_orthogonal_complex(const CFunction& f, const CFunction& g, const Tolerances& tol) {
  check_compatible(f, g);
  if (f.space().is_real()) throw ConfigError("complex characterization on a real space");
  if (f.is_zero()) return trivial("f = 0");
  if (g.is_zero()) return trivial("g = 0");
  const double ng = sup_norm(g);
  const double tau = tol.rel * ng;
  const auto mf = norm_attaining_set(f, tol.mf);

  // Angles in [0, pi) are u with the plus cone; theta + pi encodes the minus
  // cone of u, since rho'_-(x, u y) = -rho'_+(x, -u y).
  auto best_at = [&](double theta) {
    const Scalar t = detail::unit_at(theta);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = mf.front();
    for (std::size_t k : mf) {
      const double p = point_derivatives(f, g, k, t, tol).plus;
      if (p > best) {
        best = p;
        arg = k;
      }
    }
    return std::pair{best, arg};
  };
  const auto scan = detail::scan_circle([&](double th) { return best_at(th).first; }, 2 * tol.u_grid, ng, tau);
  if (scan.min_score >= -tau) {
    Verdict v;
    v.status = Status::Holds;
    v.margin = std::min(scan.min_score / ng, 1.0);
    std::set<std::size_t> used;
    const auto grid = DirectionGrid::half(tol.u_grid);
    for (std::size_t j = 0; j < grid.count; ++j) {
      used.insert(best_at(grid.angle(j)).second);
      used.insert(best_at(grid.angle(j) + detail::kPi).second);
    }
    v.points.assign(used.begin(), used.end());
    return v;
  }
  const Scalar t = detail::unit_at(scan.angle);
  const bool minus_side = scan.angle >= detail::kPi;
  auto v = seek_witness(f, g, t, detail::Ray::NonNegative, tol,
                        minus_side ? "for some u no point of M_f has g(k) in f(k)_u-"
                                   : "for some u no point of M_f has g(k) in f(k)_u+");
  if (v.witness) v.witness->unit = minus_side ? -t : t;
  return v;
}

Verdict ckx_orthogonal_directional(const CFunction& f, const CFunction& g, const Tolerances& tol) {
  check_compatible(f, g);
  const auto mf = norm_attaining_set(f, tol.mf);
  if (mf.size() > 1 && !f.model().connected) {
    throw PreconditionError("the directional characterization needs a connected M_f");
  }
  if (f.is_zero()) return trivial("f = 0");
  if (g.is_zero()) return trivial("g = 0");
  const double ng = sup_norm(g);
  const double tau = tol.rel * ng;

  auto best_at = [&](double theta) {
    const Scalar t = detail::unit_at(theta);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = mf.front();
    for (std::size_t k : mf) {
      const auto ex = point_derivatives(f, g, k, t, tol);
      const double s = std::min(ex.plus, -ex.minus);
      if (s > best) {
        best = s;
        arg = k;
      }
    }
    return std::pair{best, arg};
  };

  if (f.space().is_real()) {
    const auto [score, k] = best_at(0.0);
    if (score >= -tau) {
      Verdict v;
      v.status = Status::Holds;
      v.margin = std::min(score / ng, 1.0);
      v.points = {k};
      return v;
    }
    return seek_witness(f, g, 1.0, detail::Ray::Line, tol, "no point of M_f has f(k) _|_ g(k)");
  }
  const auto scan = detail::scan_circle([&](double th) { return best_at(th).first; }, tol.t_grid, ng, tau);
  if (scan.min_score >= -tau) {
    Verdict v;
    v.status = Status::Holds;
    v.margin = std::min(scan.min_score / ng, 1.0);
    std::set<std::size_t> used;
    const auto grid = DirectionGrid::full(tol.t_grid);
    for (std::size_t j = 0; j < grid.count; ++j) used.insert(best_at(grid.angle(j)).second);
    v.points.assign(used.begin(), used.end());
    return v;
  }
  return seek_witness(f, g, detail::unit_at(scan.angle), detail::Ray::Line, tol,
                      "for some t no point of M_f has f(k) _|_t g(k)");
}

Verdict ckx_orthogonal(const CFunction& f, const CFunction& g, const Tolerances& tol) {
  return f.space().is_real() ? ckx_orthogonal_real(f, g, tol) : ckx_orthogonal_complex(f, g, tol);
}

OracleResult ckx_oracle(const CFunction& f, const CFunction& g, const SweepOptions& options) {
  check_compatible(f, g);
  if (options.grid_points < 3) throw DomainError("sweep needs at least 3 grid points");
  if (options.range < 0.0) throw DomainError("sweep range must be positive");
  const double nf = sup_norm(f);
  if (g.is_zero()) return {nf, 0.0};
  SweepOptions o = options;
  if (o.range == 0.0) o.range = default_sweep_range(nf, sup_norm(g));
  return detail::sweep_oracle([&](Scalar l) { return sup_along(f, l, g); }, !f.space().is_real(), o);
}

OracleResult ckx_oracle(const CFunction& f, const CFunction& g, double range, std::size_t grid_points) {
  SweepOptions o;
  o.range = range;
  o.grid_points = grid_points;
  return ckx_oracle(f, g, o);
}

}  // namespace bjg

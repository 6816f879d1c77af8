#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bjg/classifiers.hpp"
#include "bjg/errors.hpp"

namespace bjg {

namespace {

std::string describe(const PairCheck& c) {
  std::ostringstream os;
  os << "verdict " << to_string(c.verdict.status) << ", oracle minimum " << c.oracle.min_value << " (relative gap "
     << c.relative_gap << ")";
  return os.str();
}

void require_orthogonal(const CFunction& a, const CFunction& b, const Tolerances& tol, const char* what) {
  const auto c = check_pair(a, b, tol);
  if (!c.verdict.holds() || c.relative_gap < -10.0 * tol.rel) {
    throw InternalError(std::string(what) + " should be orthogonal: " + describe(c));
  }
}

void require_not_orthogonal(const CFunction& a, const CFunction& b, const Tolerances& tol, const char* what) {
  const auto c = check_pair(a, b, tol);
  if (!c.verdict.fails() || c.relative_gap >= -tol.rel) {
    throw InternalError(std::string(what) + " should not be orthogonal: " + describe(c));
  }
}

void require_unit(const CFunction& f, const char* what) {
  if (std::fabs(sup_norm(f) - 1.0) > 1e-9) throw PreconditionError(std::string(what) + " needs ||f|| = 1");
}

bool has_coordinate(const KModel& k, std::size_t i) { return !k.isolated[i] && k.coordinates[i].has_value(); }

}  // namespace

PairCheck check_pair(const CFunction& f, const CFunction& g, const Tolerances& tol) {
  PairCheck c;
  c.verdict = ckx_orthogonal(f, g, tol);
  c.oracle = ckx_oracle(f, g);
  const double nf = sup_norm(f);
  c.relative_gap = nf > 0.0 ? (c.oracle.min_value - nf) / nf : 0.0;
  return c;
}

CFunction construct_left_counterexample(const CFunction& f, std::size_t k0, std::size_t k1, const Tolerances& tol) {
  const auto& k = f.model();
  if (k0 >= f.size() || k1 >= f.size()) throw DomainError("point index out of range");
  if (k0 == k1) throw PreconditionError("k1 must differ from k0");
  if (f[k1].is_zero()) throw PreconditionError("f(k1) must be non-zero");
  const auto mf = norm_attaining_set(f, tol.mf);
  if (std::find(mf.begin(), mf.end(), k0) == mf.end()) throw PreconditionError("k0 must lie in M_f");

  std::vector<double> h(f.size(), 0.0);
  h[k1] = 1.0;
  if (has_coordinate(k, k1) && has_coordinate(k, k0)) {
    // Tent around k1 that vanishes on a neighbourhood of k0.
    const double c1 = *k.coordinates[k1];
    const double r = std::fabs(c1 - *k.coordinates[k0]) / 2.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (has_coordinate(k, i)) h[i] = std::max(0.0, 1.0 - std::fabs(*k.coordinates[i] - c1) / r);
    }
  }
  auto g = f.scaled_by(h);
  require_orthogonal(f, g, tol, "f and the constructed g");
  require_not_orthogonal(g, f, tol, "the constructed g and f");
  return g;
}

CFunction construct_right_witness_vanishing(const CFunction& f, std::size_t k0, const Vector& x,
                                            const Tolerances& tol) {
  const auto& k = f.model();
  if (k0 >= f.size()) throw DomainError("point index out of range");
  require_unit(f, "the vanishing construction");
  if (!f[k0].is_zero()) throw PreconditionError("f(k0) must vanish");
  f.space().check(x);
  if (std::fabs(norm(f.space(), x) - 1.0) > 1e-9) throw PreconditionError("x must be a unit vector");

  const auto norms = f.pointwise_norms();
  std::vector<double> h(f.size(), 0.0);
  h[k0] = 1.0;
  if (has_coordinate(k, k0)) {
    // Tent around k0 reaching zero before the first point with ||f|| >= 1/2.
    const double c0 = *k.coordinates[k0];
    double r = 1.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (norms[i] >= 0.5 && k.coordinates[i]) r = std::min(r, std::fabs(*k.coordinates[i] - c0));
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (has_coordinate(k, i) && norms[i] < 0.5) {
        h[i] = std::max(0.0, 1.0 - std::fabs(*k.coordinates[i] - c0) / r);
      }
    }
  }
  std::vector<Vector> values;
  values.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values.push_back(axpy(h[i] * x, 1.0 - h[i], f[i]));
  auto g = f.with_values(std::move(values));

  if (std::fabs(sup_norm(g) - 1.0) > 1e-9) throw InternalError("vanishing witness does not have norm 1");
  require_orthogonal(g, f, tol, "the constructed g and f");
  if (sup_norm(axpy(f, -0.5, g)) >= 1.0 - tol.rel) throw InternalError("||f - g/2|| is not below 1");
  require_not_orthogonal(f, g, tol, "f and the constructed g");
  return g;
}

CFunction construct_right_witness_non_full(const CFunction& f, std::size_t k0, const Tolerances& tol) {
  if (k0 >= f.size()) throw DomainError("point index out of range");
  require_unit(f, "the non-full construction");
  if (f[k0].is_zero()) throw PreconditionError("f(k0) vanishes; use the vanishing construction");
  const auto mf = norm_attaining_set(f, tol.mf);
  if (std::find(mf.begin(), mf.end(), k0) != mf.end()) throw PreconditionError("k0 must lie outside M_f");

  std::vector<Vector> values;
  values.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values.push_back(Vector::zeros(f[i].field(), f[i].size()));
  for (std::size_t i : mf) values[i] = f[i];
  values[k0] = (-1.0 / f.pointwise_norm(k0)) * f[k0];
  auto g = f.with_values(std::move(values));

  if (std::fabs(sup_norm(g) - 1.0) > 1e-9) throw InternalError("non-full witness does not have norm 1");
  require_orthogonal(g, f, tol, "the constructed g and f");
  require_not_orthogonal(f, g, tol, "f and the constructed g");
  return g;
}

Verdict verify_right_additivity(const CFunction& f, const CFunction& g, const CFunction& h, const Tolerances& tol) {
  check_compatible(f, g);
  check_compatible(f, h);
  const auto vg = ckx_orthogonal(f, g, tol);
  const auto vh = ckx_orthogonal(f, h, tol);
  Verdict v;
  if (vg.fails() || vh.fails()) {
    v.status = Status::Holds;
    v.margin = 1.0;
    v.note = "hypothesis f _|_ g and f _|_ h fails";
    return v;
  }
  if (vg.undetermined() || vh.undetermined()) {
    v.status = Status::Undetermined;
    v.margin = std::min(vg.margin, vh.margin);
    v.note = "hypothesis undetermined";
    return v;
  }
  const auto sum = g + h;
  v = ckx_orthogonal(f, sum, tol);
  if (v.fails()) {
    const auto o = ckx_oracle(f, sum);
    const double nf = sup_norm(f);
    if (o.min_value >= nf - tol.scaled(nf)) {
      v.status = Status::Undetermined;
      v.note = "violation not confirmed by the oracle";
    } else {
      v.note = "f _|_ g and f _|_ h but not f _|_ (g + h)";
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Interval example

CFunction interval_example_f(std::size_t samples) {
  auto k = KModel::interval_plus_point(samples);
  std::vector<Vector> v(k.size(), Vector::real({1.0, 1.0}));
  v.back() = Vector::real({1.0, 0.0});
  return CFunction(std::move(k), NormedSpace{Field::Real, Sup{}}, std::move(v));
}

CFunction interval_example_g(std::size_t samples) {
  return CFunction::constant(KModel::interval_plus_point(samples), NormedSpace{Field::Real, Sup{}},
                             Vector::real({0.5, 1.0}));
}

ExampleReport reproduce_interval_example(std::size_t samples, const ClassifyOptions& options) {
  if (samples < 2) throw DomainError("the example needs at least 2 samples");
  const auto& tol = options.tol;
  const auto f = interval_example_f(samples);
  const auto g = interval_example_g(samples);
  ExampleReport r;
  r.samples = samples;
  r.norm_f = sup_norm(f);
  r.norm_g = sup_norm(g);
  r.mf_is_all = norm_attaining_set(f, tol.mf).size() == f.size();
  r.g_perp_f = check_pair(g, f, tol);
  r.f_perp_g = check_pair(f, g, tol);
  r.value_at_half = sup_norm(axpy(f, -0.5, g));
  r.right = classify_right_symmetric(f, options);

  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  expect(std::fabs(r.norm_f - 1.0) <= 1e-12, "||f|| = 1");
  expect(std::fabs(r.norm_g - 1.0) <= 1e-12, "||g|| = 1");
  expect(r.mf_is_all, "M_f = K");
  expect(r.g_perp_f.verdict.holds(), "g _|_ f holds");
  expect(std::fabs(r.g_perp_f.oracle.min_value - 1.0) <= 1e-9, "min ||g + lambda f|| = 1");
  expect(r.f_perp_g.verdict.fails(), "f _|_ g fails");
  expect(r.f_perp_g.oracle.min_value < 1.0 - 1e-9, "min ||f + lambda g|| < 1");
  expect(std::fabs(r.value_at_half - 0.75) <= 1e-12, "||f - g/2|| = 3/4");
  expect(r.right.answer == Answer::No, "f is not right symmetric");
  r.passed = r.failures.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Finite-support remark

C00Report c00_remark_witness(const CFunction& f, bool normalize, const Tolerances& tol) {
  const auto* cap = std::get_if<FiniteSupportSup>(&f.space().norm);
  if (cap == nullptr) throw ConfigError("the construction needs a finite-support sup space");
  if (f.is_zero()) throw DomainError("f must be non-zero");
  C00Report r;
  r.f = normalize ? (1.0 / sup_norm(f)) * f : f;
  require_unit(r.f, "the finite-support construction");

  std::vector<Vector> values;
  values.reserve(r.f.size());
  for (const auto& x : r.f.values()) {
    const std::size_t n = x.support_length();
    if (n + 1 > cap->max_dim) throw CapacityError("e_{n+1} does not fit into maxDim");
    values.push_back(x.resized(n + 1) + Vector::basis(x.field(), n + 1, n));
  }
  r.g = r.f.with_values(std::move(values));
  r.norm_g = sup_norm(r.g);
  r.half_gap = sup_norm(axpy(r.f, -0.5, r.g));
  r.g_perp_f = check_pair(r.g, r.f, tol);
  r.f_perp_g = check_pair(r.f, r.g, tol);

  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  expect(std::fabs(r.norm_g - 1.0) <= 1e-12, "||g|| = 1");
  expect(r.g_perp_f.verdict.holds() && r.g_perp_f.relative_gap >= -10.0 * tol.rel, "g _|_ f");
  expect(r.half_gap <= 0.5 + 1e-12, "||f - g/2|| <= 1/2");
  expect(r.f_perp_g.verdict.fails(), "f _|_ g fails");
  r.passed = r.failures.empty();
  return r;
}

}  // namespace bjg

#include "bjg/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bjg/errors.hpp"
#include "bjg/random_instances.hpp"

namespace bjg {

std::string to_string(Answer answer) {
  switch (answer) {
    case Answer::Yes:
      return "yes";
    case Answer::No:
      return "no";
    case Answer::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

// Directions of a grid on the unit sphere of R^dim, dim <= 3, up to sign.
std::vector<Vector> sphere_grid(std::size_t dim, std::size_t resolution) {
  std::vector<Vector> out;
  const double pi = std::numbers::pi;
  if (dim == 1) {
    out.push_back(Vector::real({1.0}));
  } else if (dim == 2) {
    for (std::size_t j = 0; j < resolution; ++j) {
      const double a = pi * static_cast<double>(j) / static_cast<double>(resolution);
      out.push_back(Vector::real({std::cos(a), std::sin(a)}));
    }
  } else if (dim == 3) {
    for (std::size_t i = 0; i <= resolution / 2; ++i) {
      const double polar = pi * static_cast<double>(i) / static_cast<double>(resolution);
      for (std::size_t j = 0; j < resolution; ++j) {
        const double az = 2.0 * pi * static_cast<double>(j) / static_cast<double>(resolution);
        out.push_back(Vector::real(
            {std::sin(polar) * std::cos(az), std::sin(polar) * std::sin(az), std::cos(polar)}));
        if (i == 0) break;
      }
    }
  }
  return out;
}

bool grid_supported(const NormedSpace& space, const Vector& x) {
  return space.is_real() && x.size() <= 3 && !std::holds_alternative<FiniteSupportSup>(space.norm);
}

enum class Side { Left, Right };

// Exhaustive check on a direction grid. Returns a counterexample y, or
// nothing when every grid candidate behaves symmetrically.
std::optional<Vector> grid_search(const NormedSpace& space, const Vector& x, Side side, std::size_t resolution,
                                  const Tolerances& tol) {
  const double nx = norm(space, x);
  const auto fs = norming_functionals(space, x, tol.rel);
  for (const auto& d : sphere_grid(x.size(), resolution)) {
    if (side == Side::Left) {
      for (const auto& w : fs) {
        const auto y = axpy(d, -apply_functional(w, d).real() / nx, x);
        if (y.is_zero()) continue;
        if (is_bj_orthogonal(space, x, y, tol).holds() && is_bj_orthogonal(space, y, x, tol).fails()) return y;
      }
    } else {
      const auto y = right_projection(space, x, d);
      if (y.is_zero()) continue;
      if (is_bj_orthogonal(space, y, x, tol).holds() && is_bj_orthogonal(space, x, y, tol).fails()) return y;
    }
  }
  return std::nullopt;
}

void record_pair(Classification& c, const std::string& name, const PairCheck& p) {
  c.margins[name + "_verdict_margin"] = p.verdict.margin;
  c.margins[name + "_oracle_gap"] = p.relative_gap;
}

bool confirms_counterexample(const PairCheck& holds, const PairCheck& fails, const Tolerances& tol) {
  return holds.verdict.holds() && holds.relative_gap >= -10.0 * tol.rel && fails.verdict.fails() &&
         fails.relative_gap < -tol.rel;
}

}  // namespace

// ---------------------------------------------------------------------------
// Left symmetry

Classification classify_left_symmetric(const CFunction& f, const ClassifyOptions& options) {
  const auto& tol = options.tol;
  Classification c;
  if (f.is_zero()) {
    c.answer = Answer::Yes;
    c.theorem = "zero function";
    c.reason = "0 _|_ g and g _|_ 0 for every g";
    return c;
  }
  const auto support = f.support();
  if (support.size() >= 2) {
    const auto mf = norm_attaining_set(f, tol.mf);
    const std::size_t k0 = mf.front();
    const std::size_t k1 = support.front() == k0 ? support[1] : support.front();
    auto g = construct_left_counterexample(f, k0, k1, tol);
    c.answer = Answer::No;
    c.theorem = "support with two or more points";
    c.reason = "g = h f with h(" + f.model().points[k1] + ") = 1 vanishing near " + f.model().points[k0] +
               ": f _|_ g but not g _|_ f";
    record_pair(c, "f_perp_g", check_pair(f, g, tol));
    record_pair(c, "g_perp_f", check_pair(g, f, tol));
    c.witness = std::move(g);
    return c;
  }

  const std::size_t k0 = support.front();
  const auto& name = f.model().points[k0];
  if (!f.model().is_isolated(k0)) {
    c.answer = Answer::Unknown;
    c.theorem = "single support point that is not isolated";
    c.reason = "f is supported on the sample " + name +
               " of a continuum; the finite model cannot represent the nearby points the argument needs";
    return c;
  }

  const auto& space = f.space();
  const auto& x = f[k0];
  if (options.certifier.use_hilbert && is_hilbert(space.norm)) {
    c.answer = Answer::Yes;
    c.theorem = "single isolated support point + Hilbert certificate";
    c.reason = "f = f(" + name + ") chi_{" + name + "} and every point of an inner-product space is left symmetric";
    return c;
  }

  auto lift = [&](const Vector& y) { return CFunction::indicator(f.model(), space, k0, y); };
  const auto search = left_symmetric_search(space, x, options.certifier.search_trials, options.certifier.seed, tol);
  c.trials = search.trials_used;
  std::optional<Vector> y = search.counterexample;
  bool by_grid = false;
  if (!y && options.certifier.grid_certify && grid_supported(space, x)) {
    y = grid_search(space, x, Side::Left, options.certifier.grid_resolution, tol);
    by_grid = true;
    if (!y) {
      c.answer = Answer::Yes;
      c.theorem = "single isolated support point + grid certificate";
      c.reason = "grid-certified: no counterexample among " + std::to_string(options.certifier.grid_resolution) +
                 "-per-half-turn grid directions";
      return c;
    }
  }
  if (y) {
    auto g = lift(*y);
    const auto fg = check_pair(f, g, tol);
    const auto gf = check_pair(g, f, tol);
    if (confirms_counterexample(fg, gf, tol)) {
      c.answer = Answer::No;
      c.theorem = "single isolated support point; f(k0) is not left symmetric";
      c.reason = std::string("point-level counterexample ") + (by_grid ? "from the grid" : "from the search") +
                 " lifted to g = y chi_{" + name + "}";
      record_pair(c, "f_perp_g", fg);
      record_pair(c, "g_perp_f", gf);
      c.witness = std::move(g);
      return c;
    }
  }
  c.answer = Answer::Unknown;
  c.theorem = "single isolated support point";
  c.reason = "no point-level counterexample in " + std::to_string(c.trials) + " trials";
  return c;
}

// ---------------------------------------------------------------------------
// Right symmetry

Classification classify_right_symmetric(const CFunction& f, const ClassifyOptions& options) {
  const auto& tol = options.tol;
  Classification c;
  if (f.is_zero()) {
    c.answer = Answer::Yes;
    c.theorem = "zero function";
    c.reason = "f _|_ g for f = 0";
    return c;
  }
  const auto fn = (1.0 / sup_norm(f)) * f;
  const auto mf = norm_attaining_set(fn, tol.mf);
  const auto norms = fn.pointwise_norms();
  const auto& space = fn.space();

  if (mf.size() < fn.size()) {
    std::size_t k0 = fn.size();
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < fn.size(); ++k) {
      if (norms[k] < lowest) {
        lowest = norms[k];
        k0 = k;
      }
    }
    double below = 0.0;
    for (std::size_t k = 0; k < fn.size(); ++k) {
      if (std::find(mf.begin(), mf.end(), k) == mf.end()) below = std::max(below, norms[k]);
    }
    c.margins["norm_gap"] = 1.0 - below;
    CFunction g;
    if (fn[k0].is_zero()) {
      const auto x = (1.0 / norms[mf.front()]) * fn[mf.front()];
      g = construct_right_witness_vanishing(fn, k0, x, tol);
      c.reason = "f vanishes at " + fn.model().points[k0] + "; g = h x + (1 - h) f";
    } else {
      g = construct_right_witness_non_full(fn, k0, tol);
      c.reason = "||f|| is not attained at " + fn.model().points[k0] + "; g = f on M_f, -f(k0)/||f(k0)|| at k0";
    }
    c.answer = Answer::No;
    c.theorem = "M_f != K (necessary condition for right symmetry)";
    record_pair(c, "g_perp_f", check_pair(g, fn, tol));
    record_pair(c, "f_perp_g", check_pair(fn, g, tol));
    c.witness = std::move(g);
    return c;
  }
  c.margins["norm_gap"] = 0.0;

  auto point_right_symmetric = [&](const Vector& x) {
    if (options.certifier.use_hilbert && is_hilbert(space.norm)) return true;
    if (options.certifier.grid_certify && grid_supported(space, x)) {
      return !grid_search(space, x, Side::Right, options.certifier.grid_resolution, tol).has_value();
    }
    return false;
  };
  if (fn.model().connected && space.is_real() &&
      std::all_of(fn.values().begin(), fn.values().end(), point_right_symmetric)) {
    c.answer = Answer::Yes;
    c.theorem = "M_f = K, K connected, every f(k) right symmetric";
    c.reason = is_hilbert(space.norm) && options.certifier.use_hilbert ? "Hilbert certificate at every point"
                                                                      : "grid-certified at every point";
    return c;
  }
  if (!space.is_real()) {
    c.answer = Answer::Unknown;
    c.theorem = "M_f = K";
    c.reason = "M_f = K does not decide right symmetry; the function-level search covers real spaces only";
    return c;
  }

  // Function-level search: pencils g = g0 + s f with s minimising ||g0 + s f||
  // always give g _|_ f; look for one with f _|_ g failing.
  Rng rng(options.seed);
  const std::size_t dim = fn.dim();
  auto try_candidate = [&](const CFunction& g) {
    if (g.is_zero()) return false;
    if (!ckx_orthogonal(g, fn, tol).holds() || !ckx_orthogonal(fn, g, tol).fails()) return false;
    const auto gf = check_pair(g, fn, tol);
    const auto fg = check_pair(fn, g, tol);
    if (!confirms_counterexample(gf, fg, tol)) return false;
    c.answer = Answer::No;
    c.theorem = "M_f = K; function-level counterexample";
    c.reason = "g _|_ f holds and f _|_ g fails";
    record_pair(c, "g_perp_f", gf);
    record_pair(c, "f_perp_g", fg);
    c.witness = g;
    return true;
  };
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    ++c.trials;
    CFunction g0;
    switch (trial % 3) {
      case 0:
      case 1:
        g0 = CFunction::constant(fn.model(), space, random_vector(space.field, dim, rng));
        break;
      default: {
        std::vector<Vector> v;
        for (std::size_t k = 0; k < fn.size(); ++k) v.push_back(random_vector(space.field, dim, rng));
        g0 = fn.with_values(std::move(v));
      }
    }
    if (g0.is_zero()) continue;
    if (try_candidate(right_projection(fn, g0))) return c;
  }
  c.answer = Answer::Unknown;
  c.theorem = "M_f = K";
  c.reason = "M_f = K alone does not imply right symmetry; no counterexample in " + std::to_string(c.trials) +
             " trials";
  return c;
}

// ---------------------------------------------------------------------------
// Smoothness

namespace {

struct Functional {
  std::size_t point;
  Vector dual;
};

// g in ker A, h in ker B with A(g + h) != 0 for two norm-one functionals
// A != B with A(f) = B(f) = ||f||: f _|_ g, f _|_ h, not f _|_ g + h.
std::pair<CFunction, CFunction> additivity_pair(const CFunction& f, const Functional& a, const Functional& b) {
  const double nf = sup_norm(f);
  auto apply = [&](const Functional& phi, const CFunction& z) { return apply_functional(phi.dual, z[phi.point]); };
  CFunction z;
  if (a.point != b.point) {
    std::vector<double> h(f.size(), 0.0);
    h[a.point] = 1.0;
    z = f.scaled_by(h);
  } else {
    std::size_t j = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < a.dual.size(); ++i) {
      const double d = std::abs(a.dual[i] - b.dual.at_padded(i));
      if (d > best) {
        best = d;
        j = i;
      }
    }
    z = CFunction::indicator(f.model(), f.space(), a.point, Vector::basis(f.space().field, f[a.point].size(), j));
  }
  auto g = axpy(z, -apply(a, z) / nf, f);
  auto h = axpy(-1.0 * z, apply(b, z) / nf, f);
  return {std::move(g), std::move(h)};
}

}  // namespace

Classification classify_smooth(const CFunction& f, const ClassifyOptions& options) {
  if (f.is_zero()) throw DomainError("smoothness is defined at non-zero functions");
  const auto& tol = options.tol;
  const auto& space = f.space();
  const double nf = sup_norm(f);
  const auto norms = f.pointwise_norms();
  const auto mf = norm_attaining_set(f, tol.mf);
  const std::size_t top = static_cast<std::size_t>(std::max_element(norms.begin(), norms.end()) - norms.begin());
  double second = 0.0;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    if (k != top) second = std::max(second, norms[k]);
  }
  Classification c;
  c.margins["singleton_gap"] = (nf - second) / nf;

  auto finish_no = [&](const Functional& a, const Functional& b, const std::string& theorem) {
    auto [g, h] = additivity_pair(f, a, b);
    const auto v = verify_right_additivity(f, g, h, tol);
    if (!v.fails()) return false;
    c.answer = Answer::No;
    c.theorem = theorem;
    c.reason = "two support functionals: f _|_ g and f _|_ h but not f _|_ (g + h)";
    c.margins["violation_margin"] = v.margin;
    c.witness = std::move(g);
    c.aux_witness = std::move(h);
    return true;
  };

  if (mf.size() == 1) {
    if (second > nf * (1.0 - 10.0 * tol.rel)) {
      c.answer = Answer::Unknown;
      c.theorem = "M_f singleton within tolerance only";
      c.reason = "second largest pointwise norm is within 10 tol of ||f||";
      return c;
    }
    const std::size_t k0 = mf.front();
    const auto sv = is_smooth_point(space, f[k0], SmoothnessPlan{}, tol);
    c.margins["point_smoothness_margin"] = sv.margin;
    if (sv.holds()) {
      c.answer = Answer::Yes;
      c.theorem = "M_f = {k0} and f(k0) smooth";
      c.reason = "M_f = {" + f.model().points[k0] + "} and f(" + f.model().points[k0] + ") is a smooth point";
      return c;
    }
    if (sv.fails()) {
      const auto fs = norming_functionals(space, f[k0], kActiveTieTolerance);
      if (fs.size() >= 2 && finish_no({k0, fs[0]}, {k0, fs[1]}, "f(k0) is not a smooth point")) return c;
    }
    c.answer = Answer::Unknown;
    c.theorem = "M_f = {k0}";
    c.reason = "smoothness of f(k0) is undetermined";
    return c;
  }

  // Two or more attaining points: the functionals at k0 and k1 differ.
  const std::size_t k0 = mf[0];
  const std::size_t k1 = mf[1];
  const Functional a{k0, norming_functionals(space, f[k0], kActiveTieTolerance).front()};
  const Functional b{k1, norming_functionals(space, f[k1], kActiveTieTolerance).front()};
  if (finish_no(a, b, "|M_f| >= 2")) {
    c.reason = "support functionals at " + f.model().points[k0] + " and " + f.model().points[k1] +
               " differ: f _|_ g and f _|_ h but not f _|_ (g + h)";
    // Independent evidence: a randomized right-additivity violation search.
    Rng rng(options.seed);
    double found_at = -1.0;
    for (std::size_t t = 0; t < options.trials; ++t) {
      const auto g = left_projection(f, f.with_values([&] {
        std::vector<Vector> v;
        for (std::size_t k = 0; k < f.size(); ++k) v.push_back(random_vector(space.field, f[k].size(), rng));
        return v;
      }()), rng, tol.mf);
      const auto h = left_projection(f, f.with_values([&] {
        std::vector<Vector> v;
        for (std::size_t k = 0; k < f.size(); ++k) v.push_back(random_vector(space.field, f[k].size(), rng));
        return v;
      }()), rng, tol.mf);
      ++c.trials;
      if (verify_right_additivity(f, g, h, tol).fails()) {
        found_at = static_cast<double>(t + 1);
        break;
      }
    }
    c.margins["search_trials_to_violation"] = found_at;
    return c;
  }
  c.answer = Answer::Unknown;
  c.theorem = "|M_f| >= 2";
  c.reason = "the two-functional certificate did not verify";
  return c;
}

}  // namespace bjg

#include "suites.hpp"

#include <algorithm>
#include <cmath>

#include "bjg/classifiers.hpp"
#include "bjg/errors.hpp"
#include "bjg/random_instances.hpp"

namespace bjg::suites {

namespace {

constexpr std::size_t kMaxLogged = 20;

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.below(v.size())];
}

std::vector<std::size_t> or_default(const std::vector<std::size_t>& v, std::vector<std::size_t> fallback) {
  return v.empty() ? fallback : v;
}

std::vector<NormSpec> norms_or(const SuiteConfig& c, std::vector<NormSpec> fallback) {
  return c.norms.empty() ? fallback : c.norms;
}

std::size_t trials_or(const SuiteConfig& c, std::size_t fallback) { return c.trials ? c.trials : fallback; }
std::size_t inner_or(const SuiteConfig& c, std::size_t fallback) { return c.inner_trials ? c.inner_trials : fallback; }

std::vector<NormSpec> catalog() { return {Sup{}, Lp{1.0}, Lp{2.0}}; }

// Dimension compatible with the norm (weighted sup fixes it).
std::size_t fit_dim(const NormSpec& n, std::size_t d) {
  if (const auto* w = std::get_if<WeightedSup>(&n)) return w->weights.size();
  return d;
}

bool contradicts(const PairCheck& pc, const Tolerances& tol) {
  if (pc.verdict.holds()) return pc.relative_gap < -10.0 * tol.rel;
  if (pc.verdict.fails()) return pc.relative_gap >= 0.0;
  return false;
}

void tally(SuiteResult& r, Status s) {
  ++r.trials;
  switch (s) {
    case Status::Holds:
      ++r.holds;
      break;
    case Status::Fails:
      ++r.fails;
      break;
    case Status::Undetermined:
      ++r.undetermined;
      break;
  }
}

CFunction random_values_like(const CFunction& f, Rng& rng) {
  std::vector<Vector> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(random_vector(f.space().field, x.size(), rng));
  return f.with_values(std::move(v));
}

bool confirmed_holds(const PairCheck& p, const Tolerances& tol) {
  return p.verdict.holds() && p.relative_gap >= -10.0 * tol.rel;
}

SuiteResult agreement(const SuiteConfig& config, Field field, const char* name, std::size_t default_trials) {
  SuiteResult r;
  r.name = name;
  r.regime = "sampled";
  SuiteConfig cfg = config;
  cfg.field = field;
  const auto& tol = cfg.tol;
  const std::size_t n = trials_or(cfg, default_trials);
  for (std::size_t t = 0; t < n; ++t) {
    const auto seed = derive_seed(cfg.seed, t);
    const auto inst = random_instance(InstanceKind::FunctionPair, cfg, seed);
    const auto& f = inst.function("f");
    const auto& g = inst.function("g");
    const auto pc = check_pair(f, g, tol);
    if (pc.verdict.holds()) r.stats["verdict_holds"] += 1;
    if (pc.verdict.fails()) r.stats["verdict_fails"] += 1;

    Status s = pc.verdict.status;
    std::vector<ObservedPair> pairs{{"f", "g", pc.verdict.status}};
    std::string what;
    if (contradicts(pc, tol)) {
      s = Status::Fails;
      what = "characterization contradicts the oracle";
    } else if (!pc.verdict.undetermined()) {
      s = Status::Holds;
      // With a single attaining point the directional path must agree too.
      if (norm_attaining_set(f, tol.mf).size() == 1) {
        const auto d = ckx_orthogonal_directional(f, g, tol);
        r.stats["directional_checked"] += 1;
        if (!d.undetermined() && d.status != pc.verdict.status) {
          s = Status::Fails;
          what = "directional path disagrees";
          pairs.clear();
        }
      }
    }
    if (s == Status::Undetermined) r.stats["undetermined: " + pc.verdict.note] += 1;
    tally(r, s);
    if (s == Status::Fails) log_counterexample(r, t, seed, inst, pairs, what);
  }
  return r;
}

}  // namespace

void log_counterexample(SuiteResult& result, std::size_t trial, std::uint64_t seed, const Instance& instance,
                        const std::vector<ObservedPair>& pairs, const std::string& what) {
  if (result.counterexamples.size() >= kMaxLogged) return;
  Json ps = Json::array();
  for (const auto& [a, b, s] : pairs) ps.push_back(Json{{"a", a}, {"b", b}, {"status", to_string(s)}});
  result.counterexamples.push_back(Json{{"suite", result.name},
                                        {"trial", trial},
                                        {"seed", seed},
                                        {"what", what},
                                        {"instance", to_json(instance)},
                                        {"pairs", ps}});
}

SuiteResult oracle_agreement_real(const SuiteConfig& config) {
  return agreement(config, Field::Real, "oracle-agreement-real", 1000);
}

SuiteResult oracle_agreement_complex(const SuiteConfig& config) {
  return agreement(config, Field::Complex, "oracle-agreement-complex", 500);
}

SuiteResult left_symmetry_exhaustive(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "left-symmetry-exhaustive";
  r.regime = "exhaustive";
  const auto& tol = config.tol;
  const std::vector<double> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
  const NormedSpace space{Field::Real, norms_or(config, {Lp{2.0}}).front()};
  ClassifyOptions opts;
  opts.tol = tol;
  opts.seed = config.seed;
  opts.certifier.seed = config.seed;

  for (std::size_t n : or_default(config.k_sizes, {2, 3})) {
    const auto k = KModel::discrete(n);
    for (std::size_t d : or_default(config.dims, {1, 2})) {
      d = fit_dim(space.norm, d);
      const std::size_t slots = n * d;
      std::size_t total = 1;
      for (std::size_t i = 0; i < slots; ++i) total *= grid.size();
      for (std::size_t code = 1; code < total; ++code) {
        std::vector<Vector> values;
        std::size_t c = code;
        for (std::size_t p = 0; p < n; ++p) {
          std::vector<Scalar> coords(d);
          for (auto& z : coords) {
            z = grid[c % grid.size()];
            c /= grid.size();
          }
          values.emplace_back(Field::Real, std::move(coords));
        }
        const CFunction f(k, space, std::move(values));
        if (f.is_zero()) continue;
        const bool single = f.support().size() == 1;
        const auto cls = classify_left_symmetric(f, opts);
        Status s = Status::Holds;
        std::string what;
        std::vector<ObservedPair> pairs;
        if (cls.answer == Answer::Unknown) {
          s = Status::Undetermined;
        } else if ((cls.answer == Answer::Yes) != single) {
          s = Status::Fails;
          what = "classification " + to_string(cls.answer) + " for support size " + std::to_string(f.support().size());
        } else if (cls.answer == Answer::No) {
          const auto& g = *cls.witness;
          const auto fg = check_pair(f, g, tol);
          const auto gf = check_pair(g, f, tol);
          pairs = {{"f", "g", fg.verdict.status}, {"g", "f", gf.verdict.status}};
          if (!confirmed_holds(fg, tol) || !gf.verdict.fails() || gf.relative_gap >= -tol.rel) {
            s = Status::Fails;
            what = "left witness does not verify";
          }
        }
        r.stats[cls.answer == Answer::Yes ? "yes" : cls.answer == Answer::No ? "no" : "unknown"] += 1;
        tally(r, s);
        if (s == Status::Fails) {
          std::map<std::string, CFunction> fs{{"f", f}};
          if (cls.witness) fs.emplace("g", *cls.witness);
          log_counterexample(r, r.trials - 1, config.seed, make_instance(fs), pairs, what);
        }
      }
    }
  }
  return r;
}

SuiteResult right_symmetry_necessary(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "right-symmetry-necessary";
  r.regime = "sampled";
  const auto& tol = config.tol;
  const auto norms = norms_or(config, catalog());
  const auto dims = or_default(config.dims, {1, 2, 3, 4});
  const auto ks = or_default(config.k_sizes, {2, 3, 4, 5, 6});
  ClassifyOptions opts;
  opts.tol = tol;
  opts.seed = config.seed;
  double min_gap = 1.0;

  for (std::size_t t = 0; t < trials_or(config, 200); ++t) {
    const auto seed = derive_seed(config.seed, t);
    Rng rng(seed);
    const std::size_t n = std::max<std::size_t>(pick(ks, rng), 2);
    const NormedSpace space{config.field, pick(norms, rng)};
    const std::size_t d = fit_dim(space.norm, pick(dims, rng));
    const auto k = rng.coin(0.25) ? KModel::sampled_interval(n) : KModel::discrete(n);
    auto f = random_function(k, space, d, rng, FunctionShape::SingletonNormSet);
    if (rng.coin(1.0 / 3.0)) {
      // Make one non-attaining point vanish.
      const auto mf = norm_attaining_set(f, tol.mf);
      std::size_t z = rng.below(n);
      if (z == mf.front()) z = (z + 1) % n;
      auto v = f.values();
      v[z] = Vector::zeros(space.field, v[z].size());
      f = f.with_values(std::move(v));
    }
    f = rng.uniform(0.5, 2.0) * f;

    const auto cls = classify_right_symmetric(f, opts);
    Status s = Status::Holds;
    std::string what;
    std::vector<ObservedPair> pairs;
    if (cls.answer != Answer::No || !cls.witness) {
      s = Status::Fails;
      what = "expected No for M_f != K, got " + to_string(cls.answer);
    } else {
      const auto& g = *cls.witness;
      const auto gf = check_pair(g, f, tol);
      const auto fg = check_pair(f, g, tol);
      pairs = {{"g", "f", gf.verdict.status}, {"f", "g", fg.verdict.status}};
      min_gap = std::min(min_gap, -fg.relative_gap);
      if (!confirmed_holds(gf, tol) || !fg.verdict.fails() || fg.relative_gap > -1e-6) {
        s = Status::Fails;
        what = "right witness does not verify with margin 1e-6";
      }
    }
    tally(r, s);
    if (s == Status::Fails) {
      std::map<std::string, CFunction> fs{{"f", f}};
      if (cls.witness) fs.emplace("g", *cls.witness);
      log_counterexample(r, t, seed, make_instance(fs), pairs, what);
    }
  }
  r.stats["min_violation_margin"] = min_gap;
  return r;
}

SuiteResult right_symmetry_converse(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "right-symmetry-converse";
  r.regime = "sampled";
  const auto& tol = config.tol;
  const auto norms = norms_or(config, {Lp{2.0}});
  const auto dims = or_default(config.dims, {1, 2, 3, 4});
  const auto ks = or_default(config.k_sizes, {7});
  const std::size_t inner = inner_or(config, 1000);
  ClassifyOptions opts;
  opts.tol = tol;
  opts.seed = config.seed;
  SweepOptions sweep;
  sweep.grid_points = 65;

  for (std::size_t t = 0; t < trials_or(config, 200); ++t) {
    const auto seed = derive_seed(config.seed, t);
    Rng rng(seed);
    const NormedSpace space{Field::Real, pick(norms, rng)};
    const std::size_t d = fit_dim(space.norm, pick(dims, rng));
    const auto k = KModel::sampled_interval(std::max<std::size_t>(pick(ks, rng), 2));
    const auto f = random_function(k, space, d, rng, FunctionShape::FullNormSet);
    const auto cls = classify_right_symmetric(f, opts);
    if (cls.answer != Answer::Yes) {
      r.stats["not_classified_yes"] += 1;
      tally(r, Status::Fails);
      log_counterexample(r, t, seed, make_instance({{"f", f}}), {}, "expected Yes, got " + to_string(cls.answer));
      continue;
    }
    for (std::size_t j = 0; j < inner; ++j) {
      // g(k) on the orthogonal face of f(k) pointwise, so g _|_ f.
      std::vector<Vector> v;
      v.reserve(f.size());
      for (std::size_t p = 0; p < f.size(); ++p) {
        auto y0 = random_vector(space.field, d, rng);
        if (rng.coin(0.05)) y0 = Vector::zeros(space.field, d);
        v.push_back(y0.is_zero() ? y0 : right_projection(space, f[p], y0));
      }
      const auto g = f.with_values(std::move(v));
      if (g.is_zero()) {
        tally(r, Status::Holds);
        continue;
      }
      const double ng = sup_norm(g);
      const auto gf = ckx_oracle(g, f, sweep);
      if (gf.min_value < ng - 10.0 * tol.scaled(ng)) {
        r.stats["projection_not_confirmed"] += 1;
        tally(r, Status::Undetermined);
        continue;
      }
      const auto verdict = ckx_orthogonal(f, g, tol);
      const auto fg = ckx_oracle(f, g, sweep);
      const bool oracle_ok = fg.min_value >= 1.0 - 10.0 * tol.rel;
      Status s = Status::Holds;
      if (verdict.undetermined() && oracle_ok) {
        s = Status::Undetermined;
      } else if (!verdict.holds() || !oracle_ok) {
        s = Status::Fails;
      }
      tally(r, s);
      if (s == Status::Fails) {
        log_counterexample(r, t, seed, make_instance({{"f", f}, {"g", g}}), {{"f", "g", verdict.status}},
                           "g _|_ f but f _|_ g fails");
      }
    }
  }
  return r;
}

namespace {

// Runs `inner` random right-additivity trials; returns the number of
// violations and counts undetermined checks.
std::size_t additivity_trials(const CFunction& f, std::size_t inner, Rng& rng, const Tolerances& tol,
                              std::size_t& undetermined, std::optional<std::pair<CFunction, CFunction>>& first) {
  std::size_t violations = 0;
  for (std::size_t j = 0; j < inner; ++j) {
    const auto g = left_projection(f, random_values_like(f, rng), rng, tol.mf);
    const auto h = left_projection(f, random_values_like(f, rng), rng, tol.mf);
    const auto v = verify_right_additivity(f, g, h, tol);
    if (v.fails()) {
      if (!first) first.emplace(g, h);
      ++violations;
    } else if (v.undetermined()) {
      ++undetermined;
    }
  }
  return violations;
}

}  // namespace

SuiteResult smoothness_characterization(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "smoothness-characterization";
  r.regime = "sampled";
  const auto& tol = config.tol;
  const auto dims = or_default(config.dims, {1, 2, 3, 4});
  const auto ks = or_default(config.k_sizes, {2, 3, 4, 5, 6});
  const std::size_t per_class = trials_or(config, 200);
  const std::size_t inner = inner_or(config, 10000);
  ClassifyOptions opts;
  opts.tol = tol;
  opts.seed = config.seed;
  opts.trials = 0;

  // Singleton M_f with Hilbert values: Yes, and right additivity never breaks.
  const auto hilbert = norms_or(config, {Lp{2.0}});
  std::size_t additivity_undetermined = 0;
  for (std::size_t t = 0; t < per_class; ++t) {
    const auto seed = derive_seed(config.seed, t);
    Rng rng(seed);
    const NormedSpace space{config.field, pick(hilbert, rng)};
    const std::size_t d = fit_dim(space.norm, pick(dims, rng));
    const auto f = random_function(KModel::discrete(std::max<std::size_t>(pick(ks, rng), 2)), space, d, rng,
                                   FunctionShape::SingletonNormSet);
    const auto cls = classify_smooth(f, opts);
    if (cls.answer != Answer::Yes) {
      const bool smooth_expected = is_hilbert(space.norm);
      tally(r, smooth_expected ? Status::Fails : Status::Undetermined);
      if (smooth_expected) {
        log_counterexample(r, t, seed, make_instance({{"f", f}}), {}, "expected Yes, got " + to_string(cls.answer));
      }
      continue;
    }
    r.stats["yes"] += 1;
    std::optional<std::pair<CFunction, CFunction>> first;
    const auto violations = additivity_trials(f, inner, rng, tol, additivity_undetermined, first);
    r.stats["additivity_trials"] += static_cast<double>(inner);
    if (violations > 0) {
      tally(r, Status::Fails);
      log_counterexample(r, t, seed, make_instance({{"f", f}, {"g", first->first}, {"h", first->second}}), {},
                         "right additivity violated at a smooth f");
    } else {
      tally(r, Status::Holds);
    }
  }
  r.stats["additivity_undetermined"] = static_cast<double>(additivity_undetermined);

  // Two attaining points: No, with a violating pair.
  const auto mixed = norms_or(config, catalog());
  std::size_t certified = 0;
  for (std::size_t t = 0; t < per_class; ++t) {
    const auto seed = derive_seed(config.seed, per_class + t);
    Rng rng(seed);
    const NormedSpace space{config.field, pick(mixed, rng)};
    const std::size_t d = fit_dim(space.norm, pick(dims, rng));
    const auto f = random_function(KModel::discrete(std::max<std::size_t>(pick(ks, rng), 2)), space, d, rng,
                                   FunctionShape::TwoPointNormSet);
    const auto cls = classify_smooth(f, opts);
    if (cls.answer == Answer::Yes) {
      tally(r, Status::Fails);
      log_counterexample(r, per_class + t, seed, make_instance({{"f", f}}), {}, "Yes with two attaining points");
      continue;
    }
    bool found = cls.answer == Answer::No && cls.witness && cls.aux_witness &&
                 verify_right_additivity(f, *cls.witness, *cls.aux_witness, tol).fails();
    if (!found) {
      // Fall back to the randomized search within the same budget.
      std::optional<std::pair<CFunction, CFunction>> first;
      std::size_t und = 0;
      found = additivity_trials(f, inner, rng, tol, und, first) > 0;
    }
    if (found) {
      ++certified;
      tally(r, Status::Holds);
    } else {
      r.stats["no_violation_found"] += 1;
      tally(r, Status::Undetermined);
    }
  }
  const double rate = per_class ? static_cast<double>(certified) / static_cast<double>(per_class) : 1.0;
  r.stats["two_point_violation_rate"] = rate;
  r.extra_ok = rate >= 0.95;
  if (!r.extra_ok) r.diagnostic = "violation found for fewer than 95% of two-point instances";
  return r;
}

SuiteResult right_additivity(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "right-additivity";
  r.regime = "sampled";
  const auto& tol = config.tol;
  const auto norms = norms_or(config, catalog());
  const auto dims = or_default(config.dims, {1, 2, 3, 4});
  const auto ks = or_default(config.k_sizes, {1, 2, 3, 4, 5, 6});
  const std::size_t wanted = trials_or(config, 100);
  const std::size_t inner = inner_or(config, 1000);
  ClassifyOptions opts;
  opts.tol = tol;
  opts.trials = 0;
  std::size_t undetermined = 0;
  for (std::size_t t = 0; r.trials < wanted && t < 8 * wanted; ++t) {
    const auto seed = derive_seed(config.seed, t);
    Rng rng(seed);
    const NormedSpace space{config.field, pick(norms, rng)};
    const std::size_t d = fit_dim(space.norm, pick(dims, rng));
    const std::size_t n = pick(ks, rng);
    const auto f = random_function(KModel::discrete(n), space, d, rng,
                                   n == 1 ? FunctionShape::Plain : FunctionShape::SingletonNormSet);
    if (classify_smooth(f, opts).answer != Answer::Yes) {
      r.stats["skipped_not_smooth"] += 1;
      continue;
    }
    std::optional<std::pair<CFunction, CFunction>> first;
    const auto violations = additivity_trials(f, inner, rng, tol, undetermined, first);
    r.stats["additivity_trials"] += static_cast<double>(inner);
    if (violations > 0) {
      tally(r, Status::Fails);
      log_counterexample(r, t, seed, make_instance({{"f", f}, {"g", first->first}, {"h", first->second}}), {},
                         "right additivity violated at a smooth f");
    } else {
      tally(r, Status::Holds);
    }
  }
  r.stats["additivity_undetermined"] = static_cast<double>(undetermined);
  return r;
}

SuiteResult c00_remark(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "c00-remark";
  r.regime = "sampled";
  const auto ks = or_default(config.k_sizes, {1, 2, 3, 4});
  constexpr std::size_t kMaxSupport = 8;
  const NormedSpace space{Field::Real, FiniteSupportSup{kMaxSupport + 1}};
  double worst_half_gap = 0.0;
  for (std::size_t t = 0; t < trials_or(config, 100); ++t) {
    const auto seed = derive_seed(config.seed, t);
    Rng rng(seed);
    const auto k = KModel::discrete(pick(ks, rng));
    std::vector<Vector> values;
    for (std::size_t p = 0; p < k.size(); ++p) {
      const std::size_t len = rng.below(kMaxSupport + 1);
      auto x = random_vector(Field::Real, std::max<std::size_t>(len, 1), rng);
      if (len == 0) x = Vector::zeros(Field::Real, 1);
      values.push_back(std::move(x));
    }
    if (std::all_of(values.begin(), values.end(), [](const Vector& v) { return v.is_zero(); })) {
      values.front() = Vector::real({1.0});
    }
    const CFunction f(k, space, std::move(values));
    const auto rep = c00_remark_witness(f, true, config.tol);
    worst_half_gap = std::max(worst_half_gap, rep.half_gap);
    const Status s = rep.passed ? Status::Holds : Status::Fails;
    tally(r, s);
    if (s == Status::Fails) {
      log_counterexample(r, t, seed, make_instance({{"f", rep.f}, {"g", rep.g}}),
                         {{"g", "f", rep.g_perp_f.verdict.status}, {"f", "g", rep.f_perp_g.verdict.status}},
                         rep.failures.empty() ? "" : rep.failures.front());
    }
  }
  r.stats["max_norm_f_minus_half_g"] = worst_half_gap;
  return r;
}

SuiteResult interval_example(const SuiteConfig& config) {
  SuiteResult r;
  r.name = "paper-example";
  r.regime = "exhaustive";
  ClassifyOptions opts;
  opts.tol = config.tol;
  opts.seed = config.seed;
  for (std::size_t samples : or_default(config.k_sizes, {2, 3, 11, 101, 201})) {
    const auto rep = reproduce_interval_example(samples, opts);
    r.stats["value_at_minus_half"] = rep.value_at_half;
    r.stats["min_g_plus_lambda_f"] = rep.g_perp_f.oracle.min_value;
    r.stats["min_f_plus_lambda_g"] = rep.f_perp_g.oracle.min_value;
    r.stats["argmin_f_plus_lambda_g"] = rep.f_perp_g.oracle.argmin.real();
    const Status s = rep.passed ? Status::Holds : Status::Fails;
    tally(r, s);
    if (s == Status::Fails) {
      log_counterexample(r, samples, config.seed,
                         make_instance({{"f", interval_example_f(samples)}, {"g", interval_example_g(samples)}}),
                         {{"g", "f", rep.g_perp_f.verdict.status}, {"f", "g", rep.f_perp_g.verdict.status}},
                         rep.failures.front());
    }
  }
  return r;
}

}  // namespace bjg::suites

#include "bjg/harness.hpp"

#include <functional>
#include <sstream>
#include <utility>

#include "bjg/errors.hpp"
#include "bjg/random_instances.hpp"
#include "suites.hpp"

namespace bjg {

namespace {

using SuiteFn = SuiteResult (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"oracle-agreement-real", &suites::oracle_agreement_real},
      {"oracle-agreement-complex", &suites::oracle_agreement_complex},
      {"left-symmetry-exhaustive", &suites::left_symmetry_exhaustive},
      {"right-symmetry-necessary", &suites::right_symmetry_necessary},
      {"right-symmetry-converse", &suites::right_symmetry_converse},
      {"smoothness-characterization", &suites::smoothness_characterization},
      {"right-additivity", &suites::right_additivity},
      {"c00-remark", &suites::c00_remark},
      {"paper-example", &suites::interval_example},
  };
  return r;
}

constexpr double kUndeterminedBudget = 0.02;

Status status_from_string(const std::string& s) {
  if (s == "holds") return Status::Holds;
  if (s == "fails") return Status::Fails;
  if (s == "undetermined") return Status::Undetermined;
  throw DataError("unknown status '" + s + "'");
}

}  // namespace

bool SuiteResult::passed() const {
  if (theorem_null && fails > 0) return false;
  return undetermined_rate() < kUndeterminedBudget && extra_ok;
}

bool SuiteReport::ok() const {
  for (const auto& s : suites) {
    if (!s.passed()) return false;
  }
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    auto r = fn(config);
    if (r.undetermined_rate() >= kUndeterminedBudget && r.diagnostic.empty()) {
      std::ostringstream os;
      os << "undetermined rate " << r.undetermined_rate() << " exceeds the 2% budget; loosen the tolerances or refine the grids";
      r.diagnostic = os.str();
    }
    return r;
  }
  throw UsageError("unknown suite '" + name + "'");
}

SuiteReport run_suites(const std::vector<std::string>& names, const SuiteConfig& config) {
  // Validate every name before spending time on any suite.
  for (const auto& n : names) {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == n;
    if (!known) throw UsageError("unknown suite '" + n + "'");
  }
  SuiteReport report{config, {}};
  for (const auto& n : names) report.suites.push_back(run_suite(n, config));
  return report;
}

Json to_json(const SuiteConfig& config) {
  Json norms = Json::array();
  for (const auto& n : config.norms) norms.push_back(to_json(n));
  const auto& t = config.tol;
  return Json{{"seed", config.seed},
              {"trials", config.trials},
              {"innerTrials", config.inner_trials},
              {"dims", config.dims},
              {"norms", norms},
              {"kSizes", config.k_sizes},
              {"field", to_string(config.field)},
              {"tolerances",
               {{"rel", t.rel}, {"absFloor", t.abs_floor}, {"mf", t.mf}, {"tGrid", t.t_grid}, {"uGrid", t.u_grid}}}};
}

Json to_json(const SuiteResult& r) {
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  Json j{{"name", r.name},
         {"regime", r.regime},
         {"trials", r.trials},
         {"holds", r.holds},
         {"fails", r.fails},
         {"undetermined", r.undetermined},
         {"undeterminedRate", r.undetermined_rate()},
         {"theoremNull", r.theorem_null},
         {"passed", r.passed()},
         {"stats", stats},
         {"counterexamples", r.counterexamples}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

Json to_json(const SuiteReport& report) {
  Json suites = Json::array();
  for (const auto& s : report.suites) suites.push_back(to_json(s));
  return Json{{"config", to_json(report.config)}, {"suites", suites}, {"ok", report.ok()}};
}

std::string to_csv(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite,regime,trials,holds,fails,undetermined,passed\n";
  for (const auto& s : report.suites) {
    os << s.name << ',' << s.regime << ',' << s.trials << ',' << s.holds << ',' << s.fails << ',' << s.undetermined
       << ',' << (s.passed() ? "true" : "false") << '\n';
  }
  return os.str();
}

bool replay_counterexample(const Json& entry, const SuiteConfig& config) {
  if (!entry.is_object() || !entry.contains("instance")) throw DataError("counterexample entry has no instance");
  const auto inst = instance_from_json(entry.at("instance"));
  if (!entry.contains("pairs")) return true;
  for (const auto& p : entry.at("pairs")) {
    const auto& f = inst.function(p.at("a").get<std::string>());
    const auto& g = inst.function(p.at("b").get<std::string>());
    const auto expected = status_from_string(p.at("status").get<std::string>());
    if (ckx_orthogonal(f, g, config.tol).status != expected) return false;
  }
  return true;
}

Instance random_instance(InstanceKind kind, const SuiteConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<NormSpec> norms = config.norms.empty() ? std::vector<NormSpec>{Sup{}, Lp{1.0}, Lp{2.0}} : config.norms;
  const std::vector<std::size_t> dims = config.dims.empty() ? std::vector<std::size_t>{1, 2, 3, 4} : config.dims;
  const std::vector<std::size_t> ks =
      config.k_sizes.empty() ? std::vector<std::size_t>{1, 2, 3, 4, 5, 6} : config.k_sizes;

  const NormedSpace space{config.field, norms[rng.below(norms.size())]};
  std::size_t dim = dims[rng.below(dims.size())];
  if (const auto* w = std::get_if<WeightedSup>(&space.norm)) dim = w->weights.size();
  if (const auto* c = std::get_if<FiniteSupportSup>(&space.norm)) dim = std::min(dim, c->max_dim);

  if (kind == InstanceKind::Vector || kind == InstanceKind::Pair) {
    const auto k = KModel::discrete(1);
    const CFunction f(k, space, {random_nonzero_vector(space, dim, rng)});
    if (kind == InstanceKind::Vector) return make_instance({{"f", f}});
    auto y = random_nonzero_vector(space, dim, rng);
    switch (rng.below(3)) {
      case 1:
        y = left_projection(space, f[0], y, rng);
        break;
      case 2:
        y = right_projection(space, f[0], y);
        break;
      default:
        break;
    }
    return make_instance({{"f", f}, {"g", CFunction(k, space, {y})}});
  }

  const std::size_t n = std::max<std::size_t>(ks[rng.below(ks.size())], 1);
  const auto k = KModel::discrete(n);
  std::vector<FunctionShape> shapes{FunctionShape::Plain, FunctionShape::FullNormSet, FunctionShape::SingletonNormSet};
  if (n >= 2) shapes.push_back(FunctionShape::TwoPointNormSet);
  const auto f = random_function(k, space, dim, rng, shapes[rng.below(shapes.size())]);
  if (kind == InstanceKind::Function) return make_instance({{"f", f}});

  auto g = random_function(k, space, dim, rng);
  switch (rng.below(4)) {
    case 1:
      g = left_projection(f, g, rng, config.tol.mf);
      break;
    case 2:
      g = right_projection(f, g);
      break;
    case 3: {
      // Vanish on M_f: then f _|_ g.
      auto v = g.values();
      for (auto i : norm_attaining_set(f, config.tol.mf)) v[i] = Vector::zeros(space.field, v[i].size());
      g = g.with_values(std::move(v));
      break;
    }
    default:
      break;
  }
  return make_instance({{"f", f}, {"g", g}});
}

}  // namespace bjg

#pragma once

// Seeded verification suites. Each suite turns a statement into a per-trial
// check and counts confirmations, contradictions and inconclusive trials.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bjg/serialization.hpp"

namespace bjg {

struct SuiteConfig {
  std::uint64_t seed = 42;
  /// Trials (or instances) per suite; 0 selects the suite default.
  std::size_t trials = 0;
  /// Inner trials per instance (g per f, additivity pairs per f); 0 selects the default.
  std::size_t inner_trials = 0;
  /// Empty lists select the suite defaults.
  std::vector<std::size_t> dims;
  std::vector<NormSpec> norms;
  std::vector<std::size_t> k_sizes;
  /// Scalar field of generated instances (the complex agreement suite always uses Complex).
  Field field = Field::Real;
  Tolerances tol;
};

struct SuiteResult {
  std::string name;
  /// "exhaustive" for enumerations, "sampled" for random trials.
  std::string regime;
  std::size_t trials = 0;
  /// Trials confirming the statement.
  std::size_t holds = 0;
  /// Trials contradicting it.
  std::size_t fails = 0;
  std::size_t undetermined = 0;
  /// Whether the statement predicts zero contradictions.
  bool theorem_null = true;
  std::vector<Json> counterexamples;
  std::map<std::string, double> stats;
  /// Suite-specific requirement beyond the counts (e.g. a success rate).
  bool extra_ok = true;
  std::string diagnostic;

  double undetermined_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(undetermined) / static_cast<double>(trials);
  }
  /// No contradictions, undetermined rate below 2%, extra requirement met.
  bool passed() const;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<SuiteResult> suites;

  bool ok() const;
};

const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);
SuiteReport run_suites(const std::vector<std::string>& names, const SuiteConfig& config);

Json to_json(const SuiteConfig& config);
Json to_json(const SuiteResult& result);
Json to_json(const SuiteReport& report);
/// suite,regime,trials,holds,fails,undetermined,passed
std::string to_csv(const SuiteReport& report);

/// Re-checks a logged counterexample from its serialized instance and
/// returns true when the logged outcome is reproduced.
bool replay_counterexample(const Json& entry, const SuiteConfig& config);

enum class InstanceKind { Vector, Pair, Function, FunctionPair };

/// Reproducible random instance. Vectors and pairs live on a one-point K;
/// functions are named "f" (and "g").
Instance random_instance(InstanceKind kind, const SuiteConfig& config, std::uint64_t seed);

}  // namespace bjg

#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "bjg/harness.hpp"

namespace bjg::suites {

SuiteResult oracle_agreement_real(const SuiteConfig& config);
SuiteResult oracle_agreement_complex(const SuiteConfig& config);
SuiteResult left_symmetry_exhaustive(const SuiteConfig& config);
SuiteResult right_symmetry_necessary(const SuiteConfig& config);
SuiteResult right_symmetry_converse(const SuiteConfig& config);
SuiteResult smoothness_characterization(const SuiteConfig& config);
SuiteResult right_additivity(const SuiteConfig& config);
SuiteResult c00_remark(const SuiteConfig& config);
SuiteResult interval_example(const SuiteConfig& config);

/// A pair (a, b) of named functions whose orthogonality a _|_ b was observed.
using ObservedPair = std::tuple<std::string, std::string, Status>;

/// Appends a replayable record (at most a fixed number are kept).
void log_counterexample(SuiteResult& result, std::size_t trial, std::uint64_t seed, const Instance& instance,
                        const std::vector<ObservedPair>& pairs, const std::string& what);

}  // namespace bjg::suites

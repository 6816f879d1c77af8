#pragma once

// Executable classifiers for left symmetry, right symmetry and smoothness of
// f in C(K, X), together with the witness constructions behind them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bjg/function_space.hpp"

namespace bjg {

enum class Answer { Yes, No, Unknown };

std::string to_string(Answer answer);

struct Classification {
  Answer answer = Answer::Unknown;
  /// The statement that was applied, e.g. "single isolated support point".
  std::string theorem;
  /// No: the counterexample function g. Smoothness No also fills
  /// `aux_witness` with h when the evidence is a pair (g, h).
  std::optional<CFunction> witness;
  std::optional<CFunction> aux_witness;
  std::size_t trials = 0;
  std::map<std::string, double> margins;
  std::string reason;
};

/// How point-level symmetry of X is certified.
struct PointCertifier {
  /// Points of an inner-product space are left and right symmetric.
  bool use_hilbert = true;
  /// Budget of the point-level searches.
  std::size_t search_trials = 400;
  std::uint64_t seed = 1;
  /// Opt-in exhaustive check over a direction grid (real spaces of
  /// dimension <= 3), reported as "grid-certified".
  bool grid_certify = false;
  std::size_t grid_resolution = 64;
};

struct ClassifyOptions {
  Tolerances tol;
  PointCertifier certifier;
  /// Budget of the function-level searches (right symmetry, right additivity).
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

Classification classify_left_symmetric(const CFunction& f, const ClassifyOptions& options = {});
Classification classify_right_symmetric(const CFunction& f, const ClassifyOptions& options = {});
/// Throws DomainError for f = 0.
Classification classify_smooth(const CFunction& f, const ClassifyOptions& options = {});

/// g = h f with h(k1) = 1 and h vanishing near k0 (indicator on discrete
/// points, a tent on sampled ones). Then f _|_ g and g is not _|_ f; both are
/// re-verified (InternalError otherwise). PreconditionError unless
/// k0 in M_f, k1 != k0 and f(k1) != 0.
CFunction construct_left_counterexample(const CFunction& f, std::size_t k0, std::size_t k1,
                                        const Tolerances& tol = {});

/// For ||f|| = 1, f(k0) = 0 and a unit vector x: g = h x + (1 - h) f with
/// h(k0) = 1 and h = 0 where ||f|| >= 1/2. Verifies ||g|| = 1, g _|_ f and
/// ||f - g/2|| < 1.
CFunction construct_right_witness_vanishing(const CFunction& f, std::size_t k0, const Vector& x,
                                            const Tolerances& tol = {});

/// For ||f|| = 1 and k0 outside M_f with f(k0) != 0: g = f on M_f,
/// g(k0) = -f(k0)/||f(k0)||, 0 elsewhere. Verifies ||g|| = 1, g _|_ f and
/// that f _|_ g fails with a lambda on the sup norm.
CFunction construct_right_witness_non_full(const CFunction& f, std::size_t k0, const Tolerances& tol = {});

/// Checks (f _|_ g and f _|_ h) => f _|_ (g + h). Holds vacuously when a
/// hypothesis fails; Fails only when the oracle confirms the violation.
Verdict verify_right_additivity(const CFunction& f, const CFunction& g, const CFunction& h,
                                const Tolerances& tol = {});

/// Outcome of a pair check: the characterization plus the oracle minimum.
struct PairCheck {
  Verdict verdict;
  OracleResult oracle;
  /// (oracle minimum - ||f||) / ||f||; negative when f _|_ g fails.
  double relative_gap = 0.0;
};

PairCheck check_pair(const CFunction& f, const CFunction& g, const Tolerances& tol = {});

struct ExampleReport {
  std::size_t samples = 0;
  double norm_f = 0.0;
  double norm_g = 0.0;
  bool mf_is_all = false;
  PairCheck g_perp_f;
  PairCheck f_perp_g;
  /// ||f - g/2||.
  double value_at_half = 0.0;
  /// Right-symmetry classification of f.
  Classification right;
  bool passed = false;
  std::vector<std::string> failures;
};

/// K = samples of [0,1] plus the isolated point 2, X = (R^2, max),
/// f = (1,1) on [0,1] and (1,0) at 2, g = (1/2,1) everywhere.
/// Throws DomainError for samples < 2.
ExampleReport reproduce_interval_example(std::size_t samples, const ClassifyOptions& options = {});
CFunction interval_example_f(std::size_t samples);
CFunction interval_example_g(std::size_t samples);

struct C00Report {
  CFunction f;
  CFunction g;
  double norm_g = 0.0;
  /// ||f - g/2||.
  double half_gap = 0.0;
  PairCheck g_perp_f;
  PairCheck f_perp_g;
  bool passed = false;
  std::vector<std::string> failures;
};

/// g(k) = f(k) + e_{n(k)+1} over a finite-support sup space, n(k) the
/// support length of f(k). Requires ||f|| = 1 unless `normalize`
/// (PreconditionError); CapacityError when a support would exceed maxDim.
C00Report c00_remark_witness(const CFunction& f, bool normalize = false, const Tolerances& tol = {});

}  // namespace bjg

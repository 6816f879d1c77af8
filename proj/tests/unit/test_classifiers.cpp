#include <doctest.h>

#include "bjg/classifiers.hpp"
#include "bjg/errors.hpp"
#include "bjg/random_instances.hpp"
#include "bridge.hpp"

using namespace bjg;

namespace {

const NormedSpace kSup{Field::Real, Sup{}};
const NormedSpace kL2{Field::Real, Lp{2.0}};

CFunction from(const KModel& k, const NormedSpace& s, std::vector<Vector> v) { return CFunction(k, s, std::move(v)); }

double reference_min(const CFunction& f, const CFunction& g) {
  const double ng = sup_norm(g);
  if (ng == 0.0) return sup_norm(f);
  return oracle::function_min(f, g, 4.0 * sup_norm(f) / ng);
}

bool reference_orthogonal(const CFunction& f, const CFunction& g) {
  return reference_min(f, g) >= sup_norm(f) * (1 - 1e-9);
}

// f _|_ g holds and g _|_ f fails, by brute force.
void check_left_witness(const CFunction& f, const CFunction& g) {
  CHECK(reference_orthogonal(f, g));
  CHECK_FALSE(reference_orthogonal(g, f));
}

// g _|_ f holds and f _|_ g fails, by brute force.
void check_right_witness(const CFunction& f, const CFunction& g) {
  CHECK(reference_orthogonal(g, f));
  CHECK_FALSE(reference_orthogonal(f, g));
}

}  // namespace

TEST_CASE("left symmetry") {
  const auto k = KModel::discrete({"a", "b", "c"});
  SUBCASE("one support point in a Hilbert space") {
    const auto f = CFunction::indicator(k, kL2, 0, Vector::real({0.6, -0.8}));
    CHECK(classify_left_symmetric(f).answer == Answer::Yes);
  }
  SUBCASE("two support points") {
    const auto f = from(k, kL2, {Vector::real({1, 0}), Vector::real({0, 0.5}), Vector::real({0, 0})});
    const auto c = classify_left_symmetric(f);
    REQUIRE(c.answer == Answer::No);
    REQUIRE(c.witness);
    const auto& g = *c.witness;
    CHECK(g[0].is_zero());
    CHECK(g[1] == f[1]);
    CHECK(g[2].is_zero());
    check_left_witness(f, g);
  }
  SUBCASE("one support point where X has a non-symmetric point") {
    const auto f = CFunction::indicator(k, kSup, 0, Vector::real({1, 0.5}));
    const auto c = classify_left_symmetric(f);
    REQUIRE(c.answer == Answer::No);
    REQUIRE(c.witness);
    check_left_witness(f, *c.witness);
  }
  SUBCASE("zero function") {
    const auto f = CFunction::constant(k, kSup, Vector::zeros(Field::Real, 2));
    CHECK(classify_left_symmetric(f).answer == Answer::Yes);
  }
}

TEST_CASE("left counterexample construction") {
  const auto k = KModel::discrete({"a", "b"});
  const auto f = from(k, kSup, {Vector::real({1, 0}), Vector::real({0.5, 0})});
  const auto g = construct_left_counterexample(f, 0, 1);
  CHECK(g[0] == Vector::real({0, 0}));
  CHECK(g[1] == Vector::real({0.5, 0}));
  check_left_witness(f, g);
  // ||g + l f|| = max(|l|, |1/2 + l/2|) is smallest at l = -1/3.
  const auto [m, arg] = oracle::function_min_real(oracle::sup(), oracle::values(g), oracle::values(f), 4.0);
  CHECK(m == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(arg == doctest::Approx(-1.0 / 3.0).epsilon(1e-6));

  const auto z = from(k, kSup, {Vector::real({1, 0}), Vector::real({0, 0})});
  CHECK_THROWS_AS(construct_left_counterexample(z, 0, 1), PreconditionError);
  CHECK_THROWS_AS(construct_left_counterexample(f, 1, 0), PreconditionError);
  CHECK_THROWS_AS(construct_left_counterexample(f, 0, 0), PreconditionError);

  // Sampled model: a tent around k1 that vanishes at k0.
  const auto s = KModel::sampled_interval(9);
  std::vector<Vector> v;
  for (std::size_t i = 0; i < s.size(); ++i) v.push_back(Vector::real({1.0 - 0.05 * static_cast<double>(i), 0.2}));
  const auto fs = from(s, kSup, v);
  const auto gs = construct_left_counterexample(fs, 0, 5);
  CHECK(gs[0].is_zero());
  CHECK(gs[5] == fs[5]);
  check_left_witness(fs, gs);
}

TEST_CASE("right symmetry") {
  SUBCASE("interval example") {
    const auto f = interval_example_f(11);
    const auto c = classify_right_symmetric(f);
    REQUIRE(c.answer == Answer::No);
    REQUIRE(c.witness);
    check_right_witness(f, *c.witness);
  }
  SUBCASE("constant norm on a connected Hilbert model") {
    const auto k = KModel::sampled_interval(7);
    Rng rng(1);
    const auto f = random_function(k, kL2, 3, rng, FunctionShape::FullNormSet);
    CHECK(classify_right_symmetric(f).answer == Answer::Yes);
  }
  SUBCASE("strict norm dip") {
    const auto k = KModel::sampled_interval(5);
    std::vector<Vector> v(5, Vector::real({0.6, 0.8}));
    v[2] = Vector::real({0.3, 0.4});
    const auto f = from(k, kL2, v);
    const auto c = classify_right_symmetric(f);
    REQUIRE(c.answer == Answer::No);
    REQUIRE(c.witness);
    check_right_witness(f, *c.witness);
  }
  SUBCASE("a zero of f") {
    const auto k = KModel::discrete(3);
    const auto f = from(k, kSup, {Vector::real({0, 0}), Vector::real({1, 0.5}), Vector::real({0.2, 0.1})});
    const auto c = classify_right_symmetric(f);
    REQUIRE(c.answer == Answer::No);
    check_right_witness(f, *c.witness);
  }
}

TEST_CASE("right witness through a zero") {
  const auto k = KModel::discrete({"a", "b"});
  const auto f = from(k, kSup, {Vector::real({0, 0}), Vector::real({1, 0.25})});
  const auto x = Vector::real({0, 1});
  const auto g = construct_right_witness_vanishing(f, 0, x);
  CHECK(g[0] == x);
  CHECK(g[1] == f[1]);
  CHECK(sup_norm(axpy(f, -0.5, g)) == doctest::Approx(0.5));
  check_right_witness(f, g);

  const auto full = from(k, kSup, {Vector::real({1, 0}), Vector::real({1, 0.25})});
  CHECK_THROWS_AS(construct_right_witness_vanishing(full, 0, x), PreconditionError);
  CHECK_THROWS_AS(construct_right_witness_vanishing(f, 0, Vector::real({0, 2})), PreconditionError);
}

TEST_CASE("right witness off the attaining set") {
  const auto k = KModel::discrete({"a", "b"});
  const auto f = from(k, kSup, {Vector::real({1, 0}), Vector::real({0.5, 0})});
  const auto g = construct_right_witness_non_full(f, 1);
  CHECK(g[0] == Vector::real({1, 0}));
  CHECK(g[1] == Vector::real({-1, 0}));
  check_right_witness(f, g);
  // ||f + l g|| = max(|1 + l|, |1/2 - l|), smallest at l = -1/4.
  CHECK(reference_min(f, g) == doctest::Approx(0.75).epsilon(1e-9));

  CHECK_THROWS_AS(construct_right_witness_non_full(f, 0), PreconditionError);
  const auto ex = interval_example_f(3);
  CHECK_THROWS_AS(construct_right_witness_non_full(ex, ex.model().index_of("2")), PreconditionError);
}

TEST_CASE("smoothness") {
  const auto k = KModel::discrete(3);
  SUBCASE("single attaining point, Hilbert values") {
    const auto f = from(k, kL2, {Vector::real({1, 0}), Vector::real({0, 0.5}), Vector::real({0.25, 0})});
    CHECK(classify_smooth(f).answer == Answer::Yes);
  }
  SUBCASE("two attaining points") {
    const auto f = from(k, kL2, {Vector::real({1, 0}), Vector::real({0, 1}), Vector::real({0.5, 0})});
    const auto c = classify_smooth(f);
    REQUIRE(c.answer == Answer::No);
    REQUIRE(c.witness);
    REQUIRE(c.aux_witness);
    const auto& g = *c.witness;
    const auto& h = *c.aux_witness;
    CHECK(reference_orthogonal(f, g));
    CHECK(reference_orthogonal(f, h));
    CHECK_FALSE(reference_orthogonal(f, g + h));
  }
  SUBCASE("single attaining point at a corner of X") {
    const auto f = from(k, kSup, {Vector::real({1, 1}), Vector::real({0, 0.5}), Vector::real({0.25, 0})});
    const auto c = classify_smooth(f);
    CHECK(c.answer == Answer::No);
    if (c.witness && c.aux_witness) {
      CHECK(reference_orthogonal(f, *c.witness));
      CHECK(reference_orthogonal(f, *c.aux_witness));
      CHECK_FALSE(reference_orthogonal(f, *c.witness + *c.aux_witness));
    }
  }
  CHECK_THROWS_AS(classify_smooth(CFunction::constant(k, kL2, Vector::zeros(Field::Real, 2))), DomainError);
}

TEST_CASE("right additivity") {
  const auto k = KModel::discrete(3);
  Rng rng(5);
  SUBCASE("vacuous when a hypothesis fails") {
    const auto f = from(k, kL2, {Vector::real({1, 0}), Vector::real({0, 0.5}), Vector::real({0.25, 0})});
    const auto g = CFunction::constant(k, kL2, Vector::real({1, 0}));
    CHECK(verify_right_additivity(f, g, g).holds());
  }
  SUBCASE("smooth f") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_function(k, kL2, 3, rng, FunctionShape::SingletonNormSet);
      const auto g = left_projection(f, random_function(k, kL2, 3, rng), rng);
      const auto h = left_projection(f, random_function(k, kL2, 3, rng), rng);
      CHECK(verify_right_additivity(f, g, h).holds());
    }
  }
  SUBCASE("two attaining points with different directions") {
    const auto f = from(k, kL2, {Vector::real({1, 0}), Vector::real({0, -1}), Vector::real({0.5, 0})});
    bool found = false;
    for (int trial = 0; trial < 2000 && !found; ++trial) {
      const auto g = left_projection(f, random_function(k, kL2, 2, rng), rng);
      const auto h = left_projection(f, random_function(k, kL2, 2, rng), rng);
      const auto v = verify_right_additivity(f, g, h);
      if (v.fails()) {
        found = true;
        CHECK(reference_orthogonal(f, g));
        CHECK(reference_orthogonal(f, h));
        CHECK_FALSE(reference_orthogonal(f, g + h));
      }
    }
    CHECK(found);
  }
}

TEST_CASE("interval example report") {
  for (std::size_t samples : {2, 201}) {
    const auto r = reproduce_interval_example(samples);
    CHECK(r.passed);
    CHECK(r.failures.empty());
    CHECK(r.norm_f == 1.0);
    CHECK(r.norm_g == 1.0);
    CHECK(r.mf_is_all);
    CHECK(r.value_at_half == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.g_perp_f.verdict.holds());
    CHECK(r.g_perp_f.oracle.min_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.f_perp_g.verdict.fails());
    CHECK(r.right.answer == Answer::No);
  }
  CHECK_THROWS_AS(reproduce_interval_example(1), DomainError);
}

TEST_CASE("finite-support witness") {
  const NormedSpace c00{Field::Real, FiniteSupportSup{4}};
  const auto k = KModel::discrete(1);
  SUBCASE("single coordinate") {
    const auto r = c00_remark_witness(CFunction(k, c00, {Vector::real({1})}));
    CHECK(r.g[0] == Vector::real({1, 1}));
    CHECK(r.half_gap == doctest::Approx(0.5));
    CHECK(r.passed);
  }
  SUBCASE("sign change") {
    const auto r = c00_remark_witness(CFunction(k, c00, {Vector::real({1, -1, 0})}));
    CHECK(r.g[0].resized(3) == Vector::real({1, -1, 1}));
    CHECK(r.norm_g == 1.0);
    CHECK(r.half_gap <= 0.5 + 1e-12);
    CHECK(r.passed);
    CHECK(reference_orthogonal(r.g, r.f));
    CHECK_FALSE(reference_orthogonal(r.f, r.g));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(c00_remark_witness(CFunction(k, c00, {Vector::real({1, 0, 0, 1})})), CapacityError);
    CHECK_THROWS_AS(c00_remark_witness(CFunction(k, c00, {Vector::real({0.5})})), PreconditionError);
    CHECK(c00_remark_witness(CFunction(k, c00, {Vector::real({0.5})}), true).passed);
    CHECK_THROWS_AS(c00_remark_witness(CFunction(k, kSup, {Vector::real({1, 0})})), ConfigError);
  }
}

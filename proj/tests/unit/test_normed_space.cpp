#include <doctest.h>

#include <cmath>

#include "bjg/errors.hpp"
#include "bjg/normed_space.hpp"
#include "bjg/random.hpp"
#include "bjg/random_instances.hpp"
#include "bridge.hpp"

using namespace bjg;

namespace {

const NormedSpace kSup{Field::Real, Sup{}};
const NormedSpace kL1{Field::Real, Lp{1.0}};
const NormedSpace kL2{Field::Real, Lp{2.0}};

std::vector<NormedSpace> catalog(Field f) {
  return {{f, Sup{}}, {f, Lp{1.0}}, {f, Lp{2.0}}, {f, Lp{3.0}}};
}

}  // namespace

TEST_CASE("norm values") {
  CHECK(norm(kSup, Vector::real({1, -1})) == 1.0);
  CHECK(norm(kL2, Vector::real({3, 4})) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(norm(kSup, Vector::real({0.5, 1})) == 1.0);
  CHECK(norm(kL1, Vector::real({1, -2, 0.5})) == doctest::Approx(3.5));
  CHECK(norm(WeightedSup{{2.0, 0.5}}, Vector::real({1, 3})) == doctest::Approx(2.0));
  CHECK(norm(FiniteSupportSup{4}, Vector::real({0.25, -0.75})) == 0.75);
  CHECK(norm(Lp{2.0}, Vector::complex({{3, 4}})) == doctest::Approx(5.0));
  CHECK(norm(Sup{}, Vector::complex({{0, 1}, {0.6, 0.8}})) == doctest::Approx(1.0));
}

TEST_CASE("norms agree with the independent implementation") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    for (const auto& s : catalog(f)) {
      const auto x = random_vector(f, 1 + rng.below(8), rng);
      CHECK(norm(s, x) == doctest::Approx(oracle::norm(oracle::norm_of(s.norm), oracle::vec(x))).epsilon(1e-13));
    }
  }
}

TEST_CASE("norm specs are validated") {
  CHECK_THROWS_AS(validate(Lp{0.5}), ConfigError);
  CHECK_THROWS_AS(validate(WeightedSup{{1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(validate(FiniteSupportSup{0}), ConfigError);
  CHECK_NOTHROW(validate(Lp{1.0}));
  CHECK(is_hilbert(Lp{2.0}));
  CHECK_FALSE(is_hilbert(Sup{}));
}

TEST_CASE("vectors are checked against the space") {
  CHECK_THROWS_AS(kL2.check(Vector::complex({{1, 1}})), ConfigError);
  CHECK_THROWS_AS(kL2.check(Vector::real({1, 2}), Vector::real({1})), ConfigError);
  CHECK_THROWS_AS(kL2.check(Vector::real({NAN})), DomainError);
  const NormedSpace c00{Field::Real, FiniteSupportSup{2}};
  CHECK_THROWS_AS(c00.check(Vector::real({1, 0, 1})), CapacityError);
  CHECK_NOTHROW(c00.check(Vector::real({1, 1, 0})));
  CHECK_NOTHROW(c00.check(Vector::real({1}), Vector::real({0, 1})));
  const NormedSpace w{Field::Real, WeightedSup{{1, 2}}};
  CHECK_THROWS_AS(w.check(Vector::real({1, 2, 3})), ConfigError);
}

TEST_CASE("exact one-sided derivatives") {
  SUBCASE("euclidean orthogonal pair") {
    const auto d = exact_derivatives(Lp{2.0}, Vector::real({1, 0}), Vector::real({0, 1}));
    CHECK(d.plus == doctest::Approx(0.0));
    CHECK(d.minus == doctest::Approx(0.0));
  }
  SUBCASE("l1 kink") {
    const auto d = exact_derivatives(Lp{1.0}, Vector::real({1, 0}), Vector::real({0, 1}));
    CHECK(d.plus == doctest::Approx(1.0));
    CHECK(d.minus == doctest::Approx(-1.0));
  }
  SUBCASE("max norm with two active coordinates") {
    const auto x = Vector::real({1, 1});
    const auto y = Vector::real({0.5, 1});
    const auto d = exact_derivatives(Sup{}, x, y);
    // Brute-force slopes of t -> max(|1 + t/2|, |1 + t|).
    const auto [right, left] =
        oracle::slopes([](double t) { return std::max(std::fabs(1 + t / 2), std::fabs(1 + t)); });
    CHECK(d.plus == doctest::Approx(right).epsilon(1e-6));
    CHECK(d.minus == doctest::Approx(left).epsilon(1e-6));
    CHECK(d.plus == doctest::Approx(1.0));
    CHECK(d.minus == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(exact_derivatives(Sup{}, Vector::real({0, 0}), Vector::real({1, 0})), DomainError);
}

TEST_CASE("exact derivatives match brute-force difference quotients") {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const Field f = trial % 3 == 0 ? Field::Complex : Field::Real;
    for (const auto& s : catalog(f)) {
      const std::size_t dim = 1 + rng.below(6);
      const auto x = random_nonzero_vector(s, dim, rng);
      const auto y = random_vector(f, dim, rng);
      const auto d = exact_derivatives(s.norm, x, y);
      const auto n = oracle::norm_of(s.norm);
      const auto xv = oracle::vec(x);
      const auto yv = oracle::vec(y);
      const auto [right, left] = oracle::slopes([&](double t) { return oracle::norm(n, oracle::axpy(xv, t, yv)); }, 1e-7);
      CHECK(d.plus == doctest::Approx(right).epsilon(1e-5).scale(1.0));
      CHECK(d.minus == doctest::Approx(left).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("left derivative is the negated right derivative of -y") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    for (const auto& s : catalog(f)) {
      const std::size_t dim = 1 + rng.below(5);
      const auto x = random_nonzero_vector(s, dim, rng);
      const auto y = random_vector(f, dim, rng);
      const auto d = exact_derivatives(s.norm, x, y);
      const auto e = exact_derivatives(s.norm, x, -y);
      CHECK(d.minus == doctest::Approx(-e.plus).epsilon(1e-12).scale(1.0));
      CHECK(d.minus <= d.plus + 1e-12);
    }
  }
}

TEST_CASE("difference-quotient brackets contain the exact derivatives") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& s : catalog(Field::Real)) {
      const std::size_t dim = 1 + rng.below(8);
      const auto x = random_nonzero_vector(s, dim, rng);
      const auto y = random_vector(Field::Real, dim, rng);
      const auto ex = exact_derivatives(s.norm, x, y);
      const auto br = one_sided_derivatives(s, x, y, DerivativeMethod::Brackets);
      const double slack = 1e-9 * std::max(1.0, norm(s, y));
      CHECK(br.rho_plus.contains(ex.plus, slack));
      CHECK(br.rho_minus.contains(ex.minus, slack));
      CHECK(br.rho_plus.width() <= 1e-6 * norm(s, x));
      CHECK_FALSE(br.exact);
    }
  }
  const auto auto_path = one_sided_derivatives(kL2, Vector::real({1, 0}), Vector::real({0, 1}));
  CHECK(auto_path.exact);
  CHECK(auto_path.rho_plus.width() == 0.0);
  CHECK_THROWS_AS(difference_quotient_brackets(Lp{2.0}, Vector::real({0}), Vector::real({1}), 1e-3), DomainError);
  CHECK_THROWS_AS(difference_quotient_brackets(Lp{2.0}, Vector::real({1}), Vector::real({1}), 0.0), DomainError);
}

TEST_CASE("norming functionals attain the norm and have dual norm one") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    for (const auto& s : catalog(f)) {
      const std::size_t dim = 1 + rng.below(5);
      const auto x = random_nonzero_vector(s, dim, rng);
      const auto fs = norming_functionals(s, x);
      REQUIRE_FALSE(fs.empty());
      for (const auto& w : fs) {
        const Scalar at_x = apply_functional(w, x);
        CHECK(at_x.real() == doctest::Approx(norm(s, x)).epsilon(1e-12));
        CHECK(std::fabs(at_x.imag()) < 1e-12);
        for (int j = 0; j < 5; ++j) {
          const auto y = random_vector(f, dim, rng);
          CHECK(std::abs(apply_functional(w, y)) <= norm(s, y) * (1 + 1e-12));
        }
      }
    }
  }
  CHECK(norming_functionals(kSup, Vector::real({1, 1})).size() == 2);
  CHECK(norming_functionals(kL2, Vector::real({1, 1})).size() == 1);
  CHECK(norming_functionals(kL1, Vector::real({1, 0})).size() == 2);
  CHECK_THROWS_AS(norming_functionals(kL2, Vector::real({0, 0})), DomainError);
}

TEST_CASE("vector helpers") {
  const auto x = Vector::real({1, 0, 2, 0});
  CHECK(x.support_length() == 3);
  CHECK(x.resized(2) == Vector::real({1, 0}));
  CHECK(Vector::basis(Field::Real, 3, 1) == Vector::real({0, 1, 0}));
  CHECK((Vector::real({1}) + Vector::real({0, 1})) == Vector::real({1, 1}));
  CHECK(axpy(Vector::real({1, 1}), 2.0, Vector::real({1, -1})) == Vector::real({3, -1}));
  CHECK(Vector::zeros(Field::Complex, 2).is_zero());
}

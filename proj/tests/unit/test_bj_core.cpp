#include <doctest.h>

#include <cmath>

#include "bjg/bj_core.hpp"
#include "bjg/errors.hpp"
#include "bjg/random_instances.hpp"
#include "bridge.hpp"

using namespace bjg;

namespace {

const NormedSpace kSup{Field::Real, Sup{}};
const NormedSpace kL1{Field::Real, Lp{1.0}};
const NormedSpace kL2{Field::Real, Lp{2.0}};
const NormedSpace kCL2{Field::Complex, Lp{2.0}};
const Scalar kI{0.0, 1.0};

double value_at(const NormedSpace& s, const Vector& x, const Vector& y, Scalar lambda) {
  return oracle::norm(oracle::norm_of(s.norm), oracle::axpy(oracle::vec(x), lambda, oracle::vec(y)));
}

// Reference answer: the minimum of ||x + lambda y|| over the scalar field.
double reference_min(const NormedSpace& s, const Vector& x, const Vector& y) {
  const auto n = oracle::norm_of(s.norm);
  const auto xv = oracle::vec(x);
  const auto yv = oracle::vec(y);
  const double range = 4.0 * oracle::norm(n, xv) / std::max(oracle::norm(n, yv), 1e-9);
  if (s.is_real()) return oracle::min_real([&](double l) { return oracle::norm(n, oracle::axpy(xv, l, yv)); }, range).first;
  return oracle::min_complex([&](oracle::C l) { return oracle::norm(n, oracle::axpy(xv, l, yv)); }, range).first;
}

void check_fail_witness(const NormedSpace& s, const Vector& x, const Vector& y, const Verdict& v) {
  REQUIRE(v.fails());
  REQUIRE(v.witness);
  REQUIRE(v.witness->lambda);
  CHECK(value_at(s, x, y, *v.witness->lambda) < norm(s, x));
}

}  // namespace

TEST_CASE("orthogonality in small examples") {
  CHECK(is_bj_orthogonal(kL2, Vector::real({1, 0}), Vector::real({0, 1})).holds());

  const auto x = Vector::real({1, 1});
  const auto y = Vector::real({0.5, 1});
  const auto v = is_bj_orthogonal(kSup, x, y);
  check_fail_witness(kSup, x, y, v);
  // max(|1 + l/2|, |1 + l|) is smallest where 1 + l/2 = -(1 + l).
  CHECK(v.witness->lambda->real() == doctest::Approx(-4.0 / 3.0).epsilon(1e-6));
  CHECK(*v.witness->value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(reference_min(kSup, x, y) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  // ||(1/2, 1) + l (1, 0)|| >= 1 for every l, but not the other way round:
  // max(|1 + l/2|, |l|) = 2/3 at l = -2/3.
  CHECK(is_bj_orthogonal(kSup, Vector::real({0.5, 1}), Vector::real({1, 0})).holds());
  const auto back = is_bj_orthogonal(kSup, Vector::real({1, 0}), Vector::real({0.5, 1}));
  check_fail_witness(kSup, Vector::real({1, 0}), Vector::real({0.5, 1}), back);
  CHECK(*back.witness->value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(reference_min(kSup, Vector::real({1, 0}), Vector::real({0.5, 1})) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(is_bj_orthogonal(kSup, Vector::real({0, 0}), Vector::real({1, 0})).holds());
  CHECK(is_bj_orthogonal(kSup, Vector::real({1, 0}), Vector::real({0, 0})).holds());
}

TEST_CASE("real cones") {
  CHECK(in_plus_cone(kL1, Vector::real({1, 0}), Vector::real({0, 1})).holds());
  CHECK(in_minus_cone(kL1, Vector::real({1, 0}), Vector::real({0, 1})).holds());

  const auto x = Vector::real({1, 1});
  const auto y = Vector::real({0.5, 1});
  CHECK(in_plus_cone(kSup, x, y).holds());
  const auto minus = in_minus_cone(kSup, x, y);
  check_fail_witness(kSup, x, y, minus);
  CHECK(minus.witness->lambda->real() < 0.0);

  Rng rng(1);
  for (const auto& s : {kSup, kL1, kL2}) {
    const auto x0 = random_nonzero_vector(s, 3, rng);
    CHECK(in_plus_cone(s, x0, Vector::zeros(Field::Real, 3)).holds());
    CHECK(in_minus_cone(s, x0, Vector::zeros(Field::Real, 3)).holds());
  }
  CHECK_THROWS_AS(in_plus_cone(kCL2, Vector::complex({1}), Vector::complex({kI})), ConfigError);
}

TEST_CASE("complex cones") {
  const auto x = Vector::complex({1, 0});
  const auto y = Vector::complex({0, 1});
  for (double a : {0.0, 0.4, 1.3, 2.9}) {
    const Scalar u = std::polar(1.0, a);
    CHECK(in_u_plus_cone(kCL2, x, y, u).holds());
    CHECK(in_u_minus_cone(kCL2, x, y, u).holds());
  }
  // x + i a (i) = 1 - a.
  const auto x1 = Vector::complex({1});
  const auto y1 = Vector::complex({kI});
  const auto v = in_u_plus_cone(kCL2, x1, y1, kI);
  check_fail_witness(kCL2, x1, y1, v);
  CHECK(std::abs(*v.witness->lambda - kI) < 1e-6);
  CHECK(*v.witness->value < 1e-6);
  CHECK(in_u_minus_cone(kCL2, x1, y1, kI).holds());

  CHECK_THROWS_AS(in_u_plus_cone(kCL2, x, y, Scalar{-1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(in_u_plus_cone(kCL2, x, y, Scalar{0.0, -1.0}), DomainError);
  CHECK_THROWS_AS(in_u_plus_cone(kCL2, x, y, Scalar{2.0, 0.0}), DomainError);
  CHECK_THROWS_AS(in_u_plus_cone(kL2, Vector::real({1}), Vector::real({1}), 1.0), ConfigError);
}

TEST_CASE("u = 1 cones reduce to the real cones") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& norm_spec : std::vector<NormSpec>{Sup{}, Lp{1.0}, Lp{2.0}}) {
      const NormedSpace real{Field::Real, norm_spec};
      const NormedSpace cplx{Field::Complex, norm_spec};
      const auto x = random_nonzero_vector(real, 3, rng);
      const auto y = random_vector(Field::Real, 3, rng);
      const auto xc = Vector(Field::Complex, {x.coords().begin(), x.coords().end()});
      const auto yc = Vector(Field::Complex, {y.coords().begin(), y.coords().end()});
      CHECK(in_u_plus_cone(cplx, xc, yc, 1.0).status == in_plus_cone(real, x, y).status);
      CHECK(in_u_minus_cone(cplx, xc, yc, 1.0).status == in_minus_cone(real, x, y).status);
    }
  }
}

TEST_CASE("directional orthogonality") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_nonzero_vector(kSup, 2, rng);
    const auto y = random_vector(Field::Real, 2, rng);
    CHECK(directional_orthogonal(kSup, x, y, 1.0).status == is_bj_orthogonal(kSup, x, y).status);
  }
  const auto x = Vector::complex({1, 0});
  const auto y = Vector::complex({kI, 0});
  CHECK(directional_orthogonal(kCL2, x, y, 1.0).holds());
  check_fail_witness(kCL2, x, y, directional_orthogonal(kCL2, x, y, kI));
  CHECK_THROWS_AS(directional_orthogonal(kCL2, x, y, 0.5), DomainError);
}

TEST_CASE("complex orthogonality is orthogonality in every direction of the grid") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const NormedSpace s{Field::Complex, trial % 2 ? NormSpec{Sup{}} : NormSpec{Lp{1.0}}};
    const auto x = random_nonzero_vector(s, 2, rng);
    auto y = random_vector(Field::Complex, 2, rng);
    if (trial % 4 < 2) y = left_projection(s, x, y, rng);
    const auto whole = is_bj_orthogonal(s, x, y);
    if (whole.undetermined()) continue;
    bool all = true;
    for (const auto& t : DirectionGrid::full(360).points()) all = all && !directional_orthogonal(s, x, y, t).fails();
    if (whole.holds()) CHECK(all);
    if (!all) CHECK(whole.fails());
  }
}

TEST_CASE("characterization agrees with the brute-force minimum") {
  Rng rng(5);
  int decided = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Field f = trial % 3 == 0 ? Field::Complex : Field::Real;
    const NormSpec ns = std::vector<NormSpec>{Sup{}, Lp{1.0}, Lp{2.0}, Lp{3.0}}[rng.below(4)];
    const NormedSpace s{f, ns};
    const std::size_t dim = 1 + rng.below(4);
    const auto x = random_nonzero_vector(s, dim, rng);
    auto y = random_vector(f, dim, rng);
    switch (rng.below(3)) {
      case 1:
        y = left_projection(s, x, y, rng);
        break;
      case 2:
        y = right_projection(s, x, y);
        break;
      default:
        break;
    }
    const auto v = is_bj_orthogonal(s, x, y);
    if (v.undetermined()) continue;
    ++decided;
    const double nx = norm(s, x);
    const double m = reference_min(s, x, y);
    if (v.holds()) {
      CHECK(m >= nx * (1 - 1e-9));
    } else {
      CHECK(m < nx);
      check_fail_witness(s, x, y, v);
    }
  }
  CHECK(decided >= 290);
}

TEST_CASE("orthogonality is homogeneous") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const NormedSpace s{Field::Real, trial % 2 ? NormSpec{Sup{}} : NormSpec{Lp{1.0}}};
    const auto x = random_nonzero_vector(s, 3, rng);
    const auto y = random_vector(Field::Real, 3, rng);
    const double a = rng.uniform(0.2, 5.0) * (rng.coin() ? 1 : -1);
    const double b = rng.uniform(0.2, 5.0) * (rng.coin() ? 1 : -1);
    const auto v = is_bj_orthogonal(s, x, y);
    const auto w = is_bj_orthogonal(s, a * x, b * y);
    if (!v.undetermined() && !w.undetermined()) CHECK(v.status == w.status);
  }
}

TEST_CASE("lambda sweep oracle") {
  auto m = lambda_sweep_oracle(kSup, Vector::real({1, 1}), Vector::real({0.5, 1}), 4.0);
  CHECK(m.min_value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(m.argmin.real() == doctest::Approx(-4.0 / 3.0).epsilon(1e-6));
  m = lambda_sweep_oracle(kSup, Vector::real({1, 2}), Vector::real({0, 0}), 4.0);
  CHECK(m.min_value == 2.0);
  m = lambda_sweep_oracle(kL2, Vector::real({1, 0}), Vector::real({1, 0}), 4.0);
  CHECK(m.min_value == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(m.argmin.real() == doctest::Approx(-1.0));
  CHECK_THROWS_AS(lambda_sweep_oracle(kL2, Vector::real({1}), Vector::real({1}), 0.0), DomainError);
  CHECK_THROWS_AS(lambda_sweep_oracle(kL2, Vector::real({1}), Vector::real({1}), 1.0, 2), DomainError);

  const auto c = lambda_sweep_oracle(kCL2, Vector::complex({1}), Vector::complex({kI}), 4.0);
  CHECK(c.min_value < 1e-6);
  CHECK(std::abs(c.argmin - kI) < 1e-4);
}

TEST_CASE("smooth points") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(is_smooth_point(kL2, random_nonzero_vector(kL2, 1 + rng.below(4), rng)).holds());
  }
  const auto x = Vector::real({1, 1});
  const auto v = is_smooth_point(kSup, x);
  REQUIRE(v.fails());
  REQUIRE(v.witness);
  REQUIRE(v.witness->direction);
  const auto d = exact_derivatives(Sup{}, x, *v.witness->direction);
  CHECK(d.plus - d.minus > 0.5);
  CHECK(is_smooth_point(kSup, Vector::real({1, 0.5})).holds());
  CHECK(is_smooth_point(kL1, Vector::real({1, 0.5})).holds());
  CHECK(is_smooth_point(kL1, Vector::real({1, 0})).fails());
  CHECK_THROWS_AS(is_smooth_point(kSup, Vector::real({0, 0})), DomainError);

  SmoothnessPlan generic;
  generic.use_fast_path = false;
  for (int trial = 0; trial < 100; ++trial) {
    for (const auto& s : {kSup, kL1, kL2}) {
      auto y = random_nonzero_vector(s, 3, rng);
      if (trial % 3 == 0) y = Vector::real({y[0].real(), y[0].real(), 0.0});
      const auto fast = smooth_fast_path(s, y);
      const auto slow = smooth_generic_path(s, y, generic);
      if (!slow.undetermined()) CHECK(fast.status == slow.status);
    }
  }
}

TEST_CASE("left symmetry search") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK_FALSE(left_symmetric_search(kL2, random_nonzero_vector(kL2, 3, rng), 200, trial).found());
  }
  const auto x = Vector::real({1, 0.5});
  const auto r = left_symmetric_search(kSup, x, 200, 1);
  REQUIRE(r.found());
  const auto& y = *r.counterexample;
  CHECK(reference_min(kSup, x, y) >= norm(kSup, x) * (1 - 1e-9));
  CHECK(reference_min(kSup, y, x) < norm(kSup, y) * (1 - 1e-9));
  CHECK_THROWS_AS(left_symmetric_search(kSup, x, 0, 1), DomainError);
  CHECK_THROWS_AS(left_symmetric_search(kSup, Vector::real({0, 0}), 10, 1), DomainError);
}

TEST_CASE("right symmetry search") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK_FALSE(right_symmetric_search(kL2, random_nonzero_vector(kL2, 3, rng), 200, trial).found());
  }
  const NormedSpace c00{Field::Real, FiniteSupportSup{5}};
  const auto x = Vector::real({0.5, -1.0});
  const auto r = right_symmetric_search(c00, x, 50, 1);
  REQUIRE(r.found());
  const auto& y = *r.counterexample;
  CHECK(reference_min(c00, y, x) >= norm(c00, y) * (1 - 1e-9));
  CHECK(reference_min(c00, x, y) < norm(c00, x) * (1 - 1e-9));

  // Only evidence here: whatever is found must verify.
  const auto e = right_symmetric_search(kSup, Vector::real({1, 0}), 200, 3);
  if (e.found()) {
    CHECK(reference_min(kSup, *e.counterexample, Vector::real({1, 0})) >= norm(kSup, *e.counterexample) * (1 - 1e-9));
    CHECK(reference_min(kSup, Vector::real({1, 0}), *e.counterexample) < 1.0 - 1e-9);
  }
}

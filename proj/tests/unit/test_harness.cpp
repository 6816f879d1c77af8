#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "bjg/errors.hpp"
#include "bjg/harness.hpp"

using namespace bjg;

namespace {

SuiteConfig small() {
  SuiteConfig c;
  c.seed = 7;
  c.trials = 12;
  c.inner_trials = 5;
  return c;
}

}  // namespace

TEST_CASE("random instances are reproducible") {
  SuiteConfig c;
  for (auto kind : {InstanceKind::Vector, InstanceKind::Pair, InstanceKind::Function, InstanceKind::FunctionPair}) {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      CHECK(to_json(random_instance(kind, c, seed)) == to_json(random_instance(kind, c, seed)));
    }
  }
  CHECK(to_json(random_instance(InstanceKind::FunctionPair, c, 1)) !=
        to_json(random_instance(InstanceKind::FunctionPair, c, 2)));
  c.field = Field::Complex;
  CHECK(random_instance(InstanceKind::Pair, c, 3).space.field == Field::Complex);
  const auto pair = random_instance(InstanceKind::Pair, c, 4);
  CHECK(pair.k.size() == 1);
  CHECK(pair.functions.size() == 2);
}

TEST_CASE("suite names and unknown suites") {
  CHECK(suite_names().size() == 9);
  CHECK_THROWS_AS(run_suite("nosuch", small()), UsageError);
  CHECK_THROWS_AS(run_suites({"paper-example", "nosuch"}, small()), UsageError);
}

TEST_CASE("every suite accounts for each trial") {
  auto c = small();
  c.k_sizes = {2};
  c.dims = {1};
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const auto r = run_suite(name, c);
    CHECK(r.name == name);
    CHECK(r.trials > 0);
    CHECK(r.holds + r.fails + r.undetermined == r.trials);
    CHECK(r.fails == 0);
    CHECK(r.passed());
    CHECK(r.counterexamples.size() <= 20);
  }
}

TEST_CASE("suite runs are deterministic") {
  const auto c = small();
  const auto a = run_suites({"oracle-agreement-real", "right-symmetry-necessary"}, c);
  const auto b = run_suites({"oracle-agreement-real", "right-symmetry-necessary"}, c);
  CHECK(to_json(a) == to_json(b));
  auto d = c;
  d.seed = 8;
  CHECK(to_json(run_suites({"oracle-agreement-real"}, d))["suites"][0]["stats"] !=
        to_json(run_suites({"oracle-agreement-real"}, c))["suites"][0]["stats"]);
}

TEST_CASE("pass rule") {
  SuiteResult r;
  r.trials = 100;
  r.holds = 99;
  r.undetermined = 1;
  CHECK(r.passed());
  r.holds = 98;
  r.undetermined = 2;
  CHECK_FALSE(r.passed());
  r.holds = 99;
  r.undetermined = 0;
  r.fails = 1;
  CHECK_FALSE(r.passed());
  r.theorem_null = false;
  CHECK(r.passed());
  r.extra_ok = false;
  CHECK_FALSE(r.passed());
}

TEST_CASE("report formats") {
  const auto rep = run_suites({"paper-example", "c00-remark"}, small());
  const auto j = to_json(rep);
  CHECK(j["ok"] == true);
  CHECK(j["config"]["seed"] == 7);
  REQUIRE(j["suites"].size() == 2);
  for (const auto& s : j["suites"]) {
    for (const char* key : {"name", "regime", "trials", "holds", "fails", "undetermined", "passed", "stats"}) {
      CHECK(s.contains(key));
    }
  }

  std::istringstream csv(to_csv(rep));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "suite,regime,trials,holds,fails,undetermined,passed");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 2);
}

TEST_CASE("replaying a logged counterexample") {
  const auto inst = parse_instance(R"({
    "K": {"points": ["a", "b"]},
    "X": {"norm": "sup"},
    "functions": {"f": {"a": [1, 0], "b": [0.5, 0]}, "g": {"a": [0, 0], "b": [0.5, 0]}}
  })");
  Json entry{{"suite", "manual"},
             {"instance", to_json(inst)},
             {"pairs", Json::array({Json{{"a", "g"}, {"b", "f"}, {"status", "fails"}},
                                    Json{{"a", "f"}, {"b", "g"}, {"status", "holds"}}})}};
  CHECK(replay_counterexample(entry, SuiteConfig{}));
  entry["pairs"][0]["status"] = "holds";
  CHECK_FALSE(replay_counterexample(entry, SuiteConfig{}));
  CHECK_THROWS_AS(replay_counterexample(Json::object(), SuiteConfig{}), DataError);
}

#include "bjg_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "bjg/classifiers.hpp"
#include "bjg/errors.hpp"
#include "bjg/harness.hpp"
#include "bjg/serialization.hpp"

namespace bjg::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 42;
  std::size_t trials = 0;
  std::size_t inner_trials = 0;
  double range = 0.0;
  Tolerances tol;

  bool swap = false;
  std::vector<std::string> suites;
  bool all = false;
  std::size_t samples = 101;
  bool normalize = false;
};

std::string read_input(const std::string& spec) {
  if (spec.empty()) throw UsageError("--input is required for this subcommand");
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return spec;
  if (spec == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(spec);
  if (!in) throw UsageError("cannot read input file '" + spec + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json tolerances_json(const Options& o) {
  return Json{{"rel", o.tol.rel},       {"absFloor", o.tol.abs_floor}, {"mf", o.tol.mf},
              {"tGrid", o.tol.t_grid},  {"uGrid", o.tol.u_grid},       {"range", o.range},
              {"seed", o.seed},         {"trials", o.trials}};
}

// One "path: value" line per JSON leaf, so the human view keeps every field.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render(const Json& report, const std::string& format, const std::string& header) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  if (format == "json") {
    os << report.dump(2) << '\n';
  } else if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
  } else {
    if (!header.empty()) os << header << '\n';
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return os.str();
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw UsageError("cannot write output file '" + o.output + "'");
  f << text;
}

bool agrees(Status s, double gap, const Tolerances& tol) {
  if (s == Status::Holds) return gap >= -10.0 * tol.rel;
  if (s == Status::Fails) return gap < 0.0;
  return true;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto inst = parse_instance(read_input(o.input));
  const std::string a = o.swap ? "g" : "f";
  const std::string b = o.swap ? "f" : "g";
  const auto& f = inst.function(a);
  const auto& g = inst.function(b);

  Json paths = Json::object();
  std::vector<Status> statuses;
  const auto primary = inst.space.field == Field::Real ? ckx_orthogonal_real(f, g, o.tol) : ckx_orthogonal_complex(f, g, o.tol);
  paths[inst.space.field == Field::Real ? "real" : "complex"] = to_json(primary);
  statuses.push_back(primary.status);
  // The directional form is licensed for a single attaining point or a connected K.
  if (norm_attaining_set(f, o.tol.mf).size() == 1 || inst.k.connected) {
    const auto d = ckx_orthogonal_directional(f, g, o.tol);
    paths["directional"] = to_json(d);
    statuses.push_back(d.status);
  }
  SweepOptions sweep;
  sweep.range = o.range;
  const auto oracle = ckx_oracle(f, g, sweep);
  const double nf = sup_norm(f);
  const double gap = nf > 0.0 ? (oracle.min_value - nf) / nf : 0.0;

  bool consistent = true;
  std::optional<Status> decided;
  for (auto s : statuses) {
    if (s == Status::Undetermined) continue;
    if (decided && *decided != s) consistent = false;
    decided = s;
    consistent = consistent && agrees(s, gap, o.tol);
  }
  const auto undetermined = static_cast<std::size_t>(std::count(statuses.begin(), statuses.end(), Status::Undetermined));
  const Status overall = decided && consistent ? *decided : Status::Undetermined;

  const Json report{{"command", "check"},
                    {"pair", {{"a", a}, {"b", b}}},
                    {"status", to_string(overall)},
                    {"consistent", consistent},
                    {"paths", paths},
                    {"oracle", to_json(oracle, inst.space.field)},
                    {"relativeGap", gap},
                    {"config", tolerances_json(o)}};
  std::string header;
  if (o.format == "human") {
    std::ostringstream os;
    os << a << " _|_ " << b << ": " << to_string(overall) << (consistent ? "" : "  (INCONSISTENT)") << '\n';
    for (const auto& [name, v] : paths.items()) os << "  " << name << ": " << v.at("status").get<std::string>() << '\n';
    os << "  oracle min ||" << a << " + l " << b << "|| = " << oracle.min_value << " vs ||" << a << "|| = " << nf << '\n';
    header = os.str();
  }
  emit(render(report, o.format, header), o, out);
  if (!consistent) return kInconsistent;
  if (2 * undetermined > statuses.size() || primary.undetermined()) return kUndetermined;
  return kOk;
}

ClassifyOptions classify_options(const Options& o) {
  ClassifyOptions c;
  c.tol = o.tol;
  c.seed = o.seed;
  c.certifier.seed = o.seed;
  if (o.trials) c.trials = o.trials;
  return c;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto inst = parse_instance(read_input(o.input));
  const auto& f = inst.function("f");
  const auto opts = classify_options(o);
  Json report{{"command", "classify"}, {"config", tolerances_json(o)}};
  report["left"] = to_json(classify_left_symmetric(f, opts), f);
  report["right"] = to_json(classify_right_symmetric(f, opts), f);
  if (f.is_zero()) {
    report["smooth"] = Json{{"answer", "unknown"}, {"reason", "f = 0 has no norming point"}};
  } else {
    report["smooth"] = to_json(classify_smooth(f, opts), f);
  }
  std::string header;
  if (o.format == "human") {
    header = "left symmetric: " + report["left"]["answer"].get<std::string>() +
             "\nright symmetric: " + report["right"]["answer"].get<std::string>() +
             "\nsmooth: " + report["smooth"]["answer"].get<std::string>() + "\n";
  }
  emit(render(report, o.format, header), o, out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<std::string> names = o.all ? suite_names() : o.suites;
  if (names.empty()) throw UsageError("name at least one suite or pass --all");
  SuiteConfig config;
  config.seed = o.seed;
  config.trials = o.trials;
  config.inner_trials = o.inner_trials;
  config.tol = o.tol;
  const auto report = run_suites(names, config);
  if (o.format == "csv") {
    emit(to_csv(report), o, out);
  } else {
    std::string header;
    if (o.format == "human") {
      std::ostringstream os;
      os << "suite                          regime      trials   holds   fails   undet  passed\n";
      for (const auto& s : report.suites) {
        os << s.name << std::string(31 - std::min<std::size_t>(30, s.name.size()), ' ') << s.regime
           << std::string(12 - s.regime.size(), ' ') << s.trials << '\t' << s.holds << '\t' << s.fails << '\t'
           << s.undetermined << '\t' << (s.passed() ? "yes" : "NO") << '\n';
      }
      header = os.str();
    }
    emit(render(to_json(report), o.format, header), o, out);
  }
  bool contradiction = false;
  for (const auto& s : report.suites) contradiction = contradiction || (s.theorem_null && s.fails > 0);
  if (contradiction) return kInconsistent;
  return report.ok() ? kOk : kUndetermined;
}

int cmd_example(const Options& o, std::ostream& out) {
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  const auto rep = reproduce_interval_example(o.samples, classify_options(o));
  Json report = to_json(rep);
  report["command"] = "example";
  report["config"] = tolerances_json(o);
  std::string header;
  if (o.format == "human") {
    std::ostringstream os;
    os << "K = " << o.samples << " samples of [0,1] plus {2}, X = (R^2, max)\n"
       << "||f|| = " << rep.norm_f << ", ||g|| = " << rep.norm_g << '\n'
       << "min ||g + l f|| = " << rep.g_perp_f.oracle.min_value << " (g _|_ f: " << to_string(rep.g_perp_f.verdict.status)
       << ")\n"
       << "||f - g/2|| = " << rep.value_at_half << '\n'
       << "min ||f + l g|| = " << rep.f_perp_g.oracle.min_value << " at l = " << rep.f_perp_g.oracle.argmin.real()
       << " (f _|_ g: " << to_string(rep.f_perp_g.verdict.status) << ")\n";
    header = os.str();
  }
  emit(render(report, o.format, header), o, out);
  return rep.passed ? kOk : kInconsistent;
}

int cmd_c00(const Options& o, std::ostream& out) {
  const auto inst = parse_instance(read_input(o.input));
  const auto rep = c00_remark_witness(inst.function("f"), o.normalize, o.tol);
  Json report = to_json(rep);
  report["command"] = "c00";
  report["config"] = tolerances_json(o);
  std::string header;
  if (o.format == "human") {
    std::ostringstream os;
    os << "||g|| = " << rep.norm_g << ", ||f - g/2|| = " << rep.half_gap << ", g _|_ f: "
       << to_string(rep.g_perp_f.verdict.status) << ", f _|_ g: " << to_string(rep.f_perp_g.verdict.status) << '\n';
    header = os.str();
  }
  emit(render(report, o.format, header), o, out);
  return rep.passed ? kOk : kInconsistent;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Birkhoff-James orthogonality checks in normed spaces and C(K, X)", "bjg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", o.input, "Instance JSON: a file path, '-' for stdin, or inline JSON");
  app.add_option("--output", o.output, "Write the report here instead of stdout");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--seed", o.seed, "Master seed")->envname("BJG_SEED");
  app.add_option("--trials", o.trials, "Trials per suite or search budget (0 = default)");
  app.add_option("--tol", o.tol.rel, "Relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--t-grid", o.tol.t_grid, "Points on the unit circle for complex scans")->check(CLI::Range(4, 1 << 20));
  app.add_option("--u-grid", o.tol.u_grid, "Points on the half circle for k_u search")->check(CLI::Range(2, 1 << 20));
  app.add_option("--range", o.range, "Oracle sweep half-width (0 = automatic)")->check(CLI::NonNegativeNumber);

  auto* check = app.add_subcommand("check", "Decide f _|_ g on every applicable path and against the oracle");
  check->add_flag("--swap", o.swap, "Check g _|_ f instead");
  auto* classify = app.add_subcommand("classify", "Left/right symmetry and smoothness of f");
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suites", o.suites, "Suite names");
  verify->add_flag("--all", o.all, "Run every suite");
  verify->add_option("--inner-trials", o.inner_trials, "Inner trials per instance (0 = default)");
  auto* example = app.add_subcommand("example", "Reproduce the interval-plus-point example");
  example->add_option("--samples", o.samples, "Sample points of [0,1]");
  auto* c00 = app.add_subcommand("c00", "Build and verify the finite-support witness for f");
  c00->add_flag("--normalize", o.normalize, "Scale f to norm 1 first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "bjg: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*example) return cmd_example(o, out);
    if (*c00) return cmd_c00(o, out);
    return kUsage;
  } catch (const UsageError& e) {
    err << "bjg: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalError& e) {
    err << "bjg: internal error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const Error& e) {
    err << "bjg: data error: " << e.what() << '\n';
    return kData;
  } catch (const Json::exception& e) {
    err << "bjg: data error: " << e.what() << '\n';
    return kData;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"bjg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bjg::cli

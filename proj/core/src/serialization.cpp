#include "bjg/serialization.hpp"

#include <cmath>
#include <optional>
#include <set>

#include "bjg/errors.hpp"

namespace bjg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DataError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw DataError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string point_id(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw DataError("point identifiers must be strings or numbers");
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

const CFunction& Instance::function(const std::string& name) const {
  const auto it = functions.find(name);
  if (it == functions.end()) throw DataError("instance has no function '" + name + "'");
  return it->second;
}

Instance make_instance(const std::map<std::string, CFunction>& functions) {
  if (functions.empty()) throw DomainError("an instance needs at least one function");
  const auto& first = functions.begin()->second;
  for (const auto& [name, f] : functions) check_compatible(first, f);
  return Instance{first.model(), first.space(), functions};
}

Json to_json(Scalar z, Field field) {
  if (field == Field::Real) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json to_json(const NormSpec& spec) {
  return std::visit(Overloaded{
                        [](const Lp& n) { return Json{{"norm", "lp"}, {"p", n.p}}; },
                        [](const Sup&) { return Json{{"norm", "sup"}}; },
                        [](const WeightedSup& n) { return Json{{"norm", "wsup"}, {"weights", n.weights}}; },
                        [](const FiniteSupportSup& n) { return Json{{"norm", "c00"}, {"maxDim", n.max_dim}}; },
                    },
                    spec);
}

Json to_json(const NormedSpace& space) {
  Json j = to_json(space.norm);
  j["field"] = to_string(space.field);
  return j;
}

Json to_json(const Vector& x) {
  Json j = Json::array();
  for (const auto& z : x.coords()) j.push_back(to_json(z, x.field()));
  return j;
}

Json to_json(const KModel& k) {
  Json isolated = Json::array();
  Json coords = Json::object();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k.isolated[i]) isolated.push_back(k.points[i]);
    if (i < k.coordinates.size() && k.coordinates[i]) coords[k.points[i]] = *k.coordinates[i];
  }
  Json j{{"points", k.points}, {"isolated", isolated}, {"connected", k.connected}};
  if (!k.description.empty()) j["description"] = k.description;
  if (!coords.empty()) j["coordinates"] = coords;
  return j;
}

Json values_to_json(const CFunction& f) {
  Json j = Json::object();
  for (std::size_t k = 0; k < f.size(); ++k) {
    Json v = Json::array();
    for (const auto& z : f[k].coords()) v.push_back(to_json(z, f.space().field));
    j[f.model().points[k]] = v;
  }
  return j;
}

Json to_json(const Instance& instance) {
  Json fs = Json::object();
  for (const auto& [name, f] : instance.functions) fs[name] = values_to_json(f);
  return Json{{"K", to_json(instance.k)}, {"X", to_json(instance.space)}, {"functions", fs}};
}

Json to_json(const Witness& w) {
  Json j = Json::object();
  const Field field = Field::Complex;
  if (w.lambda) j["lambda"] = w.lambda->imag() == 0.0 ? Json(w.lambda->real()) : to_json(*w.lambda, field);
  if (w.value) j["value"] = *w.value;
  if (w.unit) j["unit"] = w.unit->imag() == 0.0 ? Json(w.unit->real()) : to_json(*w.unit, field);
  if (w.direction) j["direction"] = to_json(*w.direction);
  return j;
}

Json to_json(const Verdict& v) {
  Json j{{"status", to_string(v.status)},
         {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)},
         {"margin", number_or_null(v.margin)}};
  if (!v.points.empty()) j["points"] = v.points;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const OracleResult& o, Field field) {
  return Json{{"minValue", o.min_value}, {"argmin", to_json(o.argmin, field)}};
}

Json to_json(const PairCheck& c, Field field) {
  return Json{{"verdict", to_json(c.verdict)}, {"oracle", to_json(c.oracle, field)}, {"relativeGap", c.relative_gap}};
}

Json to_json(const Classification& c, const CFunction& f) {
  Json witness(nullptr);
  if (c.witness) {
    std::map<std::string, CFunction> fs{{"f", f}, {"g", *c.witness}};
    if (c.aux_witness) fs.emplace("h", *c.aux_witness);
    witness = to_json(make_instance(fs));
  }
  Json margins = Json::object();
  for (const auto& [k, v] : c.margins) margins[k] = number_or_null(v);
  return Json{{"answer", to_string(c.answer)}, {"theorem", c.theorem}, {"witness", witness},
              {"trials", c.trials},            {"margins", margins},    {"reason", c.reason}};
}

Json to_json(const ExampleReport& r) {
  const auto f = interval_example_f(r.samples);
  return Json{{"samples", r.samples},
              {"normF", r.norm_f},
              {"normG", r.norm_g},
              {"mfIsAll", r.mf_is_all},
              {"gPerpF", to_json(r.g_perp_f, Field::Real)},
              {"fPerpG", to_json(r.f_perp_g, Field::Real)},
              {"valueAtMinusHalf", r.value_at_half},
              {"right", to_json(r.right, f)},
              {"passed", r.passed},
              {"failures", r.failures}};
}

Json to_json(const C00Report& r) {
  const Field field = r.f.space().field;
  return Json{{"instance", to_json(make_instance({{"f", r.f}, {"g", r.g}}))},
              {"normG", r.norm_g},
              {"normFMinusHalfG", r.half_gap},
              {"gPerpF", to_json(r.g_perp_f, field)},
              {"fPerpG", to_json(r.f_perp_g, field)},
              {"passed", r.passed},
              {"failures", r.failures}};
}

// ---------------------------------------------------------------------------
// Parsing

NormSpec norm_spec_from_json(const Json& j) {
  const auto& kind = require(j, "norm");
  if (!kind.is_string()) throw DataError("'norm' must be a string");
  const auto name = kind.get<std::string>();
  NormSpec spec;
  if (name == "lp") {
    spec = Lp{j.contains("p") ? number(j.at("p"), "p") : 2.0};
  } else if (name == "sup") {
    spec = Sup{};
  } else if (name == "wsup") {
    const auto& w = require(j, "weights");
    if (!w.is_array()) throw DataError("'weights' must be an array");
    WeightedSup ws;
    for (const auto& x : w) ws.weights.push_back(number(x, "weight"));
    spec = ws;
  } else if (name == "c00") {
    const auto& m = require(j, "maxDim");
    if (!m.is_number_integer() || m.get<long long>() < 1) throw DataError("'maxDim' must be a positive integer");
    spec = FiniteSupportSup{m.get<std::size_t>()};
  } else {
    throw DataError("unknown norm '" + name + "'");
  }
  try {
    validate(spec);
  } catch (const ConfigError& e) {
    throw DataError(e.what());
  }
  return spec;
}

NormedSpace space_from_json(const Json& j) {
  NormedSpace s;
  s.norm = norm_spec_from_json(j);
  if (j.contains("field")) {
    const auto& f = j.at("field");
    if (f == "real") {
      s.field = Field::Real;
    } else if (f == "complex") {
      s.field = Field::Complex;
    } else {
      throw DataError("'field' must be \"real\" or \"complex\"");
    }
  }
  return s;
}

Vector vector_from_json(const Json& j, Field field) {
  if (!j.is_array() || j.empty()) throw DataError("a vector must be a non-empty array");
  std::vector<Scalar> c;
  for (const auto& z : j) {
    if (z.is_number()) {
      c.emplace_back(z.get<double>(), 0.0);
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      if (field == Field::Real && z[1].get<double>() != 0.0) throw DataError("complex coordinate in a real space");
      c.emplace_back(z[0].get<double>(), z[1].get<double>());
    } else {
      throw DataError("coordinates must be numbers or [re, im] pairs");
    }
  }
  return Vector(field, std::move(c));
}

KModel kmodel_from_json(const Json& j) {
  const auto& pts = require(j, "points");
  if (!pts.is_array() || pts.empty()) throw DataError("'points' must be a non-empty array");
  KModel k;
  for (const auto& p : pts) k.points.push_back(point_id(p));
  const std::size_t n = k.points.size();
  const bool has_connected = j.contains("connected");
  if (has_connected && !j.at("connected").is_boolean()) throw DataError("'connected' must be a boolean");
  k.connected = has_connected ? j.at("connected").get<bool>() : n == 1;
  k.isolated.assign(n, false);
  if (j.contains("isolated")) {
    const auto& iso = j.at("isolated");
    if (!iso.is_array()) throw DataError("'isolated' must be an array");
    for (const auto& p : iso) k.isolated[k.index_of(point_id(p))] = true;
  } else if (!k.connected || n == 1) {
    k.isolated.assign(n, true);
  }
  k.coordinates.assign(n, std::nullopt);
  if (j.contains("coordinates")) {
    const auto& cs = j.at("coordinates");
    if (!cs.is_object()) throw DataError("'coordinates' must be an object");
    for (const auto& [id, v] : cs.items()) k.coordinates[k.index_of(id)] = number(v, "coordinate");
  }
  if (j.contains("description") && j.at("description").is_string()) k.description = j.at("description");
  k.validate();
  return k;
}

CFunction function_from_json(const Json& j, const KModel& k, const NormedSpace& space) {
  if (!j.is_object()) throw DataError("a function must map point identifiers to vectors");
  std::vector<std::optional<Vector>> v(k.size());
  for (const auto& [id, coords] : j.items()) v[k.index_of(id)] = vector_from_json(coords, space.field);
  std::vector<Vector> values;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!v[i]) throw DataError("function has no value at point '" + k.points[i] + "'");
    values.push_back(std::move(*v[i]));
  }
  try {
    return CFunction(k, space, std::move(values));
  } catch (const DataError&) {
    throw;
  } catch (const Error& e) {
    throw DataError(e.what());
  }
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("an instance must be a JSON object");
  Instance inst;
  inst.k = kmodel_from_json(require(j, "K"));
  inst.space = space_from_json(require(j, "X"));
  const auto& fs = require(j, "functions");
  if (!fs.is_object()) throw DataError("'functions' must be an object");
  for (const auto& [name, f] : fs.items()) inst.functions.emplace(name, function_from_json(f, inst.k, inst.space));
  if (!std::holds_alternative<FiniteSupportSup>(inst.space.norm)) {
    std::optional<std::size_t> dim;
    for (const auto& [name, f] : inst.functions) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (!dim) dim = f[i].size();
        if (f[i].size() != *dim) throw DataError("function '" + name + "' has a vector of the wrong dimension");
      }
    }
  }
  return inst;
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const Json::exception& e) {
    throw DataError(e.what());
  }
}

}  // namespace bjg

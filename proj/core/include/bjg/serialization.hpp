#pragma once

// JSON encodings of norms, vectors, K models, instances, verdicts and
// reports. Scalars of complex spaces are [re, im] pairs.

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "bjg/classifiers.hpp"
#include "bjg/function_space.hpp"

namespace bjg {

using Json = nlohmann::json;

/// Self-contained problem description: K, X and named functions.
struct Instance {
  KModel k;
  NormedSpace space;
  std::map<std::string, CFunction> functions;

  /// Throws DataError when the function is missing.
  const CFunction& function(const std::string& name) const;
};

/// Builds an instance from functions sharing one model and space.
Instance make_instance(const std::map<std::string, CFunction>& functions);

Json to_json(Scalar z, Field field);
Json to_json(const NormSpec& spec);
Json to_json(const NormedSpace& space);
Json to_json(const Vector& x);
Json to_json(const KModel& k);
Json values_to_json(const CFunction& f);
Json to_json(const Instance& instance);
Json to_json(const Witness& w);
Json to_json(const Verdict& v);
Json to_json(const OracleResult& o, Field field);
Json to_json(const PairCheck& c, Field field);
/// Embeds f, the witness g and (if present) h as an instance.
Json to_json(const Classification& c, const CFunction& f);
Json to_json(const ExampleReport& r);
Json to_json(const C00Report& r);

/// Every parser below throws DataError on schema violations.
NormSpec norm_spec_from_json(const Json& j);
NormedSpace space_from_json(const Json& j);
Vector vector_from_json(const Json& j, Field field);
KModel kmodel_from_json(const Json& j);
CFunction function_from_json(const Json& j, const KModel& k, const NormedSpace& space);
Instance instance_from_json(const Json& j);

/// Parses text; malformed JSON raises UsageError, schema violations DataError.
Instance parse_instance(const std::string& text);

}  // namespace bjg

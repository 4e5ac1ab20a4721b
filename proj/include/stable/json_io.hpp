#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "stable/compactness.hpp"
#include "stable/optimize.hpp"
#include "stable/seminorms.hpp"

namespace stable {

using Json = nlohmann::json;

// Parsers throw PathError (ParseError/ValidationError kind) carrying the
// JSON-pointer-ish location of the offending field.
MeasureAlgebra algebra_from_json(const Json& j, const std::string& path);
Event event_from_json(const Json& j, const MeasureAlgebra& alg,
                      const std::string& path);
Partition partition_from_json(const Json& j, const MeasureAlgebra& alg,
                              const std::string& path);
L0Scalar scalar_from_json(const Json& j, const MeasureAlgebra& alg,
                          const std::string& path);
StepNatural natural_from_json(const Json& j, const MeasureAlgebra& alg,
                              const std::string& path);
L0Vector vector_from_json(const Json& j, const MeasureAlgebra& alg,
                          const std::string& path);
// lenient: structural defects (empty per-atom lists, NaN) pass through to the
// compactness checker instead of throwing
StableSet set_from_json(const Json& j, const MeasureAlgebra& alg,
                        const std::string& path, bool lenient = false);
Seminorm seminorm_from_json(const Json& j, const MeasureAlgebra& alg,
                            const std::string& path);
StableFunction function_from_json(const Json& j, const MeasureAlgebra& alg,
                                  const std::string& path);

Json to_json(const MeasureAlgebra& alg);
Json to_json(const Event& e);
Json to_json(const Partition& p);
Json to_json(const L0Scalar& x);
Json to_json(const StepNatural& n);
Json to_json(const L0Vector& x);
Json to_json(const StableSet& k);
Json to_json(const ModuleMap& m);
Json to_json(const StableFamily<L0Vector>& fam);
Json to_json(const StableFamily<L0Scalar>& fam);
Json to_json(const Seminorm& p);

// One scenario file: the shared algebra plus named objects and the command
// payload. See docs/formats.md.
struct Scenario {
  MeasureAlgebra algebra;
  std::map<std::string, StableSet> sets;
  std::map<std::string, L0Vector> vectors;
  std::map<std::string, L0Scalar> scalars;
  std::map<std::string, StableFunction> functions;
  std::map<std::string, SeminormFamily> families;
  Json command;
};

Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& file_path);

}  // namespace stable

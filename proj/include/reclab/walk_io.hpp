#pragma once

#include <variant>

#include "json.hpp"
#include "reclab/walk_models.hpp"

namespace reclab::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

using AnySpec = std::variant<models::QuadrantWalkSpec, models::SlabWalkSpec, models::ExplicitTreeSpec,
                             models::ClassTreeSpec>;
using AnyValidated =
    std::variant<models::Validated<models::QuadrantWalkSpec>, models::Validated<models::SlabWalkSpec>,
                 models::Validated<models::ExplicitTreeSpec>, models::Validated<models::ClassTreeSpec>>;

/// Strings "p/q" or integers. JSON floats are rejected.
Rational parse_rational(const json& j);
json rational_json(const Rational& r);

/// Reads a spec document. Unknown keys are ignored; schema_version is required.
AnySpec parse_spec(const json& doc);
AnyValidated parse_and_validate(const json& doc);

json to_json(const models::Law& law);
json to_json(const models::QuadrantWalkSpec& spec);
json to_json(const models::SlabWalkSpec& spec);
json to_json(const models::ExplicitTreeSpec& spec);
json to_json(const models::ClassTreeSpec& spec);
json to_json(const AnySpec& spec);
json to_json(const AnyValidated& spec);

json to_json(const models::OrderResult& r);
json to_json(const models::HomogeneityReport& r);
json to_json(const models::SlabHomogeneityReport& r);

}  // namespace reclab::io

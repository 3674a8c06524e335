#pragma once

// JSON encodings of the library's value types.  Non-finite numbers are
// written as the strings "inf", "-inf" and "nan"; readers accept the same.

#include <nlohmann/json.hpp>

#include "wplab/bounds.hpp"
#include "wplab/geometry.hpp"
#include "wplab/plaplacian.hpp"
#include "wplab/report.hpp"
#include "wplab/verify.hpp"

namespace wplab {

inline constexpr int report_schema_version = 1;

nlohmann::json json_number(double x);
double number_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const CheckReport& r);
void to_json(nlohmann::json& j, const MoserTrace& t);
void to_json(nlohmann::json& j, const BoundInputs& in);
void from_json(const nlohmann::json& j, BoundInputs& in);
void to_json(nlohmann::json& j, const BoundSet& b);
void to_json(nlohmann::json& j, const ProfileSpec& profile);
void to_json(nlohmann::json& j, const ModelSpace& space);
/// Missing fields keep their defaults; unknown kinds or tags throw
/// InvalidArgument.  The result is validated.
void from_json(const nlohmann::json& j, ModelSpace& space);

/// {"tag": name, "params": [...]}, or for tables {"tag": "tabulated",
/// "lo": a, "hi": b, "values": [...]}.
ProfileSpec profile_from_json(const nlohmann::json& j);

/// Scalars of an eigen solve (no field values).
nlohmann::json eigen_summary(const EigenResult& r);

}  // namespace wplab

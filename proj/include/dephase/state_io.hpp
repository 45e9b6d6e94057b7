#pragma once

// JSON state format: {"dim": 4, "re": [[...] x4], "im": [[...] x4]}, row-major
// in the basis |++>, |+->, |-+>, |-->. "im" may be omitted for real states.

#include <string>

#include <json.hpp>

#include "dephase/states.hpp"

namespace dephase {

// Schema problems throw kInvalidArgument; a well-formed but unphysical
// matrix throws InvalidStateError.
TwoQubitState state_from_json(const nlohmann::json& j);
TwoQubitState state_from_json_text(const std::string& text);
TwoQubitState load_state_file(const std::string& path);

nlohmann::json state_to_json(const TwoQubitState& s);

}  // namespace dephase

#pragma once

// Built-in scenarios, one per published plot plus a few extras.

#include <json.hpp>

#include <string>
#include <vector>

namespace tpc::cli {

[[nodiscard]] std::vector<std::string> preset_names();

/// Scenario JSON for `name`; throws ConfigError for unknown names.
[[nodiscard]] nlohmann::json preset(const std::string& name);

}  // namespace tpc::cli

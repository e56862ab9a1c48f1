// commands.hpp — command parameter parsing and execution
#pragma once

#include "output.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vibrolang::cli {

using Job = std::function<RunOutput()>;

const std::vector<std::string>& command_names();

/// Parses and validates params, throwing ConfigError/DomainError; the returned job does the numerics.
Job prepare(const std::string& command, const nlohmann::json& params, std::uint64_t seed);

}  // namespace vibrolang::cli

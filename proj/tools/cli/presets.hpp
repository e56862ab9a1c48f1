// presets.hpp — bundled figure presets compiled into the binary
#pragma once

#include <map>
#include <string>

namespace vibrolang::cli {

/// name → JSON run document
const std::map<std::string, std::string>& presets();

}  // namespace vibrolang::cli

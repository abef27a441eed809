#pragma once

#include <string>

#include <json.hpp>

namespace pullcurv::report {

using json = nlohmann::ordered_json;

// Serialize with a stable field order and trailing newline.
std::string render(const json& j);

// Write via a temp file + rename so partially written reports never appear.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace pullcurv::report

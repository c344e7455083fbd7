#pragma once

#include <filesystem>
#include <string>

namespace mvl2e {

// Round-trippable decimal formatting (shortest form that parses back exactly).
std::string format_double(double value);

// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace mvl2e

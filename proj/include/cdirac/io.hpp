#pragma once

#include <filesystem>
#include <string>

namespace cdirac::io {

/// Formats with up to 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

/// Writes content to path via a temporary file and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cdirac::io

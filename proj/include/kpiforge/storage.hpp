#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace kpiforge {

// Writes to a sibling temp file, flushes, then renames over `path`, so a
// reader sees either the old document or the complete new one.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Throws ErrorCode::io on failure.
std::string read_file(const std::filesystem::path& path);

// Random identifier: prefix + 16 lowercase hex digits.
std::string new_id(std::string_view prefix);

// Ids double as file names, so only [A-Za-z0-9_-] is accepted.
bool is_safe_id(std::string_view id);

}  // namespace kpiforge

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace perceptlet {

/// Filesystem trouble: unreadable input, unwritable output.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed document content (JSON or CSV); the message names the problem
/// and, where possible, the offending line or field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and renames into place, so a failed run
/// never leaves a partial output behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace perceptlet

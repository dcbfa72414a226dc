#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace arrowlab {

/// I/O failures carry their own exception type so the CLI can map them to
/// a dedicated exit code.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation of a double ("0.1", not
/// "0.10000000000000001"); byte-stable goldens without precision loss.
std::string format_double(double value);

/// Writes UTF-8 text with \n line endings exactly as given.
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

} // namespace arrowlab

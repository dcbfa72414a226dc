#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace arrowlab {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// SHA-256 of a file's bytes, lowercase hex.
std::string sha256_file_hex(const std::filesystem::path& path);

std::string iso8601_utc_now();

/// Record of one run: the exact config, the artifact and generator
/// identifiers, wall-clock bounds and a digest per output file. Re-running
/// the embedded config reproduces the digests (timestamps aside).
struct RunManifest {
    std::string artifact_version = kArtifactVersion;
    std::string generator_algorithm;
    nlohmann::json config;
    std::string started_at;
    std::string finished_at;
    std::vector<std::pair<std::string, std::string>> outputs; // name, sha256

    nlohmann::json to_json() const;

    /// Serializes to `run_manifest.json` inside output_dir.
    void write(const std::filesystem::path& output_dir) const;
};

} // namespace arrowlab

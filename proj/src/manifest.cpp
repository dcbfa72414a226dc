#include "arrowlab/manifest.hpp"

#include "arrowlab/csv.hpp"
#include "arrowlab/rng.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>

namespace arrowlab {

std::string sha256_file_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for hashing: " + path.string());
    }
    const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
        EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw IoError("cannot initialize SHA-256");
    }
    std::array<char, 1 << 16> buffer;
    while (in) {
        in.read(buffer.data(), buffer.size());
        const std::streamsize got = in.gcount();
        if (got > 0 &&
            EVP_DigestUpdate(ctx.get(), buffer.data(),
                             static_cast<std::size_t>(got)) != 1) {
            throw IoError("SHA-256 update failed");
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), digest, &digest_len) != 1) {
        throw IoError("SHA-256 finalize failed");
    }
    std::string hex;
    hex.reserve(2 * digest_len);
    for (unsigned int i = 0; i < digest_len; ++i) {
        char byte[3];
        std::snprintf(byte, sizeof byte, "%02x", digest[i]);
        hex += byte;
    }
    return hex;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
    std::tm utc{};
    gmtime_r(&seconds, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return stamp;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json outputs_json = nlohmann::json::array();
    for (const auto& [name, digest] : outputs) {
        outputs_json.push_back({{"path", name}, {"sha256", digest}});
    }
    return {
        {"artifact_version", artifact_version},
        {"generator_algorithm", generator_algorithm},
        {"config", config},
        {"started_at", started_at},
        {"finished_at", finished_at},
        {"outputs", outputs_json},
    };
}

void RunManifest::write(const std::filesystem::path& output_dir) const {
    write_text_file(output_dir / "run_manifest.json",
                    to_json().dump(2) + "\n");
}

} // namespace arrowlab

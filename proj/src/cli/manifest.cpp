#include "tempcast/cli/manifest.hpp"

#include <fstream>

#include <openssl/evp.h>

#include "tempcast/errors.hpp"

#ifndef TEMPCAST_VERSION
#define TEMPCAST_VERSION "0.0.0"
#endif

namespace tempcast::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string toolkit_version() { return TEMPCAST_VERSION; }

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "tempcast";
    j["version"] = toolkit_version();
    j["command"] = command;
    j["input"] = {{"path", input_path}, {"sha256", input_sha256}};
    j["seed"] = seed;
    j["config"] = config;
    j["artifacts"] = artifacts;
    j["rerun_args"] = rerun_args;
    return j;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << manifest.to_json().dump(2) << '\n';
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace tempcast::cli

#include "anyonmc/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "anyonmc/errors.hpp"
#include "anyonmc/version.hpp"

namespace anyonmc {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest::RunManifest(std::string subcommand, std::map<std::string, std::string> parameters,
                         std::uint64_t seed)
    : subcommand_(std::move(subcommand)),
      parameters_(std::move(parameters)),
      seed_(seed),
      started_(iso8601_utc_now()) {}

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

void RunManifest::finish_and_write(const std::string& manifest_path) {
    nlohmann::json j;
    j["artifact"] = "anyonmc";
    j["version"] = kVersion;
    j["subcommand"] = subcommand_;
    j["rng"] = kRngName;
    j["seed"] = seed_;
    j["started_utc"] = started_;
    j["finished_utc"] = iso8601_utc_now();
    j["parameters"] = parameters_;
    nlohmann::json outs = nlohmann::json::array();
    for (const std::string& path : outputs_) {
        std::ifstream in(path, std::ios::binary | std::ios::ate);
        if (!in) throw ConfigError("manifest: cannot stat output " + path);
        outs.push_back({{"path", path},
                        {"bytes", static_cast<std::uint64_t>(in.tellg())},
                        {"fnv1a64", fnv1a64_file_hex(path)}});
    }
    j["outputs"] = outs;
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write manifest: " + manifest_path);
    out << j.dump(2) << '\n';
}

}  // namespace anyonmc

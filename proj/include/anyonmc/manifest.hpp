#ifndef ANYONMC_MANIFEST_HPP
#define ANYONMC_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace anyonmc {

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_file_hex(const std::string& path);
std::string iso8601_utc_now();

// Reproducibility sidecar: the resolved parameter set, the seed, the
// generator name, and a digest of every file the run wrote. Rebuilding with
// the same parameters and seed reproduces the outputs byte-identically
// within one build.
class RunManifest {
public:
    RunManifest(std::string subcommand, std::map<std::string, std::string> parameters,
                std::uint64_t seed);

    void add_output(const std::string& path);
    void finish_and_write(const std::string& manifest_path);

private:
    std::string subcommand_;
    std::map<std::string, std::string> parameters_;
    std::uint64_t seed_;
    std::string started_;
    std::vector<std::string> outputs_;
};

}  // namespace anyonmc

#endif

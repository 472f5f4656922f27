#ifndef ANYONMC_CONFIG_HPP
#define ANYONMC_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "anyonmc/errors.hpp"

namespace anyonmc {

// Flat key=value configuration. '[section]' headers are allowed for
// organization but keys form a single global namespace; '#' and ';' start
// comments. Command-line flags override file values through set().
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback);
    std::string require_string(const std::string& key);
    double get_double(const std::string& key, double fallback);
    long get_long(const std::string& key, long fallback);
    int get_int(const std::string& key, int fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::vector<double> get_double_list(const std::string& key, const std::vector<double>& fallback);
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback);

    // Throws if the file carried keys nothing consumed (typo protection).
    void ensure_all_consumed() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

    // Every key the run actually used, with its effective value (defaults
    // included); this is what goes into the manifest.
    const std::map<std::string, std::string>& resolved() const { return resolved_; }

private:
    std::map<std::string, std::string> entries_;
    mutable std::set<std::string> consumed_;
    mutable std::map<std::string, std::string> resolved_;
};

}  // namespace anyonmc

#endif

#include "anyonmc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "anyonmc/csv.hpp"

namespace anyonmc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects a number, got '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + v + "'");
    }
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
            continue;  // sections are decorative
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.entries_[key] = value;
    }
    return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    const std::string v = it == entries_.end() ? fallback : it->second;
    resolved_[key] = v;
    return v;
}

std::string KeyValueConfig::require_string(const std::string& key) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    resolved_[key] = it->second;
    return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    const double v = it == entries_.end() ? fallback : parse_double(key, it->second);
    resolved_[key] = format_double(v);
    return v;
}

long KeyValueConfig::get_long(const std::string& key, long fallback) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    const long v = it == entries_.end() ? fallback : parse_long(key, it->second);
    resolved_[key] = std::to_string(v);
    return v;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) {
    return static_cast<int>(get_long(key, fallback));
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        resolved_[key] = fallback ? "true" : "false";
        return fallback;
    }
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        resolved_[key] = "true";
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        resolved_[key] = "false";
        return false;
    }
    throw ConfigError("key '" + key + "' expects a boolean, got '" + it->second + "'");
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::string joined;
        for (double v : fallback) joined += (joined.empty() ? "" : ",") + format_double(v);
        resolved_[key] = joined;
        return fallback;
    }
    resolved_[key] = it->second;
    std::vector<double> out;
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse_double(key, tok));
    }
    if (out.empty()) throw ConfigError("key '" + key + "' expects a comma-separated list");
    return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key, const std::vector<int>& fallback) {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::string joined;
        for (int v : fallback) joined += (joined.empty() ? "" : ",") + std::to_string(v);
        resolved_[key] = joined;
        return fallback;
    }
    resolved_[key] = it->second;
    std::vector<int> out;
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(static_cast<int>(parse_long(key, tok)));
    }
    if (out.empty()) throw ConfigError("key '" + key + "' expects a comma-separated list");
    return out;
}

void KeyValueConfig::ensure_all_consumed() const {
    std::string unknown;
    for (const auto& [key, value] : entries_)
        if (!consumed_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    if (!unknown.empty()) throw ConfigError("unknown configuration key(s): " + unknown);
}

}  // namespace anyonmc

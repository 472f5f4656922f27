#ifndef ANYONMC_CSV_HPP
#define ANYONMC_CSV_HPP

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "anyonmc/errors.hpp"

namespace anyonmc {

// Shortest representation that round-trips; keeps output files byte-stable.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// RFC-4180-style writer: UTF-8, '.' decimal separator, header mandatory,
// fields quoted only when they contain a comma, quote, or newline.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw ConfigError("cannot open output file: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << quoted(cells[i]);
        }
        out_ << '\n';
    }

    // Flush before anything reads the file back (digests, tests).
    void close() { out_.close(); }

    static std::string quoted(const std::string& s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            q += c;
            if (c == '"') q += '"';
        }
        q += '"';
        return q;
    }

private:
    std::ofstream out_;
};

}  // namespace anyonmc

#endif

#pragma once

// Arrangement text format: a line holding n, then n lines of n
// space-separated integers. Files may hold several blocks; blank lines and
// lines starting with '#' are ignored between and around blocks.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gemlab/arrangement.hpp"

namespace gemlab {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace detail

inline void write_arrangement(std::ostream& out, const Arrangement& a) {
    const int n = a.order();
    out << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ' ';
            out << a.at(i, j);
        }
        out << '\n';
    }
}

inline std::string to_text(const Arrangement& a) {
    std::ostringstream os;
    write_arrangement(os, a);
    return os.str();
}

/// Reads every block in the stream. Throws ParseError on malformed text and
/// ValidationError when a block is not a permutation of 1..n^2.
inline std::vector<Arrangement> read_arrangements(std::istream& in) {
    std::vector<Arrangement> out;
    std::string line;
    while (detail::next_content_line(in, line)) {
        std::istringstream header(line);
        int n = 0;
        std::string extra;
        if (!(header >> n) || (header >> extra) || n < 1) {
            throw ParseError("expected order line, got: " + line);
        }
        std::vector<Value> entries;
        entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (!detail::next_content_line(in, line)) throw ParseError("unexpected end of input in grid body");
            std::istringstream row(line);
            long long v = 0;
            int count = 0;
            while (row >> v) {
                entries.push_back(static_cast<Value>(v));
                ++count;
            }
            if (!row.eof()) throw ParseError("non-integer token in row: " + line);
            if (count != n) throw ParseError("row " + std::to_string(i) + " has " + std::to_string(count) + " entries");
        }
        out.push_back(Arrangement::validate(n, std::move(entries)));
    }
    return out;
}

inline Arrangement parse_arrangement(const std::string& text) {
    std::istringstream in(text);
    auto all = read_arrangements(in);
    if (all.size() != 1) throw ParseError("expected exactly one arrangement, found " + std::to_string(all.size()));
    return std::move(all.front());
}

inline std::vector<Arrangement> load_arrangements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_arrangements(in);
}

}  // namespace gemlab

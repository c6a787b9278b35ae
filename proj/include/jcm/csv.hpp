// csv.hpp — Deterministic CSV/text output: shortest round-trip float
// formatting and atomic file writes (temp file + rename).

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

namespace jcm {

// Shortest decimal that round-trips to the same double. Byte-stable goldens
// without precision loss.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string format_int(long long x) { return std::to_string(x); }

// Rows of already-formatted cells; comma separators, LF endings, no quoting.
class CsvWriter {
public:
    void header(std::vector<std::string> names) { rows_.push_back(join(names)); }
    void row(std::vector<std::string> cells) { rows_.push_back(join(cells)); }

    std::string str() const {
        std::string out;
        for (const auto& r : rows_) {
            out += r;
            out += '\n';
        }
        return out;
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        return line;
    }

    std::vector<std::string> rows_;
};

inline void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("write failed on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace jcm

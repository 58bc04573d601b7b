#include "fpu/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fpu {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("atomic_write: write failed on " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic_write: rename to " + path + " failed");
}

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns) {
    if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
    const size_t rows = columns.front().values.size();
    for (const auto& c : columns)
        if (c.values.size() != rows)
            throw std::invalid_argument("write_csv: ragged columns");
    std::string text;
    for (size_t c = 0; c < columns.size(); ++c) {
        text += (c ? "," : "") + columns[c].name;
    }
    text += "\n";
    char buf[40];
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.12g", columns[c].values[r]);
            if (c) text += ",";
            text += buf;
        }
        text += "\n";
    }
    atomic_write(path, text);
}

}  // namespace fpu

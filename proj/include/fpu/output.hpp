#pragma once

#include <string>
#include <vector>

namespace fpu {

// All file outputs are written whole to a temp file and renamed into place.
void atomic_write(const std::string& path, const std::string& content);

struct CsvColumn {
    std::string name;
    std::vector<double> values;
};

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns);

}  // namespace fpu

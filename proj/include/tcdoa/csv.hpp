#pragma once

// Minimal CSV table model: UTF-8, comma-delimited, one header row, numeric
// cells rendered with 17 significant digits.

#include <string>
#include <vector>

#include "tcdoa/errors.hpp"

namespace tcdoa {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string to_csv_string(const Table& table);
void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);

}  // namespace tcdoa

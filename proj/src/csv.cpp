#include "tcdoa/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tcdoa {

std::string to_csv_string(const Table& table) {
    std::ostringstream out;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) out << ',';
        out << table.header[j];
    }
    out << '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw DimensionError("to_csv_string: row width differs from header");
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_csv: cannot open " + path);
    out << to_csv_string(table);
    if (!out) throw ConfigError("write_csv: write failed for " + path);
}

Table parse_csv(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) {
            char* end = nullptr;
            row.push_back(std::strtod(c.c_str(), &end));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_csv: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_csv(text);
}

}  // namespace tcdoa

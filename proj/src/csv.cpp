#include "seirkit/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace seirkit {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_csv(const CsvTable& table, std::ostream& sink) {
    for (const std::string& line : table.comments) sink << "# " << line << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) sink << ',';
        sink << table.header[i];
    }
    sink << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("write_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) sink << ',';
            sink << format_double(row[i]);
        }
        sink << '\n';
    }
    if (!sink) throw std::runtime_error("write_csv: sink write failure");
}

} // namespace seirkit

#ifndef SEIRKIT_CSV_HPP
#define SEIRKIT_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

namespace seirkit {

// Rectangular numeric table. Values are rendered with 17 significant digits
// so a round trip through text is bit-exact.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    // Emitted before the header as "# ..." lines: provenance such as the
    // sampling seed or what the table contains.
    std::vector<std::string> comments;
};

// 17-significant-digit rendering used for every number the toolkit emits.
std::string format_double(double value);

// RFC-4180-style output: comma delimiter, header first, LF line endings.
// Comment lines go first, each prefixed with "# ".
void write_csv(const CsvTable& table, std::ostream& sink);

} // namespace seirkit

#endif

#ifndef QWAVE_CSV_HPP
#define QWAVE_CSV_HPP

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qwave {

using CsvCell = std::variant<std::int64_t, double, std::string>;

// In-memory result table; rendering is deterministic (doubles printed with
// %.17g) so a rerun with the same seed produces byte-identical files.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;

    void add_row(std::vector<CsvCell> row) { rows.push_back(std::move(row)); }
    std::string render() const;
    void write(const std::filesystem::path& path) const;
};

std::string format_cell(const CsvCell& cell);

} // namespace qwave

#endif

#include "qwave/csv.hpp"

#include "qwave/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qwave {

std::string format_cell(const CsvCell& cell) {
    if (std::holds_alternative<std::int64_t>(cell))
        return std::to_string(std::get<std::int64_t>(cell));
    if (std::holds_alternative<double>(cell)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(cell));
        return buf;
    }
    return std::get<std::string>(cell);
}

std::string Table::render() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_cell(row[i]);
        os << "\n";
    }
    return os.str();
}

void Table::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << render();
    if (!out) throw Error("write failed: " + path.string());
}

} // namespace qwave

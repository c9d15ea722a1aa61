#ifndef QWAVE_PLOT_HPP
#define QWAVE_PLOT_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qwave {

// Minimal static SVG line plot. Output is cosmetic only; no pass/fail
// decision ever reads it.
void svg_line_plot(const std::filesystem::path& path, const std::string& title,
                   const std::vector<std::pair<double, double>>& points,
                   bool log_y = false);

} // namespace qwave

#endif

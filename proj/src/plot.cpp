#include "qwave/plot.hpp"

#include "qwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace qwave {

void svg_line_plot(const std::filesystem::path& path, const std::string& title,
                   const std::vector<std::pair<double, double>>& points,
                   bool log_y) {
    const double W = 640, H = 420, M = 50;

    std::vector<std::pair<double, double>> pts;
    for (auto [x, y] : points) {
        if (log_y) {
            if (y <= 0) continue;
            y = std::log10(y);
        }
        pts.emplace_back(x, y);
    }

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!pts.empty()) {
        xmin = xmax = pts.front().first;
        ymin = ymax = pts.front().second;
        for (auto [x, y] : pts) {
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    }
    if (xmax - xmin < 1e-300) xmax = xmin + 1;
    if (ymax - ymin < 1e-300) ymax = ymin + 1;

    const auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    const auto py = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());

    char buf[160];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                  "fill=\"none\" stroke=\"#888\"/>\n",
                  M, M, W - 2 * M, H - 2 * M);
    out << buf;
    out << "<text x=\"" << W / 2 << "\" y=\"" << M - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << title << (log_y ? " (log y)" : "") << "</text>\n";

    if (!pts.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : pts) {
            std::snprintf(buf, sizeof(buf), "%.3f,%.3f ", px(x), py(y));
            out << buf;
        }
        out << "\"/>\n";
        for (auto [x, y] : pts) {
            std::snprintf(buf, sizeof(buf),
                          "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2.2\" fill=\"#1f4e9c\"/>\n",
                          px(x), py(y));
            out << buf;
        }
    }

    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\">%.4g</text>\n",
                  6.0, H - M, ymin);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\">%.4g</text>\n",
                  6.0, M + 4, ymax);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\">%.4g</text>\n",
                  M, H - M + 16, xmin);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%.4g</text>\n",
                  W - M, H - M + 16, xmax);
    out << buf;

    out << "</svg>\n";
}

} // namespace qwave

#include "qwave/grid_cdf.hpp"

#include "qwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qwave {

double GridCDF::value_at(double xq) const {
    if (xq <= x0) return F.front();
    const int K = cells();
    if (xq >= x_max()) return F.back();
    const double pos = (xq - x0) / dx;
    const int k = std::min(static_cast<int>(pos), K - 1);
    const double t = pos - k;
    return F[k] + t * (F[k + 1] - F[k]);
}

double GridCDF::mean() const {
    const int K = cells();
    double m = x0 * F.front() + x_max() * (1.0 - F.back());
    for (int k = 1; k <= K; ++k)
        m += 0.5 * (x(k - 1) + x(k)) * (F[k] - F[k - 1]);
    return m;
}

void GridCDF::shift_cells(int s) {
    if (s == 0) return;
    const int K = cells();
    // Exposed cells continue the tail geometrically (constant when the tail is
    // already exhausted); a flat extension would let shifted-away mass pile up
    // at the edge instead of decaying.
    if (s > 0) {
        const int m = std::min(s, K);
        for (int k = 0; k + m <= K; ++k) F[k] = F[k + m];
        const double a1 = 1.0 - F[K - m];
        const double a2 = K - m >= 1 ? 1.0 - F[K - m - 1] : a1;
        const double r = a2 > 0.0 ? std::clamp(a1 / a2, 0.0, 1.0) : 0.0;
        double tail = a1;
        for (int k = K - m + 1; k <= K; ++k) {
            tail *= r;
            F[k] = 1.0 - tail;
        }
    } else {
        const int m = std::min(-s, K);
        for (int k = K; k - m >= 0; --k) F[k] = F[k - m];
        const double b1 = F[m];
        const double b2 = m + 1 <= K ? F[m + 1] : b1;
        const double r = b2 > 0.0 ? std::clamp(b1 / b2, 0.0, 1.0) : 0.0;
        double tail = b1;
        for (int k = m - 1; k >= 0; --k) {
            tail *= r;
            F[k] = tail;
        }
    }
    x0 += s * dx;
}

void GridCDF::validate() const {
    if (F.size() < 2 || !(dx > 0.0))
        throw ValidationError("GridCDF needs dx > 0 and at least two nodes");
    if (F.front() < 0.0 || F.back() > 1.0)
        throw ValidationError("GridCDF values must lie in [0,1]");
    for (std::size_t k = 1; k < F.size(); ++k)
        if (F[k] < F[k - 1])
            throw ValidationError("GridCDF values must be non-decreasing");
}

namespace {

void check_coverage(const GridCDF& g, double eps_tail) {
    if (g.tail_left() + g.tail_right() > 2.0 * eps_tail)
        throw WindowTooSmall("grid window covers less than 1 - 2*eps_tail of the mass");
}

} // namespace

GridCDF grid_from_cdf(const std::function<double(double)>& cdf, double x0,
                      double dx, int cells, double eps_tail) {
    if (cells < 1 || !(dx > 0.0))
        throw ValidationError("grid needs dx > 0 and at least one cell");
    GridCDF g;
    g.x0 = x0;
    g.dx = dx;
    g.F.resize(cells + 1);
    for (int k = 0; k <= cells; ++k)
        g.F[k] = std::clamp(cdf(g.x(k)), 0.0, 1.0);
    for (int k = 1; k <= cells; ++k)
        g.F[k] = std::max(g.F[k], g.F[k - 1]);
    check_coverage(g, eps_tail);
    return g;
}

GridCDF grid_from_dirac(double a, double x0, double dx, int cells, double eps_tail) {
    return grid_from_cdf([a](double x) { return x >= a ? 1.0 : 0.0; },
                         x0, dx, cells, eps_tail);
}

GridCDF grid_from_uniform(double a, double b, double x0, double dx, int cells,
                          double eps_tail) {
    if (!(b > a)) throw ValidationError("uniform initial condition requires b > a");
    return grid_from_cdf(
        [a, b](double x) { return std::clamp((x - a) / (b - a), 0.0, 1.0); },
        x0, dx, cells, eps_tail);
}

GridCDF grid_from_empirical(std::vector<double> points, double x0, double dx,
                            int cells, double eps_tail) {
    if (points.empty()) throw ValidationError("EmptySystem: no points for empirical CDF");
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    return grid_from_cdf(
        [&points, n](double x) {
            const auto it = std::upper_bound(points.begin(), points.end(), x);
            return static_cast<double>(it - points.begin()) / n;
        },
        x0, dx, cells, eps_tail);
}

double signed_area_between(const GridCDF& F, const GridCDF& G) {
    std::set<double> nodes;
    for (int k = 0; k <= F.cells(); ++k) nodes.insert(F.x(k));
    for (int k = 0; k <= G.cells(); ++k) nodes.insert(G.x(k));
    double acc = 0.0;
    double prev_x = 0.0, prev_d = 0.0;
    bool first = true;
    for (double xq : nodes) {
        const double d = F.value_at(xq) - G.value_at(xq);
        if (!first) acc += 0.5 * (prev_d + d) * (xq - prev_x);
        prev_x = xq;
        prev_d = d;
        first = false;
    }
    return acc;
}

} // namespace qwave

#ifndef QWAVE_GRID_CDF_HPP
#define QWAVE_GRID_CDF_HPP

#include <functional>
#include <vector>

namespace qwave {

// A CDF sampled on a uniform grid x_k = x0 + k*dx, k = 0..K, non-decreasing
// values in [0,1]. The mass below x0 (= F[0]) and above x_K (= 1 - F[K]) is
// carried explicitly as tail mass pinned at the window edges. Between nodes
// the CDF is interpreted as linear; outside the window it is constant.
struct GridCDF {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> F;

    int cells() const { return static_cast<int>(F.size()) - 1; }
    double x(int k) const { return x0 + k * dx; }
    double x_max() const { return x(cells()); }
    double tail_left() const { return F.front(); }
    double tail_right() const { return 1.0 - F.back(); }

    // Linear interpolation, constant extension outside the window.
    double value_at(double xq) const;

    // Trapezoidal Stieltjes mean with edge masses pinned at the window ends.
    double mean() const;

    // Pure translation (grid origin moves, values untouched).
    void translate(double c) { x0 += c; }

    // Window shift by whole cells: s > 0 moves the window right. Exposed
    // values are copied without interpolation; newly uncovered cells
    // continue the tail geometrically so a moving window does not pile
    // shifted-away mass at the edge.
    void shift_cells(int s);

    void validate() const; // monotone, range [0,1]
};

// Constructors for the supported initial-condition specs. eps_tail guards
// window coverage: mass outside the window beyond 2*eps_tail throws
// WindowTooSmall.
GridCDF grid_from_cdf(const std::function<double(double)>& cdf, double x0,
                      double dx, int cells, double eps_tail = 1e-6);
GridCDF grid_from_dirac(double a, double x0, double dx, int cells,
                        double eps_tail = 1e-6);
GridCDF grid_from_uniform(double a, double b, double x0, double dx, int cells,
                          double eps_tail = 1e-6);
// Empirical CDF of the given (not necessarily sorted) points.
GridCDF grid_from_empirical(std::vector<double> points, double x0, double dx,
                            int cells, double eps_tail = 1e-6);

// Exact integral of (F - G) over the union of the windows, with constant
// extension outside; both inputs are piecewise linear so the trapezoid rule
// on merged nodes is exact.
double signed_area_between(const GridCDF& F, const GridCDF& G);

} // namespace qwave

#endif

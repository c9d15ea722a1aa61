#ifndef QWAVE_METRICS_HPP
#define QWAVE_METRICS_HPP

#include "qwave/grid_cdf.hpp"

#include <span>
#include <string>
#include <vector>

namespace qwave {

// A CDF as a finite list of breakpoints, either a right-continuous step
// function (empirical states) or linear between nodes (grid CDFs). This is
// the common refinement W1 works on: on any interval between merged
// breakpoints both inputs are linear, so the L1 distance is exact.
struct PiecewiseCdf {
    std::vector<double> x; // ascending breakpoints
    std::vector<double> v; // value at x[i] (right-continuous)
    bool linear = false;   // linear between nodes; step otherwise

    static PiecewiseCdf from_empirical(std::vector<double> points);
    static PiecewiseCdf from_grid(const GridCDF& g);

    double left_value() const { return linear ? v.front() : 0.0; }
    double right_value() const { return v.back(); }
    // Right limit at xq, and left limit at xq.
    double at_right(double xq) const;
    double at_left(double xq) const;
    void translate(double c);
};

// Exact L1 distance between two CDFs (the Wasserstein-1 distance).
// Throws ValidationError if the inputs disagree by more than mismatch_tol
// beyond their windows (unbounded L1).
double wasserstein1(const PiecewiseCdf& F, const PiecewiseCdf& G,
                    double mismatch_tol = 1e-6);
double wasserstein1(const GridCDF& F, const GridCDF& G, double mismatch_tol = 1e-6);
double wasserstein1(const std::vector<double>& points, const GridCDF& G,
                    double mismatch_tol = 1e-6);
double wasserstein1(const std::vector<double>& a, const std::vector<double>& b);

struct MomentReport {
    double order = 0.0;
    double value = 0.0;
    // Conservative allowance for mass outside a grid window (0 for empirical
    // states); tests that must be safe use value + tail_allowance.
    double tail_allowance = 0.0;
    std::string method;
};

// (1/n) sum |w_i|^ell for empirical states; trapezoidal Stieltjes sum with
// edge masses for grid CDFs.
MomentReport absolute_moment(const std::vector<double>& w, double ell);
MomentReport absolute_moment(const GridCDF& g, double ell);

struct BatchMeans {
    double mean = 0.0;
    double se = 0.0;
    int batches = 0;
};

// Non-overlapping batch means; throws ValidationError when the series is
// shorter than 2*batch_count.
BatchMeans batch_means(std::span<const double> series, int batch_count);

} // namespace qwave

#endif

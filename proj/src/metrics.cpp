#include "qwave/metrics.hpp"

#include "qwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qwave {

PiecewiseCdf PiecewiseCdf::from_empirical(std::vector<double> points) {
    if (points.empty())
        throw ValidationError("EmptySystem: empirical CDF needs at least one point");
    for (double p : points)
        if (!std::isfinite(p))
            throw ValidationError("empirical CDF points must be finite");
    std::sort(points.begin(), points.end());
    PiecewiseCdf c;
    c.linear = false;
    const double n = static_cast<double>(points.size());
    std::size_t i = 0;
    while (i < points.size()) {
        std::size_t j = i;
        while (j < points.size() && points[j] == points[i]) ++j;
        c.x.push_back(points[i]);
        c.v.push_back(static_cast<double>(j) / n);
        i = j;
    }
    return c;
}

PiecewiseCdf PiecewiseCdf::from_grid(const GridCDF& g) {
    g.validate();
    PiecewiseCdf c;
    c.linear = true;
    c.x.resize(g.F.size());
    for (int k = 0; k <= g.cells(); ++k) c.x[k] = g.x(k);
    c.v = g.F;
    return c;
}

double PiecewiseCdf::at_right(double xq) const {
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    if (it == x.begin()) return left_value();
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    if (!linear || i + 1 >= x.size()) return v[i];
    if (xq >= x.back()) return v.back();
    const double t = (xq - x[i]) / (x[i + 1] - x[i]);
    return v[i] + t * (v[i + 1] - v[i]);
}

double PiecewiseCdf::at_left(double xq) const {
    if (linear) return at_right(xq);
    const auto it = std::lower_bound(x.begin(), x.end(), xq);
    if (it == x.begin()) return 0.0;
    return v[static_cast<std::size_t>(it - x.begin()) - 1];
}

void PiecewiseCdf::translate(double c) {
    for (double& xi : x) xi += c;
}

double wasserstein1(const PiecewiseCdf& F, const PiecewiseCdf& G, double mismatch_tol) {
    if (std::abs(F.left_value() - G.left_value()) > mismatch_tol ||
        std::abs(F.right_value() - G.right_value()) > mismatch_tol)
        throw ValidationError("wasserstein1: CDFs disagree beyond their windows (unbounded L1)");

    std::vector<double> nodes;
    nodes.reserve(F.x.size() + G.x.size());
    nodes.insert(nodes.end(), F.x.begin(), F.x.end());
    nodes.insert(nodes.end(), G.x.begin(), G.x.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    double acc = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double a = nodes[i - 1], b = nodes[i];
        const double da = F.at_right(a) - G.at_right(a);
        const double db = F.at_left(b) - G.at_left(b);
        const double w = b - a;
        if (da * db >= 0.0) {
            acc += 0.5 * (std::abs(da) + std::abs(db)) * w;
        } else {
            acc += 0.5 * (da * da + db * db) / (std::abs(da) + std::abs(db)) * w;
        }
    }
    return acc;
}

double wasserstein1(const GridCDF& F, const GridCDF& G, double mismatch_tol) {
    return wasserstein1(PiecewiseCdf::from_grid(F), PiecewiseCdf::from_grid(G),
                        mismatch_tol);
}

double wasserstein1(const std::vector<double>& points, const GridCDF& G,
                    double mismatch_tol) {
    return wasserstein1(PiecewiseCdf::from_empirical(points), PiecewiseCdf::from_grid(G),
                        mismatch_tol);
}

double wasserstein1(const std::vector<double>& a, const std::vector<double>& b) {
    return wasserstein1(PiecewiseCdf::from_empirical(a), PiecewiseCdf::from_empirical(b));
}

MomentReport absolute_moment(const std::vector<double>& w, double ell) {
    if (ell < 0.0) throw ValidationError("moment order must be >= 0");
    if (w.empty()) throw ValidationError("EmptySystem: moment of an empty state");
    double acc = 0.0;
    for (double wi : w) acc += std::pow(std::abs(wi), ell);
    MomentReport r;
    r.order = ell;
    r.value = acc / static_cast<double>(w.size());
    r.tail_allowance = 0.0;
    r.method = "exact-empirical";
    return r;
}

MomentReport absolute_moment(const GridCDF& g, double ell) {
    if (ell < 0.0) throw ValidationError("moment order must be >= 0");
    g.validate();
    double acc = std::pow(std::abs(g.x0), ell) * g.tail_left()
               + std::pow(std::abs(g.x_max()), ell) * g.tail_right();
    for (int k = 1; k <= g.cells(); ++k) {
        const double dm = g.F[k] - g.F[k - 1];
        if (dm == 0.0) continue;
        acc += 0.5 * (std::pow(std::abs(g.x(k - 1)), ell) + std::pow(std::abs(g.x(k)), ell)) * dm;
    }
    MomentReport r;
    r.order = ell;
    r.value = acc;
    // Allowance assumes the unseen tail mass sits within twice the window reach.
    const double reach = 2.0 * std::max(std::abs(g.x0), std::abs(g.x_max()));
    r.tail_allowance = (g.tail_left() + g.tail_right()) * std::pow(reach, ell);
    r.method = "grid-stieltjes";
    return r;
}

BatchMeans batch_means(std::span<const double> series, int batch_count) {
    if (batch_count < 2)
        throw ValidationError("batch_means needs at least 2 batches");
    const std::size_t n = series.size();
    if (n < 2 * static_cast<std::size_t>(batch_count))
        throw ValidationError("batch_means: series shorter than 2 * batch_count");
    const std::size_t len = n / static_cast<std::size_t>(batch_count);
    const std::size_t used = len * static_cast<std::size_t>(batch_count);
    const std::size_t skip = n - used; // drop the oldest remainder

    std::vector<double> means(static_cast<std::size_t>(batch_count), 0.0);
    for (std::size_t b = 0; b < means.size(); ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < len; ++i) s += series[skip + b * len + i];
        means[b] = s / static_cast<double>(len);
    }
    double m = 0.0;
    for (double v : means) m += v;
    m /= static_cast<double>(batch_count);
    double var = 0.0;
    for (double v : means) var += (v - m) * (v - m);
    var /= static_cast<double>(batch_count - 1);

    BatchMeans r;
    r.mean = m;
    r.se = std::sqrt(var / static_cast<double>(batch_count));
    r.batches = batch_count;
    return r;
}

} // namespace qwave

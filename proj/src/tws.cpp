#include "qwave/tws.hpp"

#include "qwave/errors.hpp"
#include "qwave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwave {

double wave_speed(const RateProfile& profile) {
    return profile.antiderivative(1.0);
}

namespace {

GridCDF laplace_ramp(const MfmSolver& solver, double scale) {
    return solver.make_window(
        [scale](double x) {
            return x < 0.0 ? 0.5 * std::exp(x / scale)
                           : 1.0 - 0.5 * std::exp(-x / scale);
        },
        0.0);
}

// Resample a shape onto a finer grid (linear interpolation), recentered at 0.
GridCDF refine_onto(const MfmSolver& fine, const GridCDF& coarse) {
    GridCDF g = fine.make_window([&coarse](double x) { return coarse.value_at(x); },
                                 0.0);
    g.translate(-g.mean());
    return g;
}

} // namespace

TravelingWave tws_solve(const RateProfile& profile, const JumpLaw& law,
                        const TwsParams& params,
                        const std::optional<GridCDF>& start) {
    if (!(params.tau > 0.0)) throw ValidationError("tws_solve: tau must be > 0");
    if (!(params.tol_fix > 0.0)) throw ValidationError("tws_solve: tol_fix must be > 0");

    std::vector<int> factors = params.refine_factors;
    if (factors.empty() || factors.back() != 1) factors.push_back(1);

    TravelingWave wave;
    wave.speed = wave_speed(profile);
    wave.density_condition = law.satisfies_density_condition();

    GridCDF shape;
    bool have_shape = false;
    int total_iters = 0;

    for (std::size_t stage = 0; stage < factors.size(); ++stage) {
        const int f = factors[stage];
        MfmParams mp = params.mfm;
        mp.dx = params.mfm.dx * f;
        mp.dt = mp.dx;
        MfmSolver solver(profile, law, mp);

        const double tol = params.tol_fix * static_cast<double>(f * f);
        // window-end disagreement is bounded by the admitted tail mass
        const double w1_tol = std::max(1e-6, 4.0 * mp.eps_tail);
        if (!have_shape) {
            if (start) {
                GridCDF s0 = *start;
                s0.translate(-s0.mean());
                shape = solver.make_window(
                    [&s0](double x) { return s0.value_at(x); }, 0.0);
            } else {
                shape = laplace_ramp(solver, 1.0);
            }
            shape.translate(-shape.mean());
            have_shape = true;
        } else {
            shape = refine_onto(solver, shape);
        }

        double delta = 0.0;
        bool converged = false;
        for (int it = 0; it < params.max_iters; ++it) {
            GridCDF prev = shape;
            solver.solve(shape, params.tau);
            shape.translate(-shape.mean());
            delta = wasserstein1(prev, shape, w1_tol) / params.tau;
            ++total_iters;
            if (delta < tol) {
                converged = true;
                break;
            }
        }
        if (!converged && f == 1) {
            std::ostringstream os;
            os << "tws_solve did not converge: " << total_iters
               << " iterations, last W1 change per unit time " << delta
               << " vs tol " << params.tol_fix;
            throw Error(os.str());
        }
    }

    wave.shape = shape;
    wave.iterations = total_iters;
    wave.residual = tws_residual(shape, profile, law);
    return wave;
}

double tws_residual(const GridCDF& phi, const RateProfile& profile,
                    const JumpLaw& law) {
    phi.validate();
    if (std::abs(phi.mean()) > 1e-6)
        throw ValidationError("tws_residual: shape must have mean 0");

    const int K = phi.cells();
    const double dx = phi.dx;
    const double v = wave_speed(profile);

    // dH[j]: H-increment of cell j (j = 0 holds the left-tail mass).
    std::vector<double> dH(static_cast<std::size_t>(K) + 1, 0.0);
    double prevH = 0.0;
    for (int j = 0; j <= K; ++j) {
        const double Hj = profile.antiderivative(std::clamp(phi.F[j], 0.0, 1.0));
        dH[static_cast<std::size_t>(j)] = Hj - prevH;
        prevH = Hj;
    }

    // Kbar as a function of k - j only (uniform grid): average of
    // Jbar(x_k - y) over the source cell [x_{j-1}, x_j], matching the
    // evolution scheme's midpoint convention.
    std::vector<double> kbar(static_cast<std::size_t>(K) + 1, 0.0);
    for (int m = 0; m <= K; ++m)
        kbar[static_cast<std::size_t>(m)] =
            law.ccdf_integral(m * dx, (m + 1) * dx) / dx;

    // node defect: v phi'(x_k) minus the jump influx, central difference
    double worst = 0.0;
    for (int k = 1; k < K; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j)
            acc += dH[static_cast<std::size_t>(j)] * kbar[static_cast<std::size_t>(k - j)];
        const double r = v * (phi.F[k + 1] - phi.F[k - 1]) / (2.0 * dx) - acc;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

std::vector<std::pair<double, double>>
tws_attraction_curve(const GridCDF& f0, const RateProfile& profile,
                     const JumpLaw& law, const GridCDF& phi,
                     const std::vector<double>& times, const MfmParams& params) {
    MfmSolver solver(profile, law, params);
    GridCDF state = f0;
    std::vector<std::pair<double, double>> curve;
    curve.reserve(times.size());
    const double w1_tol = std::max(1e-6, 4.0 * params.eps_tail);
    solver.solve(state, times.empty() ? 0.0 : times.back(), times,
                 [&](double t, const GridCDF& F) {
                     GridCDF c = F;
                     c.translate(-c.mean());
                     curve.emplace_back(t, wasserstein1(c, phi, w1_tol));
                 });
    return curve;
}

} // namespace qwave

#ifndef QWAVE_TWS_HPP
#define QWAVE_TWS_HPP

#include "qwave/mfm.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qwave {

struct TravelingWave {
    GridCDF shape;        // mean 0
    double speed = 0.0;   // H(1)
    double residual = 0.0;
    int iterations = 0;
    bool density_condition = true; // uniqueness regime flag from the law
};

// Wave speed of the mean-field flow: v = H(1) = int_0^1 eta.
double wave_speed(const RateProfile& profile);

struct TwsParams {
    MfmParams mfm;
    double tau = 1.0;       // relaxation horizon per iteration
    double tol_fix = 1e-6;  // W1 change per unit time at convergence
    int max_iters = 400;    // per refinement stage
    // Coarse-to-fine warm start: factors applied to mfm.dx, ending at 1.
    std::vector<int> refine_factors = {8, 4, 2, 1};
};

// Traveling-wave shape as the attracting fixed point of the re-centered
// flow: evolve for tau, translate back to mean 0, repeat until the W1
// change per unit time drops below tol_fix. Starts from a centered
// exponential-tail ramp unless an initial CDF is given.
TravelingWave tws_solve(const RateProfile& profile, const JumpLaw& law,
                        const TwsParams& params,
                        const std::optional<GridCDF>& start = std::nullopt);

// Node defect of the wave equation:
//   R_k = v (phi_{k+1} - phi_{k-1}) / (2 dx)
//         - sum_{j<=k} [H(phi_j)-H(phi_{j-1})] Kbar_{k-j},
// where Kbar_m averages Jbar(x_k - y) over the source cell (matching the
// evolution scheme's midpoint convention). Returns max_k |R_k|, a sup-norm
// defect on the density scale.
double tws_residual(const GridCDF& phi, const RateProfile& profile,
                    const JumpLaw& law);

// W1 distance between the re-centered flow started at f0 and the wave shape,
// at the requested times (ascending).
std::vector<std::pair<double, double>>
tws_attraction_curve(const GridCDF& f0, const RateProfile& profile,
                     const JumpLaw& law, const GridCDF& phi,
                     const std::vector<double>& times, const MfmParams& params);

} // namespace qwave

#endif

#ifndef QWAVE_MFM_HPP
#define QWAVE_MFM_HPP

#include "qwave/grid_cdf.hpp"
#include "qwave/jump_law.hpp"
#include "qwave/rate_profile.hpp"

#include <functional>
#include <vector>

namespace qwave {

struct MfmParams {
    double dx = 0.01;
    double dt = 0.0;          // <= 0 means dt = dx
    double half_width = 15.0; // window is [center - L, center + L]
    int integrator = 4;       // 1 = Euler, 4 = classic RK4
    double eps_tail = 1e-6;
    double repair_limit = 1e-5; // SchemeUnstable beyond this per step
    // Evaluate the jump tail at cell midpoints rather than right edges.
    // Midpoint sums keep the discrete drift speed accurate to O(dx^2);
    // right-edge sums overshoot the speed by about dx/2 relative.
    bool midpoint_kernel = true;

    void validate() const;
};

// Direct-evaluation route for the time derivative of the CDF:
// dF_k/dt = - sum_{j<=k} [H(F_j) - H(F_{j-1})] * Jbar(x_k - x_j),
// with F_{-1} := 0 (left-tail mass pinned at x_0). The H-increment weights
// realize the quantile-averaged acceptance rate exactly, including atoms.
// Every entry lies in [-1, 0].
std::vector<double> mfm_rhs(const GridCDF& F, const RateProfile& profile,
                            const JumpLaw& law, bool midpoint_kernel = true);

// One explicit step (Euler or RK4) followed by clamping to [0,1] and a
// monotone repair; the repair magnitude must stay below repair_limit.
GridCDF mfm_step(const GridCDF& F, double dt, const RateProfile& profile,
                 const JumpLaw& law, int integrator = 4,
                 double repair_limit = 1e-5, bool midpoint_kernel = true);

// Evolves the CDF on a moving window recentered (by whole cells) at the
// current mean. The kernel is a precomputed table over the uniform grid,
// which must agree with the direct route to rounding.
class MfmSolver {
public:
    MfmSolver(RateProfile profile, JumpLaw law, MfmParams params);

    // Evolve F in place for duration T. Snapshot times are offsets from the
    // starting time, ascending; the callback sees the state at those times.
    void solve(GridCDF& F, double T,
               const std::vector<double>& snapshot_times = {},
               const std::function<void(double, const GridCDF&)>& on_snapshot = {});

    // Convenience: initial window centered on the initial mean.
    GridCDF make_window(const std::function<double(double)>& cdf, double center) const;

    double max_repair() const { return max_repair_; }
    const MfmParams& params() const { return params_; }
    const RateProfile& profile() const { return profile_; }
    const JumpLaw& law() const { return law_; }

    // Table-based kernel route, exposed for the dual-route agreement test.
    void rhs(const GridCDF& F, std::vector<double>& out) const;

private:
    void step_in_place(GridCDF& F, double dt);
    void recenter_window(GridCDF& F) const;

    RateProfile profile_;
    JumpLaw law_;
    MfmParams params_;
    std::vector<double> jtab_; // Jbar at multiples of dx (or midpoints)
    int jtab_cut_ = 0;         // index beyond which the kernel is negligible
    double max_repair_ = 0.0;
};

// |integral (F0 - Ft) dw - v t| / (v t): defect of the mass-transport
// identity between a start state and the state t later.
double mass_transport_defect(const GridCDF& F0, const GridCDF& Ft, double t,
                             double speed);

} // namespace qwave

#endif

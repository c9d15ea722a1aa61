#ifndef QWAVE_PARTICLE_SYSTEM_HPP
#define QWAVE_PARTICLE_SYSTEM_HPP

#include "qwave/jump_law.hpp"
#include "qwave/rate_profile.hpp"
#include "qwave/rng.hpp"

#include <functional>
#include <vector>

namespace qwave {

// One jump urge: who (by rank after tie-break), whether it was accepted,
// and the raw jump size (0 when rejected).
struct UrgeEvent {
    double time = 0.0;
    int particle_rank = 0; // 1-based rank among sorted positions
    bool accepted = false;
    double jump_size = 0.0;
};

// Sorted particle positions plus the simulation clock. Particles only move
// right; the clock only advances. Jump urges arrive as a single Poisson
// clock of rate n with uniform particle selection (identical in law to n
// independent rate-1 clocks), so one event costs O(log n).
class ParticleState {
public:
    explicit ParticleState(std::vector<double> positions);

    int size() const { return static_cast<int>(pos_.size()); }
    double clock() const { return clock_; }
    const std::vector<double>& positions() const { return pos_; }
    double mean() const { return sum_ / static_cast<double>(pos_.size()); }

    // Draw the outcome of one urge in the current state without applying it.
    // Consumes RNG draws in the fixed order: particle index, tie-break (only
    // when the block has ties), acceptance uniform, jump size (only when
    // accepted). Does not touch the clock.
    UrgeEvent propose(const RateProfile& profile, const JumpLaw& law, Rng& rng) const;

    // Advance the clock by an Exp(n) holding time and apply one urge.
    UrgeEvent step(const RateProfile& profile, const JumpLaw& law, Rng& rng);

    // Step until clock >= horizon.
    void run(const RateProfile& profile, const JumpLaw& law, double horizon, Rng& rng);

    // Like run, but invokes the observer at each requested time (sorted
    // ascending) with the state as of that time.
    void run_observed(const RateProfile& profile, const JumpLaw& law, double horizon,
                      Rng& rng, const std::vector<double>& sample_times,
                      const std::function<void(double, const ParticleState&)>& observer);

    // For checkpoint restore.
    static ParticleState restore(std::vector<double> sorted_positions, double clock);

private:
    void apply(const UrgeEvent& ev);

    std::vector<double> pos_; // sorted non-decreasing
    double clock_ = 0.0;
    double sum_ = 0.0; // running sum of positions
};

// Sorted particle locations relative to the state mean; sums to 0.
struct CenteredState {
    std::vector<double> w;
};

CenteredState recenter(const ParticleState& state);
CenteredState recenter(std::vector<double> positions);

// Average drift of the (non-centered) empirical mean:
// (1/n) sum_l eta_n(l/n) = int_0^1 eta_n.
double v_n(const RateProfile& profile, int n);

// Per-particle centered drift: for a co-location block of ranks l..l+k-1,
// the block average of eta_n minus v_n.
std::vector<double> zeta_bar(const CenteredState& state, const RateProfile& profile);

// First-order generator approximation applied to Phi_{2+chi}:
// (2+chi) * (1/n) * sum_i sign(w_i)|w_i|^{1+chi} zeta_bar_i. Always <= 0.
double lyapunov_G(const CenteredState& state, const RateProfile& profile, double chi);

// Exact per-urge expected centered increments E zeta_i, by enumerating the
// urged particle and every tie-break rank assignment. Independent of
// zeta_bar (which it must equal divided by n when the jump mean is 1).
// Throws when any co-location block exceeds max_block.
std::vector<double> enumerate_urge_outcome(const CenteredState& state,
                                           const RateProfile& profile,
                                           const JumpLaw& law,
                                           int max_block = 12);

// Default burn-in heuristic: 10 sqrt(n) / (1 - v).
double default_burn_in(int n, double speed);

struct StationarySpec {
    double burn_in = 0.0;  // <= 0 picks the default heuristic
    double spacing = 1.0;
    int count = 0;
    double chi = 1.0;
};

struct StationaryRun {
    std::vector<CenteredState> samples;
    std::vector<double> sample_times;
    std::vector<double> phi_one;      // Phi_1 per sample
    std::vector<double> phi_one_chi;  // Phi_{1+chi} per sample
    std::vector<double> lyapunov;     // G per sample
    double burn_in_used = 0.0;
};

// Burn in, then collect `count` re-centered snapshots spaced `spacing` apart.
StationaryRun stationary_sample(const StationarySpec& spec, int n,
                                const RateProfile& profile, const JumpLaw& law,
                                Rng& rng,
                                const std::vector<double>* initial = nullptr);

} // namespace qwave

#endif

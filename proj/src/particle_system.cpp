#include "qwave/particle_system.hpp"

#include "qwave/errors.hpp"
#include "qwave/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace qwave {

ParticleState::ParticleState(std::vector<double> positions) : pos_(std::move(positions)) {
    if (pos_.empty()) throw ValidationError("EmptySystem: need at least one particle");
    for (double p : pos_)
        if (!std::isfinite(p)) throw ValidationError("particle positions must be finite");
    std::sort(pos_.begin(), pos_.end());
    sum_ = 0.0;
    for (double p : pos_) sum_ += p;
}

ParticleState ParticleState::restore(std::vector<double> sorted_positions, double clock) {
    ParticleState s(std::move(sorted_positions));
    s.clock_ = clock;
    return s;
}

UrgeEvent ParticleState::propose(const RateProfile& profile, const JumpLaw& law,
                                 Rng& rng) const {
    const int n = size();
    const auto idx = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
    const double x = pos_[idx];

    // Co-location block of the selected particle; ties broken uniformly.
    const auto lo = std::lower_bound(pos_.begin(), pos_.end(), x) - pos_.begin();
    const auto hi = std::upper_bound(pos_.begin(), pos_.end(), x) - pos_.begin();
    const auto block = hi - lo;
    int rank = static_cast<int>(lo) + 1;
    if (block > 1) rank += static_cast<int>(rng.below(static_cast<std::uint64_t>(block)));

    UrgeEvent ev;
    ev.time = clock_;
    ev.particle_rank = rank;
    const double p = profile.eta_n(n, static_cast<double>(rank) / static_cast<double>(n));
    ev.accepted = rng.uniform() < p;
    ev.jump_size = ev.accepted ? law.sample(rng) : 0.0;
    return ev;
}

void ParticleState::apply(const UrgeEvent& ev) {
    if (!ev.accepted || ev.jump_size == 0.0) return;
    const std::size_t i = static_cast<std::size_t>(ev.particle_rank - 1);
    const double moved = pos_[i] + ev.jump_size;
    pos_.erase(pos_.begin() + static_cast<std::ptrdiff_t>(i));
    pos_.insert(std::upper_bound(pos_.begin(), pos_.end(), moved), moved);
    sum_ += ev.jump_size;
}

UrgeEvent ParticleState::step(const RateProfile& profile, const JumpLaw& law, Rng& rng) {
    clock_ += rng.exponential(static_cast<double>(size()));
    UrgeEvent ev = propose(profile, law, rng);
    ev.time = clock_;
    apply(ev);
    return ev;
}

void ParticleState::run(const RateProfile& profile, const JumpLaw& law, double horizon,
                        Rng& rng) {
    if (horizon < 0.0) throw ValidationError("run horizon must be >= 0");
    const double end = clock_ + horizon;
    while (clock_ < end) step(profile, law, rng);
}

void ParticleState::run_observed(const RateProfile& profile, const JumpLaw& law,
                                 double horizon, Rng& rng,
                                 const std::vector<double>& sample_times,
                                 const std::function<void(double, const ParticleState&)>& observer) {
    if (horizon < 0.0) throw ValidationError("run horizon must be >= 0");
    const double start = clock_;
    const double end = start + horizon;
    std::size_t next = 0;
    while (clock_ < end) {
        const double holding = rng.exponential(static_cast<double>(size()));
        const double event_time = clock_ + holding;
        while (next < sample_times.size() && start + sample_times[next] <= std::min(event_time, end)) {
            observer(sample_times[next], *this);
            ++next;
        }
        clock_ = event_time;
        if (clock_ >= end) break;
        UrgeEvent ev = propose(profile, law, rng);
        apply(ev);
    }
    while (next < sample_times.size() && start + sample_times[next] <= end) {
        observer(sample_times[next], *this);
        ++next;
    }
}

CenteredState recenter(const ParticleState& state) {
    return recenter(state.positions());
}

CenteredState recenter(std::vector<double> positions) {
    if (positions.empty()) throw ValidationError("EmptySystem: cannot recenter");
    std::sort(positions.begin(), positions.end());
    double m = 0.0;
    for (double p : positions) m += p;
    m /= static_cast<double>(positions.size());
    for (double& p : positions) p -= m;
    return CenteredState{std::move(positions)};
}

double v_n(const RateProfile& profile, int n) {
    if (n < 1) throw ValidationError("v_n: n must be >= 1");
    double acc = 0.0;
    for (int l = 1; l <= n; ++l)
        acc += profile.eta_n(n, static_cast<double>(l) / static_cast<double>(n));
    return acc / static_cast<double>(n);
}

std::vector<double> zeta_bar(const CenteredState& state, const RateProfile& profile) {
    const int n = static_cast<int>(state.w.size());
    if (n < 1) throw ValidationError("EmptySystem: zeta_bar of an empty state");
    const double vn = v_n(profile, n);
    std::vector<double> z(state.w.size());
    int l = 0;
    while (l < n) {
        int r = l;
        while (r < n && state.w[r] == state.w[l]) ++r;
        double block_avg = 0.0;
        for (int j = l; j < r; ++j)
            block_avg += profile.eta_n(n, static_cast<double>(j + 1) / static_cast<double>(n));
        block_avg /= static_cast<double>(r - l);
        for (int j = l; j < r; ++j) z[j] = block_avg - vn;
        l = r;
    }
    return z;
}

double lyapunov_G(const CenteredState& state, const RateProfile& profile, double chi) {
    if (!(chi > 0.0)) throw ValidationError("lyapunov_G requires chi > 0");
    const auto z = zeta_bar(state, profile);
    const int n = static_cast<int>(state.w.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wi = state.w[i];
        const double sgn = wi >= 0.0 ? 1.0 : -1.0;
        acc += sgn * std::pow(std::abs(wi), 1.0 + chi) * z[i];
    }
    return (2.0 + chi) * acc / static_cast<double>(n);
}

std::vector<double> enumerate_urge_outcome(const CenteredState& state,
                                           const RateProfile& profile,
                                           const JumpLaw& law,
                                           int max_block) {
    const int n = static_cast<int>(state.w.size());
    if (n < 1) throw ValidationError("EmptySystem: enumerate_urge_outcome of an empty state");
    const double m1 = law.moment(1.0);

    // E kappa_i: particle i gets the urge with prob 1/n; within its block it
    // is assigned each rank with prob 1/k; an assignment at rank r accepts
    // with prob eta_n(r/n) and then jumps E Z on average.
    std::vector<double> kappa(state.w.size(), 0.0);
    int l = 0;
    while (l < n) {
        int r = l;
        while (r < n && state.w[r] == state.w[l]) ++r;
        const int k = r - l;
        if (k > max_block)
            throw ValidationError("enumerate_urge_outcome: co-location block too large to enumerate");
        double e = 0.0;
        for (int rank = l + 1; rank <= r; ++rank)
            e += profile.eta_n(n, static_cast<double>(rank) / static_cast<double>(n));
        e = e / static_cast<double>(k) * m1 / static_cast<double>(n);
        for (int j = l; j < r; ++j) kappa[j] = e;
        l = r;
    }

    double total = 0.0;
    for (double e : kappa) total += e;
    std::vector<double> zeta(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i)
        zeta[i] = kappa[i] - total / static_cast<double>(n);
    return zeta;
}

double default_burn_in(int n, double speed) {
    return 10.0 * std::sqrt(static_cast<double>(n)) / (1.0 - speed);
}

StationaryRun stationary_sample(const StationarySpec& spec, int n,
                                const RateProfile& profile, const JumpLaw& law,
                                Rng& rng, const std::vector<double>* initial) {
    if (spec.count < 1) throw ValidationError("stationary_sample needs count >= 1");
    if (!(spec.spacing > 0.0)) throw ValidationError("stationary_sample needs spacing > 0");

    std::vector<double> start =
        initial ? *initial : std::vector<double>(static_cast<std::size_t>(n), 0.0);
    ParticleState state(std::move(start));

    const double burn_in =
        spec.burn_in > 0.0 ? spec.burn_in : default_burn_in(n, profile.speed());

    StationaryRun out;
    out.burn_in_used = burn_in;
    out.samples.reserve(static_cast<std::size_t>(spec.count));

    state.run(profile, law, burn_in, rng);
    for (int s = 0; s < spec.count; ++s) {
        if (s > 0) state.run(profile, law, spec.spacing, rng);
        CenteredState c = recenter(state);
        out.sample_times.push_back(state.clock());
        out.phi_one.push_back(absolute_moment(c.w, 1.0).value);
        out.phi_one_chi.push_back(absolute_moment(c.w, 1.0 + spec.chi).value);
        out.lyapunov.push_back(lyapunov_G(c, profile, spec.chi));
        out.samples.push_back(std::move(c));
    }
    return out;
}

} // namespace qwave

#include <doctest.h>

#include "qwave/errors.hpp"
#include "qwave/particle_system.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace qwave;

namespace {

const RateProfile kLinear = RateProfile::linear();
const JumpLaw kExp = JumpLaw::exponential(1.0);

CenteredState centered(std::vector<double> w) {
    return recenter(std::move(w));
}

// Monte Carlo estimate of the expected re-centered per-urge increment for
// each particle, holding the state fixed. Tied particles are exchangeable
// (the event only reports the tie-broken rank), so an accepted jump is
// attributed to its co-location block as a whole.
std::vector<double> mc_urge_increment(const CenteredState& state,
                                      const RateProfile& profile,
                                      const JumpLaw& law, Rng& rng, int urges,
                                      std::vector<double>* se_out = nullptr) {
    const auto n = state.w.size();
    ParticleState st(state.w);
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    for (int u = 0; u < urges; ++u) {
        const UrgeEvent ev = st.propose(profile, law, rng);
        const double common = ev.accepted ? ev.jump_size / static_cast<double>(n) : 0.0;
        std::size_t blo = 0, bhi = 0;
        if (ev.accepted) {
            const double x = state.w[static_cast<std::size_t>(ev.particle_rank - 1)];
            while (blo < n && state.w[blo] < x) ++blo;
            bhi = blo;
            while (bhi < n && state.w[bhi] == x) ++bhi;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double d = -common;
            if (ev.accepted && i >= blo && i < bhi)
                d += ev.jump_size / static_cast<double>(bhi - blo);
            sum[i] += d;
            sumsq[i] += d * d;
        }
    }
    std::vector<double> mean(n);
    for (std::size_t i = 0; i < n; ++i) mean[i] = sum[i] / urges;
    if (se_out) {
        se_out->resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double var = sumsq[i] / urges - mean[i] * mean[i];
            (*se_out)[i] = std::sqrt(std::max(var, 0.0) / urges);
        }
    }
    return mean;
}

} // namespace

TEST_CASE("average mean drift for the linear profile") {
    CHECK(v_n(kLinear, 1000) == doctest::Approx(0.4995).epsilon(1e-14));
    CHECK(v_n(kLinear, 2) == doctest::Approx(0.25));
    CHECK(v_n(kLinear, 1) == doctest::Approx(0.0));
}

TEST_CASE("centered per-urge drift for small states") {
    // two distinct particles
    auto z = zeta_bar(centered({0.0, 1.0}), kLinear);
    CHECK(z[0] == doctest::Approx(0.25));
    CHECK(z[1] == doctest::Approx(-0.25));

    // two co-located particles share the block average
    z = zeta_bar(centered({0.5, 0.5}), kLinear);
    CHECK(z[0] == doctest::Approx(0.0));
    CHECK(z[1] == doctest::Approx(0.0));

    // four distinct particles
    z = zeta_bar(centered({0.0, 1.0, 2.0, 3.0}), kLinear);
    CHECK(z[0] == doctest::Approx(0.375));
    CHECK(z[1] == doctest::Approx(0.125));
    CHECK(z[2] == doctest::Approx(-0.125));
    CHECK(z[3] == doctest::Approx(-0.375));
}

TEST_CASE("centered drifts always sum to zero") {
    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(40));
        std::vector<double> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = std::floor(6.0 * rng.uniform()) * 0.5; // forces ties
        const auto z = zeta_bar(centered(std::move(w)), kLinear);
        const double s = std::accumulate(z.begin(), z.end(), 0.0);
        CHECK(std::abs(s) < 1e-12);
    }
}

TEST_CASE("Lyapunov value for a frozen two-particle state") {
    CHECK(lyapunov_G(centered({-1.0, 1.0}), kLinear, 1.0) == doctest::Approx(-0.75));
}

TEST_CASE("Lyapunov functional is nonpositive on random states") {
    Rng rng(32);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(30));
        std::vector<double> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = std::floor(8.0 * rng.uniform()) * 0.25;
        const auto c = centered(std::move(w));
        for (double chi : {0.5, 1.0, 2.0})
            CHECK(lyapunov_G(c, kLinear, chi) <= 1e-12);
    }
}

TEST_CASE("enumeration agrees with the block-average drift for unit-mean jumps") {
    Rng rng(33);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(8));
        std::vector<double> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = std::floor(4.0 * rng.uniform());
        const auto c = centered(std::move(w));
        const auto zb = zeta_bar(c, kLinear);
        const auto en = enumerate_urge_outcome(c, kLinear, kExp);
        for (std::size_t i = 0; i < zb.size(); ++i)
            CHECK(en[i] == doctest::Approx(zb[i] / n).epsilon(1e-12));
    }
}

TEST_CASE("enumeration scales with the jump mean") {
    const auto c = centered({0.0, 1.0, 1.0});
    const auto unit = enumerate_urge_outcome(c, kLinear, kExp);
    const auto half = enumerate_urge_outcome(c, kLinear, JumpLaw::exponential(2.0, false));
    for (std::size_t i = 0; i < unit.size(); ++i)
        CHECK(half[i] == doctest::Approx(0.5 * unit[i]).epsilon(1e-12));
}

TEST_CASE("Monte Carlo urges reproduce the enumerated increments") {
    Rng rng(34);
    const auto c = centered({0.0, 0.0, 1.0}); // co-located pair at the bottom
    const auto expect = enumerate_urge_outcome(c, kLinear, kExp);
    std::vector<double> se;
    const auto got = mc_urge_increment(c, kLinear, kExp, rng, 200000, &se);
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(std::abs(got[i] - expect[i]) < 5 * se[i]);
}

TEST_CASE("oversized co-location blocks refuse to enumerate") {
    std::vector<double> w(20, 0.0);
    CHECK_THROWS_AS(enumerate_urge_outcome(centered(std::move(w)), kLinear, kExp, 12),
                    ValidationError);
}

TEST_CASE("construction validates and sorts") {
    CHECK_THROWS_AS(ParticleState(std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(ParticleState({0.0, std::nan("")}), ValidationError);
    ParticleState st({3.0, 1.0, 2.0});
    CHECK(st.positions() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(st.mean() == doctest::Approx(2.0));
    CHECK(st.clock() == doctest::Approx(0.0));
}

TEST_CASE("stepping keeps the positions sorted and the clock moving") {
    Rng rng(35);
    ParticleState st(std::vector<double>(50, 0.0));
    double prev_clock = 0.0;
    for (int i = 0; i < 2000; ++i) {
        st.step(kLinear, kExp, rng);
        CHECK(st.clock() > prev_clock);
        prev_clock = st.clock();
    }
    const auto& p = st.positions();
    CHECK(std::is_sorted(p.begin(), p.end()));
    // particles only move right
    for (double x : p) CHECK(x >= 0.0);
}

TEST_CASE("observed run fires the observer at each requested time") {
    Rng rng(36);
    ParticleState st(std::vector<double>(10, 0.0));
    std::vector<double> seen;
    st.run_observed(kLinear, kExp, 5.0, rng, {1.0, 2.5, 4.0},
                    [&](double t, const ParticleState& s) {
                        seen.push_back(t);
                        CHECK(s.clock() <= 5.0 + 1e-12);
                    });
    CHECK(seen == std::vector<double>{1.0, 2.5, 4.0});
}

TEST_CASE("restore reproduces a state exactly") {
    Rng rng(37);
    ParticleState st(std::vector<double>(20, 0.0));
    st.run(kLinear, kExp, 3.0, rng);
    const auto copy = ParticleState::restore(st.positions(), st.clock());
    CHECK(copy.positions() == st.positions());
    CHECK(copy.clock() == st.clock());
}

TEST_CASE("default burn-in heuristic") {
    CHECK(default_burn_in(100, 0.5) == doctest::Approx(200.0));
}

TEST_CASE("stationary sampling yields the requested series") {
    Rng rng(38);
    StationarySpec spec;
    spec.spacing = 0.5;
    spec.count = 20;
    spec.chi = 1.0;
    const auto run = stationary_sample(spec, 30, kLinear, kExp, rng);
    CHECK(run.samples.size() == 20);
    CHECK(run.phi_one.size() == 20);
    CHECK(run.phi_one_chi.size() == 20);
    CHECK(run.lyapunov.size() == 20);
    CHECK(run.burn_in_used == doctest::Approx(default_burn_in(30, 0.5)));
    for (const auto& s : run.samples) {
        const double sum = std::accumulate(s.w.begin(), s.w.end(), 0.0);
        CHECK(std::abs(sum) < 1e-9);
    }
    for (double g : run.lyapunov) CHECK(g <= 1e-12);
}

TEST_CASE("empirical mean advances at the finite-n speed") {
    Rng rng(39);
    const int n = 100;
    const double T = 200.0;
    ParticleState st(std::vector<double>(static_cast<std::size_t>(n), 0.0));
    st.run(kLinear, kExp, T, rng);
    const double drift = st.mean() / T;
    CHECK(drift == doctest::Approx(v_n(kLinear, n)).epsilon(0.08));
}

#include <doctest.h>

#include "qwave/errors.hpp"
#include "qwave/grid_cdf.hpp"
#include "qwave/metrics.hpp"
#include "qwave/rng.hpp"

#include <cmath>
#include <vector>

using namespace qwave;

namespace {

std::vector<double> random_state(Rng& rng, int n, bool with_ties = false) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = 4.0 * rng.uniform() - 2.0;
    if (with_ties && n >= 4) {
        w[1] = w[0];
        w[3] = w[2];
    }
    return w;
}

} // namespace

TEST_CASE("distance between point masses is the separation") {
    CHECK(wasserstein1(std::vector<double>{0.0}, std::vector<double>{1.5})
          == doctest::Approx(1.5));
    CHECK(wasserstein1(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, 2.0})
          == doctest::Approx(0.5));
    const std::vector<double> w = {0.3, -1.2, 0.8};
    CHECK(wasserstein1(w, w) == doctest::Approx(0.0));
}

TEST_CASE("translation identity holds exactly") {
    Rng rng(21);
    for (int rep = 0; rep < 10; ++rep) {
        const auto w = random_state(rng, 50);
        const double c = 3.0 * rng.uniform() - 1.5;
        auto shifted = w;
        for (auto& x : shifted) x += c;
        CHECK(wasserstein1(w, shifted) == doctest::Approx(std::abs(c)).epsilon(1e-12));
    }
}

TEST_CASE("metric axioms on random triples") {
    Rng rng(22);
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = random_state(rng, 30, true);
        const auto b = random_state(rng, 40);
        const auto c = random_state(rng, 25);
        const double ab = wasserstein1(a, b);
        const double ba = wasserstein1(b, a);
        const double bc = wasserstein1(b, c);
        const double ac = wasserstein1(a, c);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("empirical against grid with a sign change is exact") {
    // |U(0,1) - dirac(0.5)| integrates to 1/4
    const auto grid = grid_from_uniform(0.0, 1.0, -0.5, 0.001, 2000);
    CHECK(wasserstein1(std::vector<double>{0.5}, grid)
          == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("grid-grid distance of shifted copies") {
    const auto f = grid_from_uniform(-1.0, 1.0, -4.0, 0.01, 800);
    GridCDF g = f;
    g.translate(0.3);
    CHECK(wasserstein1(f, g) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("windows that truly disagree at the ends are rejected") {
    const auto full = grid_from_uniform(0.0, 1.0, -0.5, 0.01, 200);
    const auto cut = grid_from_uniform(0.0, 2.0, -0.25, 0.01, 100, 0.4);
    CHECK_THROWS_AS(wasserstein1(full, cut), ValidationError);
}

TEST_CASE("absolute moments of small states") {
    CHECK(absolute_moment(std::vector<double>{-1.0, 1.0}, 1.0).value == doctest::Approx(1.0));
    CHECK(absolute_moment(std::vector<double>{3.0}, 2.0).value == doctest::Approx(9.0));
    CHECK(absolute_moment(std::vector<double>{-1.0, 0.0, 1.0}, 1.5).value
          == doctest::Approx(2.0 / 3.0));
    CHECK(absolute_moment(std::vector<double>{0.7, -2.0}, 0.0).value == doctest::Approx(1.0));
    CHECK(absolute_moment(std::vector<double>{1.0}, 1.0).method == "exact-empirical");
}

TEST_CASE("grid moments carry a tail allowance") {
    const auto g = grid_from_uniform(-1.0, 1.0, -2.0, 0.001, 4000);
    const auto m = absolute_moment(g, 1.0);
    CHECK(m.value == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(m.tail_allowance == doctest::Approx(0.0));
    CHECK(m.method == "grid-stieltjes");
    CHECK(absolute_moment(g, 0.0).value == doctest::Approx(1.0));
}

TEST_CASE("first moment is bounded by the higher-moment root") {
    Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        auto w = random_state(rng, 40, true);
        double m = 0;
        for (double x : w) m += x;
        m /= static_cast<double>(w.size());
        for (double& x : w) x -= m;
        for (double chi : {0.5, 1.0, 2.0}) {
            const double p1 = absolute_moment(w, 1.0).value;
            const double pc = absolute_moment(w, 1.0 + chi).value;
            CHECK(p1 <= std::pow(pc, 1.0 / (1.0 + chi)) + 1e-12);
        }
    }
}

TEST_CASE("batch means on simple series") {
    const std::vector<double> constant(100, 2.5);
    const auto c = batch_means(constant, 10);
    CHECK(c.mean == doctest::Approx(2.5));
    CHECK(c.se == doctest::Approx(0.0));

    std::vector<double> alternating(100);
    for (std::size_t i = 0; i < alternating.size(); ++i)
        alternating[i] = i % 2 ? 1.0 : -1.0;
    CHECK(batch_means(alternating, 10).mean == doctest::Approx(0.0));

    CHECK_THROWS_AS(batch_means(std::vector<double>{1.0, 2.0, 3.0}, 2),
                    ValidationError);
}

TEST_CASE("batch means standard error matches the CLT on white noise") {
    Rng rng(24);
    std::vector<double> series(10000);
    for (auto& x : series) x = rng.normal();
    const auto bm = batch_means(series, 20);
    // independent samples: SE should be near 1/sqrt(10^4) = 0.01
    CHECK(bm.se > 0.01 / 1.5);
    CHECK(bm.se < 0.01 * 1.5);
    CHECK(std::abs(bm.mean) < 0.05);
}

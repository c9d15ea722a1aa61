#include <doctest.h>

#include "qwave/errors.hpp"
#include "qwave/jump_law.hpp"
#include "qwave/rng.hpp"

#include <cmath>

using qwave::JumpLaw;
using qwave::Rng;

TEST_CASE("unit exponential basics") {
    const auto law = JumpLaw::exponential(1.0);
    CHECK(law.cdf(std::log(2.0)) == doctest::Approx(0.5));
    CHECK(law.moment(1.0) == doctest::Approx(1.0));
    CHECK(law.moment(2.0) == doctest::Approx(2.0));
    CHECK(law.moment(0.5) == doctest::Approx(std::sqrt(std::acos(-1.0)) / 2.0));
    CHECK(law.ccdf_antideriv(50.0) == doctest::Approx(1.0));
    CHECK(law.ccdf_antideriv(-0.7) == doctest::Approx(-0.7));
}

TEST_CASE("normalization rescales to mean one") {
    const auto law = JumpLaw::exponential(0.25);
    CHECK(law.moment(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(law.scale_applied() == doctest::Approx(0.25));
    CHECK(law.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));

    const auto raw = JumpLaw::exponential(0.25, false);
    CHECK(raw.moment(1.0) == doctest::Approx(4.0));
}

TEST_CASE("gamma law after normalization") {
    const auto law = JumpLaw::gamma(2.0, 1.0); // rescaled to rate 2
    CHECK(law.moment(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(law.moment(2.0) == doctest::Approx(1.5));
    CHECK(law.cdf(1.0) == doctest::Approx(1.0 - 3.0 * std::exp(-2.0)));
}

TEST_CASE("uniform law on [0.5, 1.5]") {
    const auto law = JumpLaw::uniform(0.5, 1.5);
    CHECK(law.scale_applied() == doctest::Approx(1.0));
    CHECK(law.moment(1.0) == doctest::Approx(1.0));
    CHECK(law.cdf(1.0) == doctest::Approx(0.5));
    CHECK(law.ccdf_antideriv(10.0) == doctest::Approx(1.0));
    CHECK(law.density(1.2) == doctest::Approx(1.0));
    CHECK(law.density(0.2) == doctest::Approx(0.0));
}

TEST_CASE("table law mean and normalization") {
    const auto raw = JumpLaw::table({0.0, 1.0, 2.0}, {0.0, 0.75, 1.0}, false);
    CHECK(raw.moment(1.0) == doctest::Approx(0.75));
    const auto law = JumpLaw::table({0.0, 1.0, 2.0}, {0.0, 0.75, 1.0});
    CHECK(law.moment(1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ccdf_antideriv differentiates back to the ccdf") {
    const auto laws = {JumpLaw::exponential(1.0), JumpLaw::gamma(0.7, 1.0),
                       JumpLaw::gamma(2.0, 1.0), JumpLaw::uniform(0.5, 1.5),
                       JumpLaw::table({0.0, 0.4, 2.2}, {0.0, 0.3, 1.0})};
    const double h = 1e-5;
    for (const auto& law : laws) {
        for (double y : {0.3, 0.9, 1.7}) {
            const double num = (law.ccdf_antideriv(y + h) - law.ccdf_antideriv(y - h)) / (2 * h);
            CHECK(num == doctest::Approx(law.ccdf(y)).epsilon(1e-5));
        }
        // the full integral of the ccdf is the mean
        CHECK(law.ccdf_antideriv(500.0) == doctest::Approx(law.moment(1.0)).epsilon(1e-9));
    }
}

TEST_CASE("density condition flags per kind") {
    CHECK(JumpLaw::exponential(1.0).satisfies_density_condition());
    CHECK(JumpLaw::gamma(0.5, 1.0).satisfies_density_condition());
    CHECK_FALSE(JumpLaw::gamma(2.0, 1.0).satisfies_density_condition());
    CHECK_FALSE(JumpLaw::uniform(0.5, 1.5).satisfies_density_condition());
    CHECK(JumpLaw::table({0.0, 2.0}, {0.0, 1.0}).satisfies_density_condition());
    CHECK_FALSE(JumpLaw::table({1.0, 2.0}, {0.0, 1.0}).satisfies_density_condition());
}

TEST_CASE("sampling matches the analytic mean") {
    Rng rng(11);
    const int N = 200000;
    for (const auto& law : {JumpLaw::exponential(1.0), JumpLaw::gamma(0.5, 1.0),
                            JumpLaw::uniform(0.5, 1.5),
                            JumpLaw::table({0.0, 1.0, 2.0}, {0.0, 0.75, 1.0})}) {
        double s = 0, s2 = 0;
        for (int i = 0; i < N; ++i) {
            const double z = law.sample(rng);
            REQUIRE(z >= 0.0);
            s += z;
            s2 += z * z;
        }
        const double mean = s / N;
        const double sd = std::sqrt(std::max(s2 / N - mean * mean, 1e-12));
        CHECK(std::abs(mean - 1.0) < 5 * sd / std::sqrt(N));
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(JumpLaw::exponential(0.0), qwave::ValidationError);
    CHECK_THROWS_AS(JumpLaw::gamma(-1.0, 1.0), qwave::ValidationError);
    CHECK_THROWS_AS(JumpLaw::uniform(0.0, 1.0), qwave::ValidationError);
    CHECK_THROWS_AS(JumpLaw::uniform(2.0, 1.0), qwave::ValidationError);
    // mass at zero means jumps are not strictly positive
    CHECK_THROWS_AS(JumpLaw::table({0.0, 1.0}, {0.2, 1.0}), qwave::ValidationError);
    CHECK_THROWS_AS(JumpLaw::exponential(1.0).moment(-1.0), qwave::ValidationError);
}

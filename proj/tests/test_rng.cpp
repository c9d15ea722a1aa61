#include <doctest.h>

#include "qwave/rng.hpp"

#include <cmath>
#include <vector>

using qwave::Rng;

TEST_CASE("same seed reproduces the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform() == b.uniform());
}

TEST_CASE("derived streams differ from each other and the master") {
    const auto s0 = Rng::derive(7, 0);
    const auto s1 = Rng::derive(7, 1);
    const auto t0 = Rng::derive(8, 0);
    CHECK(s0 != s1);
    CHECK(s0 != t0);
    Rng a(s0), b(s1);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        if (a.uniform() == b.uniform()) ++same;
    CHECK(same == 0);
}

TEST_CASE("uniform lies in [0,1) with the right mean") {
    Rng r(1);
    const int N = 200000;
    double s = 0;
    for (int i = 0; i < N; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        s += u;
    }
    const double se = 1.0 / std::sqrt(12.0 * N);
    CHECK(std::abs(s / N - 0.5) < 5 * se);
}

TEST_CASE("below is in range and roughly uniform") {
    Rng r(2);
    const int N = 100000, M = 10;
    std::vector<int> count(M, 0);
    for (int i = 0; i < N; ++i) {
        const auto k = r.below(M);
        REQUIRE(k < static_cast<std::uint64_t>(M));
        ++count[static_cast<std::size_t>(k)];
    }
    const double expect = static_cast<double>(N) / M;
    const double sd = std::sqrt(expect * (1.0 - 1.0 / M));
    for (int c : count) CHECK(std::abs(c - expect) < 6 * sd);
    CHECK(r.below(1) == 0);
}

TEST_CASE("exponential has the requested mean") {
    Rng r(3);
    const int N = 200000;
    double s = 0;
    for (int i = 0; i < N; ++i) s += r.exponential(2.0);
    CHECK(std::abs(s / N - 0.5) < 5 * 0.5 / std::sqrt(N));
}

TEST_CASE("normal has mean 0 and unit variance") {
    Rng r(4);
    const int N = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < N; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / N) < 5.0 / std::sqrt(N));
    CHECK(std::abs(s2 / N - 1.0) < 5.0 * std::sqrt(2.0 / N));
}

TEST_CASE("gamma sampling matches the analytic mean, shape above and below 1") {
    Rng r(5);
    const int N = 200000;
    for (double shape : {0.5, 2.5}) {
        double s = 0;
        for (int i = 0; i < N; ++i) s += r.gamma(shape, 1.0);
        const double sd = std::sqrt(shape);
        CHECK(std::abs(s / N - shape) < 5 * sd / std::sqrt(N));
    }
}

TEST_CASE("state roundtrip resumes the exact stream") {
    Rng r(99);
    for (int i = 0; i < 123; ++i) r.uniform();
    const std::string saved = r.save_state();
    std::vector<double> expect;
    for (int i = 0; i < 50; ++i) expect.push_back(r.uniform());

    Rng fresh(0);
    fresh.load_state(saved);
    for (int i = 0; i < 50; ++i) CHECK(fresh.uniform() == expect[static_cast<std::size_t>(i)]);
}

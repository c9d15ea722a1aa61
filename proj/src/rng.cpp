#include "qwave/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qwave {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t Rng::derive(std::uint64_t master_seed, std::uint64_t stream) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(stream + 0x51ED2701ull));
}

double Rng::exponential(double rate) {
    return -std::log1p(-uniform()) / rate;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
    for (;;) {
        const std::uint64_t r = eng_();
        if (r >= threshold) return r % n;
    }
}

double Rng::normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape, double rate) {
    if (shape < 1.0) {
        const double boost = std::pow(uniform_pos(), 1.0 / shape);
        return gamma(shape + 1.0, rate) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

std::string Rng::save_state() const {
    std::ostringstream os;
    os << eng_;
    return os.str();
}

void Rng::load_state(const std::string& s) {
    std::istringstream is(s);
    is >> eng_;
}

} // namespace qwave

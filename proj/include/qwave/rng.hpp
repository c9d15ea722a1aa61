#ifndef QWAVE_RNG_HPP
#define QWAVE_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace qwave {

// Seeded generator used everywhere. Algorithm is fixed (mt19937_64) and all
// variate transforms are implemented here from raw 53-bit uniforms, so a
// (seed, call sequence) pair reproduces the exact same stream on any build.
class Rng {
public:
    static constexpr const char* algorithm_id = "mt19937_64";

    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Seed for replica r of a run with the given master seed.
    static std::uint64_t derive(std::uint64_t master_seed, std::uint64_t stream);

    // Uniform on [0,1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1].
    double uniform_pos() { return 1.0 - uniform(); }

    double exponential(double rate);

    // Unbiased uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);

    // Standard normal (Box-Muller, no cached spare: state is the engine only).
    double normal();

    // Gamma(shape, rate) via Marsaglia-Tsang.
    double gamma(double shape, double rate);

    // Engine state as text; load must restore the exact stream position.
    std::string save_state() const;
    void load_state(const std::string& s);

    bool operator==(const Rng& other) const { return eng_ == other.eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace qwave

#endif

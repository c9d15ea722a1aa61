#ifndef QWAVE_CONFIG_HPP
#define QWAVE_CONFIG_HPP

#include "qwave/jump_law.hpp"
#include "qwave/mfm.hpp"
#include "qwave/rate_profile.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qwave {

enum class ExperimentKind {
    TransientConvergence,
    StationaryMoments,
    LimitInterchange,
    TwsStudy,
    Diagnostics,
    MfmStudy,
    Simulate,
};

// Parsed from the plain-text key=value config format (see docs/formats.md).
// The parser is strict: unknown keys and malformed values are rejected.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Diagnostics;

    // Model ingredients
    std::string profile_kind = "linear"; // linear | power | table
    double profile_p = 2.0;
    std::vector<double> profile_nodes, profile_values;
    std::string law_kind = "exponential"; // exponential | gamma | uniform | table
    double law_rate = 1.0, law_shape = 1.0, law_a = 0.5, law_b = 1.5;
    bool law_normalize = true;

    // Study shape
    std::vector<int> n_list;
    double chi = 1.0;
    double horizon = 5.0;
    int replicas = 1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double burn_in = 0.0; // <= 0: heuristic default
    double spacing = 1.0;
    int samples = 0;
    std::vector<double> times;
    std::string init = "uniform(-1,1)"; // dirac(a) | uniform(a,b) | atoms(x1,x2,..) | laplace(s)

    // Solver
    MfmParams mfm;
    double tau = 1.0;
    double tol_fix = 1e-6;
    int max_iters = 400;

    // Output
    std::filesystem::path out_dir = "out";
    bool plots = false;
    int threads = 0; // 0 = hardware concurrency

    RateProfile make_profile() const;
    JumpLaw make_law() const;

    // Canonical text used for the manifest hash.
    std::string canonical_text() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::string to_string(ExperimentKind kind);

// FNV-1a over the canonical config text.
std::uint64_t config_hash(const ExperimentConfig& cfg);

} // namespace qwave

#endif

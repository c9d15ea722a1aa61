#ifndef QWAVE_EXPERIMENT_HPP
#define QWAVE_EXPERIMENT_HPP

#include "qwave/config.hpp"
#include "qwave/csv.hpp"
#include "qwave/grid_cdf.hpp"

#include <string>
#include <vector>

namespace qwave {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct RunReport {
    std::string experiment;
    std::uint64_t config_hash = 0;
    std::string prng_id;
    std::uint64_t seed = 0;
    std::vector<Table> tables;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::string manifest_text() const;
};

// Initial distribution spec: "dirac(a)", "uniform(a,b)", "atoms(x1,..,xk)",
// "laplace(s)".
struct InitSpec {
    std::string kind;
    std::vector<double> params;

    double cdf(double x) const;
    double mean() const;
    // Deterministic n-particle placement at the (i - 1/2)/n quantiles.
    std::vector<double> positions(int n) const;
};

InitSpec parse_init(const std::string& text);

RunReport run_experiment(const ExperimentConfig& cfg);

// Writes manifest.txt, one CSV per table, checks.csv, and optional SVG plots
// into cfg.out_dir. Creates the directory if needed.
void emit_outputs(const RunReport& report, const ExperimentConfig& cfg);

} // namespace qwave

#endif

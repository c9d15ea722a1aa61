// Acceptance suite: one line of output per criterion, exit code is the
// number of failures. Workloads come from the shipped configs.

#include "qwave/config.hpp"
#include "qwave/experiment.hpp"
#include "qwave/metrics.hpp"
#include "qwave/particle_system.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qwave;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

ExperimentConfig load_cfg(const std::string& name) {
    return load_config(fs::path(QWAVE_CONFIG_DIR) / name);
}

void report_line(const std::string& id, bool pass, const std::string& detail,
                 double elapsed) {
    std::printf("%-34s %s  (%s, %.1fs)\n", id.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

const CheckResult* find_check(const RunReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

void check_from_report(const std::string& id, const RunReport& rep,
                       const std::vector<std::string>& names, double elapsed,
                       double time_limit) {
    bool pass = elapsed <= time_limit;
    std::ostringstream detail;
    for (const auto& name : names) {
        const CheckResult* c = find_check(rep, name);
        if (!c) {
            pass = false;
            detail << name << "=missing ";
            continue;
        }
        pass = pass && c->pass;
        detail << name << "=" << fmt(c->measured) << "/" << fmt(c->tolerance) << " ";
    }
    report_line(id, pass, detail.str(), elapsed);
}

// ---- criterion 1: empirical mean drift at n = 1000 matches (n-1)/(2n)

void criterion_drift() {
    const double t0 = now_s();
    const auto rep = run_experiment(load_cfg("accept_01_drift.cfg"));
    check_from_report("01 mean-drift", rep, {"mean-drift"}, now_s() - t0, 30.0);
}

// ---- criterion 2: Monte Carlo per-urge increments vs exact enumeration

void criterion_oracle() {
    const double t0 = now_s();
    const auto cfg = load_cfg("accept_02_oracle.cfg");
    const auto profile = cfg.make_profile();
    const auto law = cfg.make_law();
    Rng rng(cfg.seed);

    const std::vector<std::vector<double>> states = {
        {0.0, 1.0}, {0.0, 0.0}, {0.0, 0.0, 1.0},
        {0.0, 0.0, 1.0, 2.0}, {0.0, 0.0, 1.0, 1.0}};
    const int urges = 1000000;

    bool pass = true;
    double worst_sigma = 0.0;
    for (const auto& raw : states) {
        const CenteredState c = recenter(raw);
        const auto n = c.w.size();
        const auto expect = enumerate_urge_outcome(c, profile, law);

        ParticleState st(c.w);
        std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
        for (int u = 0; u < urges; ++u) {
            const UrgeEvent ev = st.propose(profile, law, rng);
            const double common =
                ev.accepted ? ev.jump_size / static_cast<double>(n) : 0.0;
            // tied particles are exchangeable and the event only carries the
            // tie-broken rank, so attribute the jump to the co-location block
            std::size_t blo = 0, bhi = 0;
            if (ev.accepted) {
                const double x = c.w[static_cast<std::size_t>(ev.particle_rank - 1)];
                while (blo < n && c.w[blo] < x) ++blo;
                bhi = blo;
                while (bhi < n && c.w[bhi] == x) ++bhi;
            }
            for (std::size_t i = 0; i < n; ++i) {
                double d = -common;
                if (ev.accepted && i >= blo && i < bhi)
                    d += ev.jump_size / static_cast<double>(bhi - blo);
                sum[i] += d;
                sumsq[i] += d * d;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double mean = sum[i] / urges;
            const double var = std::max(sumsq[i] / urges - mean * mean, 0.0);
            const double se = std::sqrt(var / urges);
            const double sigma = std::abs(mean - expect[i]) / std::max(se, 1e-300);
            worst_sigma = std::max(worst_sigma, sigma);
            if (sigma > 4.0) pass = false;
        }
    }
    report_line("02 urge-oracle", pass, "worst=" + fmt(worst_sigma) + " SE/4 SE",
                now_s() - t0);
}

// ---- criterion 3: nonpositive drift functional along a stationary run

void criterion_lyapunov() {
    const double t0 = now_s();
    const auto cfg = load_cfg("accept_03_lyapunov.cfg");
    StationarySpec spec;
    spec.spacing = cfg.spacing;
    spec.count = cfg.samples;
    spec.chi = cfg.chi;
    Rng rng(cfg.seed);
    const auto run =
        stationary_sample(spec, cfg.n_list.front(), cfg.make_profile(), cfg.make_law(), rng);
    double worst = -1e300;
    for (double g : run.lyapunov) worst = std::max(worst, g);
    const bool pass = worst <= 1e-12 &&
                      run.lyapunov.size() == static_cast<std::size_t>(cfg.samples);
    report_line("03 lyapunov-sign", pass,
                "max G=" + fmt(worst) + " over " + std::to_string(run.lyapunov.size()) +
                    " states",
                now_s() - t0);
}

// ---- criteria 4 and 5: deterministic-flow conservation and contraction

void criteria_mfm() {
    const double t0 = now_s();
    const auto rep = run_experiment(load_cfg("accept_04_transport.cfg"));
    const double elapsed = now_s() - t0;
    check_from_report("04 mass-transport", rep, {"mass-transport"}, elapsed, 60.0);
    check_from_report("05 w1-contraction", rep, {"w1-contraction"}, elapsed, 600.0);
}

// ---- criteria 6 and 7: wave fixed point, invariance, and attraction

void criteria_tws() {
    const double t0 = now_s();
    const auto rep = run_experiment(load_cfg("accept_06_tws.cfg"));
    const double elapsed = now_s() - t0;
    check_from_report("06 tws-fixed-point", rep, {"tws-residual", "wave-invariance"},
                      elapsed, 300.0);
    check_from_report("07 tws-attraction", rep,
                      {"attraction-monotone", "attraction-final"}, elapsed, 600.0);
}

// ---- criterion 8: empirical states approach the deterministic flow

void criterion_transient() {
    const double t0 = now_s();
    const auto rep = run_experiment(load_cfg("accept_08_transient.cfg"));
    check_from_report("08 transient-convergence", rep,
                      {"w1-decreasing-in-n", "w1-ratio"}, now_s() - t0, 300.0);
}

// ---- criterion 9: stationary moments show no growth in n

void criterion_moments() {
    const double t0 = now_s();
    const auto rep = run_experiment(load_cfg("accept_09_moments.cfg"));
    check_from_report("09 stationary-moments", rep, {"moments-uniform-in-n"},
                      now_s() - t0, 600.0);
}

// ---- criterion 10: stationary states approach the wave shape in n

void criterion_interchange() {
    const double t0 = now_s();
    const auto rep = run_experiment(load_cfg("accept_10_interchange.cfg"));
    check_from_report("10 limit-interchange", rep,
                      {"interchange-decreasing", "interchange-ratio"}, now_s() - t0,
                      900.0);
}

// ---- criterion 11: byte-identical outputs on rerun

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_determinism() {
    const double t0 = now_s();
    auto cfg = load_cfg("accept_11_determinism.cfg");
    const fs::path base = fs::temp_directory_path() / "qwave_accept11";
    fs::remove_all(base);

    std::map<std::string, std::string> first;
    bool pass = true;
    int files = 0;
    for (int round = 0; round < 2; ++round) {
        cfg.out_dir = base / (round == 0 ? "a" : "b");
        emit_outputs(run_experiment(cfg), cfg);
        for (const auto& entry : fs::directory_iterator(cfg.out_dir)) {
            if (entry.path().extension() != ".csv") continue;
            const std::string key = entry.path().filename().string();
            const std::string content = slurp(entry.path());
            if (round == 0) {
                first[key] = content;
                ++files;
            } else if (first[key] != content) {
                pass = false;
            }
        }
    }
    pass = pass && files > 0;
    report_line("11 determinism", pass,
                std::to_string(files) + " tables byte-compared", now_s() - t0);
}

} // namespace

int main() {
    criterion_drift();
    criterion_oracle();
    criterion_lyapunov();
    criteria_mfm();
    criteria_tws();
    criterion_transient();
    criterion_moments();
    criterion_interchange();
    criterion_determinism();
    std::printf("%s (%d failure%s)\n", g_failures ? "FAIL" : "OK", g_failures,
                g_failures == 1 ? "" : "s");
    return g_failures;
}

#include "qwave/errors.hpp"
#include "qwave/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> replicas;
    std::optional<int> threads;
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--config", g.config_path, "config file (key=value)")->required();
    cmd->add_option("--seed", g.seed, "override the master seed");
    cmd->add_option("--out", g.out, "override the output directory");
    cmd->add_option("--replicas", g.replicas, "override the replica count");
    cmd->add_option("--threads", g.threads, "override the worker thread count");
}

qwave::ExperimentConfig load(const GlobalOpts& g,
                             std::optional<qwave::ExperimentKind> force_kind) {
    qwave::ExperimentConfig cfg = qwave::load_config(g.config_path);
    if (force_kind) cfg.kind = *force_kind;
    if (g.seed) { cfg.seed = *g.seed; cfg.seed_set = true; }
    if (g.replicas) cfg.replicas = *g.replicas;
    if (g.out) cfg.out_dir = *g.out;
    if (g.threads) cfg.threads = *g.threads;

    // Env overrides are limited to output location and parallelism.
    if (const char* e = std::getenv("QWAVE_OUT"); e && !g.out) cfg.out_dir = e;
    if (const char* e = std::getenv("QWAVE_THREADS"); e && !g.threads)
        cfg.threads = std::atoi(e);
    return cfg;
}

int execute(const qwave::ExperimentConfig& cfg) {
    const auto partial_marker = cfg.out_dir / ".partial";
    try {
        std::filesystem::create_directories(cfg.out_dir);
        {
            std::ofstream marker(partial_marker);
            marker << "run in progress or failed\n";
        }
        const qwave::RunReport report = qwave::run_experiment(cfg);
        qwave::emit_outputs(report, cfg);
        std::filesystem::remove(partial_marker);

        for (const auto& c : report.checks)
            std::printf("%-26s %s  measured=%.6g  tol=%.6g\n", c.name.c_str(),
                        c.pass ? "pass" : "FAIL", c.measured, c.tolerance);
        if (report.checks.empty())
            std::printf("done: %zu table(s) written to %s\n", report.tables.size(),
                        cfg.out_dir.string().c_str());
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

int run_report(const GlobalOpts& g) {
    // `report` executes whatever experiment kind the config declares.
    try {
        return execute(load(g, std::nullopt));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantile-interacting particle system toolkit"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        std::optional<qwave::ExperimentKind> kind;
        GlobalOpts opts;
        CLI::App* cmd = nullptr;
    };
    Sub subs[] = {
        {"simulate", "raw particle trajectories", qwave::ExperimentKind::Simulate, {}, nullptr},
        {"mfm", "mean-field flow study", qwave::ExperimentKind::MfmStudy, {}, nullptr},
        {"tws", "traveling-wave shape study", qwave::ExperimentKind::TwsStudy, {}, nullptr},
        {"stationary", "stationary-moment study", qwave::ExperimentKind::StationaryMoments, {}, nullptr},
        {"interchange", "large-n stationary limit study", qwave::ExperimentKind::LimitInterchange, {}, nullptr},
        {"diag", "drift and Lyapunov diagnostics", qwave::ExperimentKind::Diagnostics, {}, nullptr},
        {"report", "run the experiment declared by the config", std::nullopt, {}, nullptr},
    };
    for (auto& s : subs) {
        s.cmd = app.add_subcommand(s.name, s.help);
        add_globals(s.cmd, s.opts);
    }

    CLI11_PARSE(app, argc, argv);

    for (auto& s : subs) {
        if (!s.cmd->parsed()) continue;
        if (!s.kind) return run_report(s.opts);
        try {
            return execute(load(s.opts, s.kind));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
    }
    return 2;
}

#include "qwave/config.hpp"

#include "qwave/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qwave {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad number '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const std::int64_t x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad integer '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': bad boolean '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& s : split(v, ',')) out.push_back(parse_double(key, s));
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& s : split(v, ','))
        out.push_back(static_cast<int>(parse_int(key, s)));
    return out;
}

ExperimentKind parse_kind(const std::string& v) {
    if (v == "transient-convergence") return ExperimentKind::TransientConvergence;
    if (v == "stationary-moments") return ExperimentKind::StationaryMoments;
    if (v == "limit-interchange") return ExperimentKind::LimitInterchange;
    if (v == "tws-study") return ExperimentKind::TwsStudy;
    if (v == "diagnostics") return ExperimentKind::Diagnostics;
    if (v == "mfm-study") return ExperimentKind::MfmStudy;
    if (v == "simulate") return ExperimentKind::Simulate;
    throw ConfigError("unknown experiment kind '" + v + "'");
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::TransientConvergence: return "transient-convergence";
        case ExperimentKind::StationaryMoments: return "stationary-moments";
        case ExperimentKind::LimitInterchange: return "limit-interchange";
        case ExperimentKind::TwsStudy: return "tws-study";
        case ExperimentKind::Diagnostics: return "diagnostics";
        case ExperimentKind::MfmStudy: return "mfm-study";
        case ExperimentKind::Simulate: return "simulate";
    }
    return "?";
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> seen;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (seen.count(key))
            throw ConfigError("config key '" + key + "' given twice");
        seen[key] = val;

        if (key == "experiment") cfg.kind = parse_kind(val);
        else if (key == "profile") cfg.profile_kind = val;
        else if (key == "profile.p") cfg.profile_p = parse_double(key, val);
        else if (key == "profile.nodes") cfg.profile_nodes = parse_double_list(key, val);
        else if (key == "profile.values") cfg.profile_values = parse_double_list(key, val);
        else if (key == "law") cfg.law_kind = val;
        else if (key == "law.rate") cfg.law_rate = parse_double(key, val);
        else if (key == "law.shape") cfg.law_shape = parse_double(key, val);
        else if (key == "law.a") cfg.law_a = parse_double(key, val);
        else if (key == "law.b") cfg.law_b = parse_double(key, val);
        else if (key == "law.normalize") cfg.law_normalize = parse_bool(key, val);
        else if (key == "n") cfg.n_list = parse_int_list(key, val);
        else if (key == "chi") cfg.chi = parse_double(key, val);
        else if (key == "horizon") cfg.horizon = parse_double(key, val);
        else if (key == "replicas") cfg.replicas = static_cast<int>(parse_int(key, val));
        else if (key == "seed") { cfg.seed = static_cast<std::uint64_t>(parse_int(key, val)); cfg.seed_set = true; }
        else if (key == "burn_in") cfg.burn_in = val == "auto" ? 0.0 : parse_double(key, val);
        else if (key == "spacing") cfg.spacing = parse_double(key, val);
        else if (key == "samples") cfg.samples = static_cast<int>(parse_int(key, val));
        else if (key == "times") cfg.times = parse_double_list(key, val);
        else if (key == "init") cfg.init = val;
        else if (key == "dx") cfg.mfm.dx = parse_double(key, val);
        else if (key == "dt") cfg.mfm.dt = parse_double(key, val);
        else if (key == "half_width") cfg.mfm.half_width = parse_double(key, val);
        else if (key == "eps_tail") cfg.mfm.eps_tail = parse_double(key, val);
        else if (key == "integrator") {
            if (val == "euler") cfg.mfm.integrator = 1;
            else if (val == "rk4") cfg.mfm.integrator = 4;
            else throw ConfigError("config key 'integrator': expected euler or rk4");
        }
        else if (key == "tau") cfg.tau = parse_double(key, val);
        else if (key == "tol_fix") cfg.tol_fix = parse_double(key, val);
        else if (key == "max_iters") cfg.max_iters = static_cast<int>(parse_int(key, val));
        else if (key == "out") cfg.out_dir = val;
        else if (key == "plots") cfg.plots = parse_bool(key, val);
        else if (key == "threads") cfg.threads = static_cast<int>(parse_int(key, val));
        else throw ConfigError("unknown config key '" + key + "'");
    }

    if (!cfg.seed_set)
        throw ConfigError("config must set an explicit seed (no wall-clock default)");
    if (cfg.replicas < 1) throw ConfigError("replicas must be >= 1");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

RateProfile ExperimentConfig::make_profile() const {
    if (profile_kind == "linear") return RateProfile::linear();
    if (profile_kind == "power") return RateProfile::power(profile_p);
    if (profile_kind == "table") return RateProfile::table(profile_nodes, profile_values);
    throw ConfigError("unknown profile kind '" + profile_kind + "'");
}

JumpLaw ExperimentConfig::make_law() const {
    if (law_kind == "exponential") return JumpLaw::exponential(law_rate, law_normalize);
    if (law_kind == "gamma") return JumpLaw::gamma(law_shape, law_rate, law_normalize);
    if (law_kind == "uniform") return JumpLaw::uniform(law_a, law_b, law_normalize);
    throw ConfigError("unknown jump law kind '" + law_kind + "'");
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    const auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    os << "experiment=" << to_string(kind) << "\n";
    os << "profile=" << profile_kind << " p=" << num(profile_p) << "\n";
    os << "law=" << law_kind << " rate=" << num(law_rate) << " shape=" << num(law_shape)
       << " a=" << num(law_a) << " b=" << num(law_b) << " normalize=" << law_normalize << "\n";
    os << "n=";
    for (int n : n_list) os << n << ",";
    os << "\nchi=" << num(chi) << " horizon=" << num(horizon)
       << " replicas=" << replicas << " seed=" << seed << "\n";
    os << "burn_in=" << num(burn_in) << " spacing=" << num(spacing)
       << " samples=" << samples << " init=" << init << "\n";
    os << "times=";
    for (double t : times) os << num(t) << ",";
    os << "\ndx=" << num(mfm.dx) << " dt=" << num(mfm.dt)
       << " half_width=" << num(mfm.half_width) << " eps_tail=" << num(mfm.eps_tail)
       << " integrator=" << mfm.integrator << "\n";
    os << "tau=" << num(tau) << " tol_fix=" << num(tol_fix)
       << " max_iters=" << max_iters << "\n";
    return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    const std::string text = cfg.canonical_text();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace qwave

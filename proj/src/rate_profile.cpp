#include "qwave/rate_profile.hpp"

#include "qwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwave {

RateProfile RateProfile::linear() {
    return RateProfile(ProfileKind::Linear, 1.0);
}

RateProfile RateProfile::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw ValidationError("power profile requires exponent p > 0");
    return RateProfile(ProfileKind::Power, p);
}

RateProfile RateProfile::table(std::vector<double> nu, std::vector<double> eta) {
    if (nu.size() != eta.size() || nu.size() < 2)
        throw ValidationError("table profile needs matching node/value lists, size >= 2");
    if (nu.front() != 0.0 || nu.back() != 1.0)
        throw ValidationError("table profile nodes must span [0,1]");
    for (std::size_t i = 1; i < nu.size(); ++i)
        if (!(nu[i] > nu[i - 1]))
            throw ValidationError("table profile nodes must be strictly increasing");
    if (std::abs(eta.front() - 1.0) > 1e-12 || std::abs(eta.back()) > 1e-12)
        throw ValidationError("ModelViolation: table profile requires eta(0)=1 and eta(1)=0");
    for (std::size_t i = 1; i < eta.size(); ++i)
        if (!(eta[i] < eta[i - 1]))
            throw ValidationError("NotStrictlyDecreasing: table profile values must strictly decrease");

    RateProfile prof(ProfileKind::Table, 1.0);
    prof.nodes_ = std::move(nu);
    prof.values_ = std::move(eta);
    prof.cumint_.resize(prof.nodes_.size());
    prof.cumint_[0] = 0.0;
    for (std::size_t i = 1; i < prof.nodes_.size(); ++i) {
        const double w = prof.nodes_[i] - prof.nodes_[i - 1];
        prof.cumint_[i] = prof.cumint_[i - 1] + 0.5 * (prof.values_[i] + prof.values_[i - 1]) * w;
    }
    return prof;
}

double RateProfile::eta(double nu) const {
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("eta: quantile outside [0,1]");
    switch (kind_) {
        case ProfileKind::Linear:
            return 1.0 - nu;
        case ProfileKind::Power:
            return 1.0 - std::pow(nu, p_);
        case ProfileKind::Table: {
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), nu);
            if (it == nodes_.begin()) return values_.front();
            if (it == nodes_.end()) return values_.back();
            const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
            const double t = (nu - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
            return values_[i - 1] + t * (values_[i] - values_[i - 1]);
        }
    }
    return 0.0;
}

double RateProfile::antiderivative(double nu) const {
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("antiderivative: quantile outside [0,1]");
    switch (kind_) {
        case ProfileKind::Linear:
            return nu - 0.5 * nu * nu;
        case ProfileKind::Power:
            return nu - std::pow(nu, p_ + 1.0) / (p_ + 1.0);
        case ProfileKind::Table: {
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), nu);
            if (it == nodes_.begin()) return 0.0;
            if (it == nodes_.end()) return cumint_.back();
            const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
            const double w = nodes_[i] - nodes_[i - 1];
            const double t = nu - nodes_[i - 1];
            const double slope = (values_[i] - values_[i - 1]) / w;
            return cumint_[i - 1] + values_[i - 1] * t + 0.5 * slope * t * t;
        }
    }
    return 0.0;
}

double RateProfile::eta_n(int n, double nu) const {
    if (n < 1) throw ValidationError("eta_n: n must be >= 1");
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("eta_n: quantile outside [0,1]");
    if (nu == 0.0) return 1.0;
    int rank = static_cast<int>(std::ceil(static_cast<double>(n) * nu));
    rank = std::clamp(rank, 1, n);
    return eta(static_cast<double>(rank) / static_cast<double>(n));
}

std::string RateProfile::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case ProfileKind::Linear: os << "linear"; break;
        case ProfileKind::Power: os << "power(p=" << p_ << ")"; break;
        case ProfileKind::Table: os << "table(" << nodes_.size() << " nodes)"; break;
    }
    return os.str();
}

} // namespace qwave

#include "qwave/jump_law.hpp"

#include "qwave/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qwave {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

JumpLaw JumpLaw::exponential(double rate, bool normalize) {
    if (!(rate > 0.0)) throw ValidationError("exponential law requires rate > 0");
    JumpLaw law(JumpKind::Exponential);
    law.rate_ = rate;
    if (normalize) law.rescale_to_unit_mean();
    return law;
}

JumpLaw JumpLaw::gamma(double shape, double rate, bool normalize) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw ValidationError("gamma law requires shape > 0 and rate > 0");
    JumpLaw law(JumpKind::Gamma);
    law.shape_ = shape;
    law.rate_ = rate;
    if (normalize) law.rescale_to_unit_mean();
    return law;
}

JumpLaw JumpLaw::uniform(double a, double b, bool normalize) {
    if (!(a > 0.0) || !(b > a))
        throw ValidationError("uniform law requires 0 < a < b");
    JumpLaw law(JumpKind::Uniform);
    law.a_ = a;
    law.b_ = b;
    if (normalize) law.rescale_to_unit_mean();
    return law;
}

JumpLaw JumpLaw::table(std::vector<double> x, std::vector<double> cdf, bool normalize) {
    if (x.size() != cdf.size() || x.size() < 2)
        throw ValidationError("table law needs matching node/value lists, size >= 2");
    if (x.front() < 0.0)
        throw ValidationError("table law support must be non-negative");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw ValidationError("table law nodes must be strictly increasing");
    if (std::abs(cdf.front()) > 0.0)
        throw ValidationError("table law has mass at or below 0 (J(0) > 0)");
    if (std::abs(cdf.back() - 1.0) > 1e-12)
        throw ValidationError("table law CDF must reach 1");
    for (std::size_t i = 1; i < cdf.size(); ++i)
        if (cdf[i] < cdf[i - 1])
            throw ValidationError("table law CDF must be non-decreasing");

    JumpLaw law(JumpKind::Table);
    law.xs_ = std::move(x);
    law.cs_ = std::move(cdf);
    if (normalize) law.rescale_to_unit_mean();
    return law;
}

void JumpLaw::rescale_to_unit_mean() {
    const double m1 = moment(1.0);
    if (!std::isfinite(m1) || !(m1 > 0.0))
        throw ValidationError("jump law must have finite positive mean to normalize");
    const double s = 1.0 / m1;
    scale_ = s;
    switch (kind_) {
        case JumpKind::Exponential:
        case JumpKind::Gamma:
            rate_ /= s; // Z -> s Z scales rate by 1/s
            break;
        case JumpKind::Uniform:
            a_ *= s;
            b_ *= s;
            break;
        case JumpKind::Table:
            for (double& v : xs_) v *= s;
            break;
    }
}

double JumpLaw::cdf(double y) const {
    if (y < 0.0) return 0.0;
    switch (kind_) {
        case JumpKind::Exponential:
            return -std::expm1(-rate_ * y);
        case JumpKind::Gamma:
            return boost::math::gamma_p(shape_, rate_ * y);
        case JumpKind::Uniform:
            if (y <= a_) return 0.0;
            if (y >= b_) return 1.0;
            return (y - a_) / (b_ - a_);
        case JumpKind::Table: {
            if (y <= xs_.front()) return cs_.front();
            if (y >= xs_.back()) return 1.0;
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), y);
            const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            const double t = (y - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return cs_[i - 1] + t * (cs_[i] - cs_[i - 1]);
        }
    }
    return 0.0;
}

double JumpLaw::density(double y) const {
    if (y < 0.0) return 0.0;
    switch (kind_) {
        case JumpKind::Exponential:
            return rate_ * std::exp(-rate_ * y);
        case JumpKind::Gamma:
            if (y == 0.0)
                return shape_ < 1.0 ? kInf : (shape_ == 1.0 ? rate_ : 0.0);
            return std::exp(shape_ * std::log(rate_) + (shape_ - 1.0) * std::log(y)
                            - rate_ * y - std::lgamma(shape_));
        case JumpKind::Uniform:
            return (y >= a_ && y <= b_) ? 1.0 / (b_ - a_) : 0.0;
        case JumpKind::Table: {
            if (y < xs_.front() || y >= xs_.back()) return 0.0;
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), y);
            const std::size_t i = std::max<std::size_t>(1, static_cast<std::size_t>(it - xs_.begin()));
            return (cs_[i] - cs_[i - 1]) / (xs_[i] - xs_[i - 1]);
        }
    }
    return 0.0;
}

double JumpLaw::sample(Rng& rng) const {
    switch (kind_) {
        case JumpKind::Exponential:
            return rng.exponential(rate_);
        case JumpKind::Gamma:
            return rng.gamma(shape_, rate_);
        case JumpKind::Uniform:
            return a_ + (b_ - a_) * rng.uniform();
        case JumpKind::Table: {
            const double u = rng.uniform();
            const auto it = std::upper_bound(cs_.begin(), cs_.end(), u);
            std::size_t i = static_cast<std::size_t>(it - cs_.begin());
            i = std::clamp<std::size_t>(i, 1, cs_.size() - 1);
            const double span = cs_[i] - cs_[i - 1];
            const double t = span > 0.0 ? (u - cs_[i - 1]) / span : 0.0;
            return xs_[i - 1] + t * (xs_[i] - xs_[i - 1]);
        }
    }
    return 0.0;
}

double JumpLaw::moment(double ell) const {
    if (ell < 0.0) throw ValidationError("moment order must be >= 0");
    if (ell == 0.0) return 1.0;
    double m = 0.0;
    switch (kind_) {
        case JumpKind::Exponential:
            m = std::exp(std::lgamma(ell + 1.0) - ell * std::log(rate_));
            break;
        case JumpKind::Gamma:
            m = std::exp(std::lgamma(shape_ + ell) - std::lgamma(shape_)
                         - ell * std::log(rate_));
            break;
        case JumpKind::Uniform:
            m = (std::pow(b_, ell + 1.0) - std::pow(a_, ell + 1.0))
                / ((ell + 1.0) * (b_ - a_));
            break;
        case JumpKind::Table:
            for (std::size_t i = 1; i < xs_.size(); ++i) {
                const double dm = cs_[i] - cs_[i - 1];
                if (dm <= 0.0) continue;
                const double w = xs_[i] - xs_[i - 1];
                m += dm / w * (std::pow(xs_[i], ell + 1.0) - std::pow(xs_[i - 1], ell + 1.0))
                     / (ell + 1.0);
            }
            break;
    }
    return std::isfinite(m) ? m : kInf;
}

double JumpLaw::ccdf_antideriv(double y) const {
    if (y <= 0.0) return y;
    switch (kind_) {
        case JumpKind::Exponential:
            return -std::expm1(-rate_ * y) / rate_;
        case JumpKind::Gamma:
            // int_0^y (1-J) = y(1-J(y)) + mean * P(shape+1, rate y)
            return y * ccdf(y)
                   + shape_ / rate_ * boost::math::gamma_p(shape_ + 1.0, rate_ * y);
        case JumpKind::Uniform: {
            if (y <= a_) return y;
            const double w = b_ - a_;
            if (y >= b_) return a_ + 0.5 * w;
            const double r = b_ - y;
            return a_ + 0.5 * (w * w - r * r) / w;
        }
        case JumpKind::Table: {
            // ccdf is piecewise linear: exact trapezoid accumulation
            double acc = std::min(y, xs_.front());
            if (y <= xs_.front()) return acc;
            for (std::size_t i = 1; i < xs_.size(); ++i) {
                const double lo = xs_[i - 1];
                const double hi = std::min(y, xs_[i]);
                if (hi <= lo) break;
                acc += 0.5 * ((1.0 - cdf(lo)) + (1.0 - cdf(hi))) * (hi - lo);
                if (y <= xs_[i]) return acc;
            }
            return acc; // ccdf = 0 beyond the last node
        }
    }
    return 0.0;
}

bool JumpLaw::satisfies_density_condition() const {
    switch (kind_) {
        case JumpKind::Exponential:
            return true;
        case JumpKind::Gamma:
            return shape_ <= 1.0; // shape > 1 has density 0 at the origin
        case JumpKind::Uniform:
            return false; // density vanishes on [0, a)
        case JumpKind::Table: {
            if (xs_.front() > 0.0) return false;
            for (std::size_t i = 1; i < xs_.size(); ++i)
                if (cs_[i] <= cs_[i - 1]) return false;
            return true;
        }
    }
    return false;
}

std::string JumpLaw::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case JumpKind::Exponential: os << "exponential(rate=" << rate_ << ")"; break;
        case JumpKind::Gamma: os << "gamma(shape=" << shape_ << ",rate=" << rate_ << ")"; break;
        case JumpKind::Uniform: os << "uniform(a=" << a_ << ",b=" << b_ << ")"; break;
        case JumpKind::Table: os << "table(" << xs_.size() << " nodes)"; break;
    }
    if (scale_ != 1.0) os << " [rescaled x" << scale_ << "]";
    return os.str();
}

} // namespace qwave

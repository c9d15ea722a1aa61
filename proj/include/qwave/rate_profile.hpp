#ifndef QWAVE_RATE_PROFILE_HPP
#define QWAVE_RATE_PROFILE_HPP

#include <string>
#include <vector>

namespace qwave {

enum class ProfileKind { Linear, Power, Table };

// Jump acceptance probability as a function of the location quantile.
// eta is continuous and strictly decreasing with eta(0)=1, eta(1)=0.
// The finite-n step version eta_n is constant on each ((l-1)/n, l/n] with
// value eta(l/n), and eta_n(0)=1. The antiderivative H(nu) = int_0^nu eta
// is exact (closed form for the parametric kinds, piecewise quadratic for
// tables). H(1) is the wave speed.
class RateProfile {
public:
    static RateProfile linear();
    static RateProfile power(double p);
    // Piecewise-linear table on nodes nu (ascending, nu[0]=0, nu.back()=1)
    // with strictly decreasing values eta, eta[0]=1, eta.back()=0.
    static RateProfile table(std::vector<double> nu, std::vector<double> eta);

    double eta(double nu) const;
    double antiderivative(double nu) const; // H(nu)
    double eta_n(int n, double nu) const;
    double speed() const { return antiderivative(1.0); }

    ProfileKind kind() const { return kind_; }
    double power_exponent() const { return p_; }
    std::string describe() const;

private:
    RateProfile(ProfileKind kind, double p) : kind_(kind), p_(p) {}

    ProfileKind kind_;
    double p_ = 1.0;                // exponent for Power
    std::vector<double> nodes_;     // Table: quantile nodes
    std::vector<double> values_;    // Table: eta at nodes
    std::vector<double> cumint_;    // Table: H at nodes (exact trapezoid)
};

} // namespace qwave

#endif

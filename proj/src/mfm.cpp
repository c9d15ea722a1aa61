#include "qwave/mfm.hpp"

#include "qwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qwave {

void MfmParams::validate() const {
    if (!(dx > 0.0)) throw ValidationError("MfmParams: dx must be > 0");
    if (dt > dx + 1e-15)
        throw ValidationError("MfmParams: dt must satisfy the stability bound dt <= dx");
    if (!(half_width > 0.0)) throw ValidationError("MfmParams: half_width must be > 0");
    if (integrator != 1 && integrator != 4)
        throw ValidationError("MfmParams: integrator must be 1 (Euler) or 4 (RK4)");
    if (!(eps_tail > 0.0) || eps_tail > 1e-4)
        throw ValidationError("MfmParams: eps_tail must lie in (0, 1e-4]");
}

namespace {

// H-increments of the CDF: dH[0] = H(F_0) (left-tail mass pinned at x_0),
// dH[j] = H(F_j) - H(F_{j-1}). Returns [jlo, jhi] support.
void h_increments(const GridCDF& F, const RateProfile& profile,
                  std::vector<double>& dH, int& jlo, int& jhi) {
    const int K = F.cells();
    dH.assign(static_cast<std::size_t>(K) + 1, 0.0);
    double prevH = 0.0;
    jlo = K + 1;
    jhi = -1;
    for (int j = 0; j <= K; ++j) {
        const double Hj = profile.antiderivative(std::clamp(F.F[j], 0.0, 1.0));
        const double d = Hj - prevH;
        prevH = Hj;
        if (d > 0.0) {
            dH[j] = d;
            if (jlo > K) jlo = j;
            jhi = j;
        }
    }
}

double clamp_monotone(std::vector<double>& F) {
    double repair = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double raw = F[k];
        double c = std::clamp(raw, 0.0, 1.0);
        if (k > 0) c = std::max(c, prev);
        repair = std::max(repair, std::abs(c - raw));
        F[k] = c;
        prev = c;
    }
    return repair;
}

} // namespace

std::vector<double> mfm_rhs(const GridCDF& F, const RateProfile& profile,
                            const JumpLaw& law, bool midpoint_kernel) {
    F.validate();
    const int K = F.cells();
    std::vector<double> dH;
    int jlo, jhi;
    h_increments(F, profile, dH, jlo, jhi);

    const double half = midpoint_kernel ? 0.5 : 0.0;
    std::vector<double> out(static_cast<std::size_t>(K) + 1, 0.0);
    for (int k = jlo; k <= K; ++k) {
        double acc = 0.0;
        for (int j = jlo; j <= std::min(k, jhi); ++j)
            acc += dH[j] * law.ccdf((static_cast<double>(k - j) + half) * F.dx);
        out[k] = -acc;
    }
    return out;
}

GridCDF mfm_step(const GridCDF& F, double dt, const RateProfile& profile,
                 const JumpLaw& law, int integrator, double repair_limit,
                 bool midpoint_kernel) {
    if (dt < 0.0) throw ValidationError("mfm_step: dt must be >= 0");
    GridCDF out = F;
    if (dt == 0.0) return out;

    const auto deriv = [&](const std::vector<double>& v) {
        GridCDF tmp = F;
        tmp.F = v;
        return mfm_rhs(tmp, profile, law, midpoint_kernel);
    };

    const std::size_t m = F.F.size();
    if (integrator == 1) {
        const auto k1 = deriv(F.F);
        for (std::size_t i = 0; i < m; ++i) out.F[i] = F.F[i] + dt * k1[i];
    } else if (integrator == 4) {
        const auto k1 = deriv(F.F);
        std::vector<double> s(m);
        for (std::size_t i = 0; i < m; ++i) s[i] = F.F[i] + 0.5 * dt * k1[i];
        const auto k2 = deriv(s);
        for (std::size_t i = 0; i < m; ++i) s[i] = F.F[i] + 0.5 * dt * k2[i];
        const auto k3 = deriv(s);
        for (std::size_t i = 0; i < m; ++i) s[i] = F.F[i] + dt * k3[i];
        const auto k4 = deriv(s);
        for (std::size_t i = 0; i < m; ++i)
            out.F[i] = F.F[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    } else {
        throw ValidationError("mfm_step: integrator must be 1 or 4");
    }

    const double repair = clamp_monotone(out.F);
    if (repair > repair_limit)
        throw SchemeUnstable("SchemeUnstable: monotonicity repair exceeded limit");
    return out;
}

MfmSolver::MfmSolver(RateProfile profile, JumpLaw law, MfmParams params)
    : profile_(std::move(profile)), law_(std::move(law)), params_(params) {
    params_.validate();
    if (params_.dt <= 0.0) params_.dt = params_.dx;

    const int K = 2 * static_cast<int>(std::llround(params_.half_width / params_.dx)) + 2;
    const double half = params_.midpoint_kernel ? 0.5 : 0.0;
    jtab_.resize(static_cast<std::size_t>(K) + 1);
    jtab_cut_ = K;
    for (int m = 0; m <= K; ++m) {
        jtab_[static_cast<std::size_t>(m)] =
            law_.ccdf((static_cast<double>(m) + half) * params_.dx);
        if (jtab_[static_cast<std::size_t>(m)] < 1e-18 && jtab_cut_ == K && m > 0)
            jtab_cut_ = m;
    }
}

GridCDF MfmSolver::make_window(const std::function<double(double)>& cdf,
                               double center) const {
    const int half_cells = static_cast<int>(std::llround(params_.half_width / params_.dx));
    const double x0 = center - half_cells * params_.dx;
    return grid_from_cdf(cdf, x0, params_.dx, 2 * half_cells, params_.eps_tail);
}

void MfmSolver::rhs(const GridCDF& F, std::vector<double>& out) const {
    const int K = F.cells();
    std::vector<double> dH;
    int jlo, jhi;
    h_increments(F, profile_, dH, jlo, jhi);
    out.assign(static_cast<std::size_t>(K) + 1, 0.0);
    if (jhi < 0) return;
    for (int k = jlo; k <= K; ++k) {
        const int j0 = std::max(jlo, k - jtab_cut_);
        const int j1 = std::min(k, jhi);
        double acc = 0.0;
        const double* dh = dH.data();
        const double* jt = jtab_.data();
        for (int j = j0; j <= j1; ++j) acc += dh[j] * jt[k - j];
        out[static_cast<std::size_t>(k)] = -acc;
    }
}

void MfmSolver::step_in_place(GridCDF& F, double dt) {
    const std::size_t m = F.F.size();
    std::vector<double> k1, k2, k3, k4, base = F.F;
    rhs(F, k1);
    if (params_.integrator == 1) {
        for (std::size_t i = 0; i < m; ++i) F.F[i] = base[i] + dt * k1[i];
    } else {
        GridCDF tmp = F;
        for (std::size_t i = 0; i < m; ++i) tmp.F[i] = base[i] + 0.5 * dt * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < m; ++i) tmp.F[i] = base[i] + 0.5 * dt * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i < m; ++i) tmp.F[i] = base[i] + dt * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i < m; ++i)
            F.F[i] = base[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const double repair = clamp_monotone(F.F);
    max_repair_ = std::max(max_repair_, repair);
    if (repair > params_.repair_limit)
        throw SchemeUnstable("SchemeUnstable: monotonicity repair exceeded limit");
}

void MfmSolver::recenter_window(GridCDF& F) const {
    const double center = F.x0 + 0.5 * F.cells() * F.dx;
    const double off = F.mean() - center;
    const bool tails = F.tail_left() > 0.5 * params_.eps_tail ||
                       F.tail_right() > 0.5 * params_.eps_tail;
    if (std::abs(off) >= F.dx || tails) {
        const int s = static_cast<int>(std::llround(off / F.dx));
        if (s != 0) F.shift_cells(s);
        if (F.tail_left() > params_.eps_tail || F.tail_right() > params_.eps_tail)
            throw WindowTooSmall("WindowTooSmall: tail mass exceeds eps_tail after shift");
    }
}

void MfmSolver::solve(GridCDF& F, double T,
                      const std::vector<double>& snapshot_times,
                      const std::function<void(double, const GridCDF&)>& on_snapshot) {
    if (T < 0.0) throw ValidationError("mfm_solve: T must be >= 0");
    F.validate();
    if (F.tail_left() > params_.eps_tail || F.tail_right() > params_.eps_tail)
        throw WindowTooSmall("WindowTooSmall: initial tails exceed eps_tail");

    std::size_t next = 0;
    const auto emit_due = [&](double t) {
        while (next < snapshot_times.size() && snapshot_times[next] <= t + 1e-9) {
            if (on_snapshot) on_snapshot(snapshot_times[next], F);
            ++next;
        }
    };
    emit_due(0.0);

    double t = 0.0;
    while (t < T - 1e-12) {
        double dt = std::min(params_.dt, T - t);
        if (next < snapshot_times.size())
            dt = std::min(dt, snapshot_times[next] - t);
        dt = std::max(dt, 1e-12);
        step_in_place(F, dt);
        t += dt;
        recenter_window(F);
        emit_due(t);
    }
    emit_due(T);
}

double mass_transport_defect(const GridCDF& F0, const GridCDF& Ft, double t,
                             double speed) {
    const double moved = signed_area_between(F0, Ft);
    const double expected = speed * t;
    return std::abs(moved - expected) / std::abs(expected);
}

} // namespace qwave

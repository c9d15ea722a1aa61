import math

import pytest

import qwave


def test_profile_and_speed():
    prof = qwave.RateProfile.linear()
    assert prof.eta(0.0) == 1.0
    assert prof.eta(1.0) == 0.0
    assert prof.speed() == pytest.approx(0.5)
    assert qwave.RateProfile.power(2.0).speed() == pytest.approx(2.0 / 3.0)


def test_jump_law_normalization():
    law = qwave.JumpLaw.gamma(2.0, 1.0)
    assert law.moment(1.0) == pytest.approx(1.0)
    assert law.cdf(1.0) == pytest.approx(1.0 - 3.0 * math.exp(-2.0))


def test_particle_run_and_drift():
    prof = qwave.RateProfile.linear()
    law = qwave.JumpLaw.exponential(1.0)
    rng = qwave.Rng(7)
    st = qwave.ParticleState([0.0] * 200)
    st.run(prof, law, 50.0, rng)
    assert st.clock >= 50.0
    drift = st.mean() / st.clock
    assert drift == pytest.approx(qwave.v_n(prof, 200), rel=0.15)


def test_lyapunov_nonpositive():
    prof = qwave.RateProfile.linear()
    c = qwave.recenter([-1.0, 0.0, 0.0, 1.0])
    assert qwave.lyapunov_G(c, prof, 1.0) <= 0.0
    assert sum(qwave.zeta_bar(c, prof)) == pytest.approx(0.0, abs=1e-12)


def test_mfm_solver_and_w1():
    prof = qwave.RateProfile.linear()
    law = qwave.JumpLaw.exponential(1.0)
    params = qwave.MfmParams()
    params.dx = 0.1
    params.half_width = 14.0
    params.eps_tail = 1e-4
    solver = qwave.MfmSolver(prof, law, params)
    F = solver.make_window(lambda x: min(max((x + 1.0) / 2.0, 0.0), 1.0), 0.0)
    F0_mean = F.mean()
    F = solver.solve(F, 2.0)
    assert F.mean() - F0_mean == pytest.approx(1.0, abs=0.05)
    assert qwave.wasserstein1([0.0], [1.0]) == pytest.approx(1.0)


def test_tws_residual_coarse():
    prof = qwave.RateProfile.linear()
    law = qwave.JumpLaw.exponential(1.0)
    p = qwave.TwsParams()
    p.mfm.dx = 0.1
    p.mfm.half_width = 12.0
    p.mfm.eps_tail = 1e-4
    p.tol_fix = 1e-4
    p.refine_factors = [4, 2, 1]
    wave = qwave.tws_solve(prof, law, p)
    assert wave.speed == pytest.approx(0.5)
    assert wave.residual < 0.05
    assert abs(wave.shape.mean()) < 1e-6


def test_validation_errors_map_to_python():
    with pytest.raises(ValueError):
        qwave.RateProfile.power(-1.0)
    with pytest.raises(ValueError):
        qwave.ParticleState([])

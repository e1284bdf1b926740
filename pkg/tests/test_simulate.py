import numpy as np
import pytest

from frontlab import (
    DomainError,
    FrontTrace,
    Params,
    SimConfig,
    ell_star,
    envelope_speed,
    fit_speed,
    make_q_ref,
    run,
    weight_omega,
    weighted_decay,
)


class TestConfig:
    def test_validation(self, p_kpp2):
        with pytest.raises(DomainError):
            SimConfig(params=p_kpp2, dx=-0.1)
        with pytest.raises(DomainError):
            SimConfig(params=p_kpp2, L=10.0, dx=0.3)  # L/dx not integral
        with pytest.raises(DomainError):
            SimConfig(params=p_kpp2, dt=1.0)  # above explicit bound

    def test_default_frame_is_critical(self, p_kpp2):
        cfg = SimConfig(params=p_kpp2, L=10.0, dx=0.5, T=1.0)
        assert cfg.s_frame == pytest.approx(2.0)

    def test_grid(self, p_kpp2):
        cfg = SimConfig(params=p_kpp2, L=10.0, dx=0.5, T=1.0)
        assert cfg.x[0] == -10.0 and cfg.x[-1] == 10.0
        assert cfg.x.size == 41


class TestWeight:
    def test_three_piece_form(self, p_kpp2):
        rate = p_kpp2.s_star / (2.0 * p_kpp2.d)
        x = np.array([-5.0, -1.0, 1.0, 5.0])
        w = weight_omega(x, p_kpp2)
        assert w[3] == pytest.approx(np.exp(-rate * 5.0))
        assert w[2] == pytest.approx(np.exp(-rate))
        assert w[0] == pytest.approx(np.exp(-0.01 * 5.0))
        assert np.all(w > 0)

    def test_blend_is_continuous(self, p_kpp2):
        x = np.linspace(-1.5, 1.5, 3001)
        w = weight_omega(x, p_kpp2)
        assert np.max(np.abs(np.diff(np.log(w)))) < 5e-3


class TestFitSpeed:
    def test_regression_sanity(self, rng):
        t = np.arange(0.0, 100.0, 1.0)
        pos = 2.3 * t + rng.normal(scale=0.01, size=t.size)
        tr = FrontTrace(times=t, core_pos=pos, edge_pos=pos,
                        weighted_norm=np.full(t.size, np.nan),
                        v_sup=np.zeros(t.size))
        fit = fit_speed(tr, (10.0, 90.0))
        assert fit["speed"] == pytest.approx(2.3, abs=0.01)
        assert fit["r2"] > 0.999

    def test_short_window_rejected(self):
        t = np.arange(0.0, 100.0, 1.0)
        tr = FrontTrace(times=t, core_pos=t, edge_pos=t,
                        weighted_norm=t, v_sup=t)
        with pytest.raises(DomainError):
            fit_speed(tr, (10.0, 15.0))


class TestRun:
    def test_stationary_front_comoving(self):
        p = Params(1.0, 1.0, -9.0)
        cfg = SimConfig(params=p, L=100.0, dx=0.1, dt=0.05, T=80.0,
                        front_ic="matched", v_amp=0.0)
        res = run(cfg)
        fit = fit_speed(res.trace, (30.0, 80.0), which="core")
        assert fit["speed"] == pytest.approx(0.0, abs=0.02)

    def test_positivity(self, p_kpp2):
        cfg = SimConfig(params=p_kpp2, L=60.0, dx=0.2, dt=0.05, T=20.0,
                        front_ic="tanh", v_amp=0.0)
        res = run(cfg)
        assert res.u.min() > -1e-8
        assert res.u.max() < 1.0 + 1e-8

    def test_v_decouples_from_u(self):
        # triangular structure: the v field ignores u entirely
        base = dict(L=60.0, dx=0.2, dt=0.05, T=10.0, v_amp=0.1)
        coupled = run(SimConfig(params=Params(1.0, 1.0, -1.0, beta=0.5),
                                front_ic="tanh", **base))
        alone = run(SimConfig(params=Params(1.0, 1.0, -1.0, beta=0.0),
                              front_ic="none", **base))
        assert np.array_equal(coupled.v, alone.v)

    def test_v_envelope_shape(self):
        # sup|v| ~ e^{mu t} t^{-1/2}: calibrate the constant at t=30 and
        # predict t=50; the ratio must stay within a factor 3
        p = Params(1.0, 1.0, -1.0)
        cfg = SimConfig(params=p, L=100.0, dx=0.1, dt=0.02, T=50.0,
                        front_ic="none", v_amp=0.1)
        tr = run(cfg).trace
        mu = p.mu

        def envelope(t):
            return np.exp(mu * t) / np.sqrt(t)

        v30 = tr.v_sup[tr.times == 30.0][0]
        v50 = tr.v_sup[tr.times == 50.0][0]
        const = v30 / envelope(30.0)
        ratio = v50 / (const * envelope(50.0))
        assert 1.0 / 3.0 < ratio < 3.0

    def test_v_exponential_decay_rate(self):
        p = Params(1.0, 1.0, -1.0)
        cfg = SimConfig(params=p, L=100.0, dx=0.1, dt=0.02, T=40.0,
                        front_ic="none", v_amp=0.1)
        tr = run(cfg).trace
        m = tr.times >= 10.0
        ly = np.log(tr.v_sup[m])
        slope, icpt = np.polyfit(tr.times[m], ly, 1)
        resid = ly - (slope * tr.times[m] + icpt)
        r2 = 1.0 - np.sum(resid**2) / np.sum((ly - ly.mean()) ** 2)
        assert r2 > 0.95
        assert slope < p.mu / 2.0  # at least half the linear damping rate

    def test_frame_consistency(self, p_kpp2):
        base = dict(L=150.0, dx=0.2, dt=0.05, T=50.0,
                    front_ic="tanh", v_amp=0.0)
        lab = run(SimConfig(params=p_kpp2, s_frame=0.0, **base))
        com = run(SimConfig(params=p_kpp2, **base))
        v_lab = fit_speed(lab.trace, (25.0, 50.0), which="core")["speed"]
        v_com = fit_speed(com.trace, (25.0, 50.0), which="core")["speed"]
        assert v_lab == pytest.approx(v_com + p_kpp2.s_star, abs=0.1)

    def test_grid_convergence(self, p_kpp2):
        def speed(dx, dt):
            cfg = SimConfig(params=p_kpp2, s_frame=0.0, L=120.0, dx=dx,
                            dt=dt, T=40.0, front_ic="tanh", v_amp=0.0)
            return fit_speed(run(cfg).trace, (20.0, 40.0), "core")["speed"]

        coarse = speed(0.2, 0.05)
        fine = speed(0.1, 0.025)
        assert abs(fine - coarse) / abs(fine) < 0.02

    def test_boundary_guard(self, p_kpp2):
        from frontlab import NumericalError
        cfg = SimConfig(params=p_kpp2, s_frame=0.0, L=30.0, dx=0.2,
                        dt=0.05, T=30.0, front_ic="tanh", v_amp=0.0)
        with pytest.raises(NumericalError):
            run(cfg)

    def test_snapshots(self, p_kpp2):
        cfg = SimConfig(params=p_kpp2, L=20.0, dx=0.5, dt=0.05, T=2.0,
                        check_boundary=False, v_amp=0.0)
        res = run(cfg, snapshot_times=(1.0, 2.0))
        assert [s[0] for s in res.snapshots] == [1.0, 2.0]
        assert res.snapshots[0][1].shape == res.x.shape


class TestWeightedNorm:
    def test_zero_perturbation_is_zero(self):
        p = Params(1.0, 1.0, -9.0)
        q = make_q_ref(p, L=60.0, dx=0.2, dt=0.05, t_final=20.0)
        cfg = SimConfig(params=p, L=60.0, dx=0.2, dt=0.05, T=5.0,
                        front_ic="ref", q_ref=q, reference="evolved",
                        v_amp=0.0, check_boundary=False)
        tr = run(cfg).trace
        assert np.nanmax(tr.weighted_norm) < 1e-10

    def test_weighted_decay_validation(self):
        t = np.arange(0.0, 5.0, 1.0)
        tr = FrontTrace(times=t, core_pos=t, edge_pos=t,
                        weighted_norm=np.full(t.size, np.nan),
                        v_sup=np.zeros(t.size))
        with pytest.raises(DomainError):
            weighted_decay(tr)

    def test_weighted_decay_synthetic(self):
        t = np.arange(0.0, 200.0, 1.0)
        wn = 0.01 * (1.0 + t) ** -1.5
        tr = FrontTrace(times=t, core_pos=t, edge_pos=t,
                        weighted_norm=wn, v_sup=np.zeros(t.size))
        rep = weighted_decay(tr)
        assert rep["exponent"] == pytest.approx(-1.5, abs=1e-6)
        assert not rep["low_confidence"]


class TestResonance:
    def test_ell_star_reference_point(self, p_half):
        res = ell_star(p_half)
        assert res["ell"] == pytest.approx(1.4872, abs=1e-3)
        assert res["nu"].real == pytest.approx(-0.5456, abs=1e-3)
        # the leading u-root and the v-mode root share their real part
        from frontlab import roots_u
        _, nu_plus = roots_u(res["lambda_max"], p_half, "zero")
        assert abs(nu_plus.real - res["nu"].real) < 1e-7
        # predicted delay-law slope
        slope = -np.log(10.0) / res["lambda_max"].real
        assert slope == pytest.approx(-11.1516, abs=0.15)

    def test_ell_star_requires_unstable_absolute_spectrum(self):
        with pytest.raises(DomainError):
            ell_star(Params(1.0, 1.0, -9.0))

    def test_envelope_speed_example(self):
        p = Params(1.0, 1.0, -1.0, s=2.0)
        assert envelope_speed(0.0, -0.5, p) == pytest.approx(0.5)

    def test_envelope_speed_specialization(self):
        # s=0, real nu, ell=0: classical -(d nu^2 + alpha)/nu
        p = Params(1.0, 1.0, -1.0, s=0.0)
        nu = -0.7
        assert envelope_speed(0.0, nu, p) == pytest.approx(
            -(p.d * nu**2 + p.alpha) / nu)

    def test_envelope_speed_large_ell_irrelevant(self):
        p = Params(1.0, 1.0, -1.0, s=2.0)
        assert envelope_speed(40.0, -0.5, p) < -100.0

    def test_envelope_speed_requires_decaying_mode(self):
        p = Params(1.0, 1.0, -1.0, s=2.0)
        with pytest.raises(DomainError):
            envelope_speed(0.0, 0.5, p)

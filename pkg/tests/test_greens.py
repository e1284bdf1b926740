import numpy as np
import pytest

from frontlab import (
    DomainError,
    Params,
    g12_infty,
    g22,
    roots_u,
    verify_removable_singularity,
)
from frontlab.absspec import _resonance_roots_any_s

P = Params(d=1.0, alpha=1.0, mu=-1.0, beta=1.0)

TEST_PAIRS = [
    (1.0 + 0.5j, 1.0),
    (2.0 - 1.0j, 1.5),
    (0.5 + 2.0j, 2.0),
    (1.5 + 0.3j, -1.5),
    (0.8 - 1.2j, -2.5),
]


def d3_central(f, x, h):
    """Central third-derivative stencil, O(h^2)."""
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h**3)


def lv_residual(f, x, lam, p, h=1e-2):
    """(L_v - lam) f at x with Richardson-extrapolated differences."""
    def d4(hh):
        return (f(x - 2 * hh) - 4 * f(x - hh) + 6 * f(x)
                - 4 * f(x + hh) + f(x + 2 * hh)) / hh**4

    def d2(hh):
        return (f(x - hh) - 2 * f(x) + f(x + hh)) / hh**2

    def d1(hh):
        return (f(x + hh) - f(x - hh)) / (2 * hh)

    f4 = (4.0 * d4(h / 2) - d4(h)) / 3.0
    f2 = (4.0 * d2(h / 2) - d2(h)) / 3.0
    f1 = (4.0 * d1(h / 2) - d1(h)) / 3.0
    return -f4 - 2.0 * f2 - f(x) + p.s * f1 + p.mu * f(x) - lam * f(x)


def lu_residual(f, x, lam, p, h=5e-3):
    """(L_u^infty - lam) f at x: growth alpha for x>0, -2 alpha for x<0."""
    def d2(hh):
        return (f(x - hh) - 2 * f(x) + f(x + hh)) / hh**2

    def d1(hh):
        return (f(x + hh) - f(x - hh)) / (2 * hh)

    f2 = (4.0 * d2(h / 2) - d2(h)) / 3.0
    f1 = (4.0 * d1(h / 2) - d1(h)) / 3.0
    c = p.alpha if x > 0 else -2.0 * p.alpha
    return p.d * f2 + p.s * f1 + c * f(x) - lam * f(x)


class TestG22:
    def test_third_derivative_jump(self):
        lam, y = 1.0 + 0.5j, 1.0
        h = 1e-3

        def f(x):
            return g22(lam, x, y, P)

        # one-sided third derivatives four steps off the kink; the smooth
        # fourth-derivative offsets cancel in the difference
        above = d3_central(f, y + 4 * h, h)
        below = d3_central(f, y - 4 * h, h)
        assert abs((above - below) - 1.0) < 1e-3

    def test_continuity_up_to_second_derivative(self):
        lam, y = 2.0 - 1.0j, -0.5
        for eps in (1e-4, 1e-5):
            jump0 = g22(lam, y + eps, y, P) - g22(lam, y - eps, y, P)
            assert abs(jump0) < 10 * eps
        h = 1e-3

        def f(x):
            return g22(lam, x, y, P)

        d1a = (f(y + 3 * h) - f(y + h)) / (2 * h)
        d1b = (f(y - h) - f(y - 3 * h)) / (2 * h)
        assert abs(d1a - d1b) < 1e-2  # first derivative continuous

    def test_ode_residual(self):
        for lam, y in TEST_PAIRS[:3]:
            for x in np.linspace(y - 4.0, y + 4.0, 17):
                if abs(x - y) < 0.2:
                    continue
                res = lv_residual(lambda t: g22(lam, t, y, P), x, lam, P)
                assert abs(res) < 1e-6

    def test_decay_at_infinity(self):
        lam, y = 1.0 + 0.5j, 0.0
        assert abs(g22(lam, 25.0, y, P)) < 1e-4
        assert abs(g22(lam, -25.0, y, P)) < 1e-4

    def test_conjugation_symmetry(self):
        lam, y = 1.0 + 0.7j, 0.8
        a = g22(np.conj(lam), 0.3, y, P)
        b = np.conj(g22(lam, 0.3, y, P))
        assert a == pytest.approx(b, abs=1e-12)

    def test_left_of_spectrum_rejected(self):
        with pytest.raises(DomainError):
            g22(-5.0 + 0.0j, 0.0, 1.0, P)


class TestG12Infty:
    def test_ode_residual_five_pairs(self):
        for lam, y in TEST_PAIRS:
            grid = np.linspace(-10.0, 10.0, 400)
            checked = 0
            for x in grid[::16]:
                if abs(x) < 0.2 or abs(x - y) < 0.2:
                    continue
                res = lu_residual(
                    lambda t: g12_infty(lam, t, y, P).value, x, lam, P)
                res += P.beta * g22(lam, x, y, P)
                assert abs(res) < 1e-5
                checked += 1
            assert checked >= 20

    def test_interface_continuity(self):
        for lam, y in TEST_PAIRS:
            for x0 in (0.0, y):
                eps = 1e-6

                def f(x):
                    return g12_infty(lam, x, y, P).value

                c0 = f(x0 + eps) - f(x0 - eps)
                assert abs(c0) < 1e-6
                h = 1e-4
                # one-sided quadratic fits differentiated at x0 itself; a
                # stencil centered off the interface would read the smooth
                # curvature term 4h*f'' as a spurious derivative jump
                d_above = (-5 * f(x0 + h) + 8 * f(x0 + 2 * h)
                           - 3 * f(x0 + 3 * h)) / (2 * h)
                d_below = (5 * f(x0 - h) - 8 * f(x0 - 2 * h)
                           + 3 * f(x0 - 3 * h)) / (2 * h)
                assert abs(d_above - d_below) < 1e-6

    def test_case_dispatch(self):
        lam = 1.0 + 0.5j
        assert g12_infty(lam, 2.0, 1.0, P).case_id == "x>y>0"
        assert g12_infty(lam, 0.5, 1.0, P).case_id == "y>x>0"
        assert g12_infty(lam, -1.0, 1.0, P).case_id == "x<0<y"
        assert g12_infty(lam, 1.0, -1.0, P).case_id == "y<0<x"
        assert g12_infty(lam, -0.5, -1.0, P).case_id == "y<x<0"
        assert g12_infty(lam, -2.0, -1.0, P).case_id == "x<y<0"

    def test_linear_in_beta(self):
        lam, x, y = 1.0 + 0.5j, 0.7, 1.3
        zero = g12_infty(lam, x, y, Params(1.0, 1.0, -1.0, beta=0.0))
        assert zero.value == 0.0
        double = g12_infty(lam, x, y, Params(1.0, 1.0, -1.0, beta=2.0))
        single = g12_infty(lam, x, y, P)
        assert double.value == pytest.approx(2.0 * single.value, abs=1e-12)

    def test_conjugation_symmetry(self):
        lam, x, y = 0.9 + 1.1j, -0.4, 1.2
        a = g12_infty(np.conj(lam), x, y, P).value
        b = np.conj(g12_infty(lam, x, y, P).value)
        assert a == pytest.approx(b, abs=1e-12)

    def test_branch_cut_rejected(self):
        with pytest.raises(DomainError):
            g12_infty(-1.0 + 0.0j, 0.5, 1.0, P)

    def test_resonance_pole_rejected(self):
        pole = _resonance_roots_any_s(P)[0][0]
        with pytest.raises(DomainError):
            g12_infty(pole + 1e-8, 0.5, 1.0, P)

    def test_y_zero_rejected(self):
        with pytest.raises(DomainError):
            g12_infty(1.0 + 0.5j, 0.5, 0.0, P)


class TestBvpOracle:
    def bvp_solve(self, lam, y, p, L_g=40.0, dx=0.01):
        """Direct banded solve of (L_u^infty - lam) G = -beta g22(., y) with
        decaying-mode Robin closure at both ends. The grid is staggered so
        the coefficient jump at x = 0 falls between nodes; a node on the
        jump would cost a full order of accuracy."""
        n = int(round(2 * L_g / dx))
        x = -L_g + (np.arange(n) + 0.5) * dx
        main = np.zeros(n, dtype=complex)
        lower = np.zeros(n - 1, dtype=complex)
        upper = np.zeros(n - 1, dtype=complex)
        rhs = np.zeros(n, dtype=complex)
        for i in range(1, n - 1):
            c = p.alpha if x[i] > 0 else -2.0 * p.alpha
            main[i] = -2.0 * p.d / dx**2 + c - lam
            lower[i - 1] = p.d / dx**2 - p.s / (2 * dx)
            upper[i] = p.d / dx**2 + p.s / (2 * dx)
            rhs[i] = -p.beta * g22(lam, x[i], y, p)
        # right end: G' = nm0 G (decaying root of the alpha-branch)
        nm0, _ = roots_u(lam, p, "zero")
        _, np1 = roots_u(lam, p, "one")
        main[-1] = 1.0 / dx - nm0 / 2.0
        lower[-1] = -1.0 / dx - nm0 / 2.0
        # left end: G' = np1 G (growing root of the -2 alpha branch decays
        # towards -infinity)
        main[0] = -1.0 / dx - np1 / 2.0
        upper[0] = 1.0 / dx - np1 / 2.0
        ab = np.zeros((3, n), dtype=complex)
        ab[0, 1:] = upper
        ab[1, :] = main
        ab[2, :-1] = lower
        from scipy.linalg import solve_banded
        return x, solve_banded((1, 1), ab, rhs)

    @pytest.mark.parametrize("lam,y", TEST_PAIRS)
    def test_matches_closed_form(self, lam, y):
        x, g_num = self.bvp_solve(lam, y, P)
        sel = (np.abs(x) < 20.0)
        worst = 0.0
        for xi, gi in zip(x[sel][::25], g_num[sel][::25]):
            ref = g12_infty(lam, float(xi), y, P).value
            worst = max(worst, abs(gi - ref))
        assert worst < 1e-4


class TestRemovableSingularity:
    def test_bounded_at_origin(self):
        rep = verify_removable_singularity(P, 1.0)
        assert rep["bounded"]
        assert rep["growth_factor"] < 10.0

    def test_individual_coefficient_diverges(self):
        rep = verify_removable_singularity(P, 1.0)
        assert rep["b3_log_slope"] == pytest.approx(-0.5, abs=0.05)

    def test_requires_positive_y(self):
        with pytest.raises(DomainError):
            verify_removable_singularity(P, -1.0)

"""Stability-region classification, the resolvent decay rate gamma_v over
the region Omega, the decay-rate condition, and parameter-plane sweeps."""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .dispersion import v_roots_fast
from .errors import DomainError, NumericalError
from .params import Params
from .spectra import region_boundaries

RST, RREM, RABS, RPW = "Rst", "Rrem", "Rabs", "Rpw"

#: tie band for boundary classification
TIE = 1e-12


@dataclass(frozen=True)
class RegionLabel:
    label: str
    margins: dict


def classify(d, alpha, mu):
    """Region label at s = s_star.

    Rst below the remnant boundary; Rpw above the resonance-pole boundary
    (when it exists); Rabs above the absolute-instability onset; Rrem in
    between. Boundary ties resolve to the more stable label.
    """
    if not mu < 0:
        raise DomainError("classification requires mu < 0")
    b = region_boundaries(alpha, d)
    margins = {
        "mu_rem": mu - b.mu_rem,
        "mu_abs0": mu - b.mu_abs0,
        "mu_pw": (mu - b.mu_pw) if b.mu_pw is not None else None,
    }
    if mu < min(b.mu_rem, 0.0) + TIE:
        return RegionLabel(RST, margins)
    if b.mu_pw is not None and mu > b.mu_pw + TIE:
        return RegionLabel(RPW, margins)
    if mu > b.mu_abs0 + TIE:
        return RegionLabel(RABS, margins)
    return RegionLabel(RREM, margins)


@dataclass(frozen=True)
class OmegaSpec:
    """Search region for the resolvent decay rate: spectral parameters with
    Re lambda in [mu, 0], modulus below M_l, and strictly left of the
    eta_star-weighted v-spectrum."""

    M_l: float
    n_re: int = 256
    n_im: int = 48


def default_omega(p):
    return OmegaSpec(M_l=4.0 * (1.0 + abs(p.mu) + p.alpha))


def _right_of_weighted(lam, p):
    """True when lambda lies right of the eta_star-weighted v-spectrum:
    exactly two of the four spatial roots satisfy Re nu > eta_star."""
    roots = v_roots_fast(lam, p)
    return int(np.sum(roots.real > p.eta_star)) == 2


def _max_re_nu12(lam, p):
    """Largest real part among the two decaying v-roots (Re nu < 0)."""
    roots = v_roots_fast(lam, p)
    neg = np.sort(roots.real)[:2]
    return neg[1]


def gamma_v(p, omega=None):
    """Decay rate of the v-resolvent modes over Omega.

    Grid-samples Omega, maximizes Re of the decaying spatial roots, refines
    with Nelder-Mead, and returns the negated maximum.
    """
    if not p.at_sstar:
        raise DomainError("gamma_v is defined at s = s_star")
    omega = omega or default_omega(p)
    best = -math.inf
    best_lam = None
    for re in np.linspace(p.mu, 0.0, omega.n_re):
        im_cap = math.sqrt(max(omega.M_l**2 - re**2, 0.0))
        # bisect for the weighted-spectrum boundary in Im
        lo, hi = 0.0, im_cap
        if _right_of_weighted(complex(re, hi), p):
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if _right_of_weighted(complex(re, mid), p):
                    hi = mid
                else:
                    lo = mid
            im_b = lo
        else:
            im_b = im_cap
        if im_b <= 0.0:
            continue
        for im in np.linspace(0.0, im_b * (1.0 - 1e-9), omega.n_im):
            lam = complex(re, im)
            val = _max_re_nu12(lam, p)
            if val > best:
                best, best_lam = val, lam

    def neg(x):
        lam = complex(x[0], x[1])
        if lam.real < p.mu or lam.real > 0.0 or abs(lam) >= omega.M_l:
            return math.inf
        if _right_of_weighted(lam, p):
            return math.inf
        return -_max_re_nu12(lam, p)

    res = minimize(neg, [best_lam.real, best_lam.imag], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 400})
    if np.isfinite(res.fun):
        best = max(best, -res.fun)
    if best >= 0.0:
        raise NumericalError("Omega touches the weighted-spectrum boundary")
    return -best


def check_decay_condition(p):
    """Whether 3 gamma_v exceeds s_star/(2d), with the margin."""
    g = gamma_v(p)
    margin = 3.0 * g - p.s_star / (2.0 * p.d)
    return {"ok": bool(margin > 0.0), "margin": margin, "gamma_v": g}


def _sweep_row(args):
    plane, x, y, fixed = args
    if plane == "alpha_d":
        alpha, d, mu = x, y, fixed
    else:  # mu_d
        mu, d, alpha = x, y, fixed
    try:
        lab = classify(d, alpha, mu)
        b = region_boundaries(alpha, d)
        return {
            "x": x, "y": y, "label": lab.label,
            "mu_rem": b.mu_rem, "mu_abs0": b.mu_abs0,
            "mu_pw": b.mu_pw if b.mu_pw is not None else float("nan"),
        }
    except DomainError:
        return {"x": x, "y": y, "label": "invalid",
                "mu_rem": float("nan"), "mu_abs0": float("nan"),
                "mu_pw": float("nan")}


def sweep(plane, x_range, y_range, resolution, fixed, jobs=None):
    """Region map over a parameter plane.

    plane='alpha_d' sweeps (alpha, d) at fixed mu; plane='mu_d' sweeps
    (mu, d) at fixed alpha. Rows come back in deterministic grid order.
    """
    if plane not in ("alpha_d", "mu_d"):
        raise DomainError(f"unknown plane {plane!r}")
    xs = np.linspace(*x_range, resolution)
    ys = np.linspace(*y_range, resolution)
    tasks = [(plane, float(x), float(y), fixed) for x in xs for y in ys]
    jobs = jobs or int(os.environ.get("FRONTLAB_JOBS", 0)) or None
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_sweep_row, tasks, chunksize=64))
    return [_sweep_row(t) for t in tasks]

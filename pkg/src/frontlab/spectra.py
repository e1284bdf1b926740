"""Essential and exponentially weighted essential spectra as parameterized
curves, extremal growth rates, and closed-form region boundaries.

The weighted spectra are the curves traced by the symbols

    sigma_u(k; eta) = -d k^2 + i (s + 2 d eta) k + d eta^2 + s eta + alpha
    sigma_v(k; eta) = -k^4 + 4 i eta k^3 + (2 + 6 eta^2) k^2
                      + i (s - 4 eta^3 - 4 eta) k - (1 + eta^2)^2 + s eta + mu

for real wavenumber k and exponential weight rate eta.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, NumericalError


def sigma_u(k, eta, p):
    """Weighted u-symbol; supports scalar or array k."""
    k = np.asarray(k, dtype=float)
    val = (
        -p.d * k**2
        + 1j * (p.s + 2.0 * p.d * eta) * k
        + p.d * eta**2
        + p.s * eta
        + p.alpha
    )
    return val if val.ndim else complex(val)


def sigma_v(k, eta, p):
    """Weighted v-symbol; supports scalar or array k."""
    k = np.asarray(k, dtype=float)
    val = (
        -(k**4)
        + 4j * eta * k**3
        + (2.0 + 6.0 * eta**2) * k**2
        + 1j * (p.s - 4.0 * eta**3 - 4.0 * eta) * k
        - (1.0 + eta**2) ** 2
        + p.s * eta
        + p.mu
    )
    return val if val.ndim else complex(val)


@dataclass(frozen=True)
class SpectralCurve:
    component: str  # 'U' or 'V'
    eta: float
    k: np.ndarray
    lam: np.ndarray

    def rows(self):
        """CSV rows (k, re_lambda, im_lambda, component, eta)."""
        for k, l in zip(self.k, self.lam):
            yield (k, l.real, l.imag, self.component, self.eta)


def default_k_max(eta):
    """Covers the extremal wavenumbers of both components."""
    return 4.0 * math.sqrt(3.0 * eta**2 + 1.0) + 2.0


def ess_curve(component, eta, p, k_max=None, n=2001):
    """Sample the weighted essential-spectrum curve on [-k_max, k_max]."""
    if n < 2:
        raise DomainError("need at least two samples")
    if k_max is None:
        k_max = default_k_max(eta)
    if not k_max > 0:
        raise DomainError("k_max must be positive")
    k = np.linspace(-k_max, k_max, n)
    fn = sigma_u if component.upper() == "U" else sigma_v
    return SpectralCurve(component.upper(), eta, k, fn(k, eta, p))


def max_growth(component, eta, p):
    """Maximal real part of the weighted symbol over all real wavenumbers.

    U peaks at k=0; V at k = +-sqrt(3 eta^2 + 1).
    """
    if component.upper() == "U":
        return p.d * eta**2 + p.s * eta + p.alpha
    return 8.0 * eta**4 + 4.0 * eta**2 + p.s * eta + p.mu


@dataclass(frozen=True)
class Boundaries:
    mu_rem: float
    mu_abs0: float
    mu_pw: Optional[float]


def region_boundaries(alpha, d):
    """Closed-form region boundaries in mu at fixed (alpha, d).

    mu_pw only exists when alpha - d - d^2/2 > 0.
    """
    if not (alpha > 0 and d > 0):
        raise DomainError("alpha and d must be positive")
    mu_rem = 2.0 * alpha - 4.0 * alpha / d - 8.0 * alpha**2 / d**2
    mu_abs0 = d**2 / 4.0 - 4.0 * alpha / d - 4.0 * alpha**2 / d**2
    mu_pw = None
    if alpha - d - d**2 / 2.0 > 0.0:
        mu_pw = (
            alpha
            - alpha**2 / (4.0 * d**2)
            - d**2 * (2.0 + d) ** 4 / (64.0 * alpha**2)
            + (4.0 - 4.0 * d - d**2) / 8.0
        )
    return Boundaries(mu_rem=mu_rem, mu_abs0=mu_abs0, mu_pw=mu_pw)


def remnant_test(p):
    """True when the instability persists for every exponential weight.

    Minimizes, over eta < 0, the larger of the two component growth rates
    and cross-checks the sign against the closed-form boundary
    mu > min(mu_rem, 0). Requires s = s_star.
    """
    if not p.at_sstar:
        raise DomainError("remnant test is defined at s = s_star")

    def worst(eta):
        return max(max_growth("U", eta, p), max_growth("V", eta, p))

    res = minimize_scalar(
        worst,
        bounds=(2.0 * p.eta_star, -1e-6),
        method="bounded",
        options={"xatol": 1e-12},
    )
    # the u-part attains its minimum (zero) exactly at eta_star
    best = min(res.fun, worst(p.eta_star))
    numeric = best > 0.0

    b = region_boundaries(p.alpha, p.d)
    closed = p.mu > min(b.mu_rem, 0.0)
    if numeric != closed and abs(p.mu - b.mu_rem) > 1e-6:
        raise NumericalError(
            "remnant test: numeric minimization disagrees with the "
            f"closed-form boundary (numeric={numeric}, closed={closed})"
        )
    return closed

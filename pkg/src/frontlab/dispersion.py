"""Dispersion relations of the linearization at the invaded state and their
spatial roots.

For the u-component (about the invaded state 0 and the rest state 1) and the
v-component:

    D_u^0(lambda, nu) = d nu^2 + s nu + alpha - lambda
    D_u^1(lambda, nu) = d nu^2 + s nu - 2 alpha - lambda
    D_v(lambda, nu)   = -(nu^2 + 1)^2 + s nu + mu - lambda

The full-system relation is the product D_u^0 * D_v with six spatial roots.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DomainError, PinchAmbiguousError
from .params import lambda_big

#: tolerance on real-part equality in the Morse split
TOL_ABS = 1e-8

#: number of continuation steps used for pinch labelling
PINCH_STEPS = 48


def _check_finite(*vals):
    for z in vals:
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"non-finite input {z!r}")


def eval_dispersion(which, lam, nu, p):
    """Evaluate one of the dispersion relations at (lambda, nu).

    which: 'u0', 'u1', 'v' or 'full' (= u0 * v product).
    """
    _check_finite(lam, nu)
    lam = complex(lam)
    nu = complex(nu)
    if which == "u0":
        return p.d * nu**2 + p.s * nu + p.alpha - lam
    if which == "u1":
        return p.d * nu**2 + p.s * nu - 2.0 * p.alpha - lam
    if which == "v":
        return -((nu**2 + 1.0) ** 2) + p.s * nu + p.mu - lam
    if which == "full":
        return eval_dispersion("u0", lam, nu, p) * eval_dispersion("v", lam, nu, p)
    raise DomainError(f"unknown dispersion relation {which!r}")


def roots_u(lam, p, state="zero"):
    """The two spatial roots nu_-, nu_+ of the u-dispersion relation.

    state='zero' uses the linearization at u=0 (growth rate alpha),
    state='one' the one at u=1 (growth rate -2*alpha). The square root is
    the principal branch; nu_+ carries the + sign.
    """
    _check_finite(lam)
    lam = complex(lam)
    if state == "zero":
        c = p.alpha
    elif state == "one":
        c = -2.0 * p.alpha
    else:
        raise DomainError(f"unknown state {state!r}")
    rad = cmath.sqrt(p.s**2 - 4.0 * p.d * c + 4.0 * p.d * lam)
    base = -p.s / (2.0 * p.d)
    return base - rad / (2.0 * p.d), base + rad / (2.0 * p.d)


def solve_quartic(c):
    """All four roots of c[4] x^4 + ... + c[0], coefficients ascending.

    Companion-matrix eigenvalues followed by one Newton polish step.
    """
    c = np.asarray(c, dtype=complex)
    if c.shape != (5,):
        raise DomainError("expected 5 coefficients (ascending order)")
    if abs(c[4]) < 1e-300:
        raise DomainError("leading coefficient vanishes; not a quartic")
    roots = np.roots(c[::-1])
    # one Newton step against the original polynomial
    dc = np.array([c[1], 2 * c[2], 3 * c[3], 4 * c[4]])
    pv = c[0] + roots * (c[1] + roots * (c[2] + roots * (c[3] + roots * c[4])))
    dv = dc[0] + roots * (dc[1] + roots * (dc[2] + roots * dc[3]))
    mask = np.abs(dv) > 1e-30
    roots[mask] = roots[mask] - pv[mask] / dv[mask]
    return roots


def v_coeffs(lam, p):
    """Ascending coefficients of D_v(lambda, .) as a quartic in nu."""
    return np.array([p.mu - 1.0 - complex(lam), p.s, -2.0, 0.0, -1.0], dtype=complex)


def v_roots_fast(lam, p):
    """The four v-roots without any labelling (cheap path)."""
    _check_finite(lam)
    return solve_quartic(v_coeffs(lam, p))


@dataclass(frozen=True)
class VRootSet:
    """Four spatial roots of the v-dispersion relation with dual labels.

    roots[pinch_label[i]] gives the root carrying pinch index i+1; pinch
    indices 1,2 (3,4) belong to the roots that have negative (positive)
    real part far to the right in the spectral plane. rank_label orders the
    roots by nondecreasing real part (ties by imaginary part).
    """

    roots: np.ndarray
    pinch_label: tuple
    rank_label: tuple

    def by_pinch(self, i):
        """Root with pinch index i in 1..4."""
        return self.roots[self.pinch_label[i - 1]]

    def by_rank(self, i):
        """Root with real-part rank i in 1..4 (ascending)."""
        return self.roots[self.rank_label[i - 1]]


def _match(prev, cur):
    """Permutation sigma minimizing sum |prev[i] - cur[sigma[i]]|."""
    dist = np.abs(prev[:, None] - cur[None, :])
    _, col = linear_sum_assignment(dist)
    return col


def roots_v(lam, p, steps=PINCH_STEPS):
    """All four v-roots with pinch and rank labels.

    Pinch labels are assigned at a large real spectral anchor (where two
    roots lie on each side of the imaginary axis) and transported to lambda
    by nearest-neighbour continuation along the straight segment.
    """
    _check_finite(lam)
    lam = complex(lam)
    lb = lambda_big(p)

    ts = np.linspace(0.0, 1.0, steps + 1)
    lams = lb + ts * (lam - lb)
    # batched companion matrices -> eigenvalues for the whole path
    comp = np.zeros((steps + 1, 4, 4), dtype=complex)
    comp[:, 1, 0] = comp[:, 2, 1] = comp[:, 3, 2] = 1.0
    c0 = p.mu - 1.0 - lams
    comp[:, 0, 0] = 0.0
    # monic form: nu^4 + 0 nu^3 + 2 nu^2 - s nu - (mu - 1 - lam) = 0
    comp[:, 0, 1] = -2.0
    comp[:, 0, 2] = p.s
    comp[:, 0, 3] = c0
    path = np.linalg.eigvals(comp)

    cur = path[0]
    order = np.lexsort((cur.imag, cur.real))
    cur = cur[order]
    if not (cur[1].real < 0.0 < cur[2].real):
        raise PinchAmbiguousError(
            "anchor point does not split roots 2/2 about the imaginary axis",
            path_point=lams[0],
        )
    for k in range(1, steps + 1):
        nxt = path[k][_match(cur, path[k])]
        if k < steps:
            sep = np.abs(nxt[:, None] - nxt[None, :])
            sep[np.arange(4), np.arange(4)] = np.inf
            if sep.min() < 1e-8:
                raise PinchAmbiguousError(
                    "continuation path passes through a near-double root",
                    path_point=lams[k],
                )
        cur = nxt
    # one Newton polish at the endpoint
    c = v_coeffs(lam, p)
    pv = c[0] + cur * (c[1] + cur * (c[2] + cur * (c[3] + cur * c[4])))
    dv = c[1] + cur * (2 * c[2] + cur * (3 * c[3] + cur * 4 * c[4]))
    mask = np.abs(dv) > 1e-12
    cur = np.where(mask, cur - pv / np.where(mask, dv, 1.0), cur)

    pinch = tuple(range(4))  # cur is already in pinch order 1..4
    rank = tuple(np.lexsort((cur.imag, cur.real)))
    return VRootSet(roots=cur, pinch_label=pinch, rank_label=rank)


@dataclass(frozen=True)
class MorseSplit:
    """Six spatial roots of the full dispersion relation, sorted by real
    part, with the gap at the Morse split (positions 3|4)."""

    sorted_six: np.ndarray
    gap: float
    in_abs: bool


def morse_split(lam, p, tol_abs=TOL_ABS):
    """Merge u- and v-roots, sort by real part and test membership in the
    absolute spectrum (vanishing gap between roots 3 and 4)."""
    _check_finite(lam)
    u = np.array(roots_u(lam, p, "zero"))
    v = v_roots_fast(lam, p)
    allr = np.concatenate([u, v])
    allr = allr[np.lexsort((allr.imag, allr.real))]
    gap = allr[3].real - allr[2].real
    return MorseSplit(sorted_six=allr, gap=gap, in_abs=bool(gap <= tol_abs))

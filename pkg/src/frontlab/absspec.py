"""Absolute spectrum machinery: closed-form double roots and resonance
poles, a numeric double-root oracle, pinching verification by homotopy to a
far-right anchor, curve continuation of the absolute spectrum, triple
points, the v-subsystem closed forms, and the absolute spreading speed.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from scipy.optimize import brentq

from .dispersion import morse_split, roots_u, v_roots_fast
from .errors import ContinuationError, DomainError, NumericalError
from .params import lambda_big

U_BRANCH = "u_branch"
V_BRANCH = "v_branch"
RESONANCE = "resonance_pole"


@dataclass(frozen=True)
class DoubleRoot:
    lam: complex
    nu: complex
    kind: str
    pinched: bool
    simple: bool = True


@dataclass(frozen=True)
class TriplePoint:
    lam: complex
    eta: float
    members: tuple
    k_v: float = 0.0


@dataclass
class Branch:
    k: list = field(default_factory=list)
    lam: list = field(default_factory=list)
    nu: list = field(default_factory=list)
    truncated: bool = False


@dataclass
class AbsSpectrum:
    curves: List[Branch]
    singular_points: list
    max_re: float
    lambda_u_bp: complex


# ---------------------------------------------------------------------------
# partial derivatives of the dispersion relations

def _du0(lam, nu, p):
    return p.d * nu**2 + p.s * nu + p.alpha - lam


def _dv(lam, nu, p):
    return -((nu**2 + 1.0) ** 2) + p.s * nu + p.mu - lam


def _dv_nu(nu, p):
    return -4.0 * nu * (nu**2 + 1.0) + p.s


def _du0_nu(nu, p):
    return 2.0 * p.d * nu + p.s


def _full(lam, nu, p):
    return _du0(lam, nu, p) * _dv(lam, nu, p)


def _full_lam(lam, nu, p):
    return -(_du0(lam, nu, p) + _dv(lam, nu, p))


def _full_nu(lam, nu, p):
    return _du0_nu(nu, p) * _dv(lam, nu, p) + _du0(lam, nu, p) * _dv_nu(nu, p)


# ---------------------------------------------------------------------------
# closed-form double roots and resonance poles

def _vbranch_roots_any_s(p):
    """v-component double roots for arbitrary s from the critical points of
    the quartic: roots of 4 nu^3 + 4 nu - s = 0, lambda = D_v-image."""
    nus = np.roots([4.0, 0.0, 4.0, -p.s])
    out = []
    for nu in nus:
        nu = complex(nu)
        lam = -((nu**2 + 1.0) ** 2) + p.s * nu + p.mu
        out.append((lam, nu))
    return out


def _resonance_roots_any_s(p):
    """Simultaneous roots of the u- and v-dispersion relations.

    Eliminating lambda gives nu^4 + (2+d) nu^2 + (1 + alpha - mu) = 0,
    independent of s; lambda follows from the u-relation.
    """
    disc = cmath.sqrt((1.0 + p.d / 2.0) ** 2 - (1.0 + p.alpha - p.mu))
    out = []
    for sign_in in (+1, -1):
        nu2 = -1.0 - p.d / 2.0 + sign_in * disc
        root = cmath.sqrt(nu2)
        for nu in (root, -root):
            lam = p.d * nu**2 + p.s * nu + p.alpha
            out.append((lam, nu))
    return out


def double_roots_generic(p, pinch=True):
    """All double-root candidates of the full dispersion relation at the
    frame speed carried by p (u-branch, v-branch, resonance poles)."""
    out = [
        DoubleRoot(
            lam=complex(p.alpha - p.s**2 / (4.0 * p.d)),
            nu=complex(-p.s / (2.0 * p.d)),
            kind=U_BRANCH,
            pinched=True,
        )
    ]
    cands = [(lam, nu, V_BRANCH) for lam, nu in _vbranch_roots_any_s(p)]
    cands += [(lam, nu, RESONANCE) for lam, nu in _resonance_roots_any_s(p)]
    for lam, nu, kind in cands:
        flag = is_pinched_raw(lam, nu, kind, p) if pinch else False
        out.append(DoubleRoot(lam=lam, nu=nu, kind=kind, pinched=flag))
    return out


def double_roots_closed(p):
    """The seven closed-form double-root candidates, valid at s = s_star:
    the u-branch point at the origin, the three v-branch double roots, and
    the four resonance poles grouped as two +- pairs."""
    if not p.at_sstar:
        raise DomainError("closed-form double roots require s = s_star")
    a, d, mu = p.alpha, p.d, p.mu
    ad = a * d

    out = [
        DoubleRoot(
            lam=0.0 + 0.0j,
            nu=complex(-math.sqrt(a / d)),
            kind=U_BRANCH,
            pinched=is_pinched_raw(0.0, -math.sqrt(a / d), U_BRANCH, p),
        )
    ]

    c3 = (64.0 + 54.0 * ad * (40.0 - 27.0 * ad)
          + 6.0 * math.sqrt(3.0) * math.sqrt(ad * (16.0 + 27.0 * ad) ** 3)) ** (1.0 / 3.0)
    rt3 = 1j * math.sqrt(3.0)
    lam2 = mu - 1.0 / 3.0 + (rt3 - 1.0) * (27.0 * ad - 2.0) / (3.0 * c3) \
        + (1.0 + rt3) * c3 / 24.0
    lam3 = mu - 1.0 / 3.0 + (-rt3 - 1.0) * (27.0 * ad - 2.0) / (3.0 * c3) \
        + (1.0 - rt3) * c3 / 24.0
    lam4 = mu - 1.0 / 3.0 + 2.0 * (27.0 * ad - 2.0) / (3.0 * c3) - c3 / 12.0
    vb = _vbranch_roots_any_s(p)
    for lam in (lam2, lam3, complex(lam4)):
        nu = min(vb, key=lambda t: abs(t[0] - lam))[1]
        out.append(DoubleRoot(
            lam=lam, nu=nu, kind=V_BRANCH,
            pinched=is_pinched_raw(lam, nu, V_BRANCH, p),
        ))

    c4 = cmath.sqrt(mu + d - a + d**2 / 4.0)
    base = a - d - d**2 / 2.0
    for tag, outer in (("rp-", -1.0), ("rp+", +1.0)):
        for sign in (+1.0, -1.0):
            inner = -1.0 - d / 2.0 + sign * c4
            lam = base + sign * d * c4 + outer * 2.0 * cmath.sqrt(ad * inner)
            nu = -cmath.sqrt(inner) if tag == "rp-" else cmath.sqrt(inner)
            # fix the sqrt branch pairing so both relations vanish
            if abs(_du0(lam, nu, p)) > 1e-8 * (1.0 + abs(lam)):
                nu = -nu
            if abs(_du0(lam, nu, p)) > 1e-8 * (1.0 + abs(lam)):
                lam = base + sign * d * c4 - outer * 2.0 * cmath.sqrt(ad * inner)
                nu = -nu
            out.append(DoubleRoot(
                lam=lam, nu=nu, kind=RESONANCE,
                pinched=is_pinched_raw(lam, nu, RESONANCE, p),
            ))
    return out


# ---------------------------------------------------------------------------
# numeric double-root oracle

def _newton2(f, jac, z0, tol=1e-13, maxit=60):
    lam, nu = z0
    for _ in range(maxit):
        f1, f2 = f(lam, nu)
        scale = 1.0 + abs(lam) + abs(nu) ** 4
        if abs(f1) + abs(f2) < tol * scale:
            return lam, nu
        (a, b), (c, d) = jac(lam, nu)
        det = a * d - b * c
        if abs(det) < 1e-14 * scale:
            return None
        dlam = (f1 * d - f2 * b) / det
        dnu = (a * f2 - c * f1) / det
        lam, nu = lam - dlam, nu - dnu
        if not (np.isfinite(lam) and np.isfinite(nu)):
            return None
    return None


def double_roots_numeric(p, box, grid=8):
    """Numeric double-root search inside a lambda-box.

    box = (re_min, re_max, im_min, im_max). Newton on (D, d_nu D) = 0 for
    each factor, and on (D_u^0, D_v) = 0 for the mixed resonance system,
    started from a grid of seeds; results deduplicated at 1e-7.
    """
    re0, re1, im0, im1 = box
    if not all(map(math.isfinite, box)):
        raise DomainError("box must be finite")
    lam_seeds = [
        complex(x, y)
        for x in np.linspace(re0, re1, grid)
        for y in np.linspace(im0, im1, grid)
    ]
    found = []

    def push(lam, nu, kind):
        if not (re0 - 1e-7 <= lam.real <= re1 + 1e-7
                and im0 - 1e-7 <= lam.imag <= im1 + 1e-7):
            return
        for dr in found:
            if abs(dr.lam - lam) < 1e-7 and abs(dr.nu - nu) < 1e-7:
                return
        found.append(DoubleRoot(
            lam=lam, nu=nu, kind=kind,
            pinched=is_pinched_raw(lam, nu, kind, p),
        ))

    # u-branch: critical point is exact
    nu_u = complex(-p.s / (2.0 * p.d))
    push(complex(p.alpha - p.s**2 / (4.0 * p.d)), nu_u, U_BRANCH)

    # v-branch: (D_v, d_nu D_v) = 0
    def f_v(lam, nu):
        return _dv(lam, nu, p), _dv_nu(nu, p)

    def j_v(lam, nu):
        return ((-1.0, _dv_nu(nu, p)), (0.0, -12.0 * nu**2 - 4.0))

    # mixed: (D_u^0, D_v) = 0
    def f_m(lam, nu):
        return _du0(lam, nu, p), _dv(lam, nu, p)

    def j_m(lam, nu):
        return ((-1.0, _du0_nu(nu, p)), (-1.0, _dv_nu(nu, p)))

    for lam0 in lam_seeds:
        for nu0 in v_roots_fast(lam0, p):
            got = _newton2(f_v, j_v, (lam0, nu0))
            if got is not None:
                push(*got, V_BRANCH)
            got = _newton2(f_m, j_m, (lam0, nu0))
            if got is not None:
                push(*got, RESONANCE)
    return found


# ---------------------------------------------------------------------------
# pinching test

def _colliding_pair(lam, nu, kind, p, eps):
    """Positions of the two colliding roots just off the double root."""
    lam_p = lam + eps
    if kind == U_BRANCH:
        pair = list(roots_u(lam_p, p, "zero"))
        groups = ("u", "u")
    elif kind == V_BRANCH:
        vr = sorted(v_roots_fast(lam_p, p), key=lambda z: abs(z - nu))
        pair = [vr[0], vr[1]]
        groups = ("v", "v")
    else:
        ur = min(roots_u(lam_p, p, "zero"), key=lambda z: abs(z - nu))
        vr = min(v_roots_fast(lam_p, p), key=lambda z: abs(z - nu))
        pair = [ur, vr]
        groups = ("u", "v")
    return pair, groups


def is_pinched_raw(lam, nu, kind, p, steps=160):
    """Track the two colliding roots from the double root to the far-right
    anchor and test whether they separate across the Morse split."""
    lam = complex(lam)
    nu = complex(nu)
    lb = lambda_big(p)
    eps = 1e-5 * (1.0 + abs(lam))
    pair, groups = _colliding_pair(lam, nu, kind, p, eps)

    # deflect the ray if it grazes another double-root candidate
    delta = 0.0
    others = [(l, n) for l, n in
              (_vbranch_roots_any_s(p)
               + _resonance_roots_any_s(p)
               + [(p.alpha - p.s**2 / (4 * p.d), -p.s / (2 * p.d))])
              if abs(complex(l) - lam) > 1e-9]
    start = lam + eps
    for lo, _ in others:
        lo = complex(lo)
        t = np.clip(((lo - start) / (lb - start)).real, 0.0, 1.0)
        if abs(start + t * (lb - start) - lo) < 1e-6:
            delta = 1e-3 * (1.0 + abs(lam))
            break

    # geometric schedule: near the start the colliding pair is only
    # O(sqrt(eps)) apart, so steps must begin commensurately small
    t0 = eps / max(abs(lb - start), 1.0)
    ts = np.geomspace(t0, 1.0, steps)
    for i, t in enumerate(ts):
        lam_t = start + t * (lb - start) + 1j * delta * math.sin(math.pi * t)
        cu = None
        cv = None
        new = [None, None]
        for j, (z, g) in enumerate(zip(pair, groups)):
            if g == "u":
                if cu is None:
                    cu = list(roots_u(lam_t, p, "zero"))
                cands = cu
            else:
                if cv is None:
                    cv = list(v_roots_fast(lam_t, p))
                cands = cv
            new[j] = min(cands, key=lambda w: abs(w - z))
            if abs(new[j] - z) > 0.9 * (1.0 + abs(z)) and i > 0:
                raise ContinuationError(
                    f"lost a tracked root near lambda={lam_t}")
        if groups[0] == groups[1] and abs(new[0] - new[1]) < 1e-14:
            # same-factor pair collapsed onto one candidate: assign the two
            # tracked roots to distinct candidates with minimal total motion
            cands = cu if groups[0] == "u" else cv
            best = None
            for a in range(len(cands)):
                for b in range(len(cands)):
                    if a == b:
                        continue
                    cost = abs(cands[a] - pair[0]) + abs(cands[b] - pair[1])
                    if best is None or cost < best[0]:
                        best = (cost, a, b)
            new = [cands[best[1]], cands[best[2]]]
        pair = new

    if kind == U_BRANCH:
        return pair[0].real * pair[1].real < 0.0
    if kind == V_BRANCH:
        allv = sorted(v_roots_fast(lb, p), key=lambda z: z.real)
        idx = sorted(min(range(4), key=lambda i: abs(allv[i] - z)) for z in pair)
        return idx[0] <= 1 < idx[1]
    alls = sorted(
        list(roots_u(lb, p, "zero")) + list(v_roots_fast(lb, p)),
        key=lambda z: z.real,
    )
    idx = sorted(min(range(6), key=lambda i: abs(alls[i] - z)) for z in pair)
    return idx[0] <= 2 < idx[1]


def is_pinched(dr, p):
    """Pinching flag for a DoubleRoot record."""
    return is_pinched_raw(dr.lam, dr.nu, dr.kind, p)


# ---------------------------------------------------------------------------
# v-subsystem closed forms

@dataclass(frozen=True)
class ShAbs:
    eta_tr: float
    lambda_tr: float
    eta_dr: float
    lambda_dr: tuple
    branch: Callable


def _sh_branch_factory(s, mu):
    def branch(eta):
        eta = np.asarray(eta, dtype=float)
        q = -(8.0 * eta**3 + s) * (32.0 * eta**3 + 8.0 * eta + s)
        root = np.sqrt(np.maximum(q, 0.0))
        kt = np.sqrt(np.maximum(12.0 * eta**2 + 4.0 - root / eta, 0.0))
        re = (24.0 * eta**4 + 8.0 * eta**2 + 3.5 * s * eta + mu
              + (8.0 * s * eta + s**2) / (16.0 * eta**2))
        im = (-4.0 * eta**3 - s / 2.0 + 0.5 * root) * kt
        return re + 1j * im
    return branch


def sh_abs_closed(p):
    """Closed-form description of the v-subsystem absolute spectrum: real
    triple point, the two pinched double roots, and the connecting branch."""
    s, mu = p.s, p.mu
    if not s > 0:
        raise DomainError("requires s > 0")
    if not mu < 0:
        raise DomainError("requires mu < 0")

    eta_tr = float(np.real(
        next(r for r in np.roots([20.0, 0.0, 4.0, s]) if abs(r.imag) < 1e-10)))
    lam_tr = -eta_tr**4 - 2.0 * eta_tr**2 + s * eta_tr - 1.0 + mu

    # cross-check against the cubic-radical form of the triple point
    c1 = (-45.0 * s + math.sqrt(960.0 + 2025.0 * s**2)) ** (1.0 / 3.0)
    a = -4.0 * 225.0 ** (1.0 / 3.0) + 15.0 ** (1.0 / 3.0) * c1**2
    lam_tr_alt = (mu - 1.0 + s * a / (30.0 * c1) - a**2 / (450.0 * c1**2)
                  - a**4 / (810000.0 * c1**4))
    if abs(lam_tr - lam_tr_alt) > 1e-9 * (1.0 + abs(lam_tr)):
        raise NumericalError("triple-point closed forms disagree")

    kappa = (-9.0 * s + math.sqrt(192.0 + 81.0 * s**2)) ** (1.0 / 3.0)
    eta_dr = (-4.0 * 9.0 ** (1.0 / 3.0) + 3.0 ** (1.0 / 3.0) * kappa**2) / (12.0 * kappa)

    c2 = (512.0 + 4320.0 * s**2 - 729.0 * s**4
          + 3.0 * math.sqrt(3.0) * math.sqrt(s**2 * (64.0 + 27.0 * s**2) ** 3)) ** (1.0 / 3.0)
    rt3 = 1j * math.sqrt(3.0)
    cand_p = mu - 1.0 / 3.0 + (27.0 * s**2 - 8.0) * (rt3 - 1.0) / (6.0 * c2) \
        + (1.0 + rt3) * c2 / 48.0
    cand_m = mu - 1.0 / 3.0 - (27.0 * s**2 - 8.0) * (rt3 + 1.0) / (6.0 * c2) \
        + (1.0 - rt3) * c2 / 48.0
    # select the variant agreeing with the cubic critical points
    pair_cubic = [lam for lam, nu in _vbranch_roots_any_s(p) if abs(nu.imag) > 1e-9]
    ref = max(pair_cubic, key=lambda z: z.imag)
    lam_dr = min((cand_p, cand_m), key=lambda z: abs(z - ref))
    if abs(lam_dr - ref) > 1e-8 * (1.0 + abs(ref)):
        raise NumericalError("double-root closed form disagrees with cubic")
    lam_dr = lam_dr if lam_dr.imag > 0 else lam_dr.conjugate()

    return ShAbs(
        eta_tr=eta_tr,
        lambda_tr=lam_tr,
        eta_dr=float(eta_dr),
        lambda_dr=(lam_dr, lam_dr.conjugate()),
        branch=_sh_branch_factory(s, mu),
    )


# ---------------------------------------------------------------------------
# full-system triple point

def psi_triple(eta, p):
    """Difference of the real crossing points of the two weighted symbols;
    a zero locates the full-system triple point."""
    return (4.0 * eta**4 + (4.0 - p.d) * eta**2 - p.s * eta
            + p.mu - p.alpha - p.s**2 / (16.0 * eta**2))


def full_triple_point(p):
    """Real triple point of the full system: bisection of psi_triple on
    (-s/(2d), 0). Raises DomainError when no sign change exists."""
    eta_lo = p.eta_star
    f_lo = psi_triple(eta_lo * (1.0 - 1e-14), p)
    if not f_lo > 0.0:
        raise DomainError("no triple point: psi has no sign change")
    eta = brentq(psi_triple, eta_lo * (1.0 - 1e-14), -1e-12, args=(p,),
                 xtol=1e-12, rtol=8.9e-16)
    lam = p.d * eta**2 + p.s * eta + p.alpha
    k_v = math.sqrt(eta**2 + 1.0 - p.s / (4.0 * eta))
    ms = morse_split(lam, p)
    members = tuple(
        i for i, z in enumerate(ms.sorted_six) if abs(z.real - eta) < 1e-6)
    return TriplePoint(lam=complex(lam), eta=eta, members=members, k_v=k_v)


# ---------------------------------------------------------------------------
# absolute-spectrum continuation

def _newton_pair(lam, nu, k, p, tol=1e-12, maxit=12):
    """Newton on D(lam, nu) = 0, D(lam, nu + ik) = 0 at fixed real k."""
    for it in range(maxit):
        f1 = _full(lam, nu, p)
        f2 = _full(lam, nu + 1j * k, p)
        scale = (1.0 + abs(lam)) ** 2
        if abs(f1) + abs(f2) < tol * scale:
            return lam, nu, it
        a = _full_lam(lam, nu, p)
        b = _full_nu(lam, nu, p)
        c = _full_lam(lam, nu + 1j * k, p)
        d = _full_nu(lam, nu + 1j * k, p)
        det = a * d - b * c
        if abs(det) < 1e-14 * scale:
            return None
        lam = lam - (f1 * d - f2 * b) / det
        nu = nu - (a * f2 - c * f1) / det
        if not (np.isfinite(lam) and np.isfinite(nu)):
            return None
    return None


def _zeta_local(lam, nu, p):
    """Local expansion coefficient (nu-nu0)^2 = zeta (lam-lam0) of the
    factor that degenerates at the double root."""
    if abs(_du0(lam, nu, p)) < abs(_dv(lam, nu, p)):
        return 1.0 / p.d  # -2 (-1) / (2d)
    return -1.0 / (6.0 * nu**2 + 2.0)


def _march(p, lam0, nu0, k0, dk0, stop_left, lb, max_pts):
    """March the paired-root system in k, starting from (lam0, nu0, k0)."""
    br = Branch()
    lam, nu, k = lam0, nu0, k0
    dk = dk0
    halvings = 0
    while len(br.k) < max_pts:
        k_try = k + dk
        if k_try <= 1e-12:
            break
        got = _newton_pair(lam, nu, k_try, p)
        if got is None:
            halvings += 1
            dk *= 0.5
            if halvings > 5:
                br.truncated = True
                break
            continue
        halvings = 0
        lam, nu, it = got
        k = k_try
        if it <= 3:
            dk = min(dk * 1.5, 0.05 * (1.0 + abs(nu)))
        elif it >= 6:
            dk *= 0.5
        if abs(lam) > lb or lam.real < stop_left:
            break
        ms = morse_split(lam, p)
        if ms.in_abs and abs(nu.real - ms.sorted_six[3].real) < 1e-6:
            br.k.append(k)
            br.lam.append(lam)
            br.nu.append(nu)
            # a third root joining the shared real part ends the branch
            near = sum(1 for z in ms.sorted_six if abs(z.real - nu.real) < 1e-7)
            if near >= 3 and len(br.k) > 3:
                break
    return br


def trace_abs_spectrum(p, s=None, coarse=False):
    """Trace the absolute spectrum of the full system at frame speed s.

    Branches are seeded at every pinched double root and at the real triple
    point when it exists; samples are kept only where the paired roots sit
    at the Morse split. max_re excludes the ever-marginal pulled-front
    branch point at alpha - s^2/(4d) (reported as lambda_u_bp).
    """
    ps = p if s is None else p.at_speed(s)
    lb = lambda_big(ps)
    stop_left = ps.mu - abs(ps.mu) - 1.0
    max_pts = 160 if coarse else 800
    dk_fac = 2e-2 if coarse else 1e-3

    singular = []
    curves = []

    drs = double_roots_generic(ps)
    lam_u_bp = complex(ps.alpha - ps.s**2 / (4.0 * ps.d))
    tp = None
    try:
        tp = full_triple_point(ps)
        singular.append(tp)
    except DomainError:
        pass

    for dr in drs:
        if not dr.pinched:
            continue
        if morse_split(dr.lam, ps).in_abs:
            singular.append(dr)
        zloc = _zeta_local(dr.lam, dr.nu, ps)
        k0 = 1e-4 * (1.0 + abs(dr.nu))
        lam_pred = dr.lam - (k0**2 / 4.0) / zloc
        nu_pred = dr.nu - 1j * k0 / 2.0
        got = _newton_pair(lam_pred, nu_pred, k0, ps)
        if got is None:
            continue
        lam1, nu1, _ = got
        curves.append(_march(ps, lam1, nu1, k0,
                             dk_fac * (1.0 + abs(nu1)), stop_left, lb, max_pts))

    if tp is not None:
        eta, kv = tp.eta, tp.k_v
        seeds = [
            (tp.lam, complex(eta), kv),            # u-root paired with v-root
            (tp.lam, complex(eta), -kv),
            (tp.lam, complex(eta, -kv), 2.0 * kv),  # v-root pair
        ]
        for lam0, nu0, k0 in seeds:
            got = _newton_pair(lam0, nu0, abs(k0), ps)
            if got is None:
                continue
            lam1, nu1, _ = got
            for dk in (dk_fac * (1 + abs(nu1)), -dk_fac * (1 + abs(nu1))):
                curves.append(_march(ps, lam1, nu1, abs(k0), dk,
                                     stop_left, lb, max_pts))

    # real coefficients: the absolute spectrum is conjugation symmetric, so
    # every traced branch must appear together with its mirror image.  The
    # conjugate of the paired roots (nu, nu + ik) is (conj(nu) - ik, conj(nu)),
    # i.e. the mirrored branch carries nu -> conj(nu) - ik at the same k.
    existing = [z for br in curves for z in br.lam]
    mirrored = []
    for br in curves:
        if not br.lam:
            continue
        probes = [br.lam[0], br.lam[len(br.lam) // 2], br.lam[-1]]
        missing = any(
            abs(z.imag) > 1e-9
            and min((abs(w - z.conjugate()) for w in existing), default=math.inf) > 1e-6
            for z in probes)
        if missing:
            twin = Branch(truncated=br.truncated)
            twin.k = list(br.k)
            twin.lam = [z.conjugate() for z in br.lam]
            twin.nu = [n.conjugate() - 1j * kk for n, kk in zip(br.nu, br.k)]
            mirrored.append(twin)
    curves.extend(mirrored)

    # exclude the neutral pulled-front branch point itself
    filtered = []
    for sp in singular:
        if isinstance(sp, DoubleRoot) and sp.kind == U_BRANCH:
            continue
        filtered.append(sp.lam.real)
    for br in curves:
        filtered.extend(z.real for z in br.lam)
    max_re = max(filtered) if filtered else -math.inf

    return AbsSpectrum(curves=curves, singular_points=singular,
                       max_re=max_re, lambda_u_bp=lam_u_bp)


def s_abs(p, s_lo=None, s_hi=None, tol=1e-3):
    """Absolute spreading speed: marginal frame speed at which the traced
    absolute spectrum stabilizes, located by bisection."""
    s_lo = p.s_star if s_lo is None else s_lo
    if trace_abs_spectrum(p, s=s_lo, coarse=True).max_re <= 0.0:
        raise DomainError("absolute spectrum already stable at s_lo")
    if s_hi is None:
        s_hi = 2.0 * s_lo
        while trace_abs_spectrum(p, s=s_hi, coarse=True).max_re > 0.0:
            s_hi *= 2.0
            if s_hi > 10.0 * p.s_star:
                raise NumericalError("no stabilizing speed below 10 s_star")
    while s_hi - s_lo > tol:
        mid = 0.5 * (s_lo + s_hi)
        if trace_abs_spectrum(p, s=mid, coarse=True).max_re > 0.0:
            s_lo = mid
        else:
            s_hi = mid
    return 0.5 * (s_lo + s_hi)


def zeta(p):
    """Expansion coefficient of the v-roots at the upper v-branch point."""
    vb = [t for t in _vbranch_roots_any_s(p) if t[0].imag > 1e-12]
    if not vb:
        raise NumericalError("no complex v-branch point found")
    lam_bp, nu_bp = max(vb, key=lambda t: t[0].imag)
    z1 = -1.0 / (6.0 * nu_bp**2 + 2.0)
    z2 = -2.0 * (-1.0) / (-12.0 * nu_bp**2 - 4.0)
    if abs(z1 - z2) > 1e-10 * (1.0 + abs(z1)):
        raise NumericalError("zeta formulas disagree")
    return z1

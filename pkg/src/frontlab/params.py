"""Model parameters and derived constants.

The model couples a cubic KPP equation for u with a damped Swift-Hohenberg
type equation for v, linearized about the invaded state (u,v)=(0,0) in a
frame moving with speed s:

    u_t = d u_xx + s u_x + alpha*u*(1-u^2) + beta*v
    v_t = -(1 + d_xx)^2 v + s v_x + mu*v
"""

import math
from dataclasses import dataclass, field

from .errors import DomainError


@dataclass(frozen=True)
class Params:
    """Model parameter tuple (d, alpha, mu, beta, s).

    d     : diffusivity of the u-component, > 0
    alpha : linear growth rate of u at the invaded state (= f'(0)), > 0
    mu    : linear coefficient of the v-component (typically < 0)
    beta  : coupling strength of v into the u-equation
    s     : frame speed, >= 0; defaults to the linear spreading speed s_star
    """

    d: float
    alpha: float
    mu: float
    beta: float = 0.0
    s: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not (self.d > 0.0 and math.isfinite(self.d)):
            raise DomainError(f"d must be positive and finite, got {self.d}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha}")
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu}")
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta}")
        if self.s is None:
            object.__setattr__(self, "s", self.s_star)
        if not (self.s >= 0.0 and math.isfinite(self.s)):
            raise DomainError(f"s must be nonnegative and finite, got {self.s}")

    @property
    def s_star(self):
        """Linear (pulled-front) spreading speed 2*sqrt(d*alpha)."""
        return 2.0 * math.sqrt(self.d * self.alpha)

    @property
    def eta_star(self):
        """Optimal exponential weight -s/(2d)."""
        return -self.s / (2.0 * self.d)

    def at_speed(self, s):
        """Copy of the parameters with a different frame speed."""
        return Params(self.d, self.alpha, self.mu, self.beta, s)

    @property
    def at_sstar(self):
        """True when the frame moves at the critical speed s_star."""
        return abs(self.s - self.s_star) <= 1e-12 * max(1.0, self.s_star)


def lambda_big(p):
    """Spectral parameter far enough right that the quartic term dominates
    the v-dispersion relation; used as the anchor for root labelling."""
    return 10.0 * (1.0 + abs(p.mu) + p.alpha + p.s**2 + 1.0) ** 2

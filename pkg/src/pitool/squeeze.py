"""Power-law squeezing families and the (mu, tau) region map.

Layer heights scale as ``a_j * eps**-mu``, widths as ``eps`` and the gaps
between layers as ``c * eps**tau``.  The comb variant puts bare deltas of
strength ``a_j * (c/eps)**sigma`` at ``0, eps, 2 eps``.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from enum import Enum

import numpy as np

from pitool.transfer import DeltaComb, PotentialProfile

LINE_TOL = 1e-12

# Proxy power used when a comb is mapped onto the (mu, tau) plane.
SEBA_PROXY_MU = 1.25


class Region(str, Enum):
    Q0 = "Q0"
    L1 = "L1"
    LK = "LK"
    LS = "LS"
    Q1 = "Q1"
    Q2 = "Q2"
    L2Generic = "L2Generic"
    P1 = "P1"
    P2 = "P2"
    L0 = "L0"
    Inadmissible = "Inadmissible"

    @property
    def admissible(self) -> bool:
        return self is not Region.Inadmissible


def _check_intensities(a):
    a = tuple(float(x) for x in a)
    if len(a) not in (2, 3):
        raise ValueError(f"need 2 or 3 intensities, got {len(a)}")
    if not all(np.isfinite(a)):
        raise ValueError("intensities must be finite")
    return a


@dataclass(frozen=True)
class SqueezeParams:
    a: tuple[float, ...]
    c: float
    mu: float
    tau: float

    def __post_init__(self):
        object.__setattr__(self, "a", _check_intensities(self.a))
        if not self.c > 0:
            raise ValueError(f"separation coefficient c must be positive, got {self.c}")
        for name in ("mu", "tau"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v}")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def region(self) -> Region:
        return classify(self.mu, self.tau)


@dataclass(frozen=True)
class SebaParams:
    a: tuple[float, ...]
    c: float
    sigma: float

    def __post_init__(self):
        object.__setattr__(self, "a", _check_intensities(self.a))
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if not 0 < self.sigma <= 1:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")

    @property
    def n(self) -> int:
        return len(self.a)


def classify(mu: float, tau: float) -> Region:
    """Region of the (mu, tau) quadrant; line membership uses ``LINE_TOL``."""
    if not (mu > 0 and tau > 0):
        raise ValueError(f"mu and tau must be positive, got ({mu}, {tau})")

    def on(x, y):
        return abs(x - y) <= LINE_TOL

    if on(mu, 1.0):
        return Region.L1
    if mu < 1:
        return Region.Q0
    if on(mu, 2.0):
        if on(tau, 1.0):
            return Region.P1
        if on(tau, 2.0):
            return Region.P2
        if tau < 1:
            return Region.Inadmissible
        return Region.L0 if tau > 2 else Region.L2Generic
    if mu > 2:
        return Region.Inadmissible
    lo, hi = mu - 1.0, 2.0 * (mu - 1.0)
    if on(tau, lo):
        return Region.LK
    if on(tau, hi):
        return Region.LS
    if tau < lo:
        return Region.Inadmissible
    return Region.Q1 if tau < hi else Region.Q2


def realize(p: SqueezeParams, eps: float) -> PotentialProfile:
    """Layer/gap profile of ``p`` at squeezing parameter ``eps``."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    height = eps ** -p.mu
    gap = p.c * eps**p.tau
    segments = []
    for j, aj in enumerate(p.a):
        if j:
            segments.append((gap, 0.0))
        segments.append((eps, aj * height))
    return PotentialProfile(tuple(segments))


def realize_seba(p: SebaParams, eps: float) -> DeltaComb:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    scale = (p.c / eps) ** p.sigma
    return DeltaComb(tuple(aj * scale for aj in p.a), tuple(j * eps for j in range(p.n)))


def seba_equivalent(p: SebaParams, mu: float = SEBA_PROXY_MU) -> SqueezeParams:
    """Layer family with the same limit as the comb ``p``.

    Matching ``a_j (c/e)**sigma`` against ``a_j' eps**(1-mu)`` and the spacing
    ``e`` against ``eps**tau`` gives ``tau = (mu - 1)/sigma``,
    ``a_j' = a_j c**sigma`` and unit separation coefficient.  ``mu`` must lie
    in (1, 2) so that finite-width corrections of the layers play no role.
    """
    if not 1 < mu < 2:
        raise ValueError("proxy mu must lie in (1, 2)")
    scale = p.c**p.sigma
    return SqueezeParams(tuple(aj * scale for aj in p.a), 1.0, mu, (mu - 1.0) / p.sigma)


def eps_schedule(start: float, decades: int, per_decade: int) -> list[float]:
    """Geometric schedule ``start * 10**(-i/per_decade)``, ``i = 0..decades*per_decade``."""
    if not start > 0:
        raise ValueError("start must be positive")
    if int(decades) != decades or decades < 1 or int(per_decade) != per_decade or per_decade < 1:
        raise ValueError("decades and per_decade must be positive integers")
    n = int(decades) * int(per_decade)
    # exponent form keeps decade points exact (1e-6, not 1.0000000000000002e-06)
    lg = math.log10(start)
    if lg == round(lg):
        return [10.0 ** (lg - i / per_decade) for i in range(n + 1)]
    return [start * 10.0 ** (-i / per_decade) for i in range(n + 1)]

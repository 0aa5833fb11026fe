"""Predicted eps -> 0 limit interactions for a squeezing family.

The limit is either a connected point interaction with a unimodular
boundary-condition matrix, or ``Separated`` (Dirichlet walls on both sides
of the point).  Which one, and its matrix elements, depends on the region
of ``(mu, tau)`` and on whether the intensities lie on the resonance set
relevant to that region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from pitool.resonance import ResidualFamily, residual
from pitool.specfun import cs, ksin, sn
from pitool.squeeze import Region, SebaParams, SqueezeParams, classify, seba_equivalent
from pitool.transfer import TransferMatrix

RESONANCE_TOL = 1e-9


@dataclass(frozen=True)
class Transparent:
    sign: int = 1


@dataclass(frozen=True)
class Delta:
    alpha: float


@dataclass(frozen=True)
class DeltaPrimeDiagonal:
    theta: float

    def __post_init__(self):
        if self.theta == 0:
            raise ValueError("theta must be non-zero")


@dataclass(frozen=True)
class DeltaPlusDeltaPrime:
    theta: float
    alpha: float

    def __post_init__(self):
        if self.theta == 0:
            raise ValueError("theta must be non-zero")


@dataclass(frozen=True)
class Separated:
    """Opaque limit: ``psi(-0) = psi(+0) = 0``; no transfer matrix exists."""


LimitInteraction = Union[Transparent, Delta, DeltaPrimeDiagonal, DeltaPlusDeltaPrime, Separated]


def limit_matrix(lim: LimitInteraction) -> TransferMatrix:
    if isinstance(lim, Transparent):
        s = float(lim.sign)
        return TransferMatrix(s, 0.0, 0.0, s)
    if isinstance(lim, Delta):
        return TransferMatrix(1.0, 0.0, lim.alpha, 1.0)
    if isinstance(lim, DeltaPrimeDiagonal):
        return TransferMatrix(lim.theta, 0.0, 0.0, 1.0 / lim.theta)
    if isinstance(lim, DeltaPlusDeltaPrime):
        return TransferMatrix(lim.theta, 0.0, lim.alpha, 1.0 / lim.theta)
    if isinstance(lim, Separated):
        raise ValueError("a separated limit has no transfer matrix; treat each side with psi = 0")
    raise TypeError(f"not a limit interaction: {lim!r}")


# ---------------------------------------------------------------- gamma <-> theta


@dataclass(frozen=True)
class EtaConvention:
    """Weight of ``psi(+0)`` in the averaged value at the singular point."""

    eta: float = 0.5


def theta_from_gamma(gamma: float, conv: EtaConvention = EtaConvention()) -> float:
    eta = conv.eta
    den = 1.0 - eta * gamma
    if den == 0:
        raise ValueError(f"1 - eta*gamma vanishes (gamma = {gamma}, eta = {eta})")
    return (1.0 + (1.0 - eta) * gamma) / den


def gamma_from_theta(theta: float, conv: EtaConvention = EtaConvention()) -> float:
    eta = conv.eta
    den = theta * eta + (1.0 - eta)
    if den == 0:
        raise ValueError(f"theta*eta + 1 - eta vanishes (theta = {theta}, eta = {eta})")
    return (theta - 1.0) / den


# ---------------------------------------------------------------- element formulas


def k_theta(a, c: float) -> tuple[float, float]:
    """Diagonal limits ``(theta, rho)`` on the line ``tau = mu - 1``."""
    if len(a) == 2:
        a1, a2 = a
        return 1 + c * a1, 1 + c * a2
    a1, a2, a3 = a
    return (1 + c * (2 * a1 + a2) + c * c * a1 * a2, 1 + c * (a2 + 2 * a3) + c * c * a2 * a3)


def l_alpha(a, c: float) -> float:
    """Delta strength on ``tau = 2(mu - 1)`` for intensities summing to zero."""
    if len(a) == 2:
        return -c * a[0] ** 2
    a1, a2, _ = a
    return -c * (a1 * a1 + (a1 + a2) ** 2)


def l_alpha_forms(a, c: float) -> tuple[float, ...]:
    """All algebraically equal forms of :func:`l_alpha` (equal only when sum(a) = 0)."""
    if len(a) == 2:
        return -c * a[0] ** 2, -c * a[1] ** 2
    a1, a2, a3 = a
    return (-c * (a1 * a1 + (a1 + a2) ** 2), -c * (a1 * a1 + a3 * a3), -c * ((a2 + a3) ** 2 + a3 * a3))


def f2(a1, a2, c):
    return (cs(-a1) - c * ksin(-a1)) / cs(-a2)


def g2(a1, a2):
    return -ksin(-a1) / ksin(-a2)


def _f3_num(a1, a2, c):
    s1, s2 = ksin(-a1), ksin(-a2)
    c1, c2 = cs(-a1), cs(-a2)
    return c1 * c2 - 2 * c * s1 * c2 - c * c1 * s2 + (c * c * s2 - sn(-a2)) * s1


def _g3_num(a1, a2, c):
    s1, s2 = ksin(-a1), ksin(-a2)
    return -(s1 * cs(-a2) + cs(-a1) * s2 - c * s1 * s2)


def f3(a1, a2, a3, c):
    return _f3_num(a1, a2, c) / cs(-a3)


def g3(a1, a2, a3, c):
    return _g3_num(a1, a2, c) / ksin(-a3)


def theta_P1(a, c: float) -> float:
    """Diagonal element at ``mu = 2`` for intensities on the F-resonance set.

    ``f`` and ``g`` agree on resonance; whichever has the larger denominator
    is returned, so isolated zeros of one denominator are harmless.  ``c = 0``
    gives the J-set value.
    """
    a = [float(x) for x in a]
    if len(a) == 2:
        a1, a2 = a
        nf, df = float(cs(-a1) - c * ksin(-a1)), float(cs(-a2))
        ng, dg = float(-ksin(-a1)), float(ksin(-a2))
    else:
        a1, a2, a3 = a
        nf, df = float(_f3_num(a1, a2, c)), float(cs(-a3))
        ng, dg = float(_g3_num(a1, a2, c)), float(ksin(-a3))
    if max(abs(df), abs(dg)) < 1e-14:
        raise ValueError("theta is indeterminate here; check for the +-I subset instead")
    return nf / df if abs(df) >= abs(dg) else ng / dg


def alpha_P2(a, c: float) -> float:
    """Lower-left element of the limit matrix at ``mu = tau = 2``."""
    a = [float(x) for x in a]
    s = [float(ksin(-x)) for x in a]
    if len(a) == 2:
        return c * s[0] * s[1]
    k = [float(cs(-x)) for x in a]
    return c * (s[0] * s[1] * k[2] + 2 * s[0] * k[1] * s[2] + k[0] * s[1] * s[2])


# ---------------------------------------------------------------- dispatch


@dataclass(frozen=True)
class Prediction:
    interaction: LimitInteraction
    region: Region
    family: str | None
    residual: float | None


def _family_for(region: Region, n: int, c: float) -> ResidualFamily | None:
    kind = {
        Region.LK: "K",
        Region.LS: "L",
        Region.Q2: "L",
        Region.P1: "F",
        Region.P2: "J",
        Region.L0: "J",
    }.get(region)
    return None if kind is None else ResidualFamily(f"{kind}{n}", c)


def on_resonance(fam: ResidualFamily, a, tol: float = RESONANCE_TOL) -> tuple[bool, float]:
    r = float(residual(fam, a))
    return abs(r) / (1.0 + float(np.sum(np.abs(a)))) < tol, r


def _diagonal(theta: float, tol: float) -> LimitInteraction:
    if abs(theta - 1.0) < tol:
        return Transparent(+1)
    if abs(theta + 1.0) < tol:
        return Transparent(-1)
    return DeltaPrimeDiagonal(theta)


def _reflectionless_sign(a, tol: float) -> int | None:
    sign = 1
    for x in a:
        if x > tol * (1 + abs(x)):
            return None
        n = round(np.sqrt(max(-x, 0.0)) / np.pi)
        if abs(x + (n * np.pi) ** 2) > tol * (1 + abs(x)):
            return None
        sign *= -1 if n % 2 else 1
    return sign


def diagnose(p: SqueezeParams | SebaParams, tol: float = RESONANCE_TOL) -> Prediction:
    """Limit interaction plus the region, resonance family and residual used."""
    if isinstance(p, SebaParams):
        p = seba_equivalent(p)
    region = classify(p.mu, p.tau)
    a, c = p.a, p.c
    if region is Region.Inadmissible:
        raise ValueError(f"(mu, tau) = ({p.mu}, {p.tau}) is outside the admissible region")
    if region is Region.Q0:
        return Prediction(Transparent(+1), region, None, None)
    if region is Region.Q1:
        return Prediction(Separated(), region, None, None)
    if region is Region.L1:
        return Prediction(Delta(float(sum(a))), region, None, None)
    if region is Region.L2Generic:
        sign = _reflectionless_sign(a, tol)
        lim = Separated() if sign is None else Transparent(sign)
        return Prediction(lim, region, None, None)

    fam = _family_for(region, len(a), c)
    hit, r = on_resonance(fam, a, tol)
    if not hit:
        return Prediction(Separated(), region, fam.name, r)
    if region is Region.LK:
        lim = _diagonal(k_theta(a, c)[0], tol)
    elif region is Region.LS:
        lim = Delta(l_alpha(a, c))
    elif region is Region.Q2:
        lim = Transparent(+1)
    elif region is Region.P1:
        lim = _diagonal(theta_P1(a, c), tol)
    elif region is Region.L0:
        lim = _diagonal(theta_P1(a, 0.0), tol)
    else:
        theta, alpha = theta_P1(a, 0.0), alpha_P2(a, c)
        lim = _diagonal(theta, tol) if abs(alpha) < tol else DeltaPlusDeltaPrime(theta, alpha)
    return Prediction(lim, region, fam.name, r)


def predict(p: SqueezeParams | SebaParams, tol: float = RESONANCE_TOL) -> LimitInteraction:
    """Limit interaction of the squeezing family ``p`` as ``eps -> 0``.

    ``SebaParams`` are mapped onto the equivalent layer family first.
    """
    return diagnose(p, tol).interaction

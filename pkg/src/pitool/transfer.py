"""Exact 2x2 transfer matrices for delta combs and layered profiles.

A transfer matrix maps ``(psi, psi')`` at the left end of an interval to
the right end.  Products are written ``later @ earlier``: the factor for
the leftmost piece of the potential sits on the right of the product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from pitool.specfun import cs, sn

DET_TOL = 1e-8


@dataclass(frozen=True)
class TransferMatrix:
    """Real unimodular 2x2 matrix ``[[m11, m12], [m21, m22]]``.

    ``m12`` has units of length and ``m21`` of inverse length.  Compose with
    ``later @ earlier`` (or :func:`compose`).
    """

    m11: float
    m12: float
    m21: float
    m22: float

    @classmethod
    def identity(cls) -> TransferMatrix:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, arr) -> TransferMatrix:
        arr = np.asarray(arr, dtype=float)
        return cls(float(arr[0, 0]), float(arr[0, 1]), float(arr[1, 0]), float(arr[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def det_error(self) -> float:
        """``|det - 1|`` relative to the size of the two products forming det.

        Evaluated on the matrix scaled by its largest entry so that products
        of large entries do not overflow.
        """
        s = max(abs(self.m11), abs(self.m12), abs(self.m21), abs(self.m22), 1.0)
        a, b, c, d = self.m11 / s, self.m12 / s, self.m21 / s, self.m22 / s
        scale = max(1.0 / (s * s), abs(a * d) + abs(b * c))
        return abs(a * d - b * c - 1.0 / (s * s)) / scale

    def inverse(self) -> TransferMatrix:
        d = self.det
        return TransferMatrix(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        return TransferMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def __iter__(self):
        return iter((self.m11, self.m12, self.m21, self.m22))


@dataclass(frozen=True)
class PotentialProfile:
    """Piecewise-constant potential as ``(width, height)`` segments, left to right.

    Zero-height segments are gaps.  The profile starts at ``x = 0``.
    """

    segments: tuple[tuple[float, float], ...]

    def __post_init__(self):
        segs = tuple((float(w), float(v)) for w, v in self.segments)
        for w, _ in segs:
            if not w > 0:
                raise ValueError(f"segment width must be positive, got {w}")
        object.__setattr__(self, "segments", segs)

    @property
    def width(self) -> float:
        return sum(w for w, _ in self.segments)

    def reversed(self) -> PotentialProfile:
        return PotentialProfile(self.segments[::-1])


@dataclass(frozen=True)
class DeltaComb:
    """Sum of ``strengths[j] * delta(x - positions[j])``."""

    strengths: tuple[float, ...]
    positions: tuple[float, ...]

    def __post_init__(self):
        s = tuple(float(x) for x in self.strengths)
        p = tuple(float(x) for x in self.positions)
        if len(s) != len(p):
            raise ValueError("strengths and positions differ in length")
        if any(b <= a for a, b in zip(p, p[1:])):
            raise ValueError("positions must be strictly increasing")
        object.__setattr__(self, "strengths", s)
        object.__setattr__(self, "positions", p)


def _check_k(k):
    if not k > 0:
        raise ValueError(f"wavenumber must be positive, got {k}")


def layer_matrix(q: float, l: float) -> TransferMatrix:
    """Propagation across width ``l`` where ``q = k**2 - v`` is constant."""
    if l < 0:
        raise ValueError(f"layer width must be non-negative, got {l}")
    q, l = float(q), float(l)
    t = q * l * l
    c, s = cs(t), sn(t)
    return TransferMatrix(c, l * s, -q * l * s, c)


def free_matrix(k: float, r: float) -> TransferMatrix:
    """Free propagation over distance ``r`` at wavenumber ``k``."""
    _check_k(k)
    if r < 0:
        raise ValueError(f"distance must be non-negative, got {r}")
    return layer_matrix(k * k, r)


def delta_matrix(strength: float) -> TransferMatrix:
    """Derivative jump ``psi'(+0) - psi'(-0) = strength * psi(0)``."""
    return TransferMatrix(1.0, 0.0, float(strength), 1.0)


def compose(later: TransferMatrix, earlier: TransferMatrix) -> TransferMatrix:
    return later @ earlier


def profile_matrix(profile: PotentialProfile, k: float) -> TransferMatrix:
    _check_k(k)
    k2 = k * k
    return reduce(
        lambda acc, seg: layer_matrix(k2 - seg[1], seg[0]) @ acc,
        profile.segments,
        TransferMatrix.identity(),
    )


def comb_matrix(comb: DeltaComb, k: float) -> TransferMatrix:
    _check_k(k)
    m = TransferMatrix.identity()
    prev = None
    for strength, x in zip(comb.strengths, comb.positions):
        if prev is not None:
            m = free_matrix(k, x - prev) @ m
        m = delta_matrix(strength) @ m
        prev = x
    return m


def transmission_probability(m: TransferMatrix, k: float) -> tuple[float, float]:
    """Transmission and reflection ``(T, R)`` for zero potential on both sides.

    Raises ``ValueError`` if ``m`` is not unimodular, which in practice means
    a corrupted product upstream.
    """
    _check_k(k)
    if not m.det_error() <= DET_TOL:
        raise ValueError(f"matrix is not unimodular (det = {m.det!r})")
    k2 = k * k
    denom = k2 * (m.m11 + m.m22) ** 2 + (k2 * m.m12 - m.m21) ** 2
    t = 4.0 * k2 / denom
    return t, 1.0 - t

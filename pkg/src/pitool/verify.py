"""Epsilon sweeps comparing exact transfer matrices with predicted limits."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from pitool.limits import LimitInteraction, Separated, diagnose, limit_matrix
from pitool.squeeze import Region, SebaParams, SqueezeParams, realize, realize_seba
from pitool.transfer import TransferMatrix, comb_matrix, profile_matrix

log = logging.getLogger(__name__)

DIVERGENCE_FLOOR = 1e3
CONVERGED_FLOOR = 1e-9
MIN_DECAY_SLOPE = 0.05
ELEMENTS = ("d11", "d12", "d21", "d22")

# First uncancelled correction on K/L sets goes like eps**(3 - 2 mu).
VALIDATED_MU_MAX = 1.5


def max_workers() -> int:
    raw = os.environ.get("PITOOL_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            n = 0
        if n > 0:
            return n
        log.warning("ignoring PITOOL_THREADS=%r (expected a positive integer)", raw)
    return min(8, os.cpu_count() or 1)


@dataclass(frozen=True)
class SweepConfig:
    params: SqueezeParams | SebaParams
    k: float
    schedule: tuple[float, ...]
    mode: str = "profile"

    def __post_init__(self):
        sched = tuple(float(e) for e in self.schedule)
        if len(sched) < 3:
            raise ValueError("schedule needs at least 3 points")
        if any(b >= a for a, b in zip(sched, sched[1:])) or sched[-1] <= 0:
            raise ValueError("schedule must be positive and strictly decreasing")
        object.__setattr__(self, "schedule", sched)
        if not self.k > 0:
            raise ValueError("k must be positive")
        if self.mode == "seba-comb" and not isinstance(self.params, SebaParams):
            raise ValueError("seba-comb mode needs SebaParams")
        if self.mode == "profile" and not isinstance(self.params, SqueezeParams):
            raise ValueError("profile mode needs SqueezeParams")
        if self.mode not in ("profile", "seba-comb"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class ConvergenceReport:
    schedule: np.ndarray
    matrices: np.ndarray  # (n, 4): m11, m12, m21, m22
    predicted: LimitInteraction
    region: Region
    deviations: np.ndarray | None  # (n, 4) absolute elementwise
    slopes: dict[str, float]
    verdict: str
    warnings: list[str] = field(default_factory=list)

    @property
    def diverged(self) -> bool:
        return self.verdict.startswith("Diverged")

    @property
    def final_matrix(self) -> TransferMatrix:
        return TransferMatrix(*self.matrices[-1])

    def max_deviation(self) -> np.ndarray:
        if self.deviations is None:
            raise ValueError("no prediction to compare against (separated limit)")
        return self.deviations.max(axis=1)


def estimate_rate(deviations, schedule) -> float:
    """Least-squares slope of ``log(deviation)`` against ``log(eps)``."""
    d = np.asarray(deviations, dtype=float)
    e = np.asarray(schedule, dtype=float)
    if d.shape != e.shape or d.size < 3:
        raise ValueError("need at least 3 matching deviations and eps values")
    if np.any(~(d > 0)) or np.any(~(e > 0)):
        raise ValueError("deviations and eps must be positive")
    return float(np.polyfit(np.log(e), np.log(d), 1)[0])


def _tail(n: int) -> slice:
    # last half of the schedule, but never fewer than the three points a fit needs
    return slice(n - max(3, math.ceil(n / 2)), n)


def _matrix_at(cfg: SweepConfig, eps: float) -> tuple[float, ...]:
    if cfg.mode == "seba-comb":
        m = comb_matrix(realize_seba(cfg.params, eps), cfg.k)
    else:
        m = profile_matrix(realize(cfg.params, eps), cfg.k)
    return tuple(m)


def _strictly_increasing(x) -> bool:
    return bool(np.all(np.diff(x) > 0))


def sweep(cfg: SweepConfig) -> ConvergenceReport:
    """Exact matrices along the schedule and a convergence verdict.

    Verdicts: ``Converged`` when the largest elementwise deviation from the
    predicted limit either sits at round-off or decays (strictly over the
    last three points, positive fitted slope); ``Diverged(m21)`` when
    ``|m21|`` grows strictly over the last three points past ``1e3`` while
    ``m11`` and ``m22`` stay finite; ``Inconclusive`` otherwise.
    """
    diag = diagnose(cfg.params)
    eps = np.array(cfg.schedule)
    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        mats = np.array(list(pool.map(lambda e: _matrix_at(cfg, e), cfg.schedule)))

    warnings = []
    p = cfg.params
    mu = p.mu if isinstance(p, SqueezeParams) else None
    if mu is not None and diag.region in (Region.LK, Region.LS, Region.Q2) and mu >= VALIDATED_MU_MAX:
        warnings.append(f"outside validated window: mu = {mu} >= {VALIDATED_MU_MAX}")

    tail = _tail(len(eps))
    slopes = {}
    m21 = np.abs(mats[:, 2])
    if np.all(m21[tail] > 0):
        slopes["m21"] = estimate_rate(m21[tail], eps[tail])

    dev = None
    verdict = "Inconclusive"
    if not isinstance(diag.interaction, Separated):
        target = np.array(tuple(limit_matrix(diag.interaction)))
        dev = np.abs(mats - target)
        for j, name in enumerate(ELEMENTS):
            d = dev[tail, j]
            if np.all(d > 0):
                slopes[name] = estimate_rate(d, eps[tail])
        worst = dev.max(axis=1)
        slopes["max"] = estimate_rate(worst[tail], eps[tail]) if np.all(worst[tail] > 0) else math.inf
        decaying = _strictly_increasing(-worst[-3:]) and slopes["max"] > MIN_DECAY_SLOPE
        if worst[-1] < CONVERGED_FLOOR or decaying:
            verdict = "Converged"

    if verdict != "Converged":
        finite_diag = np.all(np.isfinite(mats[-3:, [0, 3]]))
        if finite_diag and _strictly_increasing(m21[-3:]) and m21[-1] > DIVERGENCE_FLOOR:
            verdict = "Diverged(m21)"

    return ConvergenceReport(eps, mats, diag.interaction, diag.region, dev, slopes, verdict, warnings)

"""Entire trigonometric kernels of a squared argument.

``cs(t) = cos(sqrt(t))`` and ``sn(t) = sin(sqrt(t))/sqrt(t)`` are entire in
``t``; for ``t < 0`` they continue to ``cosh``/``sinh`` of ``sqrt(-t)``.
Working with ``t = k**2 * l**2`` instead of ``k`` keeps every layer matrix
real for wells and barriers alike, with no branch choice for the root.
"""

import math

import numpy as np

SERIES_CUTOFF = 1e-4
_NTERMS = 8

# Maclaurin coefficients: cs -> (-1)^m/(2m)!, sn -> (-1)^m/(2m+1)!
_CS_COEF = np.array([(-1) ** m / math.factorial(2 * m) for m in range(_NTERMS)])
_SN_COEF = np.array([(-1) ** m / math.factorial(2 * m + 1) for m in range(_NTERMS)])
_CS_LIST = [float(x) for x in _CS_COEF]
_SN_LIST = [float(x) for x in _SN_COEF]


def _horner(coef, t):
    out = np.zeros_like(t)
    for cm in coef[::-1]:
        out = out * t + cm
    return out


def _closed_cs(t):
    r = np.sqrt(np.abs(t))
    with np.errstate(over="ignore"):
        return np.where(t >= 0, np.cos(r), np.cosh(r))


def _closed_sn(t):
    r = np.sqrt(np.abs(t))
    r = np.where(r == 0, 1.0, r)
    with np.errstate(over="ignore"):
        return np.where(t >= 0, np.sin(r), np.sinh(r)) / r


def _cosh(r):
    try:
        return math.cosh(r)
    except OverflowError:
        return math.inf


def _sinh(r):
    try:
        return math.sinh(r)
    except OverflowError:
        return math.inf


def _scalar_cs(t):
    if abs(t) < SERIES_CUTOFF:
        return sum(cm * t**m for m, cm in enumerate(_CS_LIST))
    r = math.sqrt(abs(t))
    return math.cos(r) if t > 0 else _cosh(r)


def _scalar_sn(t):
    if abs(t) < SERIES_CUTOFF:
        return sum(cm * t**m for m, cm in enumerate(_SN_LIST))
    r = math.sqrt(abs(t))
    return math.sin(r) / r if t > 0 else _sinh(r) / r


def _dispatch(t, closed, coef):
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < SERIES_CUTOFF
    out = np.where(small, _horner(coef, np.where(small, t, 0.0)), closed(np.where(small, 1.0, t)))
    return out[()] if out.ndim == 0 else out


def cs(t):
    """``cos(sqrt(t))`` for any real ``t`` (``cosh(sqrt(-t))`` when negative).

    Accepts scalars or arrays; returns the same shape.
    """
    if isinstance(t, (float, int)):
        return _scalar_cs(float(t))
    return _dispatch(t, _closed_cs, _CS_COEF)


def sn(t):
    """``sin(sqrt(t))/sqrt(t)`` for any real ``t``, equal to 1 at ``t = 0``."""
    if isinstance(t, (float, int)):
        return _scalar_sn(float(t))
    return _dispatch(t, _closed_sn, _SN_COEF)


def ksin(t):
    """``sqrt(t) * sin(sqrt(t))`` written as ``t * sn(t)``; entire and real."""
    if isinstance(t, (float, int)):
        return t * _scalar_sn(float(t))
    return np.asarray(t, dtype=float)[()] * sn(t)

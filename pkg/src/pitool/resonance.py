"""Resonance residuals, closed-form parameterizations and zero-set tracing.

Every residual is written in a cleared form built from ``cs``, ``sn`` and
``ksin(t) = t * sn(t)`` evaluated at ``t = -a_j``, so it is an entire real
function of the intensities.  Barrier (``a_j > 0``) and well (``a_j < 0``)
configurations go through the same code.

Curves are traced in the rescaled plane ``X = sign(a1) |a1|**0.5``,
``Y = sign(a2) |a2|**0.5``.
"""

from __future__ import annotations

import math

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, dijkstra
from scipy.spatial import cKDTree

from pitool.specfun import cs, ksin, sn

ROOT_XTOL = 1e-12
SLICE_XTOL = 1e-10
ACCEPT_TOL = 1e-8

_ARITY = {"K2": 2, "L2": 2, "F2": 2, "J2": 2, "K3": 3, "L3": 3, "F3": 3, "J3": 3}


@dataclass(frozen=True)
class ResidualFamily:
    """A resonance equation ``name`` at separation coefficient ``c``.

    ``L`` and ``J`` families are the ``c = 0`` forms of ``K`` and ``F``;
    their ``c`` is forced to zero.
    """

    name: str
    c: float = 0.0

    def __post_init__(self):
        if self.name not in _ARITY:
            raise ValueError(f"unknown residual family {self.name!r}")
        if self.name[0] in "LJ":
            object.__setattr__(self, "c", 0.0)
        elif not self.c >= 0:
            raise ValueError(f"c must be non-negative, got {self.c}")
        object.__setattr__(self, "c", float(self.c))

    @property
    def arity(self) -> int:
        return _ARITY[self.name]

    @property
    def kind(self) -> str:
        return self.name[0]

    def __call__(self, *a):
        return residual(self, a)


def _k(a1, a2, a3, c):
    s = a1 + a2 + c * a1 * a2
    if a3 is None:
        return s
    return a1 + a2 + a3 + c * (a1 * a2 + 2 * a1 * a3 + a2 * a3) + c * c * a1 * a2 * a3


def _f2(a1, a2, c):
    s1, s2 = ksin(-a1), ksin(-a2)
    return s1 * cs(-a2) + (cs(-a1) - c * s1) * s2


def _f3_parts(a1, a2, c):
    """Brackets multiplying ``cs(-a3)`` and ``ksin(-a3)`` in the N=3 equation."""
    s1, s2 = ksin(-a1), ksin(-a2)
    c1, c2 = cs(-a1), cs(-a2)
    head = s1 * c2 + c1 * s2 - c * s1 * s2
    tail = c1 * c2 - 2 * c * s1 * c2 - c * c1 * s2 + (c * c * s2 - sn(-a2)) * s1
    return head, tail


def _f3(a1, a2, a3, c):
    head, tail = _f3_parts(a1, a2, c)
    return head * cs(-a3) + tail * ksin(-a3)


def residual(fam: ResidualFamily, a):
    """Residual of ``fam`` at intensities ``a`` (scalars or broadcastable arrays)."""
    a = [np.asarray(x, dtype=float) for x in a]
    if len(a) != fam.arity:
        raise ValueError(f"{fam.name} takes {fam.arity} intensities, got {len(a)}")
    a3 = a[2] if fam.arity == 3 else None
    if fam.kind in "KL":
        out = _k(a[0], a[1], a3, fam.c)
    elif a3 is None:
        out = _f2(a[0], a[1], fam.c)
    else:
        out = _f3(a[0], a[1], a3, fam.c)
    return out[()] if np.ndim(out) == 0 else out


def scaled_residual(fam: ResidualFamily, a):
    """``|residual| / (1 + ||a||_1)``; the acceptance measure for roots."""
    r = np.abs(residual(fam, a))
    return r / (1.0 + sum(np.abs(np.asarray(x, dtype=float)) for x in a))


def rescale(a):
    """Intensity to display coordinate ``sign(a) |a|**0.5``."""
    a = np.asarray(a, dtype=float)
    return np.sign(a) * np.sqrt(np.abs(a))


def unscale(x):
    x = np.asarray(x, dtype=float)
    return np.sign(x) * x * x


# ---------------------------------------------------------------- closed forms


def _check_gamma(gamma):
    if abs(abs(gamma) - 2.0) == 0.0:
        raise ValueError("gamma = +-2 is a pole of theta = (2+gamma)/(2-gamma)")


def kurasov_pair(gamma: float, c: float) -> tuple[float, float]:
    """Two-layer intensities realizing a diagonal limit of strength ``gamma``."""
    if not c > 0:
        raise ValueError("c must be positive")
    _check_gamma(gamma)
    return 2 * gamma / (c * (2 - gamma)), -2 * gamma / (c * (2 + gamma))


def kurasov_triple(gamma: float, a2: float, c: float) -> tuple[float, float, float]:
    """Three-layer intensities for strength ``gamma`` with free middle charge ``a2``."""
    if not c > 0:
        raise ValueError("c must be positive")
    _check_gamma(gamma)
    den = c * (2 + c * a2)
    if den == 0:
        raise ValueError(f"a2 = -2/c = {a2} makes the parameterization singular")
    a1 = (2 * gamma / (2 - gamma) - c * a2) / den
    a3 = -(2 * gamma / (2 + gamma) + c * a2) / den
    return a1, a2, a3


@dataclass(frozen=True)
class TransparentLocus:
    """A set of intensities with limit matrix ``sign * I`` on the K-line."""

    sign: int
    condition: str
    point: tuple[float, ...] | None


def full_transmission_points(n: int, c: float, a1: float | None = None) -> list[TransparentLocus]:
    """Loci of the K-resonance set where the limit is ``+-I``.

    For ``n = 2`` there is the single double-well point.  For ``n = 3`` two
    one-parameter families exist; with ``a1`` given, the member with that
    first charge is solved (``None`` where ``1 + c*a1 = 0`` excludes it).
    """
    if not c > 0:
        raise ValueError("c must be positive")
    if n == 2:
        return [TransparentLocus(-1, "a1 = a2 = -2/c", (-2 / c, -2 / c))]
    if n != 3:
        raise ValueError("n must be 2 or 3")
    plus = minus = None
    if a1 is not None and 1 + c * a1 != 0:
        plus = (a1, -2 * a1 / (1 + c * a1), a1)
        minus = (a1, (-2 / c - 2 * a1) / (1 + c * a1), -2 / c - a1)
    return [
        TransparentLocus(+1, "a1 = a3, 2 a1 + a2 + c a1 a2 = 0", plus),
        TransparentLocus(-1, "a1 + a3 = -2/c, 2 a1 + a2 + c a1 a2 = -2/c", minus),
    ]


def k3_sheet(a1: float, a2: float, c: float) -> str:
    """Which connected sheet ("0", "1'", "2'") of ``K3 = 0`` lies over ``(a1, a2)``.

    ``K3`` is linear in ``a3``; its coefficient vanishes on the hyperbola
    ``(1 + c a1)(2 + c a2) = 1``, which cuts the plane into three regions.
    Sheet 0 lies over the region containing the origin, 1' over the middle
    region and 2' over the far one.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    u, w = 1 + c * a1, 2 + c * a2
    if u * w < 1:
        return "1'"
    return "0" if u > 0 else "2'"


@dataclass(frozen=True)
class DeltaPrimeSolution:
    a1: float
    a2: float
    a3: float
    kappa: float
    sheet: str


def delta_prime_kappa(a1: float, c: float) -> list[DeltaPrimeSolution]:
    """Points of the plane ``a1 + a2 + a3 = 0`` that also lie on ``K3 = 0``.

    Solves ``(1 + c a1) a3**2 + (1 + c a3) a1**2 = 0`` for ``a3``; each root
    carries ``kappa = c (a1 - a3)`` and the K3 sheet it sits on.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    qa, qb, qc = 1 + c * a1, c * a1 * a1, a1 * a1
    if qa == 0:
        roots = [] if qb == 0 else [-qc / qb]
    else:
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            roots = []
        elif disc == 0:
            roots = [-qb / (2 * qa)]
        else:
            # stable pair: the larger-magnitude root first, the other from Vieta
            q = -0.5 * (qb + np.copysign(np.sqrt(disc), qb))
            roots = [q / qa, qc / q]
    out = []
    for a3 in sorted(float(r) + 0.0 for r in roots):
        # snap a2 onto the ulp lattice of the largest entry; when a1 also lies on
        # it (integers, short decimals) the stored triple sums to exactly zero
        u = math.ulp(max(abs(a1), abs(a3), abs(a1 + a3)))
        a2 = -round((a1 + a3) / u) * u + 0.0
        a3 = -(a1 + a2) + 0.0
        out.append(DeltaPrimeSolution(a1, a2, a3, c * (a1 - a3), k3_sheet(a1, a2, c)))
    return out


def vertex_b0(c: float) -> float:
    """Smallest positive root of ``cot(sqrt(b)) = c sqrt(b)``."""
    if not c >= 0:
        raise ValueError("c must be non-negative")
    if c == 0:
        return (np.pi / 2) ** 2
    x = optimize.brentq(lambda x: np.cos(x) - c * x * np.sin(x), 0.0, np.pi / 2, xtol=1e-15)
    return x * x


def impossible_mixed_lines_check(a, tol: float = 0.0) -> bool:
    """True iff ``a1+a2+a3`` and ``a1 a2 + 2 a1 a3 + a2 a3`` both vanish.

    On the plane ``a1 + a2 + a3 = 0`` the second form equals
    ``-(a1**2 + (a1 + a2)**2)``, so only the zero triple passes.
    """
    a1, a2, a3 = (float(x) for x in a)
    first = a1 + a2 + a3
    second = a1 * a2 + 2 * a1 * a3 + a2 * a3
    return abs(first) <= tol and abs(second) <= tol


def critical_mixed_coefficients(a, c: float) -> tuple[float, float]:
    """Coefficients of ``eps**-1`` and ``eps**(tau-2)`` in ``m21`` at ``mu = 2``.

    Both must vanish for a finite limit on ``tau = 3/2``.  They do at the
    origin and at the reflectionless wells ``a_j = -(n_j pi)**2``, where every
    layer is individually transparent.
    """
    a1, a2, a3 = (float(x) for x in a)
    lead = -float(_f3(a1, a2, a3, 0.0))
    s1, s2, s3 = ksin(-a1), ksin(-a2), ksin(-a3)
    c1, c2, c3 = cs(-a1), cs(-a2), cs(-a3)
    mid = c * float(s1 * s2 * c3 + 2 * s1 * c2 * s3 + c1 * s2 * s3)
    return lead, mid


def find_root(fam: ResidualFamily, a, index: int, bracket: tuple[float, float]) -> tuple[float, ...]:
    """Solve ``fam = 0`` for intensity ``a[index]`` inside ``bracket``; others fixed."""
    a = [float(x) for x in a]

    def f(x):
        b = list(a)
        b[index] = x
        return float(residual(fam, b))

    lo, hi = bracket
    x = optimize.brentq(f, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
    a[index] = x
    return tuple(a)


# ---------------------------------------------------------------- tracing


def _bisect(f, lo, hi, xtol):
    """Vectorized bisection; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    pos_lo = f(lo) > 0
    while True:
        width = np.abs(hi - lo)
        if not np.any(width > xtol):
            break
        mid = 0.5 * (lo + hi)
        pos_mid = f(mid) > 0
        same = pos_mid == pos_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


@dataclass
class ResonanceCurve:
    """One connected branch of a two-intensity resonance set."""

    family: str
    c: float
    branch: int
    X: np.ndarray
    Y: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    residuals: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.X)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.X, self.Y])

    def min_distance_to_origin(self) -> float:
        return float(np.min(np.hypot(self.X, self.Y)))


def _grid_roots(fam, xs, ys):
    """Sign-change roots along every column and every row of the grid."""
    A1 = unscale(xs)[:, None]
    A2 = unscale(ys)[None, :]
    pos = residual(fam, (A1, A2)) > 0
    pts = []

    ci, cj = np.nonzero(pos[:, :-1] != pos[:, 1:])
    if ci.size:
        X = xs[ci]
        Y = _bisect(lambda y: residual(fam, (unscale(X), unscale(y))), ys[cj], ys[cj + 1], ROOT_XTOL)
        pts.append(np.column_stack([X, Y]))
    ri, rj = np.nonzero(pos[:-1, :] != pos[1:, :])
    if ri.size:
        Y = ys[rj]
        X = _bisect(lambda x: residual(fam, (unscale(x), unscale(Y))), xs[ri], xs[ri + 1], ROOT_XTOL)
        pts.append(np.column_stack([X, Y]))
    if not pts:
        return np.empty((0, 2))
    pts = np.vstack(pts)
    # row and column scans meet at grid nodes; keep one copy
    keys = np.round(pts / 1e-9).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    return pts[np.sort(first)]


def _order_along(points, bound):
    """Order one connected component as a polyline by geodesic distance."""
    n = len(points)
    if n < 3:
        return np.argsort(points[:, 0], kind="stable")
    tree = cKDTree(points)
    pairs = tree.query_pairs(bound, output_type="ndarray")
    w = np.hypot(*(points[pairs[:, 0]] - points[pairs[:, 1]]).T)
    g = coo_matrix((w, (pairs[:, 0], pairs[:, 1])), shape=(n, n)).tocsr()
    d0 = dijkstra(g, directed=False, indices=int(np.argmin(points[:, 0])))
    end = int(np.argmax(np.where(np.isfinite(d0), d0, -1)))
    d = dijkstra(g, directed=False, indices=end)
    order = np.argsort(d, kind="stable")
    if points[order[0], 0] > points[order[-1], 0]:
        order = order[::-1]
    return order


def trace_curve(fam: ResidualFamily, window, grid: int = 512) -> list[ResonanceCurve]:
    """Trace the zero set of a two-intensity family inside a rescaled window.

    ``window = (xmin, xmax, ymin, ymax)`` in rescaled coordinates.  Sign
    changes along every grid column and row are bisected to ``1e-12``; roots
    closer than twice the grid spacing are linked, and each connected set of
    roots becomes one branch.  Branch 0 is the one through the origin; the
    rest are numbered by their closest approach to it.
    """
    if fam.arity != 2:
        raise ValueError("trace_curve needs a two-intensity family")
    if grid < 16:
        raise ValueError("grid must be at least 16")
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("empty window")
    xs = np.linspace(xmin, xmax, grid)
    ys = np.linspace(ymin, ymax, grid)
    bound = 2.0 * max(xs[1] - xs[0], ys[1] - ys[0])

    pts = _grid_roots(fam, xs, ys)
    if len(pts) == 0:
        return []
    a1, a2 = unscale(pts[:, 0]), unscale(pts[:, 1])
    ok = scaled_residual(fam, (a1, a2)) < ACCEPT_TOL
    pts = pts[ok]
    if len(pts) == 0:
        return []

    tree = cKDTree(pts)
    pairs = tree.query_pairs(bound, output_type="ndarray")
    adj = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(len(pts),) * 2)
    ncomp, labels = connected_components(adj, directed=False)

    comps = [pts[labels == i] for i in range(ncomp)]
    dist = [float(np.min(np.hypot(*p.T))) for p in comps]
    rank = np.argsort(dist, kind="stable")
    first = 0 if dist[rank[0]] <= bound else 1

    curves = []
    for n, i in enumerate(rank, start=first):
        p = comps[i]
        p = p[_order_along(p, bound)]
        b1, b2 = unscale(p[:, 0]), unscale(p[:, 1])
        res = np.abs(residual(fam, (b1, b2)))
        curves.append(ResonanceCurve(fam.name, fam.c, int(n), p[:, 0], p[:, 1], b1, b2, res))
    return curves


@dataclass
class ResonanceSlice:
    """Zero contours of a three-intensity family at fixed ``a3``."""

    family: str
    c: float
    a3: float
    contours: list[np.ndarray]

    def residuals(self) -> list[np.ndarray]:
        fam = ResidualFamily(self.family, self.c)
        return [np.abs(residual(fam, (p[:, 0], p[:, 1], self.a3))) for p in self.contours]


def slice_surface(fam: ResidualFamily, a3: float, window, grid: int = 512) -> ResonanceSlice:
    """Contours of ``fam(a1, a2, a3) = 0`` over a raw ``(a1, a2)`` window.

    Marching squares on the sampled grid (``skimage.measure.find_contours``)
    gives vertices on grid edges; each vertex is then bisected along its
    edge to ``1e-10``.
    """
    from skimage.measure import find_contours

    if fam.arity != 3:
        raise ValueError("slice_surface needs a three-intensity family")
    if grid < 16:
        raise ValueError("grid must be at least 16")
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    xs = np.linspace(xmin, xmax, grid)
    ys = np.linspace(ymin, ymax, grid)
    field_ = residual(fam, (xs[:, None], ys[None, :], a3))
    hx, hy = xs[1] - xs[0], ys[1] - ys[0]

    contours = []
    for raw in find_contours(field_, 0.0):
        i, j = raw[:, 0], raw[:, 1]
        x = xmin + i * hx
        y = ymin + j * hy
        on_col = np.isclose(i, np.round(i), rtol=0, atol=1e-9)
        # vertex on a column line: bisect in a2 between neighbouring nodes
        jc = np.clip(np.floor(j).astype(int), 0, grid - 2)
        ic = np.clip(np.floor(i).astype(int), 0, grid - 2)
        exact = field_[np.clip(np.round(i).astype(int), 0, grid - 1), np.clip(np.round(j).astype(int), 0, grid - 1)] == 0
        exact &= on_col & np.isclose(j, np.round(j), rtol=0, atol=1e-9)

        col = on_col & ~exact
        if np.any(col):
            xc = xs[np.round(i[col]).astype(int)]
            y[col] = _bisect(lambda t: residual(fam, (xc, t, a3)), ys[jc[col]], ys[jc[col] + 1], SLICE_XTOL)
            x[col] = xc
        row = ~on_col
        if np.any(row):
            yr = ys[np.round(j[row]).astype(int)]
            x[row] = _bisect(lambda t: residual(fam, (t, yr, a3)), xs[ic[row]], xs[ic[row] + 1], SLICE_XTOL)
            y[row] = yr
        contours.append(np.column_stack([x, y]))
    return ResonanceSlice(fam.name, fam.c, float(a3), contours)

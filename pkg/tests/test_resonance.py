import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pitool.limits import f2, f3, g2, k_theta
from pitool.resonance import (
    ACCEPT_TOL,
    ResidualFamily,
    critical_mixed_coefficients,
    delta_prime_kappa,
    find_root,
    full_transmission_points,
    impossible_mixed_lines_check,
    k3_sheet,
    kurasov_pair,
    kurasov_triple,
    rescale,
    residual,
    scaled_residual,
    slice_surface,
    trace_curve,
    unscale,
    vertex_b0,
)
from pitool.squeeze import SqueezeParams, realize
from pitool.transfer import profile_matrix

K2, F2 = ResidualFamily("K2", 0.4), ResidualFamily("F2", 0.4)
intensity = st.floats(-60.0, 30.0)


def exact_F(a, c, eps=1e-7, k=1.0):
    # the eps^-1 coefficient of m21 at mu = 2, tau = 1 is minus the F residual
    m = profile_matrix(realize(SqueezeParams(tuple(a), c, 2.0, 1.0), eps), k)
    return -eps * m.m21


@pytest.mark.parametrize("a", [(-4.0, -1.0), (1.0, 2.0), (-10.0, 3.0), (-3.0, -7.0, -2.5), (1.0, 2.0, -2.5)])
@pytest.mark.parametrize("c", [0.4, 1.0])
def test_F_against_exact_transfer_matrix(a, c):
    fam = ResidualFamily(f"F{len(a)}", c)
    assert residual(fam, a) == pytest.approx(exact_F(a, c), rel=1e-6, abs=1e-7)


def test_residual_examples():
    assert residual(K2, (-5.0, -5.0)) == pytest.approx(0.0, abs=1e-13)
    q = -((math.pi / 2) ** 2)
    assert residual(ResidualFamily("J2"), (q, q)) == pytest.approx(0.0, abs=1e-14)
    assert residual(ResidualFamily("K3", 0.4), (5 / 3, 1.0, -10 / 9)) == pytest.approx(0.0, abs=1e-14)


def test_L_and_J_force_zero_c():
    assert ResidualFamily("L2", 3.0).c == 0.0
    assert ResidualFamily("J3", 0.4).c == 0.0
    with pytest.raises(ValueError):
        ResidualFamily("X2", 1.0)


@given(intensity, intensity, st.floats(0.0, 3.0))
def test_F2_symmetric(a1, a2, c):
    fam = ResidualFamily("F2", c)
    r, rs = residual(fam, (a1, a2)), residual(fam, (a2, a1))
    scale = 1 + abs(r) + np.cosh(np.sqrt(max(-a1, 0))) * np.cosh(np.sqrt(max(-a2, 0)))
    assert abs(r - rs) <= 1e-12 * scale * (1 + abs(a1) + abs(a2)) ** 2


@given(intensity, intensity, intensity, st.floats(0.0, 3.0))
def test_F3_symmetric(a1, a2, a3, c):
    fam = ResidualFamily("F3", c)
    r, rs = residual(fam, (a1, a2, a3)), residual(fam, (a3, a2, a1))
    scale = (1 + abs(a1) + abs(a2) + abs(a3)) ** 3 * math.prod(np.cosh(np.sqrt(max(-x, 0))) for x in (a1, a2, a3))
    assert abs(r - rs) <= 1e-12 * scale


@given(intensity, intensity, st.floats(-5, 5))
def test_K_degenerates_to_L(a1, a2, a3):
    assert residual(ResidualFamily("K2", 0.0), (a1, a2)) == residual(ResidualFamily("L2"), (a1, a2))
    assert residual(ResidualFamily("K3", 0.0), (a1, a2, a3)) == residual(ResidualFamily("L3"), (a1, a2, a3))
    assert residual(ResidualFamily("F2", 0.0), (a1, a2)) == residual(ResidualFamily("J2"), (a1, a2))


def test_residual_vectorizes():
    a1 = np.linspace(-5, 5, 7)
    a2 = np.linspace(-3, 2, 7)
    vec = residual(F2, (a1, a2))
    np.testing.assert_allclose(vec, [residual(F2, (x, y)) for x, y in zip(a1, a2)], rtol=1e-14, atol=1e-15)
    with pytest.raises(ValueError):
        residual(F2, (1.0, 2.0, 3.0))


def test_rescale_roundtrip():
    a = np.array([-16.0, -0.25, 0.0, 4.0])
    np.testing.assert_array_equal(rescale(a), [-4.0, -0.5, 0.0, 2.0])
    np.testing.assert_array_equal(unscale(rescale(a)), a)


def test_kurasov_pair_examples():
    assert kurasov_pair(0.0, 0.4) == (0.0, 0.0)
    a = kurasov_pair(1.0, 0.4)
    np.testing.assert_allclose(a, (5.0, -5 / 3), rtol=1e-15)
    assert residual(K2, a) == pytest.approx(0.0, abs=1e-14)
    assert k_theta(a, 0.4)[0] == pytest.approx(3.0, rel=1e-15)
    big = kurasov_pair(1e9, 0.4)
    np.testing.assert_allclose(big, (-5.0, -5.0), rtol=1e-8)
    with pytest.raises(ValueError):
        kurasov_pair(2.0, 0.4)


def test_kurasov_triple_examples():
    a = kurasov_triple(1.0, 1.0, 0.4)
    np.testing.assert_allclose(a, (5 / 3, 1.0, -10 / 9), rtol=1e-15)
    theta, rho = k_theta(a, 0.4)
    assert theta == pytest.approx(3.0, rel=1e-14) and rho == pytest.approx(1 / 3, rel=1e-14)
    assert kurasov_triple(0.0, 0.0, 0.4) == (0.0, 0.0, 0.0)
    swapped = (a[2], a[1], a[0])
    assert k_theta(swapped, 0.4)[0] == pytest.approx(1 / theta, rel=1e-14)
    with pytest.raises(ValueError):
        kurasov_triple(0.5, -5.0, 0.4)


@given(st.floats(-1.9, 1.9), st.floats(-10, 10), st.floats(0.05, 3.0))
def test_kurasov_triple_on_K3(gamma, a2, c):
    if abs(2 + c * a2) < 1e-3:
        return
    a = kurasov_triple(gamma, a2, c)
    assert scaled_residual(ResidualFamily("K3", c), a) < 1e-10


def test_full_transmission_points():
    (pt,) = full_transmission_points(2, 0.4)
    assert pt.sign == -1
    np.testing.assert_allclose(pt.point, (-5.0, -5.0))
    plus, minus = full_transmission_points(3, 0.4, a1=1.0)
    np.testing.assert_allclose(plus.point, (1.0, -10 / 7, 1.0), rtol=1e-15)
    K3 = ResidualFamily("K3", 0.4)
    for loc in (plus, minus):
        assert residual(K3, loc.point) == pytest.approx(0.0, abs=1e-13)
        assert k_theta(loc.point, 0.4)[0] == pytest.approx(loc.sign, abs=1e-13)
    # 1 + c a1 = 0 is excluded
    assert all(loc.point is None for loc in full_transmission_points(3, 0.4, a1=-2.5))


def test_delta_prime_kappa_examples():
    (sol,) = delta_prime_kappa(0.0, 0.4)
    assert (sol.a1, sol.a2, sol.a3, sol.kappa) == (0.0, 0.0, 0.0, 0.0)
    sols = delta_prime_kappa(-5.0, 0.4)
    a3 = sorted([5 + math.sqrt(50), 5 - math.sqrt(50)])
    np.testing.assert_allclose([s.a3 for s in sols], a3, rtol=1e-15)
    hi = sols[-1]
    assert hi.kappa == pytest.approx(0.4 * (-10 - math.sqrt(50)), rel=1e-15)
    assert hi.kappa == pytest.approx(-6.8284, abs=1e-4)
    for s in sols:
        a = (s.a1, s.a2, s.a3)
        assert abs(residual(ResidualFamily("L3"), a)) < 1e-14
        assert abs(residual(ResidualFamily("K3", 0.4), a)) < 1e-12
        assert s.sheet == "1'"


def test_off_quadratic_plane_points_miss_K3():
    # a point on the plane that does not solve the quadratic is off the K3 surface
    assert abs(residual(ResidualFamily("K3", 0.4), (-5.0, 3.0, 2.0))) > 1


def test_k3_sheet_labels():
    assert k3_sheet(0.0, 0.0, 0.4) == "0"
    assert k3_sheet(-5.0, 0.0, 0.4) == "1'"
    assert k3_sheet(-10.0, -10.0, 0.4) == "2'"


def test_vertex_b0():
    assert vertex_b0(0.0) == pytest.approx((math.pi / 2) ** 2, rel=1e-15)
    b = vertex_b0(0.4)
    assert b == pytest.approx(1.304, abs=1e-3)
    x = math.sqrt(b)
    assert math.cos(x) / math.sin(x) == pytest.approx(0.4 * x, rel=1e-12)
    vals = [vertex_b0(c) for c in (0.0, 0.2, 0.4, 1.0)]
    assert all(u > v for u, v in zip(vals, vals[1:]))


def test_vertex_on_F2():
    # a1 = a2 = -b0 solves F2; so does the pair where cs(-a1) = 0
    # wherever cs(-a1) = 0 the equation pins a2 to -b0; these are the corners of branch 0
    b = vertex_b0(0.4)
    for m in range(4):
        a1 = -(((m + 0.5) * math.pi) ** 2)
        assert scaled_residual(F2, (a1, -b)) < 1e-14
        assert scaled_residual(F2, (-b, a1)) < 1e-14
    # the symmetric point itself is off the set: F2(-b0, -b0) = c * s**2
    s = math.sqrt(b) * math.sin(math.sqrt(b))
    assert residual(F2, (-b, -b)) == pytest.approx(0.4 * s**2, rel=1e-12)


def test_impossible_mixed_lines():
    assert impossible_mixed_lines_check((0.0, 0.0, 0.0))
    assert not impossible_mixed_lines_check((1.0, 2.0, -3.0))
    rng = np.random.default_rng(3)
    for a1, a2 in rng.normal(size=(10**4, 2)) * 10:
        assert not impossible_mixed_lines_check((a1, a2, -(a1 + a2)))


def test_critical_mixed_coefficients_vanish_on_wells():
    w = -(math.pi**2)
    np.testing.assert_allclose(critical_mixed_coefficients((w, 4 * w, w), 0.7), (0.0, 0.0), atol=1e-12)
    assert max(map(abs, critical_mixed_coefficients((1.0, 2.0, -3.0), 0.7))) > 1e-2


def test_find_root():
    a = find_root(F2, (-4.0, 0.0), 1, (-2.0, -1.0))
    assert scaled_residual(F2, a) < 1e-14
    assert a[0] == -4.0
    with pytest.raises(ValueError):
        find_root(F2, (-4.0, 0.0), 1, (0.0, 1.0))


def test_trace_K2_two_branches():
    curves = trace_curve(K2, (-4, 2, -4, 2), grid=256)
    assert len(curves) == 2
    assert curves[0].branch == 0
    assert curves[0].min_distance_to_origin() < 1e-9
    for cur in curves:
        assert np.all(scaled_residual(K2, (cur.a1, cur.a2)) < ACCEPT_TOL)
        np.testing.assert_array_equal(cur.a1, unscale(cur.X))


def test_trace_L2_is_antidiagonal():
    (cur,) = trace_curve(ResidualFamily("L2"), (-3, 3, -3, 3), grid=128)
    assert np.all(np.abs(cur.a1 + cur.a2) < 1e-10)


def test_trace_F2_at_zero_c_solves_J2():
    J2 = ResidualFamily("J2")
    for cur in trace_curve(ResidualFamily("F2", 0.0), (-8, 2, -8, 2), grid=256):
        assert np.all(scaled_residual(J2, (cur.a1, cur.a2)) < 1e-8)


def test_traced_points_are_linked_and_transversal():
    curves = trace_curve(F2, (-10, 2, -10, 2), grid=256)
    h = 12 / 255
    for cur in curves:
        steps = np.hypot(np.diff(cur.X), np.diff(cur.Y))
        assert np.all(steps <= 2 * h + 1e-12)
        # the residual changes sign across the curve at each interior point
        if len(cur) < 3:
            continue
        t = np.column_stack([np.gradient(cur.X), np.gradient(cur.Y)])
        nrm = np.column_stack([-t[:, 1], t[:, 0]])
        nrm /= np.linalg.norm(nrm, axis=1)[:, None]
        d = 0.25 * h
        pa = residual(F2, (unscale(cur.X + d * nrm[:, 0]), unscale(cur.Y + d * nrm[:, 1])))
        pb = residual(F2, (unscale(cur.X - d * nrm[:, 0]), unscale(cur.Y - d * nrm[:, 1])))
        assert np.mean(np.sign(pa) != np.sign(pb)) > 0.95


def test_reciprocity_and_f_equals_g_on_traced_F2():
    c = 0.4
    for cur in trace_curve(F2, (-8, 2, -8, 2), grid=256):
        a1, a2 = cur.a1, cur.a2
        with np.errstate(divide="ignore", invalid="ignore"):
            fwd, back, g = f2(a1, a2, c), f2(a2, a1, c), g2(a1, a2)
        ok = np.isfinite(fwd) & np.isfinite(back) & (np.abs(a1) > 1e-3) & (np.abs(a2) > 1e-3)
        # keep well-conditioned points: both denominators away from zero
        ok &= (np.abs(np.cos(np.sqrt(np.abs(a1)))) > 0.05) & (np.abs(np.cos(np.sqrt(np.abs(a2)))) > 0.05)
        ok &= (a1 < 0) & (a2 < 0)
        np.testing.assert_allclose(fwd[ok] * back[ok], 1.0, atol=1e-9)
        np.testing.assert_allclose(fwd[ok], g[ok], atol=1e-8)


def test_F3_reciprocity_on_sampled_roots():
    c = 0.4
    F3 = ResidualFamily("F3", c)
    rng = np.random.default_rng(11)
    checked = 0
    for a1, a3 in rng.uniform(-12, 1, size=(200, 2)):
        grid = np.linspace(-15, 2, 200)
        vals = residual(F3, (a1, grid, a3))
        idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        for i in idx[:1]:
            a = find_root(F3, (a1, 0.0, a3), 1, (grid[i], grid[i + 1]))
            fwd, back = f3(*a, c), f3(a[2], a[1], a[0], c)
            if abs(math.cos(math.sqrt(abs(a1)))) < 0.05 or abs(math.cos(math.sqrt(abs(a3)))) < 0.05:
                continue
            assert fwd * back == pytest.approx(1.0, abs=1e-8)
            checked += 1
    assert checked > 50


def test_slices():
    K3 = ResidualFamily("K3", 0.4)
    sl = slice_surface(K3, 0.0, (-8, 4, -8, 4), grid=128)
    for pts, res in zip(sl.contours, sl.residuals()):
        assert np.all(res < 1e-8)
        np.testing.assert_allclose(residual(K2, (pts[:, 0], pts[:, 1])), 0.0, atol=1e-8)
    (line,) = slice_surface(ResidualFamily("L3"), 1.0, (-3, 3, -3, 3), grid=64).contours
    np.testing.assert_allclose(line.sum(axis=1), -1.0, atol=1e-9)
    # with cs(-a1) = cs(-a3) = 0 only the sin*sin*sin term is left, so J3 needs sin(sqrt(-a2)) = 0
    q = -((math.pi / 2) ** 2)
    J3 = ResidualFamily("J3")
    assert residual(J3, (q, q, q)) == pytest.approx(-math.pi / 2, rel=1e-12)
    assert residual(J3, (q, -(math.pi**2), q)) == pytest.approx(0.0, abs=1e-14)
    sl = slice_surface(J3, q, (-4, 0, -12, 0), grid=128)
    dist = min(np.min(np.hypot(p[:, 0] - q, p[:, 1] + math.pi**2)) for p in sl.contours)
    assert dist < 12 / 127

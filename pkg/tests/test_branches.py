import math

import numpy as np
import pytest

from equihopf.branches import (
    DegenerateInputError,
    curve_coefficients,
    figure_geometry,
    intersect_circle,
    solve_z1z2,
    solve_zz_x,
    submaximal_count,
    z1z2_residual,
    zz_x_residual,
)
from equihopf.exact import field, root_of_unity
from equihopf.twisted import stabilizer_of_point

# ratio alpha/beta -> number of submaximal (z, z, xi z) branches
GOLDEN = {
    -1 + 1.25j: 2,
    0.75: 1,
    1.25: 0,
    0.2 + 0.25j: 1,
    1.25 + 0.25j: 0,
    -0.25 + 1.25j: 2,
    -0.75 + 1.25j: 3,
    -1.25 + 1.25j: 1,
}


def random_ratios(n, seed=0, scale=3.0):
    rng = np.random.default_rng(seed)
    return scale * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))


@pytest.mark.parametrize("ratio", list(GOLDEN))
def test_golden_counts(ratio):
    sols = solve_zz_x(ratio, 1)
    assert submaximal_count(sols) == GOLDEN[ratio]
    assert figure_geometry(ratio)["submaximal"] == GOLDEN[ratio]


def test_real_ratio_root_at_minus_one():
    sols = [s for s in solve_zz_x(0.75, 1) if s.classification == "submaximal"]
    assert len(sols) == 1
    assert sols[0].circle_point == pytest.approx((-1.0, 0.0), abs=1e-12)


@pytest.mark.parametrize("im", [4.0, -4.0])
def test_tangency_coalescence(im):
    sols = solve_zz_x(-1 + im * 1j, 1)
    assert submaximal_count(sols) == 0
    tang = [s for s in sols if s.classification == "tangency"]
    assert len(tang) == 1
    assert tang[0].circle_point == pytest.approx((0.0, math.copysign(1.0, im)), abs=1e-6)
    assert submaximal_count(solve_zz_x(-1 + 1.1 * im * 1j, 1)) == 0


@pytest.mark.parametrize("im", [0.3, 1.0, 1.25, 2.0, 3.0, 3.9, -0.3, -2.0, -3.9])
def test_re_minus_one_two_branches(im):
    assert submaximal_count(solve_zz_x(-1 + im * 1j, 1)) == 2


def test_scaling_invariance():
    a, b = -0.75 + 1.25j, 1.0
    base = solve_zz_x(a, b)
    for s in (2.0, -1.5j, 0.1 + 0.3j):
        other = solve_zz_x(a * s, b * s)
        assert [x.classification for x in other] == [x.classification for x in base]
        assert np.allclose([x.r_squared for x in other], [x.r_squared for x in base])


def test_residuals_small():
    for rho in list(GOLDEN) + [-1 + 4j, *random_ratios(200, seed=1)]:
        alpha, beta = rho * (0.7 - 0.2j), 0.7 - 0.2j
        for s in solve_zz_x(alpha, beta) + solve_z1z2(alpha, beta):
            if not math.isfinite(s.r_squared):
                continue
            res = zz_x_residual if s.subspace == "zz_x" else z1z2_residual
            assert s.residual == res(alpha, beta, s.r_squared, s.angle)
            assert s.residual < 1e-9


def test_one_zero_always_root():
    for rho in random_ratios(500, seed=2):
        c = curve_coefficients(rho)
        assert abs(c.I(1.0, 0.0)) < 1e-13 * max(1, abs(rho))
        sols = solve_zz_x(rho, 1)
        maxi = [s for s in sols if s.classification == "maximal_zzz"]
        assert len(maxi) == 1 and maxi[0].r_squared == 1.0
        assert any(abs(x - 1) < 1e-12 and abs(y) < 1e-12 for x, y, _ in intersect_circle(c))


def test_R_at_one_zero():
    for rho in random_ratios(500, seed=3):
        c = curve_coefficients(rho)
        want = ((rho.real + 1) ** 2 + rho.imag**2) / 2
        assert c.R(1.0, 0.0) == pytest.approx(want, abs=1e-12)
        assert c.R(1.0, 0.0) >= 0


@pytest.mark.parametrize(
    "ratio, x0, y0, Ki",
    [(0, 0.25, 0, 0), (-1, 1, 0, 0), (0.75, -0.3125, 0, 0), (-1 + 1.25j, 1, 0.3125, 0)],
)
def test_curve_coefficients(ratio, x0, y0, Ki):
    c = curve_coefficients(ratio)
    assert (c.x0, c.y0, c.Ki) == pytest.approx((x0, y0, Ki), abs=1e-15)


def test_z1z2_region():
    xs = np.linspace(-3, 3, 200)
    band = 1e-6
    checked = 0
    for u in xs:
        for v in xs:
            rho = complex(u, v)
            if min(abs(abs(rho) - 1), abs(abs(u) - 1)) < band:
                continue
            exists = submaximal_count(solve_z1z2(rho, 1)) > 0
            assert exists == (abs(rho) > 1 and abs(u) < 1), rho
            checked += 1
    assert checked > 39000


def test_z1z2_at_2i():
    sols = solve_z1z2(2j, 1)
    assert sorted(s.r_squared for s in sols) == pytest.approx([1 / 3, 3])
    assert all(abs(math.cos(2 * s.angle)) < 1e-12 for s in sols)
    assert all(s.classification == "submaximal" for s in sols)
    assert solve_z1z2(2, 1) == []


def test_z1z2_boundary_tags():
    sols = solve_z1z2(1, 1)
    assert {s.classification for s in sols} == {"maximal_izz0"}
    assert sorted(round(s.xi.imag) for s in sols) == [-1, 1]
    assert {s.classification for s in solve_z1z2(-1, 1)} == {"maximal_zz0"}
    # |ratio| = 1 inside the strip: one branch escapes to r = 0 or infinity
    tags = {s.classification for s in solve_z1z2(complex(0.6, 0.8), 1)}
    assert tags & {"r_zero_boundary", "r_infinity_boundary"}


def test_beta_zero():
    with pytest.raises(DegenerateInputError):
        solve_zz_x(1, 0)
    with pytest.raises(DegenerateInputError):
        solve_z1z2(1, 0)


def _exact(F, *xs):
    return tuple(x if not isinstance(x, int) else F(x) for x in xs)


def test_submaximal_point_stabilizer(groups):
    """At ratio 2i, xi = sqrt(3) e^{-i pi/4} lies in Q(zeta_24), so the
    stabilizer of (xi, 1, 0) is computed exactly."""
    F = field(24)
    z = F.root(2)  # zeta_12
    xi = (z + z.conj()) * F.root(21)
    sol = next(s for s in solve_z1z2(2j, 1) if abs(s.r_squared - 3) < 1e-12)
    assert complex(xi) == pytest.approx(sol.xi, abs=1e-12)
    generic = _exact(F, F(3) + root_of_unity(1, 24, F), F(-2) + root_of_unity(5, 24, F) * 7, 0)
    for G in groups.values():
        S = stabilizer_of_point(_exact(F, xi, 1, 0), G)
        plane = stabilizer_of_point(generic, G)
        assert S.phi == plane.phi
        # every element fixing (xi, 1, 0) preserves the plane z3 = 0
        assert all(G.elements[i].matrix[2, 2] != 0 for i in S.H.members)

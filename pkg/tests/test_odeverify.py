import math
from fractions import Fraction

import numpy as np
import pytest

from equihopf.group import evaluate_word
from equihopf.hmodk import pair_key
from equihopf.normalform import NFParams, restrict
from equihopf.odeverify import (
    DivergenceError,
    NotPeriodicError,
    axial_seed,
    detect_symmetries,
    find_periodic,
    integrate,
    supercritical_params,
    verify_row,
)
from equihopf.twisted import reference_subspace

from _shared import row_report

P = supercritical_params(0)


@pytest.fixture(scope="module")
def orbit_c():
    z0, fix = axial_seed("c", P)
    return find_periodic(P, z0, transient=50.0, subspace=fix)


def test_supercritical_params_deterministic():
    assert supercritical_params(0) == P
    for idx in "bcdef":
        assert restrict(reference_subspace(idx), P).c.real <= -0.1


def test_origin_stays_put():
    tr = integrate(P, [0, 0, 0], 1.0)
    assert np.all(tr.states == 0)


def test_subspace_invariance_full_space():
    tr = integrate(P, [0.1 + 0.05j, 0, 0], 20.0, record_every=100)
    assert np.abs(tr.states[:, 1:]).max() < 1e-9


def test_amplitude_converges():
    c = restrict(reference_subspace("b"), P).c
    tr = integrate(P, [0.05, 0, 0], 150.0, record_every=1000)
    r2 = abs(tr.states[-1, 0]) ** 2
    assert r2 == pytest.approx(-P.lam.real / c.real, rel=1e-6)


def test_rk4_fourth_order():
    z0 = np.array([0.3, 0.2 - 0.1j, 0.1j])
    ends = [integrate(P, z0, 2.0, dt=h).states[-1] for h in (0.04, 0.02, 0.01)]
    e1 = np.linalg.norm(ends[0] - ends[1])
    e2 = np.linalg.norm(ends[1] - ends[2])
    assert 12 < e1 / e2 < 20


def test_bad_dt():
    with pytest.raises(ValueError):
        integrate(P, [1, 0, 0], 1.0, dt=0)


def test_divergence_detected():
    bad = NFParams(1.0, 0, 0, 1.0)  # subcritical: blows up in finite time
    with pytest.raises(DivergenceError):
        integrate(bad, [1, 0, 0], 5.0, dt=1e-2)


def test_origin_not_periodic():
    with pytest.raises(NotPeriodicError):
        find_periodic(P, [0, 0, 0], transient=0.0)


def test_row_d_period():
    z0, fix = axial_seed("d", P)
    orbit = find_periodic(P, z0, transient=0.0, subspace=fix)
    c = restrict(fix, P).c
    r2 = -P.lam.real / c.real
    assert orbit.period == pytest.approx(2 * math.pi / abs(P.lam.imag + c.imag * r2), rel=1e-9)
    assert orbit.poincare_period == pytest.approx(orbit.period, rel=1e-6)
    assert orbit.closure_error < 1e-6


EXPECTED_C = {"tetra-full": (6, 6), "octa-rot": (6, 3), "octa-full": (12, 6)}


def test_detect_row_c(groups, orbit_c):
    assert orbit_c.closure_error < 1e-6
    for sel, G in groups.items():
        det = detect_symmetries(orbit_c, G)
        assert (len(det.H), len(det.K)) == EXPECTED_C[sel]
    G = groups["tetra-full"]
    det = detect_symmetries(orbit_c, G)
    assert pair_key(det.H, det.K) == pair_key(G.subgroup(["C", "k"]), G.subgroup(["C", "k"]))


def test_shifts_are_homomorphism(groups):
    z0, fix = axial_seed("d", P)
    orbit = find_periodic(P, z0, transient=0.0, subspace=fix)
    G = groups["octa-full"]
    det = detect_symmetries(orbit, G)
    c = G.index[evaluate_word("C")]
    assert det.shifts[c] in (Fraction(1, 3), Fraction(2, 3))
    for a, sa in det.shifts.items():
        for b, sb in det.shifts.items():
            assert (sa + sb - det.shifts[G.table[a][b]]) % 1 == 0


def test_unclosed_orbit_rejected(orbit_c, groups):
    from dataclasses import replace

    broken = replace(orbit_c, closure_error=1e-3)
    with pytest.raises(NotPeriodicError):
        detect_symmetries(broken, groups["tetra-full"])


@pytest.mark.parametrize("idx", list("bcdefgh"))
def test_rows_match_catalog(idx):
    rep = row_report(idx)
    assert rep["closure_error"] < 1e-6
    for sel, d in rep["interpretations"].items():
        assert d["matches_catalog"], (idx, sel)


def test_row_a_notice():
    rep = verify_row("a")
    assert rep["equilibrium"] is True
    assert "equilibrium" in rep["notice"]


def test_submaximal_rows_report_branch():
    g = row_report("g")
    assert g["ratio"] == [0.0, 2.0]
    assert abs(complex(*g["xi"])) ** 2 == pytest.approx(1 / 3) or abs(complex(*g["xi"])) ** 2 == pytest.approx(3)
    assert g["method"] == "phase-velocity"


def test_no_submaximal_branch():
    with pytest.raises(ValueError):
        verify_row("g", ratio=2.0)


def test_unknown_row():
    with pytest.raises(ValueError):
        verify_row("z")

import numpy as np
import pytest
from hypothesis import given, strategies as st

from equihopf.normalform import (
    EQUIVARIANCE_TOL,
    NFParams,
    NotInvariantError,
    eval_vf,
    jacobian_origin,
    restrict,
    vf_scalar,
)
from equihopf.twisted import TwistedElement, enumerate_isotropy

W = np.exp(2j * np.pi / 3)
P = NFParams(lam=0.1 + 1j, alpha=0.3 - 0.7j, beta=-0.4 + 0.2j, gamma=-1 + 0.5j)

cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


def random_states(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))


def test_equivariance_under_whole_group(groups):
    z = random_states(50)
    fz = eval_vf(z, P)
    for G in groups.values():
        for g in G.elements:
            m = g.matrix.astype(complex)
            err = np.abs(eval_vf(z @ m.T, P) - fz @ m.T).max()
            assert err < EQUIVARIANCE_TOL * 10, err


def test_equivariance_under_isotropy_generators(groups):
    z = random_states(50, seed=1)
    for G in groups.values():
        for rec in enumerate_isotropy(G):
            if rec.sigma is None:
                continue
            for t in rec.sigma.generators():
                m = t.complex_matrix()
                err = np.abs(eval_vf(z @ m.T, P) - eval_vf(z, P) @ m.T).max()
                assert err < 1e-12 * np.abs(eval_vf(z, P)).max()


@given(theta=st.floats(0, 2 * np.pi), z1=cplx, z2=cplx, z3=cplx)
def test_phase_equivariance(theta, z1, z2, z3):
    z = np.array([z1, z2, z3])
    u = np.exp(1j * theta)
    scale = 1 + np.abs(z).max() ** 3
    assert np.abs(eval_vf(u * z, P) - u * eval_vf(z, P)).max() < 1e-12 * scale


def test_scalar_matches_numpy():
    z = random_states(20, seed=2)
    f = vf_scalar(P)
    for row in z:
        assert np.allclose(f(*row), eval_vf(row, P), atol=1e-13)


def test_example_value():
    # z = (z1, 0, 0) reduces to z1 (lam + gam |z1|^2)
    z1 = 0.3 - 0.4j
    out = eval_vf([z1, 0, 0], P)
    assert out[0] == pytest.approx(z1 * (P.lam + P.gamma * abs(z1) ** 2), abs=1e-15)
    assert out[1] == 0 and out[2] == 0


def test_jacobian_is_lambda_identity():
    J = jacobian_origin(P)
    assert np.array_equal(J, P.lam * np.eye(3))
    h = 1e-7
    for j in range(3):
        e = np.zeros(3, complex)
        e[j] = h
        assert np.allclose(eval_vf(e, P) / h, J[:, j], atol=1e-12)


def test_fix_subspaces_invariant(groups):
    z_rng = np.random.default_rng(3)
    for G in groups.values():
        for rec in enumerate_isotropy(G):
            B = rec.fix.numeric_basis()
            if B.shape[1] == 0:
                continue
            w = z_rng.normal(size=(30, B.shape[1])) + 1j * z_rng.normal(size=(30, B.shape[1]))
            fz = eval_vf(w @ B.T, P)
            proj = B @ np.linalg.pinv(B)
            assert np.abs(fz - fz @ proj.T).max() < 1e-10 * max(1, np.abs(fz).max())
            restrict(rec.fix, P)


# reduced cubic coefficient c in w' = w (lam + c |w|^2) along z = w v
REDUCED = {
    "b": ([1, 0, 0], lambda a, b, g: g),
    "c": ([1, 1, 1], lambda a, b, g: 3 * g + 2 * a + 2 * b),
    "d": ([1, W, W**2], lambda a, b, g: 3 * g + 2 * a - b),
    "e": ([0, 1, 1], lambda a, b, g: 2 * g + a + b),
    "f": ([1, 1j, 0], lambda a, b, g: 2 * g + a - b),
}


@pytest.mark.parametrize("idx", sorted(REDUCED))
def test_reduced_coefficients(idx):
    v, formula = REDUCED[idx]
    rf = restrict(np.array(v, dtype=complex)[:, None], P)
    assert rf.c == pytest.approx(formula(P.alpha, P.beta, P.gamma), abs=1e-12)


@pytest.mark.parametrize("idx", sorted(REDUCED))
def test_reduced_coefficients_unit_vector(idx):
    v, formula = REDUCED[idx]
    v = np.array(v, dtype=complex)
    n2 = np.vdot(v, v).real
    rf = restrict((v / np.sqrt(n2))[:, None], P)
    assert rf.c == pytest.approx(formula(P.alpha, P.beta, P.gamma) / n2, abs=1e-12)


def test_restricted_field_round_trip():
    rf = restrict(np.array([[0, 0], [1, 0], [0, 1]], dtype=complex), P)
    w = np.array([0.2 + 0.1j, -0.3j])
    assert np.allclose(rf(w), eval_vf(rf.lift(w), P)[1:], atol=1e-14)
    assert np.allclose(rf.scalar()(*w), rf(w), atol=1e-14)


def test_not_invariant():
    with pytest.raises(NotInvariantError):
        restrict(np.array([[1], [2], [0]], dtype=complex), P)

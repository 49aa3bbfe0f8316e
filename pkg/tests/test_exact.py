import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from equihopf.exact import CycloMatrix, field, kernel_basis, numeric, numeric_vector, root_of_unity

F = field(24)
coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
elements = st.lists(coef, min_size=8, max_size=8).map(lambda c: F.zero.__class__(F, c))


def test_root_of_unity_basics():
    assert root_of_unity(0, 24) == F.one
    assert root_of_unity(12, 24) == -F.one
    w = root_of_unity(8, 24)
    assert w * w * w == F.one and w != F.one
    assert root_of_unity(5, 24) * root_of_unity(-5, 24) == F.one


def test_mismatched_field_order():
    with pytest.raises(ValueError):
        root_of_unity(1, 12, F)


def test_degree_is_phi_of_24():
    assert F.degree == 8


def test_numeric_values():
    assert numeric(F.one) == 1
    assert abs(numeric(root_of_unity(6, 24)) - 1j) < 1e-14
    assert abs(numeric(root_of_unity(8, 24)) - complex(-0.5, 0.8660254037844386)) < 1e-14
    for k in range(24):
        assert abs(abs(numeric(root_of_unity(k, 24))) - 1) < 1e-14


def test_kernel_trivial_cases():
    zero = CycloMatrix.from_ints(F, np.zeros((3, 3), dtype=int))
    assert len(kernel_basis(zero)) == 3
    assert kernel_basis(CycloMatrix.identity(F, 3)) == []


def test_kernel_of_rotating_wave_condition():
    # e^{-2 pi i/3} C - Id; oracle: sympy nullspace gives (1, w, w^2)
    C = CycloMatrix.from_ints(F, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    M = C.scale(root_of_unity(-8, 24)) - CycloMatrix.identity(F, 3)
    (v,) = kernel_basis(M)
    v = [x / v[0] for x in v]
    w = root_of_unity(8, 24)
    assert v == [F.one, w, w * w]
    Mv = M @ CycloMatrix([[x] for x in v])
    assert all(row[0].is_zero() for row in Mv.rows)
    assert np.allclose(numeric_vector(v), [1, -0.5 + 0.8660254037844386j, -0.5 - 0.8660254037844386j])


@given(elements, elements, elements)
def test_field_associativity_and_inverse(a, b, c):
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == F.one


@given(elements, elements)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()


def test_conjugate_of_roots():
    for k in range(24):
        assert root_of_unity(k, 24).conj() == root_of_unity(24 - k, 24)


@given(elements, elements)
def test_numeric_is_ring_homomorphism(a, b):
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-13 * (1 + abs(numeric(a)) * abs(numeric(b)))
    assert abs(numeric(a + b) - numeric(a) - numeric(b)) < 1e-13


def test_rank_nullity_random_matrices():
    rng = np.random.default_rng(1)
    for _ in range(200):
        r, c = rng.integers(1, 5, size=2)
        rows = []
        for _ in range(r):
            row = []
            for _ in range(c):
                k = int(rng.integers(0, 24))
                s = int(rng.integers(-2, 3))
                row.append(root_of_unity(k, 24) * s)
            rows.append(row)
        if rng.random() < 0.3 and r > 1:
            rows[-1] = [x + y for x, y in zip(rows[0], rows[1])]
        M = CycloMatrix(rows)
        ker = kernel_basis(M)
        assert len(ker) + M.rank() == c
        for v in ker:
            assert all(sum((a * b for a, b in zip(row, v)), F.zero).is_zero() for row in rows)
        # numeric cross-check of the rank
        assert M.rank() == np.linalg.matrix_rank(M.numeric(), tol=1e-9)

"""Exact arithmetic over the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) modulo
the N-th cyclotomic polynomial. Coefficients are Python ints where possible
and :class:`fractions.Fraction` otherwise, so equality is exact.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CyclotomicField",
    "Cyclotomic",
    "CycloMatrix",
    "field",
    "root_of_unity",
    "kernel_basis",
    "rref",
    "numeric",
    "numeric_vector",
]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _poly_divmod(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (low-order first); den monic.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = num[k + len(den) - 1]
        out[k] = coef
        if coef:
            for j, d in enumerate(den):
                num[k + j] -= coef * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low-order first) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """The field Q(zeta_N) with a precomputed table of zeta^k mod Phi_N."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("field order must be positive")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # powers[k] = coefficients of zeta^k reduced, for 0 <= k < N + 2d
        powers = []
        cur = [1] + [0] * (d - 1)
        for _ in range(order + 2 * d):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(d):
                    cur[j] -= top * self.modulus[j]
        self._powers = powers
        self._zeta_points = np.exp(2j * np.pi * np.arange(d) / order)
        self.zero = Cyclotomic(self, (0,) * d)
        self.one = self.root(0)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def root(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self, self._powers[k % self.order])

    def __call__(self, value) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        return Cyclotomic(self, (_norm(Fraction(value)),) + (0,) * (self.degree - 1))

    def _reduce(self, coeffs: Sequence) -> tuple:
        d = self.degree
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                p = self._powers[k]
                for j in range(d):
                    if p[j]:
                        out[j] += c * p[j]
        return tuple(_norm(c) for c in out)


class Cyclotomic:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: Sequence):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient vector length must equal phi(N)")
        self.field = field
        self.coeffs = tuple(_norm(c) for c in coeffs)
        self._hash = None

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise ValueError("mismatched cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        d = len(a)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def times_root(self, k: int) -> "Cyclotomic":
        """Multiply by zeta^k (a shift followed by reduction)."""
        k %= self.field.order
        shifted = [0] * (k + self.field.degree)
        shifted[k:] = self.coeffs
        return Cyclotomic(self.field, self.field._reduce(shifted))

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        d = self.field.degree
        # Columns are self * zeta^j; solve M x = e_0.
        cols = [self.times_root(j).coeffs for j in range(d)]
        aug = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            p = next(r for r in range(c, d) if aug[r][c] != 0)
            aug[c], aug[p] = aug[p], aug[c]
            piv = aug[c][c]
            aug[c] = [v / piv for v in aug[c]]
            for r in range(d):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
        return Cyclotomic(self.field, [row[-1] for row in aug])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def conj(self) -> "Cyclotomic":
        """Complex conjugation, zeta^k -> zeta^(N-k)."""
        n = self.field.order
        prod = [0] * n
        for k, c in enumerate(self.coeffs):
            if c:
                prod[(n - k) % n] += c
        return Cyclotomic(self.field, self.field._reduce(prod))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return other.field is self.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.coeffs))
        return self._hash

    def __complex__(self):
        return numeric(self)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return "Cyc(" + (" + ".join(terms) or "0") + f"; N={self.field.order})"


@lru_cache(maxsize=None)
def field(order: int = 24) -> CyclotomicField:
    """Shared field instance for a given N."""
    return CyclotomicField(order)


def root_of_unity(k: int, N: int, F: CyclotomicField | None = None) -> Cyclotomic:
    """Return zeta_N^k. ``F`` (if given) must have order N."""
    if F is None:
        F = field(N)
    elif F.order != N:
        raise ValueError(f"field has order {F.order}, requested root of order {N}")
    return F.root(k)


def numeric(value: Cyclotomic) -> complex:
    pts = value.field._zeta_points
    return complex(sum(float(c) * pts[k] for k, c in enumerate(value.coeffs) if c))


def numeric_vector(vec: Iterable[Cyclotomic]) -> np.ndarray:
    return np.array([numeric(v) for v in vec], dtype=complex)


class CycloMatrix:
    """Dense matrix with Cyclotomic entries."""

    def __init__(self, rows: Sequence[Sequence[Cyclotomic]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.field = rows[0][0].field

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @classmethod
    def from_ints(cls, F: CyclotomicField, data) -> "CycloMatrix":
        return cls([[F(int(x)) for x in row] for row in data])

    @classmethod
    def identity(cls, F: CyclotomicField, n: int) -> "CycloMatrix":
        return cls([[F.one if i == j else F.zero for j in range(n)] for i in range(n)])

    def __matmul__(self, other):
        if isinstance(other, CycloMatrix):
            cols = list(zip(*other.rows))
            return CycloMatrix([[_dot(r, c) for c in cols] for r in self.rows])
        return tuple(_dot(r, other) for r in self.rows)

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return CycloMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c: Cyclotomic) -> "CycloMatrix":
        return CycloMatrix([[c * a for a in r] for r in self.rows])

    def conj_transpose(self) -> "CycloMatrix":
        return CycloMatrix([[a.conj() for a in col] for col in zip(*self.rows)])

    def stack(self, other: "CycloMatrix") -> "CycloMatrix":
        return CycloMatrix(self.rows + other.rows)

    def rank(self) -> int:
        return len(rref(self.rows)[1])

    def numeric(self) -> np.ndarray:
        return np.array([[numeric(a) for a in r] for r in self.rows], dtype=complex)

    def __eq__(self, other):
        return isinstance(other, CycloMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        if x and y:
            t = x * y
            acc = t if acc is None else acc + t
    return acc if acc is not None else a[0].field.zero


def rref(rows: Sequence[Sequence[Cyclotomic]]):
    """Reduced row echelon form. Returns (rows, pivot columns).

    Pivot rule: the first row (top to bottom) with a nonzero entry in the
    current column.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = piv.inverse()
            m[r] = [inv * v if v else v for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [v - f * w if w else v for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def kernel_basis(M: CycloMatrix | Sequence[Sequence[Cyclotomic]]) -> list[tuple[Cyclotomic, ...]]:
    """Exact basis of the right null space of ``M``."""
    rows = M.rows if isinstance(M, CycloMatrix) else tuple(tuple(r) for r in M)
    F = rows[0][0].field
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def span_key(vectors: Sequence[Sequence[Cyclotomic]]) -> tuple:
    """Canonical, hashable key of the span of ``vectors`` (its RREF)."""
    if not vectors:
        return ()
    red, _ = rref(vectors)
    return tuple(tuple(v.coeffs for v in row) for row in red)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def phase_to_complex(q: Fraction) -> complex:
    return cmath.exp(2j * cmath.pi * float(q))

"""Cubic Gamma x S^1-equivariant normal form on C^3.

    z1' = z1 (lam + gam |z|^2 + alpha (|z2|^2 + |z3|^2)) + beta conj(z1) (z2^2 + z3^2)

and cyclically for z2, z3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .twisted import FixSubspace

__all__ = [
    "NFParams",
    "eval_vf",
    "vf_scalar",
    "jacobian_origin",
    "restrict",
    "RestrictedField",
    "NotInvariantError",
    "INVARIANCE_TOL",
    "EQUIVARIANCE_TOL",
]

INVARIANCE_TOL = 1e-10
EQUIVARIANCE_TOL = 1e-12


@dataclass(frozen=True)
class NFParams:
    lam: complex
    alpha: complex
    beta: complex
    gamma: complex

    @property
    def ratio(self) -> complex:
        return self.alpha / self.beta


def eval_vf(z, p: NFParams) -> np.ndarray:
    """Normal-form vector field; z has shape (..., 3)."""
    z = np.asarray(z, dtype=complex)
    a = np.abs(z) ** 2
    s = a.sum(axis=-1, keepdims=True)
    sq = z * z
    return z * (p.lam + p.gamma * s + p.alpha * (s - a)) + p.beta * np.conj(z) * (sq.sum(axis=-1, keepdims=True) - sq)


def vf_scalar(p: NFParams) -> Callable[[complex, complex, complex], tuple[complex, complex, complex]]:
    """Same field on plain Python complexes; much faster than numpy for single states."""
    lam, al, be, ga = complex(p.lam), complex(p.alpha), complex(p.beta), complex(p.gamma)

    def f(z1: complex, z2: complex, z3: complex):
        a1 = z1.real * z1.real + z1.imag * z1.imag
        a2 = z2.real * z2.real + z2.imag * z2.imag
        a3 = z3.real * z3.real + z3.imag * z3.imag
        base = lam + ga * (a1 + a2 + a3)
        s1, s2, s3 = z1 * z1, z2 * z2, z3 * z3
        return (
            z1 * (base + al * (a2 + a3)) + be * z1.conjugate() * (s2 + s3),
            z2 * (base + al * (a1 + a3)) + be * z2.conjugate() * (s1 + s3),
            z3 * (base + al * (a1 + a2)) + be * z3.conjugate() * (s1 + s2),
        )

    return f


def jacobian_origin(p: NFParams) -> np.ndarray:
    """The cubic terms vanish to second order, so the linearisation is lam * Id."""
    return complex(p.lam) * np.eye(3, dtype=complex)


class NotInvariantError(ValueError):
    pass


@dataclass
class RestrictedField:
    """The normal form in coordinates w of a flow-invariant subspace, z = B w."""

    basis: np.ndarray  # (3, d)
    params: NFParams
    c: complex | None = None  # reduced cubic coefficient when d = 1

    def __post_init__(self):
        self.projector = np.linalg.pinv(self.basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def lift(self, w) -> np.ndarray:
        return np.asarray(w, dtype=complex) @ self.basis.T

    def coords(self, z) -> np.ndarray:
        return np.asarray(z, dtype=complex) @ self.projector.T

    def __call__(self, w) -> np.ndarray:
        return self.coords(eval_vf(self.lift(w), self.params))

    def scalar(self) -> Callable:
        """Python-complex evaluator w -> w' for tuples of length d."""
        f = vf_scalar(self.params)
        B = [[complex(x) for x in row] for row in self.basis]
        P = [[complex(x) for x in row] for row in self.projector]
        d = self.dim
        rd = range(d)

        def g(*w):
            z = [sum(B[i][j] * w[j] for j in rd) for i in range(3)]
            fz = f(*z)
            return tuple(P[j][0] * fz[0] + P[j][1] * fz[1] + P[j][2] * fz[2] for j in rd)

        return g


def _numeric_basis(subspace) -> np.ndarray:
    if isinstance(subspace, FixSubspace):
        return subspace.numeric_basis()
    B = np.asarray(subspace, dtype=complex)
    return B.reshape(3, -1)


def restrict(subspace, p: NFParams, seed: int = 0) -> RestrictedField:
    """Restrict to a flow-invariant subspace, given as a FixSubspace or a (3, d) basis.

    Invariance is checked on 20 random points. For a line the reduced
    equation is w' = w (lam + c |w|^2) and c is obtained from two radii.
    """
    B = _numeric_basis(subspace)
    rf = RestrictedField(B, p)
    rng = np.random.default_rng(seed)
    w = rng.normal(size=(20, rf.dim)) + 1j * rng.normal(size=(20, rf.dim))
    fz = eval_vf(rf.lift(w), p)
    resid = np.abs(fz - rf.lift(rf.coords(fz))).max()
    if resid > INVARIANCE_TOL * max(1.0, np.abs(fz).max()):
        raise NotInvariantError(f"subspace is not flow-invariant (residual {resid:.2e})")
    if rf.dim == 1:
        radii = np.array([0.5, 1.0])
        g = rf(radii[:, None])[:, 0] / radii
        lam, c = np.linalg.solve(np.stack([np.ones(2), radii**2], axis=1), g)
        rf.c = complex(c)
    return rf

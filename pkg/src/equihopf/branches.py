"""Submaximal branches of the cubic normal form inside 4-dimensional fixed-point subspaces.

Two families are handled:

* ``z1z2_0``: points (xi z, z, 0) with xi = r e^{i phi}. A relative
  equilibrium needs alpha (1 - r^2) + beta (e^{-2i phi} - r^2 e^{2i phi}) = 0.
* ``zz_x``: points (z, z, xi z) with xi = r e^{-i psi}, subject to
  beta - alpha + r^2 alpha + beta (r^2 e^{-2i psi} - 2 e^{2i psi}) = 0.

Only the ratio alpha/beta matters. For the second family, (x, y) =
(cos 2psi, sin 2psi) must lie on the unit circle and on the conic I(x, y) = 0
with R(x, y) > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict

import numpy as np
from scipy.optimize import bisect, minimize_scalar

__all__ = [
    "BranchSolution",
    "CurveData",
    "DegenerateInputError",
    "solve_z1z2",
    "z1z2_residual",
    "curve_coefficients",
    "intersect_circle",
    "solve_zz_x",
    "zz_x_residual",
    "figure_geometry",
    "submaximal_count",
    "GRID_SIZE",
    "R_TOL",
]

GRID_SIZE = 4096
ROOT_TOL = 1e-13
TANGENCY_TOL = 1e-8
R_TOL = 1e-10
RESIDUAL_TOL = 1e-9

CLASSIFICATIONS = (
    "submaximal",
    "maximal_zzz",
    "maximal_zz0",
    "maximal_izz0",
    "r_zero_boundary",
    "r_infinity_boundary",
    "tangency",
)


class DegenerateInputError(ValueError):
    """beta = 0: the branch equations lose their meaning."""


@dataclass
class BranchSolution:
    subspace: str  # "z1z2_0" or "zz_x"
    r_squared: float
    angle: float  # phi for z1z2_0, psi for zz_x
    circle_point: tuple[float, float]
    residual: float
    classification: str

    @property
    def r(self) -> float:
        return math.sqrt(self.r_squared) if math.isfinite(self.r_squared) else math.inf

    @property
    def xi(self) -> complex:
        if not math.isfinite(self.r_squared):
            return complex(math.inf)
        sign = 1 if self.subspace == "z1z2_0" else -1
        return self.r * cmath.exp(sign * 1j * self.angle)

    def point(self) -> np.ndarray:
        """A representative point of the branch direction in C^3."""
        if self.subspace == "z1z2_0":
            return np.array([self.xi, 1, 0], dtype=complex)
        return np.array([1, 1, self.xi], dtype=complex)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["xi"] = [self.xi.real, self.xi.imag] if math.isfinite(self.r_squared) else None
        d["circle_point"] = list(self.circle_point)
        return d


def _ratio(alpha: complex, beta: complex) -> complex:
    if beta == 0:
        raise DegenerateInputError("beta = 0: branch equations are degenerate")
    return complex(alpha) / complex(beta)


def z1z2_residual(alpha: complex, beta: complex, r_squared: float, phi: float) -> float:
    e = cmath.exp(2j * phi)
    return abs(alpha * (1 - r_squared) + beta * (1 / e - r_squared * e))


def solve_z1z2(alpha: complex, beta: complex, band: float = 1e-12) -> list[BranchSolution]:
    """Branches (xi z, z, 0) in the plane {(z1, z2, 0)}.

    Generic submaximal branches exist iff |alpha/beta| > 1 and
    |Re(alpha/beta)| < 1. At Re = +1 (resp. -1) the pair collapses to
    xi = ±i (resp. ±1); at |alpha/beta| = 1 one of r -> 0, r -> inf occurs.
    """
    rho = _ratio(alpha, beta)
    u, v = rho.real, rho.imag
    if abs(u) > 1 + band:
        return []
    if abs(abs(u) - 1) <= band:
        tag = "maximal_izz0" if u > 0 else "maximal_zz0"
        # cos 2phi = -Re(alpha/beta): xi = ±i when Re = 1, xi = ±1 when Re = -1
        phis = (math.pi / 2, -math.pi / 2) if u > 0 else (0.0, math.pi)
        out = []
        for phi in phis:
            e = cmath.exp(2j * phi)
            out.append(BranchSolution("z1z2_0", 1.0, phi, (e.real, e.imag), z1z2_residual(alpha, beta, 1.0, phi), tag))
        return out
    out = []
    for s in (math.sqrt(1 - u * u), -math.sqrt(1 - u * u)):
        phi = math.atan2(s, -u) / 2
        point = (-u, s)
        if abs(v + s) <= band:
            out.append(BranchSolution("z1z2_0", math.inf, phi, point, 0.0, "r_infinity_boundary"))
            continue
        r2 = (v - s) / (v + s)
        if abs(r2) <= band:
            out.append(BranchSolution("z1z2_0", 0.0, phi, point, z1z2_residual(alpha, beta, 0.0, phi), "r_zero_boundary"))
            continue
        if r2 < 0:
            continue
        out.append(BranchSolution("z1z2_0", r2, phi, point, z1z2_residual(alpha, beta, r2, phi), "submaximal"))
    return out


@dataclass(frozen=True)
class CurveData:
    x0: float
    y0: float
    Kr: float
    Ki: float
    ratio: complex

    def R(self, x, y):
        return (x - self.x0) ** 2 - (y - self.y0) ** 2 + self.Kr

    def I(self, x, y):
        return (x - self.x0) * (y - self.y0) + self.Ki


def curve_coefficients(ratio: complex) -> CurveData:
    rho = complex(ratio)
    u, v = rho.real, rho.imag
    return CurveData(
        x0=(1 - 3 * u) / 4,
        y0=v / 4,
        Kr=((3 * v) ** 2 - (u + 1) ** 2) / 16,
        Ki=3 * v * (u + 1) / 16,
        ratio=rho,
    )


def intersect_circle(
    curve: CurveData, grid: int = GRID_SIZE, tol: float = ROOT_TOL, tangency_tol: float = TANGENCY_TOL
) -> list[tuple[float, float, bool]]:
    """Points (x, y, tangent) where I = 0 meets the unit circle.

    g(tau) = I(cos tau, sin tau) is scanned on a uniform grid; sign changes are
    refined by bisection and grid-local minima of |g| without a sign change
    are refined by bounded minimisation and accepted as tangencies when the
    minimum is below ``tangency_tol``.
    """

    def g(t):
        return curve.I(math.cos(t), math.sin(t))

    taus = 2 * math.pi * np.arange(grid) / grid
    vals = curve.I(np.cos(taus), np.sin(taus))
    h = 2 * math.pi / grid
    roots: list[tuple[float, bool]] = []
    for k in range(grid):
        a, b = vals[k], vals[(k + 1) % grid]
        ta = taus[k]
        if abs(a) <= tol:
            left = vals[k - 1]
            tangent = left * b > 0
            roots.append((ta, bool(tangent)))
        elif abs(b) > tol and a * b < 0:
            t = bisect(g, ta, ta + h, xtol=1e-15, maxiter=200)
            roots.append((t % (2 * math.pi), False))
    for k in range(grid):
        a, left, right = abs(vals[k]), abs(vals[k - 1]), abs(vals[(k + 1) % grid])
        if a <= tol or not (a <= left and a <= right):
            continue
        if vals[k - 1] * vals[(k + 1) % grid] <= 0 or vals[k] * vals[k - 1] <= 0:
            continue
        res = minimize_scalar(lambda t: abs(g(t)), bounds=(taus[k] - h, taus[k] + h), method="bounded", options={"xatol": 1e-14})
        if res.fun < tangency_tol:
            roots.append((res.x % (2 * math.pi), True))
    roots.sort()
    merged: list[tuple[float, bool]] = []
    for t, tan in roots:
        if merged and _circ_dist(t, merged[-1][0]) < 1e-7:
            merged[-1] = (merged[-1][0], merged[-1][1] or tan)
        else:
            merged.append((t, tan))
    if len(merged) > 1 and _circ_dist(merged[0][0], merged[-1][0]) < 1e-7:
        t0, tan0 = merged.pop()
        merged[0] = (merged[0][0], merged[0][1] or tan0)
    if not any(_circ_dist(t, 0.0) < 1e-7 for t, _ in merged):
        # (1, 0) is always a root; it can hide as a tangency below grid resolution
        merged.insert(0, (0.0, True))
    return [(math.cos(t), math.sin(t), tan) for t, tan in merged]


def _circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def zz_x_residual(alpha: complex, beta: complex, r_squared: float, psi: float) -> float:
    e = cmath.exp(2j * psi)
    return abs(beta - alpha + r_squared * alpha + beta * (r_squared / e - 2 * e))


def solve_zz_x(alpha: complex, beta: complex, grid: int = GRID_SIZE) -> list[BranchSolution]:
    """Branches (z, z, xi z) in {(z1, z1, z2)}, one entry per circle intersection."""
    rho = _ratio(alpha, beta)
    curve = curve_coefficients(rho)
    out = []
    for x, y, tangent in intersect_circle(curve, grid):
        tau = math.atan2(y, x) % (2 * math.pi)
        psi = tau / 2
        if _circ_dist(tau, 0.0) < 1e-9:
            out.append(BranchSolution("zz_x", 1.0, 0.0, (1.0, 0.0), zz_x_residual(alpha, beta, 1.0, 0.0), "maximal_zzz"))
            continue
        R = curve.R(x, y)
        denom = abs(complex(x, -y) + rho) ** 2
        if abs(R) <= R_TOL and denom <= R_TOL:
            out.append(BranchSolution("zz_x", math.inf, psi, (x, y), 0.0, "r_infinity_boundary"))
        elif abs(R) <= R_TOL:
            out.append(BranchSolution("zz_x", 0.0, psi, (x, y), zz_x_residual(alpha, beta, 0.0, psi), "r_zero_boundary"))
        elif R > 0:
            r2 = 2 * R / denom
            tag = "tangency" if tangent else "submaximal"
            out.append(BranchSolution("zz_x", r2, psi, (x, y), zz_x_residual(alpha, beta, r2, psi), tag))
    return out


def submaximal_count(solutions: list[BranchSolution]) -> int:
    return sum(s.classification == "submaximal" for s in solutions)


def _conic_branches(x0, y0, K, kind: str, extent: float = 2.5, n: int = 400) -> list[np.ndarray]:
    """Polylines for (x-x0)(y-y0) = -K (kind 'I') or (x-x0)^2 - (y-y0)^2 = -K (kind 'R')."""
    lines = []
    if kind == "I":
        if K == 0:
            t = np.linspace(-extent, extent, n)
            lines.append(np.column_stack([np.full(n, x0), t]))
            lines.append(np.column_stack([t, np.full(n, y0)]))
            return lines
        for side in (-1, 1):
            dx = side * np.geomspace(1e-3, 2 * extent, n)
            xs = x0 + dx
            lines.append(np.column_stack([xs, y0 - K / dx]))
        return lines
    c = -K
    t = np.linspace(-3, 3, n)
    if abs(c) < 1e-15:
        s = np.linspace(-extent, extent, n)
        lines.append(np.column_stack([x0 + s, y0 + s]))
        lines.append(np.column_stack([x0 + s, y0 - s]))
    elif c > 0:
        a = math.sqrt(c)
        for side in (-1, 1):
            lines.append(np.column_stack([x0 + side * a * np.cosh(t), y0 + a * np.sinh(t)]))
    else:
        a = math.sqrt(-c)
        for side in (-1, 1):
            lines.append(np.column_stack([x0 + a * np.sinh(t), y0 + side * a * np.cosh(t)]))
    return lines


def figure_geometry(ratio: complex, samples: int = 361) -> dict:
    """Everything needed to redraw the circle/conic picture for one ratio."""
    curve = curve_coefficients(ratio)
    t = np.linspace(0, 2 * np.pi, samples)
    sols = solve_zz_x(complex(ratio), 1.0)
    markers = []
    for s in sols:
        x, y = s.circle_point
        markers.append(
            {
                "x": x,
                "y": y,
                "R": curve.R(x, y),
                "classification": s.classification,
                "r_squared": s.r_squared,
                "psi": s.angle,
            }
        )
    return {
        "ratio": complex(ratio),
        "curve": curve,
        "circle": np.column_stack([np.cos(t), np.sin(t)]),
        "hyperbola": _conic_branches(curve.x0, curve.y0, curve.Ki, "I"),
        "r_zero": _conic_branches(curve.x0, curve.y0, curve.Kr, "R"),
        "markers": markers,
        "submaximal": sum(m["classification"] == "submaximal" for m in markers),
    }

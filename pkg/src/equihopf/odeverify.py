"""Numerical check of orbit symmetries for the cubic normal form.

Orbits are integrated with fixed-step RK4, their period is measured, and
for every g in Gamma the best time shift s with g x(t + s) = x(t) is found.
The accepted g form H; those with zero shift form K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .branches import BranchSolution
from .group import ALPHABETS, SELECTORS, FiniteGroup, Subgroup, build_group, format_word
from .hmodk import hopf_catalog, pair_key, quotient_is_cyclic, structure_name, subgroup_words
from .normalform import NFParams, eval_vf, restrict, vf_scalar
from .twisted import DEFAULT_N, FixSubspace, reference_subspace

__all__ = [
    "Trajectory",
    "OrbitSample",
    "DetectedSymmetry",
    "DivergenceError",
    "NotPeriodicError",
    "AmbiguousSymmetryError",
    "InconsistentSymmetryError",
    "integrate",
    "find_periodic",
    "detect_symmetries",
    "interpret_orbit",
    "supercritical_params",
    "axial_seed",
    "branch_seed",
    "verify_row",
    "DEFAULT_RATIOS",
    "DEFAULT_DT",
    "DEFAULT_TOL",
]

DEFAULT_DT = 1e-3
DEFAULT_TOL = 1e-5
GAP_FACTOR = 10.0


class DivergenceError(RuntimeError):
    pass


class NotPeriodicError(RuntimeError):
    pass


class AmbiguousSymmetryError(RuntimeError):
    pass


class InconsistentSymmetryError(RuntimeError):
    pass


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (n, 3) complex


def _rk4_step(f: Callable, w: tuple, h: float) -> tuple:
    k1 = f(*w)
    k2 = f(*[a + 0.5 * h * b for a, b in zip(w, k1)])
    k3 = f(*[a + 0.5 * h * b for a, b in zip(w, k2)])
    k4 = f(*[a + h * b for a, b in zip(w, k3)])
    return tuple(a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(w, k1, k2, k3, k4))


def _run(f: Callable, w: tuple, h: float, n: int, every: int, t0: float = 0.0) -> list[tuple]:
    out = [w]
    for k in range(1, n + 1):
        w = _rk4_step(f, w, h)
        if k % every == 0 or k == n:
            if not all(math.isfinite(x.real) and math.isfinite(x.imag) for x in w):
                raise DivergenceError(f"non-finite state at t = {t0 + k * h:.6g}")
            out.append(w)
    return out


class _System:
    """Evaluator in full C^3 or in coordinates of an invariant subspace."""

    def __init__(self, p: NFParams, subspace=None):
        self.p = p
        if subspace is None:
            self.f = vf_scalar(p)
            self.B = np.eye(3, dtype=complex)
            self.P = np.eye(3, dtype=complex)
        else:
            rf = restrict(subspace, p)
            self.f = rf.scalar()
            self.B, self.P = rf.basis, rf.projector

    def coords(self, z) -> tuple:
        return tuple(complex(x) for x in self.P @ np.asarray(z, dtype=complex))

    def lift(self, ws) -> np.ndarray:
        return np.asarray(ws, dtype=complex) @ self.B.T


def integrate(
    p: NFParams, z0, t_end: float, dt: float = DEFAULT_DT, subspace=None, record_every: int = 1
) -> Trajectory:
    """Fixed-step RK4 for the normal form; optionally inside an invariant subspace."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    sysm = _System(p, subspace)
    n = max(1, int(round(t_end / dt)))
    h = t_end / n
    ws = _run(sysm.f, sysm.coords(z0), h, n, record_every)
    idx = list(range(0, n + 1, record_every))
    if idx[-1] != n:
        idx.append(n)
    return Trajectory(np.array(idx) * h, sysm.lift(ws))


@dataclass
class OrbitSample:
    times: np.ndarray
    states: np.ndarray  # samples over one period, first == start, last == state(period)
    period: float
    closure_error: float
    frequency: float | None = None  # omega for relative equilibria e^{i omega t} z0
    poincare_period: float | None = None
    method: str = "poincare"

    @property
    def samples(self) -> np.ndarray:
        """Uniform samples over [0, period) for Fourier interpolation."""
        return self.states[:-1]


def _real_dot(a, b) -> float:
    return sum((x.conjugate() * y).real for x, y in zip(a, b))


def _poincare_period(f, w0: tuple, dt: float, horizon: float) -> float:
    n0 = f(*w0)
    norm = math.sqrt(_real_dot(n0, n0))
    n0 = tuple(x / norm for x in n0)

    def height(w):
        return _real_dot(tuple(a - b for a, b in zip(w, w0)), n0)

    w, t, went_negative = w0, 0.0, False
    prev_h = 0.0
    steps = int(horizon / dt)
    for _ in range(steps):
        w_next = _rk4_step(f, w, dt)
        h_next = height(w_next)
        if h_next < 0:
            went_negative = True
        elif went_negative and prev_h < 0:
            lo, hi = 0.0, dt
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if height(_rk4_step(f, w, mid)) < 0:
                    lo = mid
                else:
                    hi = mid
            return t + 0.5 * (lo + hi)
        w, t, prev_h = w_next, t + dt, h_next
    raise NotPeriodicError(f"no return to the Poincaré section within t = {horizon}")


def find_periodic(
    p: NFParams,
    seed,
    transient: float = 200.0,
    dt: float = DEFAULT_DT,
    horizon: float = 200.0,
    subspace=None,
    samples: int = 512,
) -> OrbitSample:
    """Integrate past a transient, then measure one period and sample it.

    For relative equilibria (f(z) = i omega z) the period is 2 pi / |omega|;
    otherwise the first return to the section through the point normal to
    the flow is used.
    """
    sysm = _System(p, subspace)
    w = sysm.coords(seed)
    if transient > 0:
        n = int(round(transient / dt))
        w = _run(sysm.f, w, transient / n, n, n)[-1]
    fw = sysm.f(*w)
    fz = sysm.lift([fw])[0]
    z = sysm.lift([w])[0]
    fnorm, znorm = np.linalg.norm(fz), np.linalg.norm(z)
    if fnorm <= 1e-12 * max(1.0, znorm):
        raise NotPeriodicError("the state is an equilibrium" + (" (the origin)" if znorm < 1e-12 else ""))
    omega = float(np.vdot(z, fz).imag / znorm**2)
    rel_eq = np.linalg.norm(fz - 1j * omega * z) <= 1e-8 * fnorm and abs(omega) > 0
    poinc = _poincare_period(sysm.f, w, dt, horizon)
    period = 2 * math.pi / abs(omega) if rel_eq else poinc
    n = samples * max(1, math.ceil(period / (dt * samples)))
    ws = _run(sysm.f, w, period / n, n, n // samples)
    states = sysm.lift(ws)
    closure = float(np.linalg.norm(states[-1] - states[0]))
    times = np.linspace(0.0, period, samples + 1)
    return OrbitSample(
        times, states, period, closure, omega if rel_eq else None, poinc, "phase-velocity" if rel_eq else "poincare"
    )


@dataclass
class DetectedSymmetry:
    group: FiniteGroup
    H: Subgroup
    K: Subgroup
    shifts: dict[int, Fraction | float]  # g index -> s / period
    scores: dict[int, float]
    best_rejected: float
    words: dict[str, dict[str, list[str]]] = dc_field(default_factory=dict)

    def phases(self, frequency: float | None) -> dict[int, Fraction | float]:
        """Phase map of the matching twisted subgroup: s/period, negated when omega < 0."""
        sign = -1 if (frequency is not None and frequency < 0) else 1
        return {g: (sign * s) % 1 for g, s in self.shifts.items()}

    def as_dict(self) -> dict:
        G = self.group
        return {
            "group": G.name,
            "H": structure_name(self.H),
            "H_order": len(self.H),
            "K": structure_name(self.K),
            "K_order": len(self.K),
            "shifts": {format_word(G.words[g]) or "Id": str(s) for g, s in sorted(self.shifts.items())},
            "best_rejected": self.best_rejected,
            "words": self.words,
        }


def _shift_bank(X: np.ndarray, fracs: np.ndarray) -> np.ndarray:
    """x(t + s T) on the sample grid for each fraction s, by trigonometric interpolation."""
    M = X.shape[0]
    F = np.fft.fft(X, axis=0)
    k = np.fft.fftfreq(M, d=1.0 / M)
    if M % 2 == 0:
        F = F.copy()
        F[M // 2] *= 0  # drop the Nyquist term so real shifts stay well defined
    E = np.exp(2j * np.pi * np.outer(fracs, k))
    return np.fft.ifft(E[:, :, None] * F[None, :, :], axis=1)


def detect_symmetries(
    orbit: OrbitSample, G: FiniteGroup, N: int = DEFAULT_N, tol: float = DEFAULT_TOL, check_closure: bool = True
) -> DetectedSymmetry:
    """Spatio-temporal symmetries of a sampled periodic orbit.

    Distances are max_t |g x(t+s) - x(t)| relative to max_t |x(t)|. Shifts are
    scanned on a grid of spacing period/N and refined by golden section.
    Every rejected element must score at least 10 tol.
    """
    if check_closure and not orbit.closure_error < tol / 10:
        raise NotPeriodicError(f"orbit closure error {orbit.closure_error:.2e} exceeds tol/10")
    X = orbit.samples
    scale = np.abs(X).max()
    grid = np.arange(N) / N
    bank = _shift_bank(X, grid)  # (N, M, 3)

    def dist_many(g, shifted):
        gx = shifted @ g.matrix.T
        return np.linalg.norm(gx - X, axis=-1).max(axis=-1) / scale

    def dist_one(g, frac):
        return float(dist_many(g, _shift_bank(X, np.array([frac])))[0])

    shifts, scores = {}, {}
    rejected = []
    for gi, g in enumerate(G.elements):
        d = dist_many(g, bank)
        m = int(np.argmin(d))
        res = minimize_scalar(
            lambda s: dist_one(g, s), bounds=(grid[m] - 1 / N, grid[m] + 1 / N), method="bounded", options={"xatol": 1e-12}
        )
        best, frac = (res.fun, res.x % 1) if res.fun < d[m] else (float(d[m]), grid[m])
        scores[gi] = float(best)
        if best < tol:
            snapped = round(frac * N) % N
            shifts[gi] = Fraction(snapped, N) if abs(frac - round(frac * N) / N) < tol else frac
        else:
            rejected.append(best)
    best_rejected = min(rejected) if rejected else math.inf
    if best_rejected < GAP_FACTOR * tol:
        raise AmbiguousSymmetryError(
            f"ambiguous: best rejected element scores {best_rejected:.2e} < {GAP_FACTOR:g} * tol"
        )
    H = Subgroup(G, shifts)
    if not H.is_closed():
        raise InconsistentSymmetryError("accepted elements do not form a subgroup; tolerance too loose?")
    K = Subgroup(G, (g for g, s in shifts.items() if s == 0))
    if not K.is_closed() or not quotient_is_cyclic(H, K):
        raise InconsistentSymmetryError("H/K is not cyclic")
    for a in shifts:
        for b in shifts:
            ab = G.table[a][b]
            if abs(((shifts[a] + shifts[b] - shifts[ab]) + 0.5) % 1 - 0.5) > 10 * tol:
                raise InconsistentSymmetryError("time shifts are not a homomorphism to R/Z")
    det = DetectedSymmetry(G, H, K, shifts, scores, best_rejected)
    for sel, alphabet in ALPHABETS.items():
        try:
            det.words[sel] = {"H": subgroup_words(H, alphabet), "K": subgroup_words(K, alphabet)}
        except ValueError:
            continue  # alphabet does not generate these elements
    return det


def interpret_orbit(
    orbit: OrbitSample, selectors: Sequence[str] = SELECTORS, N: int = DEFAULT_N, tol: float = DEFAULT_TOL
) -> dict[str, DetectedSymmetry]:
    """The same orbit read in each group: same matrices, different (H, K)."""
    return {sel: detect_symmetries(orbit, build_group(sel), N, tol) for sel in selectors}


def supercritical_params(seed: int = 0, lam: complex = 0.1 + 1j, tries: int = 10_000) -> NFParams:
    """Search for (alpha, beta, gamma) with Re c < 0 on every C-axial line.

    Coefficients are drawn from a fixed-seed normal distribution; a draw is
    kept when all five reduced coefficients have Re c <= -0.1 and every
    rotating frequency omega = Im lam + Im c |z|^2 stays away from zero.
    """
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        a, b, g = rng.normal(size=3) + 1j * rng.normal(size=3)
        p = NFParams(lam, complex(a), complex(b), complex(g))
        ok = True
        for idx in "bcdef":
            c = restrict(reference_subspace(idx), p).c
            if c.real > -0.1:
                ok = False
                break
            omega = lam.imag + c.imag * (-lam.real / c.real)
            if abs(omega) < 0.2:
                ok = False
                break
        if ok:
            return p
    raise RuntimeError("no supercritical parameters found")


def axial_seed(index: str, p: NFParams) -> tuple[np.ndarray, FixSubspace]:
    """Point on the relative equilibrium in the reference Fix of row ``index`` and that subspace."""
    fix = reference_subspace(index)
    rf = restrict(fix, p)
    amp2 = -p.lam.real / rf.c.real
    if amp2 <= 0:
        raise ValueError(f"no branch for row ({index}): Re lam / Re c must be negative")
    return math.sqrt(amp2) * fix.numeric_basis()[:, 0], fix


def branch_seed(sol: BranchSolution, p: NFParams) -> tuple[np.ndarray, np.ndarray]:
    """Point on a submaximal relative equilibrium and the basis of its 4-dim subspace.

    The amplitude solves Re lam + Re c |a|^2 = 0 for the coefficient c of the
    restricted equation along the branch direction.
    """
    z0 = sol.point()
    # along the line a z0 the cubic part is c |a|^2 a z0
    cubic = eval_vf(z0, NFParams(0, p.alpha, p.beta, p.gamma))
    k = int(np.argmax(np.abs(z0)))
    c = cubic[k] / z0[k]
    amp2 = -p.lam.real / c.real
    if amp2 <= 0:
        raise ValueError("amplitude equation has no positive root for these parameters")
    if sol.subspace == "z1z2_0":
        basis = np.array([[1, 0], [0, 1], [0, 0]], dtype=complex)
    else:
        basis = np.array([[1, 0], [1, 0], [0, 1]], dtype=complex)
    return math.sqrt(amp2) * z0, basis


# ratios with a submaximal branch in each 4-dim family
DEFAULT_RATIOS = {"g": 2j, "h": -0.75 + 1.25j}


def verify_row(
    index: str,
    seed: int = 0,
    ratio: complex | None = None,
    tol: float = DEFAULT_TOL,
    N: int = DEFAULT_N,
    transient: float = 200.0,
    selectors: Sequence[str] = SELECTORS,
) -> dict:
    """Integrate a branch of row ``index`` and compare its (H, K) with the catalog.

    Rows (b)-(f) start on the C-axial relative equilibrium and run through a
    transient inside Fix. Rows (g), (h) use the first submaximal solution for
    ``ratio`` (alpha = ratio * beta) and are integrated inside the 4-dim
    subspace from the exact branch point, since nothing is known about
    their transverse stability. Row (a) is the origin, an equilibrium.
    """
    from .branches import solve_z1z2, solve_zz_x

    p = supercritical_params(seed)
    report: dict = {"row": index, "seed": seed, "tol": tol}
    if index == "a":
        report["equilibrium"] = True
        report["notice"] = "the origin is an equilibrium, not a periodic orbit"
        return report
    if index in "bcdef":
        z0, fix = axial_seed(index, p)
        orbit = find_periodic(p, z0, transient=transient, subspace=fix)
        report["subspace"] = fix.describe()
    elif index in "gh":
        ratio = DEFAULT_RATIOS[index] if ratio is None else complex(ratio)
        alpha = ratio * p.beta
        sols = solve_z1z2(alpha, p.beta) if index == "g" else solve_zz_x(alpha, p.beta)
        sols = [s for s in sols if s.classification == "submaximal"]
        if not sols:
            raise ValueError(f"no submaximal branch for alpha/beta = {ratio} in row ({index})")
        for lam in (p.lam, complex(-p.lam.real, p.lam.imag)):
            p = NFParams(lam, alpha, p.beta, p.gamma)
            try:
                z0, basis = branch_seed(sols[0], p)
                break
            except ValueError:
                continue
        orbit = find_periodic(p, z0, transient=0.0, subspace=basis)
        report["subspace"] = "(xi z, z, 0)" if index == "g" else "(z, z, xi z)"
        report["ratio"] = [ratio.real, ratio.imag]
        report["xi"] = [sols[0].xi.real, sols[0].xi.imag]
    else:
        raise ValueError(f"unknown row {index!r}; expected one of a-h")
    report["equilibrium"] = False
    report["params"] = {k: [complex(v).real, complex(v).imag] for k, v in vars(p).items()}
    report["period"] = orbit.period
    report["poincare_period"] = orbit.poincare_period
    report["method"] = orbit.method
    report["closure_error"] = orbit.closure_error
    report["interpretations"] = {}
    for sel in selectors:
        G = build_group(sel)
        det = detect_symmetries(orbit, G, N, tol)
        expected = next(r for r in hopf_catalog(G, N) if r.index == index)
        d = det.as_dict()
        d["matches_catalog"] = pair_key(det.H, det.K) == pair_key(expected.H, expected.K)
        report["interpretations"][sel] = d
    return report

"""Command-line front end: ``equihopf {group,isotropy,hmodk,hopf,branches,verify}``."""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import serialize as ser
from .branches import DegenerateInputError, figure_geometry
from .group import SELECTORS
from .odeverify import (
    AmbiguousSymmetryError,
    DEFAULT_TOL,
    DivergenceError,
    InconsistentSymmetryError,
    NotPeriodicError,
    verify_row,
)
from .twisted import DEFAULT_N

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

FORMATS = {
    "group": ("text", "json", "dot"),
    "isotropy": ("text", "json", "dot"),
    "hmodk": ("text", "json", "csv"),
    "hopf": ("text", "json", "csv"),
    "branches": ("text", "json", "csv", "svg"),
    "verify": ("text", "json"),
}

_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_complex(text: str) -> complex:
    """Parse "a+bi" with rational parts, e.g. "-3/4+5/4i", "-3/4+5i/4", "2i", "1e-3-i"."""
    return complex(*(float(x) for x in parse_complex_exact(text)))


def parse_complex_exact(text: str) -> tuple[Fraction, Fraction]:
    s = text.replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty complex number")
    # keep exponent signs attached to their mantissa
    s = re.sub(r"([eE])([+-])", lambda m: m.group(1) + ("P" if m.group(2) == "+" else "M"), s)
    re_part, im_part = Fraction(0), Fraction(0)
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse complex number {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).replace("P", "+").replace("M", "-")
        if "i" in body:
            if body.count("i") > 1:
                raise ValueError(f"cannot parse complex number {text!r}")
            num = body.replace("*", "").replace("i", "")
            if num == "" or num.startswith("/"):
                num = "1" + num
            im_part += sign * Fraction(num)
        else:
            re_part += sign * Fraction(body)
    if pos != len(s):
        raise ValueError(f"cannot parse complex number {text!r}")
    return re_part, im_part


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: str = "tetra-full"
    N: int = DEFAULT_N
    ratio: complex | None = None
    alpha: complex | None = None
    beta: complex | None = None
    tol: float = DEFAULT_TOL
    seed: int = 0
    fmt: str = "text"
    out: str | None = None
    row: str = "c"

    def __post_init__(self):
        if self.group not in SELECTORS:
            raise ValueError(f"unknown group {self.group!r}; choose from {', '.join(SELECTORS)}")
        if self.N < 12 or self.N % 12:
            raise ValueError(f"phase denominator must be a positive multiple of 12, got {self.N}")
        if self.fmt not in FORMATS[self.command]:
            raise ValueError(f"format {self.fmt!r} not available for {self.command}; use {', '.join(FORMATS[self.command])}")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")

    def coefficients(self) -> tuple[complex, complex, complex]:
        """(ratio, alpha, beta); a bare ratio means beta = 1."""
        if self.alpha is not None or self.beta is not None:
            if self.ratio is not None:
                raise ValueError("give either --ratio or --alpha/--beta, not both")
            alpha = 0j if self.alpha is None else self.alpha
            beta = 1 + 0j if self.beta is None else self.beta
        else:
            beta = 1 + 0j
            alpha = (-1 + 1.25j) if self.ratio is None else self.ratio
        if beta == 0:
            raise DegenerateInputError("beta = 0: branch equations are degenerate")
        return alpha / beta, alpha, beta


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equihopf", description="Equivariant Hopf bifurcation on C^3 for the tetrahedral and octahedral groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "group": "group order, classes, generator checks, isotropy lattice",
        "isotropy": "isotropy subgroups of Gamma x S^1 on C^3",
        "hmodk": "admissible (H, K) pairs",
        "hopf": "primary Hopf branch catalog and unrealisable pairs",
        "branches": "submaximal branches for a given alpha/beta",
        "verify": "integrate a branch and detect its (H, K)",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--group", default="tetra-full", help=f"one of {', '.join(SELECTORS)}")
        p.add_argument("--phase-denominator", type=int, default=DEFAULT_N, dest="N")
        p.add_argument("--ratio", type=_complex_arg, help='alpha/beta, e.g. "-3/4+5/4i"')
        p.add_argument("--alpha", type=_complex_arg)
        p.add_argument("--beta", type=_complex_arg)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default="text", dest="fmt")
        p.add_argument("--out", help="write to this file instead of stdout")
        if name == "verify":
            p.add_argument("--row", default="c", choices=list("abcdefgh"))
    return parser


def run(cfg: RunConfig) -> str:
    if cfg.command == "group":
        if cfg.fmt == "dot":
            return ser.subgroup_lattice_dot(cfg.group, cfg.N)
        rep = ser.group_report(cfg.group)
        return ser.to_json(rep) if cfg.fmt == "json" else ser.group_text(rep)
    if cfg.command == "isotropy":
        if cfg.fmt == "dot":
            return ser.isotropy_lattice_dot(cfg.group, cfg.N)
        rep = ser.isotropy_report(cfg.group, cfg.N)
        return ser.to_json(rep) if cfg.fmt == "json" else ser.isotropy_text(rep)
    if cfg.command == "hmodk":
        rep = ser.hmodk_report(cfg.group, cfg.N)
        if cfg.fmt == "csv":
            return ser.rows_csv(rep["pairs"], ["K", "K_generators", "H", "H_generators", "fix_K", "dim", "notes"])
        return ser.to_json(rep) if cfg.fmt == "json" else ser.hmodk_text(rep)
    if cfg.command == "hopf":
        rep = ser.hopf_report(cfg.group, cfg.N)
        if cfg.fmt == "csv":
            return ser.rows_csv(rep["rows"], ["index", "sigma_generators", "H", "H_generators", "K", "K_generators", "branch_count", "kind"])
        return ser.to_json(rep) if cfg.fmt == "json" else ser.hopf_text(rep)
    if cfg.command == "branches":
        ratio, alpha, beta = cfg.coefficients()
        if cfg.fmt in ("csv", "svg"):
            geom = figure_geometry(ratio)
            return ser.geometry_csv(geom) if cfg.fmt == "csv" else ser.geometry_svg(geom)
        rep = ser.branches_report(ratio, alpha, beta)
        return ser.to_json(rep) if cfg.fmt == "json" else ser.branches_text(rep)
    if cfg.command == "verify":
        ratio = None
        if cfg.ratio is not None or cfg.alpha is not None or cfg.beta is not None:
            ratio = cfg.coefficients()[0]
        rep = verify_row(cfg.row, seed=cfg.seed, ratio=ratio, tol=cfg.tol, N=cfg.N)
        return ser.to_json(rep) if cfg.fmt == "json" else ser.verify_text(rep)
    raise ValueError(f"unknown command {cfg.command!r}")


_COMPLEX_FLAGS = ("--ratio", "--alpha", "--beta")


def _attach_values(argv: list[str]) -> list[str]:
    """Turn "--ratio -1+4i" into "--ratio=-1+4i" so argparse does not read it as an option."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _COMPLEX_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _attach_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    opts = vars(args)
    try:
        cfg = RunConfig(**opts)
        text = run(cfg)
    except (NotPeriodicError, DivergenceError, AmbiguousSymmetryError, InconsistentSymmetryError, RuntimeError) as exc:
        print(f"equihopf: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, ZeroDivisionError) as exc:
        print(f"equihopf: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Tables, lattices and figure data as text, JSON, DOT, CSV and SVG."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .group import ALPHABETS, SELECTORS, FiniteGroup, Subgroup, build_group, conjugacy_classes, element_order
from .group import evaluate_word, format_word, subgroup_classes
from .hmodk import (
    HmodKPair,
    classify_unrealizable,
    cyclic_subgroup_count,
    enumerate_pairs,
    hopf_catalog,
    is_isotropy,
    spatial_fix,
    structure_name,
)
from .twisted import DEFAULT_N, IsotropyRecord, enumerate_isotropy, format_twisted, matrix_generators, reinterpret

__all__ = [
    "to_json",
    "load_schema",
    "text_table",
    "group_report",
    "isotropy_report",
    "hmodk_report",
    "hopf_report",
    "branches_report",
    "subgroup_lattice_dot",
    "isotropy_lattice_dot",
    "geometry_csv",
    "geometry_svg",
]


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _clean(obj):
    """Replace non-finite floats by strings so the output stays valid JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def to_json(obj) -> str:
    return json.dumps(_clean(obj), default=_default, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_schema(name: str) -> dict:
    text = resources.files("equihopf").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def text_table(headers: Sequence[str], rows: Iterable[Sequence], title: str = "") -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()
    out = [title] if title else []
    out += [line, "-" * len(line)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- group


def group_report(selector: str) -> dict:
    G = build_group(selector)
    classes = conjugacy_classes(G)
    gens = {}
    for label in ("R", "C", "k", "T"):
        g = evaluate_word(label)
        gens[label] = {"order": element_order(G, g) if g in G else None, "in_group": g in G}
    identities = {
        "R = TC^2TC^2": evaluate_word("TCCTCC") == evaluate_word("R"),
        "k = -T^2C^2TC": evaluate_word("-TTCCTC") == evaluate_word("k"),
        "T = -C^2Rk": evaluate_word("-CCRk") == evaluate_word("T"),
    }
    return {
        "group": selector,
        "order": len(G),
        "generators": list(G.generator_labels),
        "class_sizes": sorted(len(c) for c in classes),
        "class_count": len(classes),
        "generator_orders": gens,
        "determinants": sorted({g.det for g in G.elements}),
        "identities": identities,
        "subgroup_count": sum(len(c) for c in subgroup_classes(G)),
        "subgroup_class_count": len(subgroup_classes(G)),
    }


def group_text(rep: dict) -> str:
    lines = [f"group {rep['group']}  generators {{{', '.join(rep['generators'])}}}  order {rep['order']}"]
    lines.append(f"conjugacy classes: {rep['class_count']} (sizes {', '.join(map(str, rep['class_sizes']))})")
    lines.append(f"subgroups: {rep['subgroup_count']} in {rep['subgroup_class_count']} conjugacy classes")
    orders = ", ".join(
        f"{k}: {v['order']}" if v["in_group"] else f"{k}: not in group" for k, v in rep["generator_orders"].items()
    )
    lines.append(f"element orders: {orders}")
    lines.append(f"determinants: {rep['determinants']}")
    for k, v in rep["identities"].items():
        lines.append(f"identity {k}: {'holds' if v else 'fails'}")
    return "\n".join(lines) + "\n"


def _hasse(nodes: list, below) -> list[tuple[int, int]]:
    """Cover relations (i above j) from a strict order ``below(j, i)``."""
    n = len(nodes)
    less = [[below(j, i) for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                edges.append((i, j))
    return edges


def subgroup_lattice_dot(selector: str, N: int = DEFAULT_N) -> str:
    """Lattice of conjugacy classes of isotropy subgroups of Gamma on C^3."""
    G = build_group(selector)
    alphabet = ALPHABETS[selector]
    reps = [c[0] for c in subgroup_classes(G) if is_isotropy(G, c[0], N)]

    def below(j, i):
        a, b = reps[j], reps[i]
        return len(a) < len(b) and any(a.conjugate(g) <= b for g in range(len(G)))

    lines = [f'digraph "{selector}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, S in enumerate(reps):
        if len(S) == len(G):
            gens = ", ".join(G.generator_labels)
        else:
            gens = ", ".join(format_word(G.words[g]) for g in S.generators()) or "Id"
        dim = spatial_fix(S, N).real_dim
        lines.append(f'  n{i} [label="{structure_name(S)}\\n{{{gens}}}\\ndim Fix = {dim}"];')
    for i, j in _hasse(reps, below):
        lines.append(f"  n{j} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- isotropy


@lru_cache(maxsize=None)
def _records(selector: str, N: int) -> tuple[IsotropyRecord, ...]:
    return tuple(enumerate_isotropy(build_group(selector), N))


def isotropy_report(selector: str, N: int = DEFAULT_N) -> dict:
    rows = []
    by_group = {sel: {r.index: r for r in _records(sel, N)} for sel in SELECTORS}
    for rec in _records(selector, N):
        gens = {sel: by_group[sel][rec.index].generator_words(ALPHABETS[sel]) for sel in SELECTORS}
        rows.append(
            {
                "index": rec.index,
                "name": rec.name,
                "order": rec.order,
                "fix": rec.fix.describe(),
                "real_dim": rec.real_dim,
                "c_axial": rec.c_axial,
                "branch_count": rec.branch_count,
                "conjugates": rec.n_conjugates,
                "generators": gens,
            }
        )
    return {"group": selector, "phase_denominator": N, "rows": rows}


def isotropy_text(rep: dict) -> str:
    headers = ["index", "solution type", "Fix", "dim", "order"] + [f"generators in {s}" for s in SELECTORS]
    rows = []
    for r in rep["rows"]:
        rows.append(
            [f"({r['index']})", r["name"], r["fix"], r["real_dim"], r["order"] if r["order"] else "-"]
            + ["{" + ", ".join(r["generators"][s]) + "}" for s in SELECTORS]
        )
    return text_table(headers, rows, f"isotropy subgroups of {rep['group']} x S^1 on C^3")


def isotropy_lattice_dot(selector: str, N: int = DEFAULT_N) -> str:
    """Lattice of the isotropy classes of Gamma x S^1, labelled (a)-(i)."""
    recs = list(_records(selector, N))
    G = build_group(selector)

    def members(rec):
        return None if rec.sigma is None else set(rec.sigma.key())

    def below(j, i):
        a, b = recs[j], recs[i]
        if b.sigma is None:
            return a.sigma is not None
        if a.sigma is None or len(a.sigma) >= len(b.sigma):
            return False
        mb = members(b)
        return any(set(a.sigma.conjugate(g).key()) <= mb for g in range(len(G)))

    lines = [f'digraph "{selector} x S1" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, rec in enumerate(recs):
        gens = ", ".join(rec.generator_words(ALPHABETS[selector]))
        style = ", peripheries=2" if rec.c_axial else ""
        lines.append(f'  n{i} [label="({rec.index}) {{{gens}}}\\ndim Fix = {rec.real_dim}"{style}];')
    for i, j in _hasse(recs, below):
        lines.append(f"  n{j} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- H mod K


def hmodk_report(selector: str, N: int = DEFAULT_N) -> dict:
    G = build_group(selector)
    pairs = enumerate_pairs(G, N)
    summarise_trivial = selector == "octa-full"
    rows = [p.describe(ALPHABETS[selector]) for p in pairs if not (summarise_trivial and len(p.K) == 1)]
    return {
        "group": selector,
        "pairs": rows,
        "pair_count": len(pairs),
        "pairs_nontrivial_K": sum(len(p.K) > 1 for p in pairs),
        "trivial_K_options": cyclic_subgroup_count(G),
        "trivial_K_summarised": summarise_trivial,
    }


def hmodk_text(rep: dict) -> str:
    headers = ["K", "generators of K", "H", "generators of H", "Fix(K)", "dim", "note"]
    rows = [
        [r["K"], "{" + ", ".join(r["K_generators"]) + "}", r["H"], "{" + ", ".join(r["H_generators"]) + "}", r["fix_K"], r["dim"], r["notes"]]
        for r in rep["pairs"]
    ]
    out = text_table(headers, rows, f"admissible (H, K) pairs for {rep['group']}")
    out += f"pairs: {rep['pair_count']} ({rep['pairs_nontrivial_K']} with K != 1)\n"
    if rep["trivial_K_summarised"]:
        out += f"K = 1: {rep['trivial_K_options']} cyclic H up to conjugacy (rows omitted)\n"
    return out


# ---------------------------------------------------------------- Hopf catalog


def hopf_report(selector: str, N: int = DEFAULT_N) -> dict:
    G = build_group(selector)
    alphabet = ALPHABETS[selector]
    rows = []
    for rec in hopf_catalog(G, N):
        own = rec.interpretations[selector]
        rows.append(
            {
                "index": rec.index,
                "kind": rec.kind,
                "sigma_generators": own.sigma_words,
                "H": structure_name(rec.H),
                "H_generators": own.H_words,
                "K": structure_name(rec.K),
                "K_generators": own.K_words,
                "branch_count": rec.branch_count,
                "interpretations": {s: i.as_dict() for s, i in rec.interpretations.items()},
            }
        )
    unreal = classify_unrealizable(G, N)
    return {
        "group": selector,
        "rows": rows,
        "unrealizable": [p.describe(alphabet) for p in unreal],
        "unrealizable_count": len(unreal),
        "unrealizable_nontrivial_K": sum(len(p.K) > 1 for p in unreal),
    }


def hopf_text(rep: dict) -> str:
    headers = ["index", "Sigma generators", "H", "K", "branches", "kind"]
    rows = [
        [
            f"({r['index']})",
            "{" + ", ".join(r["sigma_generators"]) + "}",
            "{" + ", ".join(r["H_generators"]) + "}",
            "{" + ", ".join(r["K_generators"]) + "}",
            r["branch_count"],
            r["kind"],
        ]
        for r in rep["rows"]
    ]
    out = text_table(headers, rows, f"primary Hopf branches for {rep['group']} x S^1")
    out += f"\nunrealisable pairs (H != 1): {rep['unrealizable_count']}, of which K != 1: {rep['unrealizable_nontrivial_K']}\n"
    for u in rep["unrealizable"]:
        out += f"  H = {u['H']} {{{', '.join(u['H_generators'])}}}, K = {u['K']} {{{', '.join(u['K_generators'])}}}\n"
    return out


# ---------------------------------------------------------------- branches


def branches_report(ratio: complex, alpha: complex, beta: complex) -> dict:
    from .branches import figure_geometry, solve_z1z2, solve_zz_x, submaximal_count

    z1z2 = solve_z1z2(alpha, beta)
    zzx = solve_zz_x(alpha, beta)
    curve = figure_geometry(ratio)["curve"]
    return {
        "ratio": [ratio.real, ratio.imag],
        "curve": {"x0": curve.x0, "y0": curve.y0, "Kr": curve.Kr, "Ki": curve.Ki},
        "z1z2_0": [s.as_dict() for s in z1z2],
        "zz_x": [s.as_dict() for s in zzx],
        "z1z2_0_submaximal": submaximal_count(z1z2),
        "zz_x_submaximal": submaximal_count(zzx),
        "tangency": any(s.classification == "tangency" for s in zzx),
    }


def branches_text(rep: dict) -> str:
    r = rep["ratio"]
    out = [f"alpha/beta = {r[0]:g}{r[1]:+g}i"]
    c = rep["curve"]
    out.append(f"x0 = {c['x0']:.6g}  y0 = {c['y0']:.6g}  Kr = {c['Kr']:.6g}  Ki = {c['Ki']:.6g}")
    out.append(f"(xi z, z, 0): {rep['z1z2_0_submaximal']} submaximal")
    for s in rep["z1z2_0"]:
        out.append(f"  {s['classification']:<20} r^2 = {s['r_squared']:.6g}  phi = {s['angle']:.6g}  residual = {s['residual']:.1e}")
    out.append(f"(z, z, xi z): {rep['zz_x_submaximal']} submaximal" + ("  [tangency]" if rep["tangency"] else ""))
    for s in rep["zz_x"]:
        x, y = s["circle_point"]
        out.append(
            f"  {s['classification']:<20} (x, y) = ({x:.6f}, {y:.6f})  r^2 = {s['r_squared']:.6g}  residual = {s['residual']:.1e}"
        )
    return "\n".join(out) + "\n"


def geometry_csv(geom: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "R", "classification", "r_squared", "psi"])
    for m in geom["markers"]:
        w.writerow([f"{m['x']:.15g}", f"{m['y']:.15g}", f"{m['R']:.15g}", m["classification"], f"{m['r_squared']:.15g}", f"{m['psi']:.15g}"])
    return buf.getvalue()


def geometry_svg(geom: dict, size: int = 480, extent: float = 2.0) -> str:
    """Unit circle, conic I = 0, the R < 0 region shaded, and the intersection markers."""
    s = size / (2 * extent)

    def px(x, y):
        return f"{(x + extent) * s:.2f},{(extent - y) * s:.2f}"

    curve = geom["curve"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    # shade R < 0 on a coarse raster
    n = 60
    step = 2 * extent / n
    cells = []
    for i in range(n):
        for j in range(n):
            x = -extent + (i + 0.5) * step
            y = -extent + (j + 0.5) * step
            if curve.R(x, y) < 0:
                cells.append(f'<rect x="{(x - step / 2 + extent) * s:.2f}" y="{(extent - y - step / 2) * s:.2f}" width="{step * s:.2f}" height="{step * s:.2f}"/>')
    parts.append('<g fill="#d0d0d0" stroke="none">' + "".join(cells) + "</g>")

    def polyline(pts, color, width=1.5):
        pts = [p for p in pts if abs(p[0]) <= extent * 1.5 and abs(p[1]) <= extent * 1.5]
        if len(pts) < 2:
            return ""
        return f'<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{" ".join(px(x, y) for x, y in pts)}"/>'

    parts.append(polyline(geom["circle"], "blue"))
    for line in geom["hyperbola"]:
        parts.append(polyline(line, "red"))
    colors = {"submaximal": "black", "tangency": "black", "maximal_zzz": "white"}
    for m in geom["markers"]:
        fill = colors.get(m["classification"], "gray")
        parts.append(f'<circle cx="{(m["x"] + extent) * s:.2f}" cy="{(extent - m["y"]) * s:.2f}" r="5" fill="{fill}" stroke="black"/>')
    parts.append("</svg>")
    return "\n".join(p for p in parts if p) + "\n"


def rows_csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([" ".join(r[c]) if isinstance(r[c], list) else r[c] for c in columns])
    return buf.getvalue()


# ---------------------------------------------------------------- verify


def verify_text(rep: dict) -> str:
    if rep["equilibrium"]:
        return f"row ({rep['row']}): {rep['notice']}\n"
    out = [f"row ({rep['row']}) orbit in {rep['subspace']}"]
    if "ratio" in rep:
        out[0] += f", alpha/beta = {rep['ratio'][0]:g}{rep['ratio'][1]:+g}i"
    out.append(
        f"period {rep['period']:.12g} ({rep['method']}; section return {rep['poincare_period']:.12g}), "
        f"closure error {rep['closure_error']:.1e}"
    )
    rows = []
    for sel, d in rep["interpretations"].items():
        own = d["words"].get(sel, {"H": ["?"], "K": ["?"]})
        rows.append(
            [sel, d["H"], "{" + ", ".join(own["H"]) + "}", d["K"], "{" + ", ".join(own["K"]) + "}",
             f"{d['best_rejected']:.3g}", "yes" if d["matches_catalog"] else "NO"]
        )
    out.append(text_table(["group", "H", "generators of H", "K", "generators of K", "gap", "catalog"], rows).rstrip())
    return "\n".join(out) + "\n"

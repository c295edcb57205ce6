"""CPLEX LP export of the covering-style variants, for external ILP cross-checks."""

from __future__ import annotations

from .graph import FlowerSnark, label
from .validators import Variant

LP_VARIANTS = (Variant.DOMINATION, Variant.INDEPENDENT, Variant.TWO_DOMINATION, Variant.TOTAL)


def var_name(v: int) -> str:
    return "x_" + label(v).replace("^", "")


def _row(terms: list[tuple[int, int]]) -> str:
    parts = []
    for coef, v in terms:
        parts.append(f"{coef} {var_name(v)}" if coef != 1 else var_name(v))
    return " + ".join(parts)


def export_lp(g: FlowerSnark, variant: Variant | str) -> str:
    variant = Variant(variant)
    if variant not in LP_VARIANTS:
        raise ValueError(f"no LP model for {variant}; covering variants only")
    verts = range(g.num_vertices)
    lines = [f"\\ J_{g.n} {variant.value} domination", "Minimize"]
    lines.append(" obj: " + _row([(1, v) for v in verts]))
    lines.append("Subject To")
    for v in verts:
        name = var_name(v)[2:]
        nbrs = list(g.adjacency[v])
        if variant == Variant.TOTAL:
            lines.append(f" cover_{name}: {_row([(1, u) for u in nbrs])} >= 1")
        elif variant == Variant.TWO_DOMINATION:
            terms = sorted([(1, u) for u in nbrs] + [(2, v)], key=lambda t: t[1])
            lines.append(f" cover_{name}: {_row(terms)} >= 2")
        else:
            closed = sorted(nbrs + [v])
            lines.append(f" cover_{name}: {_row([(1, u) for u in closed])} >= 1")
    if variant == Variant.INDEPENDENT:
        for u, v in g.edges():
            lines.append(f" edge_{var_name(u)[2:]}_{var_name(v)[2:]}: {var_name(u)} + {var_name(v)} <= 1")
    lines.append("Binary")
    lines += [f" {var_name(v)}" for v in verts]
    lines.append("End")
    return "\n".join(lines) + "\n"

"""Deterministic SVG drawing of the unit ball, optionally with T(B)."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from freeindex.freespace import Functional, Molecule, signed_functionals, signed_molecules
from freeindex.metric import TriangleMetric
from freeindex.operators import Operator2, apply, attaining_pair, numerical_radius

SIZE = 560
RADIUS = 200.0


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _same(m: TriangleMetric, f: Functional, g: Functional) -> bool:
    return m.eq(f.a, g.a) and m.eq(f.b, g.b)


def face_groups(m: TriangleMetric) -> list[tuple[list[Functional], list[Molecule]]]:
    """Distinct signed face functionals (coinciding ones grouped) with the
    molecules they take the value 1 on."""
    groups: list[list[Functional]] = []
    for f in signed_functionals(m):
        for group in groups:
            if _same(m, group[0], f):
                group.append(f)
                break
        else:
            groups.append([f])
    mols = signed_molecules(m)
    return [
        (group, [mol for mol in mols if m.eq(group[0](mol.coords), m.one)])
        for group in groups
    ]


def is_extreme(m: TriangleMetric, mol: Molecule) -> bool:
    """A molecule is a vertex of the ball when two distinct faces meet at it."""
    return sum(mol in mols for _, mols in face_groups(m)) >= 2


def ball_svg(m: TriangleMetric, T: Operator2 | None = None) -> str:
    mols = sorted(
        signed_molecules(m),
        key=lambda v: math.atan2(float(v.coords.c2), float(v.coords.c1)),
    )
    pts = [(float(v.coords.c1), float(v.coords.c2)) for v in mols]
    scale = RADIUS / max(math.hypot(*p) for p in pts)
    c = SIZE / 2

    def xy(p: tuple[float, float]) -> tuple[str, str]:
        return _fmt(c + scale * p[0]), _fmt(c - scale * p[1])

    def points_attr(ps) -> str:
        return " ".join(",".join(xy(p)) for p in ps)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
        f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line class="axis" x1="0" y1="{_fmt(c)}" x2="{SIZE}" y2="{_fmt(c)}" stroke="#ccc"/>',
        f'<line class="axis" x1="{_fmt(c)}" y1="0" x2="{_fmt(c)}" y2="{SIZE}" stroke="#ccc"/>',
        f'<polygon class="ball" points="{points_attr(pts)}" fill="#e8eef8" stroke="#234" '
        'stroke-width="2"/>',
    ]
    for group, incident in face_groups(m):
        ends = [mol for mol in incident if is_extreme(m, mol)]
        if len(ends) < 2:
            continue
        mx = sum(float(v.coords.c1) for v in ends) / len(ends)
        my = sum(float(v.coords.c2) for v in ends) / len(ends)
        n = math.hypot(mx, my) or 1.0
        lx, ly = xy((mx + 0.12 * mx / n, my + 0.12 * my / n))
        name = " = ".join(f.name for f in group)
        out.append(
            f'<text class="face" x="{lx}" y="{ly}" font-size="13" fill="#a33" '
            f'text-anchor="middle">{escape(name)}</text>'
        )
    for mol, p in zip(mols, pts):
        kind = "extreme" if is_extreme(m, mol) else "non-extreme"
        x, y = xy(p)
        lx, ly = xy((p[0] * 1.1, p[1] * 1.1))
        out.append(
            f'<circle class="vertex {kind}" cx="{x}" cy="{y}" r="4" fill="#234" '
            f'data-name="{escape(mol.name)}" data-c1="{float(mol.coords.c1)!r}" '
            f'data-c2="{float(mol.coords.c2)!r}"/>'
        )
        out.append(
            f'<text class="label" x="{lx}" y="{ly}" font-size="13" '
            f'text-anchor="middle">{escape(mol.name)}</text>'
        )
    if T is not None:
        images = [apply(T, v.coords) for v in mols]
        out.append(
            f'<polygon class="image" points="{points_attr((float(w.c1), float(w.c2)) for w in images)}" '
            'fill="none" stroke="#c60" stroke-width="2" stroke-dasharray="6,3"/>'
        )
        pair = attaining_pair(m, T)
        v = pair.vertex.coords
        w = apply(T, v)
        vx, vy = xy((float(v.c1), float(v.c2)))
        wx, wy = xy((float(w.c1), float(w.c2)))
        out.append(
            f'<line class="attaining" x1="{vx}" y1="{vy}" x2="{wx}" y2="{wy}" '
            'stroke="#c60" stroke-width="1.5"/>'
        )
        out.append(f'<circle class="attaining" cx="{wx}" cy="{wy}" r="5" fill="#c60"/>')
        radius = float(numerical_radius(m, T))
        out.append(
            f'<text class="caption" x="10" y="{SIZE - 12}" font-size="13">'
            f'{escape(f"v(T) = {radius:.6f} at ({pair.vertex.name}, {pair.face.name})")}'
            "</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"

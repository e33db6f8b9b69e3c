"""The 2-dimensional Lipschitz-free space of a three-point metric.

Vectors are written in the basis ``(m_{x,0}, m_{y,0})``.  The unit ball is
the absolute convex hull of the three molecules, a hexagon (a rhombus when
the metric is aligned), and its dual ball has extreme points ``±rho_x``,
``±rho_y``, ``±rho_0``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from freeindex.errors import SamePoint, SingularSystem
from freeindex.metric import PAIRS, POINTS, PointId, Scalar, TriangleMetric, X, Z


@dataclass(frozen=True)
class Vec2:
    c1: Scalar
    c2: Scalar

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.c1, -self.c2)

    def __mul__(self, t: Scalar) -> "Vec2":
        return Vec2(self.c1 * t, self.c2 * t)

    __rmul__ = __mul__


def point_name(p: PointId) -> str:
    return "0" if p == Z else p.value.lower()


@dataclass(frozen=True)
class Molecule:
    """The norm-one vector ``(delta_source - delta_target) / d(source, target)``."""

    source: PointId
    target: PointId
    coords: Vec2

    @property
    def name(self) -> str:
        return f"m_{{{point_name(self.source)},{point_name(self.target)}}}"

    def __neg__(self) -> "Molecule":
        return Molecule(self.target, self.source, -self.coords)


@dataclass(frozen=True)
class Functional:
    """``sign * rho_anchor``, acting as ``a*c1 + b*c2``.

    ``a`` and ``b`` already include the sign.
    """

    a: Scalar
    b: Scalar
    anchor: PointId
    sign: int = 1

    def __call__(self, v: Vec2) -> Scalar:
        return self.a * v.c1 + self.b * v.c2

    def __neg__(self) -> "Functional":
        return Functional(-self.a, -self.b, self.anchor, -self.sign)

    @property
    def name(self) -> str:
        return ("" if self.sign > 0 else "-") + f"rho_{point_name(self.anchor)}"


@dataclass(frozen=True)
class IncidencePair:
    vertex: Molecule
    face: Functional


def delta(m: TriangleMetric, p: PointId) -> Vec2:
    """Coordinates of the evaluation functional ``delta_p``."""
    zero = m.zero
    if p == Z:
        return Vec2(zero, zero)
    if p == X:
        return Vec2(m.rho(p), zero)
    return Vec2(zero, m.rho(p))


def molecule(m: TriangleMetric, source: PointId, target: PointId) -> Molecule:
    if source == target:
        raise SamePoint(f"molecule needs two distinct points, got {source} twice")
    coords = (delta(m, source) - delta(m, target)) * (m.one / m.dist(source, target))
    return Molecule(source, target, coords)


def molecules(m: TriangleMetric) -> list[Molecule]:
    """``m_{x,y}``, ``m_{x,0}``, ``m_{y,0}`` (one representative per sign pair)."""
    return [molecule(m, p, q) for p, q in PAIRS]


def signed_molecules(m: TriangleMetric) -> list[Molecule]:
    base = molecules(m)
    return base + [-mol for mol in base]


def face_functional(m: TriangleMetric, anchor: PointId) -> Functional:
    """``rho_anchor``: equal to 1 on both molecules pointing into ``anchor``."""
    p, q = (pt for pt in POINTS if pt != anchor)
    u = molecule(m, p, anchor).coords
    w = molecule(m, q, anchor).coords
    det = u.c1 * w.c2 - u.c2 * w.c1
    if det == 0:
        raise SingularSystem(f"molecules into {anchor} are parallel")
    # a*u1 + b*u2 = 1, a*w1 + b*w2 = 1
    a = (w.c2 - u.c2) / det
    b = (u.c1 - w.c1) / det
    return Functional(a, b, anchor, 1)


@functools.lru_cache(maxsize=4096)
def functionals(m: TriangleMetric) -> tuple[Functional, ...]:
    """``rho_x``, ``rho_y``, ``rho_0``."""
    return tuple(face_functional(m, p) for p in POINTS)


def signed_functionals(m: TriangleMetric) -> list[Functional]:
    base = list(functionals(m))
    return base + [-f for f in base]


def norm(m: TriangleMetric, v: Vec2) -> Scalar:
    return max(abs(f(v)) for f in functionals(m))


def incidence_pairs(m: TriangleMetric) -> list[IncidencePair]:
    """All (signed molecule, signed face functional) pairs evaluating to 1.

    Twelve pairs for a triangle.  On aligned metrics the non-extreme
    molecule and the coinciding functionals are kept, which only adds
    redundant pairs.
    """
    return list(_incidence_pairs(m))


@functools.lru_cache(maxsize=4096)
def _incidence_pairs(m: TriangleMetric) -> tuple[IncidencePair, ...]:
    faces = signed_functionals(m)
    one = m.one
    return tuple(
        IncidencePair(mol, f)
        for mol in signed_molecules(m)
        for f in faces
        if m.eq(f(mol.coords), one)
    )

"""Linear operators on the 2-dimensional free space.

An operator is stored by its matrix in the molecule basis: the first column
is the image of ``m_{x,0}``, the second the image of ``m_{y,0}``.  Because
both unit balls are polytopes, the operator norm and the numerical radius
reduce to finite maxima over vertices and vertex-face incidences.
"""
from __future__ import annotations

from dataclasses import dataclass

from freeindex.errors import NoIncidentFace
from freeindex.freespace import (
    IncidencePair,
    Molecule,
    Vec2,
    incidence_pairs,
    molecules,
    norm,
    signed_functionals,
)
from freeindex.metric import Scalar, TriangleMetric


@dataclass(frozen=True)
class Operator2:
    t11: Scalar
    t12: Scalar
    t21: Scalar
    t22: Scalar

    @classmethod
    def from_columns(cls, col1: Vec2, col2: Vec2) -> "Operator2":
        """Operator with ``T m_{x,0} = col1`` and ``T m_{y,0} = col2``."""
        return cls(col1.c1, col2.c1, col1.c2, col2.c2)

    @classmethod
    def identity(cls, one: Scalar = 1) -> "Operator2":
        return cls(one, one * 0, one * 0, one)

    @classmethod
    def zero(cls, one: Scalar = 1) -> "Operator2":
        z = one * 0
        return cls(z, z, z, z)

    @property
    def rows(self) -> tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]:
        return ((self.t11, self.t12), (self.t21, self.t22))

    @property
    def entries(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.t11, self.t12, self.t21, self.t22)

    def __add__(self, other: "Operator2") -> "Operator2":
        return Operator2(*(a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Operator2":
        return Operator2(*(-a for a in self.entries))

    def __mul__(self, t: Scalar) -> "Operator2":
        return Operator2(*(a * t for a in self.entries))

    __rmul__ = __mul__

    def __truediv__(self, t: Scalar) -> "Operator2":
        return Operator2(*(a / t for a in self.entries))


def apply(T: Operator2, v: Vec2) -> Vec2:
    return Vec2(T.t11 * v.c1 + T.t12 * v.c2, T.t21 * v.c1 + T.t22 * v.c2)


def op_norm(m: TriangleMetric, T: Operator2) -> Scalar:
    """Largest norm of the image of a molecule; exact since the unit ball is
    the absolute convex hull of the molecules."""
    return max(norm(m, apply(T, mol.coords)) for mol in molecules(m))


def contribution(m: TriangleMetric, T: Operator2, mol: Molecule) -> Scalar:
    """Largest ``|f(T mol)|`` over face functionals ``f`` with ``f(mol) = 1``."""
    image = apply(T, mol.coords)
    one = m.one
    values = [abs(f(image)) for f in signed_functionals(m) if m.eq(f(mol.coords), one)]
    if not values:
        raise NoIncidentFace(f"{mol.name} lies on no face")
    return max(values)


def attaining_pair(m: TriangleMetric, T: Operator2) -> IncidencePair:
    """First incidence pair at which the numerical radius is attained."""
    return max(incidence_pairs(m), key=lambda p: abs(p.face(apply(T, p.vertex.coords))))


def numerical_radius(m: TriangleMetric, T: Operator2) -> Scalar:
    return max(abs(p.face(apply(T, p.vertex.coords))) for p in incidence_pairs(m))

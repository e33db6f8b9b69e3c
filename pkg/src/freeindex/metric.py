"""Three-point metric spaces and the scalar quantities built from them.

Distances are held either as exact ``Fraction`` values or as floats.  A
metric is in *exact* mode when every input distance is rational (ints,
``Fraction`` or rational strings); any float input switches the whole
metric to *float* mode, where comparisons use a small tolerance.

The point ``Z`` doubles as the base point ``0`` of the free space.
"""
from __future__ import annotations

import enum
import itertools
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from freeindex.errors import (
    AlignedMetric,
    InvalidDistance,
    NonPositiveDistance,
    TriangleInequalityViolated,
)

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

# comparison tolerance for float mode, relative to the magnitudes compared
EPS_CMP = 1e-12
# Gromov products below EPS_ALIGN * (largest distance) count as zero
EPS_ALIGN = 1e-10


class PointId(str, enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"

    def __str__(self) -> str:
        return self.value


X, Y, Z = PointId.X, PointId.Y, PointId.Z
POINTS = (X, Y, Z)
PAIRS = ((X, Y), (X, Z), (Y, Z))


def third(p: PointId, q: PointId) -> PointId:
    """The point of the triangle that is neither ``p`` nor ``q``."""
    if p == q:
        raise ValueError(f"need two distinct points, got {p} twice")
    (r,) = set(POINTS) - {p, q}
    return r


class Tag(str, enum.Enum):
    ALIGNED = "aligned"
    EQUILATERAL = "equilateral"
    ISOSCELES_LONG = "isosceles_long"
    ISOSCELES_FAT = "isosceles_fat"
    SCALENE = "scalene"


def to_scalar(value) -> Scalar:
    """Coerce a user value to ``Fraction`` (rational input) or ``float``.

    Strings are accepted: ``"3"``, ``"-2"`` and ``"p/q"`` give exact values,
    decimal strings such as ``"1.5"`` give floats.
    """
    if isinstance(value, bool):
        raise InvalidDistance(f"boolean is not a distance: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        return float(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if any(c in text for c in ".eE") or text.lower() in ("inf", "-inf", "nan"):
                return float(text)
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidDistance(f"cannot parse {value!r} as a number") from exc
    raise InvalidDistance(f"unsupported scalar type {type(value).__name__}")


def _tol(*values: Scalar) -> float:
    return EPS_CMP * max(1.0, *(abs(float(v)) for v in values))


@dataclass(frozen=True)
class TriangleMetric:
    """Pairwise distances of the three points ``X``, ``Y``, ``Z`` (= 0).

    Construct through :func:`validate`; the dataclass itself does not check
    the metric axioms.
    """

    d_xy: Scalar
    d_xz: Scalar
    d_yz: Scalar
    numeric_mode: str = EXACT

    @property
    def exact(self) -> bool:
        return self.numeric_mode == EXACT

    @property
    def distances(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.d_xy, self.d_xz, self.d_yz)

    def dist(self, p: PointId, q: PointId) -> Scalar:
        if p == q:
            return self.zero
        key = frozenset((p, q))
        if key == {X, Y}:
            return self.d_xy
        if key == {X, Z}:
            return self.d_xz
        return self.d_yz

    def rho(self, p: PointId) -> Scalar:
        """Distance to the base point ``Z``."""
        return self.dist(p, Z)

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    # comparisons honouring the numeric mode

    def eq(self, a: Scalar, b: Scalar) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= _tol(a, b)

    def ge(self, a: Scalar, b: Scalar) -> bool:
        if self.exact:
            return a >= b
        return a >= b - _tol(a, b)

    def le(self, a: Scalar, b: Scalar) -> bool:
        return self.ge(b, a)

    def scaled(self, t) -> "TriangleMetric":
        """The metric with every distance multiplied by ``t > 0``."""
        t = to_scalar(t)
        return validate(self.d_xy * t, self.d_xz * t, self.d_yz * t)

    def as_float(self) -> "TriangleMetric":
        return TriangleMetric(
            float(self.d_xy), float(self.d_xz), float(self.d_yz), FLOAT
        )

    def relabel(self, order: tuple[PointId, PointId, PointId]) -> "TriangleMetric":
        """Rename points: ``order[i]`` (old label) becomes ``POINTS[i]``."""
        nx, ny, nz = order
        return TriangleMetric(
            self.dist(nx, ny), self.dist(nx, nz), self.dist(ny, nz), self.numeric_mode
        )


def validate(d_xy, d_xz, d_yz) -> TriangleMetric:
    """Build a :class:`TriangleMetric`, enforcing positivity and the triangle
    inequality (equality allowed: that is the aligned case)."""
    values = [to_scalar(d) for d in (d_xy, d_xz, d_yz)]
    mode = EXACT if all(isinstance(v, Fraction) for v in values) else FLOAT
    if mode == FLOAT:
        values = [float(v) for v in values]
        for name, v in zip(("d(X,Y)", "d(X,Z)", "d(Y,Z)"), values):
            if not math.isfinite(v):
                raise InvalidDistance(f"{name} is not finite: {v!r}")
    for name, v in zip(("d(X,Y)", "d(X,Z)", "d(Y,Z)"), values):
        if v <= 0:
            raise NonPositiveDistance(f"{name} must be > 0, got {v}")
    m = TriangleMetric(*values, numeric_mode=mode)
    for pair in PAIRS:
        r = third(*pair)
        lhs = m.dist(*pair)
        rhs = m.dist(pair[0], r) + m.dist(pair[1], r)
        if not m.le(lhs, rhs):
            p, q = pair
            raise TriangleInequalityViolated(
                f"d({p},{q})={lhs} > d({p},{r})+d({q},{r})={rhs}"
            )
    return m


def _others(apex: PointId) -> tuple[PointId, PointId]:
    p, q = (pt for pt in POINTS if pt != apex)
    return p, q


def gromov(m: TriangleMetric, apex: PointId) -> Scalar:
    """Gromov product of the two non-apex points with respect to ``apex``."""
    p, q = _others(apex)
    g = m.dist(p, apex) + m.dist(q, apex) - m.dist(p, q)
    if not m.exact and g < 0:
        # tolerated triangle-inequality slack in float mode
        g = 0.0
    return g


def weighted_gromov(m: TriangleMetric, apex: PointId) -> Scalar:
    p, q = _others(apex)
    return m.dist(p, q) * gromov(m, apex)


def is_aligned(m: TriangleMetric) -> bool:
    """True when some Gromov product vanishes (one point on the segment
    between the other two)."""
    if m.exact:
        return any(gromov(m, a) == 0 for a in POINTS)
    threshold = EPS_ALIGN * max(m.distances)
    return any(gromov(m, a) < threshold for a in POINTS)


def optimal_contribution(m: TriangleMetric, pair: tuple[PointId, PointId]) -> Scalar:
    """Smallest contribution of the molecule on ``pair`` to the numerical
    radius of a norm-one operator sending that molecule to the sphere."""
    if is_aligned(m):
        raise AlignedMetric("optimal contribution is undefined on aligned metrics")
    p, q = pair
    r = third(p, q)
    return weighted_gromov(m, r) / (weighted_gromov(m, q) + weighted_gromov(m, p))


def metric_ratio(m: TriangleMetric, pair: tuple[PointId, PointId]) -> Scalar:
    p, q = pair
    r = third(p, q)
    return m.dist(p, q) / (m.dist(p, r) + m.dist(q, r))


@dataclass(frozen=True)
class Classification:
    tag: Tag
    # canonical_order[i] is the input label renamed to POINTS[i]
    canonical_order: tuple[PointId, PointId, PointId]


def _is_canonical(m: TriangleMetric) -> bool:
    return m.ge(m.d_xy, m.d_xz) and m.ge(m.d_xz, m.d_yz)


def is_canonical(m: TriangleMetric) -> bool:
    """``d(x,y) >= rho(x) >= rho(y)``."""
    return _is_canonical(m)


def classify_canonical(m: TriangleMetric) -> Tag:
    if is_aligned(m):
        return Tag.ALIGNED
    longest, middle, shortest = m.d_xy, m.d_xz, m.d_yz
    if m.eq(longest, shortest):
        return Tag.EQUILATERAL
    if m.eq(longest, middle):
        # two long legs over a short base
        return Tag.ISOSCELES_LONG
    if m.eq(middle, shortest):
        return Tag.ISOSCELES_FAT
    return Tag.SCALENE


def canonicalize(m: TriangleMetric) -> tuple[TriangleMetric, Classification]:
    """Relabel so that ``d(x,y) >= rho(x) >= rho(y)``.

    Permutations are tried in lexicographic order starting from the
    identity, so ties keep the input labelling wherever possible.
    """
    for order in itertools.permutations(POINTS):
        candidate = m.relabel(order)
        if _is_canonical(candidate):
            return candidate, Classification(classify_canonical(candidate), order)
    raise AssertionError("some permutation sorts three numbers")  # pragma: no cover

"""Closed-form numerical index of the free space over three points.

For a canonical triangle (``d(x,y) >= rho(x) >= rho(y)``) the index is

    max{ contop(x,0), R_y(x,0) }

and one of two explicit norm-one operators attains it as its numerical
radius.  Aligned metrics give the l1 plane, whose index is 1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from freeindex.errors import (
    AlignedMetric,
    AlphaOutOfRange,
    CertificationError,
    NonCanonicalMetric,
    WrongRegime,
)
from freeindex.freespace import Vec2, molecule
from freeindex.metric import (
    PAIRS,
    Classification,
    PointId,
    Scalar,
    TriangleMetric,
    X,
    Y,
    Z,
    canonicalize,
    gromov,
    is_aligned,
    is_canonical,
    metric_ratio,
    optimal_contribution,
    third,
    to_scalar,
    validate,
    weighted_gromov,
)
from freeindex.operators import Operator2, numerical_radius, op_norm

# float-mode tolerance when certifying a witness
CERT_TOL = 1e-9


class Regime(str, enum.Enum):
    ALIGNED = "aligned"
    RATIO = "ratio_case"
    CONTOP = "contop_case"


@dataclass(frozen=True)
class IndexComponents:
    """Everything the closed form is assembled from, canonical labelling."""

    contop_x0: Scalar
    ratio_y_x0: Scalar
    contop_xy: Scalar
    contop_y0: Scalar
    ratio_0_xy: Scalar
    ratio_x_y0: Scalar
    threshold: Scalar


@dataclass(frozen=True)
class Certification:
    norm_one: bool
    radius_equals_index: bool

    @property
    def ok(self) -> bool:
        return self.norm_one and self.radius_equals_index


@dataclass(frozen=True)
class IndexReport:
    metric: TriangleMetric
    canonical: TriangleMetric
    classification: Classification
    index: Scalar
    regime: Regime
    components: Optional[IndexComponents] = None
    # witness matrix in the canonical molecule basis
    witness: Optional[Operator2] = None
    # images of the basis molecules as combinations of named molecules
    images: Optional[dict] = None
    certification: Optional[Certification] = None

    @property
    def certified(self) -> bool:
        return self.certification is not None and self.certification.ok


def _require_triangle(m: TriangleMetric) -> None:
    if is_aligned(m):
        raise AlignedMetric("construction needs a non-aligned metric")


def _require_canonical(m: TriangleMetric) -> None:
    _require_triangle(m)
    if not is_canonical(m):
        raise NonCanonicalMetric(
            f"expected d(x,y) >= rho(x) >= rho(y), got {m.distances}; canonicalize first"
        )


def threshold(m: TriangleMetric) -> Scalar:
    """``(d(x,y)^2 + rho(y)^2) / (d(x,y) + rho(y))``; ``rho(x)`` above it
    means the metric ratio wins."""
    d, ry = m.d_xy, m.d_yz
    return (d * d + ry * ry) / (d + ry)


def optimal_lambda(m: TriangleMetric, pair: tuple[PointId, PointId]) -> Scalar:
    """Weight placing ``T m_{p,q} = lam m_{p,r} + (1-lam) m_{q,r}`` at the
    point of the opposite face minimising the contribution of ``m_{p,q}``."""
    _require_triangle(m)
    p, q = pair
    wq = weighted_gromov(m, q)
    wp = weighted_gromov(m, p)
    return wq / (wq + wp)


def optimal_image(m: TriangleMetric, pair: tuple[PointId, PointId]) -> Vec2:
    p, q = pair
    r = third(p, q)
    lam = optimal_lambda(m, pair)
    return molecule(m, p, r).coords * lam + molecule(m, q, r).coords * (1 - lam)


def _contop_wins(m: TriangleMetric) -> bool:
    return not m.ge(metric_ratio(m, (X, Z)), optimal_contribution(m, (X, Z)))


def alpha_x(m: TriangleMetric) -> Scalar:
    """Weight of ``m_{y,x}`` in the image of ``m_{x,0}`` for the ratio-case
    witness."""
    _require_canonical(m)
    if _contop_wins(m):
        raise WrongRegime("alpha_x needs R_y(x,0) >= contop(x,0)")
    d, ry = m.d_xy, m.d_yz
    return 1 - (ry * gromov(m, Y)) / ((d + ry) * gromov(m, Z))


def _second_column(m: TriangleMetric, scale: Scalar) -> tuple[Vec2, Scalar, Scalar]:
    lam_y = optimal_lambda(m, (Y, Z))
    m_yx = molecule(m, Y, X).coords
    m_x0 = molecule(m, X, Z).coords
    s = scale / optimal_contribution(m, (Y, Z))
    col = (m_yx * lam_y - m_x0 * (1 - lam_y)) * s
    return col, s * lam_y, -s * (1 - lam_y)


def _ratio_construction(m: TriangleMetric) -> tuple[Operator2, dict]:
    alpha = alpha_x(m)
    ratio = metric_ratio(m, (X, Z))
    m_yx = molecule(m, Y, X).coords
    m_y0 = molecule(m, Y, Z).coords
    col1 = m_yx * alpha + m_y0 * (1 - alpha)
    col2, c_yx, c_x0 = _second_column(m, ratio)
    images = {
        "m_{x,0}": {"m_{y,x}": alpha, "m_{y,0}": 1 - alpha},
        "m_{y,0}": {"m_{y,x}": c_yx, "m_{x,0}": c_x0},
    }
    return Operator2.from_columns(col1, col2), images


def _contop_construction(m: TriangleMetric) -> tuple[Operator2, dict]:
    contop = optimal_contribution(m, (X, Z))
    if not m.ge(contop, metric_ratio(m, (X, Z))):
        raise WrongRegime("contop operator needs contop(x,0) >= R_y(x,0)")
    # the image of m_{x,y} stays in the ball only if this holds
    if not m.le(contop, metric_ratio(m, (X, Y))):
        raise CertificationError("contop(x,0) <= R_0(x,y) failed")
    lam_x = optimal_lambda(m, (X, Z))
    m_yx = molecule(m, Y, X).coords
    m_y0 = molecule(m, Y, Z).coords
    col1 = m_yx * lam_x + m_y0 * (1 - lam_x)
    col2, c_yx, c_x0 = _second_column(m, contop)
    images = {
        "m_{x,0}": {"m_{y,x}": lam_x, "m_{y,0}": 1 - lam_x},
        "m_{y,0}": {"m_{y,x}": c_yx, "m_{x,0}": c_x0},
    }
    return Operator2.from_columns(col1, col2), images


def build_ratio_operator(m: TriangleMetric) -> Operator2:
    """Norm-one operator with numerical radius ``R_y(x,0)``."""
    _require_canonical(m)
    return _ratio_construction(m)[0]


def build_contop_operator(m: TriangleMetric) -> Operator2:
    """Norm-one operator with numerical radius ``contop(x,0)``."""
    _require_canonical(m)
    return _contop_construction(m)[0]


def lower_bound_components(m: TriangleMetric) -> tuple[Scalar, Scalar, Scalar]:
    """``max{contop(p,q), R_r(p,q)}`` for the pairs (x,y), (x,z), (y,z)."""
    _require_triangle(m)
    return tuple(
        max(optimal_contribution(m, pair), metric_ratio(m, pair)) for pair in PAIRS
    )


def components(m: TriangleMetric) -> IndexComponents:
    _require_canonical(m)
    return IndexComponents(
        contop_x0=optimal_contribution(m, (X, Z)),
        ratio_y_x0=metric_ratio(m, (X, Z)),
        contop_xy=optimal_contribution(m, (X, Y)),
        contop_y0=optimal_contribution(m, (Y, Z)),
        ratio_0_xy=metric_ratio(m, (X, Y)),
        ratio_x_y0=metric_ratio(m, (Y, Z)),
        threshold=threshold(m),
    )


def _close(m: TriangleMetric, a: Scalar, b: Scalar) -> bool:
    if m.exact:
        return a == b
    return abs(a - b) <= CERT_TOL * max(1.0, abs(a), abs(b))


def numerical_index(m: TriangleMetric) -> IndexReport:
    canon, cls = canonicalize(m)
    if is_aligned(m):
        return IndexReport(m, canon, cls, m.one, Regime.ALIGNED)
    comp = components(canon)
    if m.ge(comp.ratio_y_x0, comp.contop_x0):
        regime, value = Regime.RATIO, comp.ratio_y_x0
        witness, images = _ratio_construction(canon)
    else:
        regime, value = Regime.CONTOP, comp.contop_x0
        witness, images = _contop_construction(canon)
    cert = Certification(
        norm_one=_close(canon, op_norm(canon, witness), canon.one),
        radius_equals_index=_close(canon, numerical_radius(canon, witness), value),
    )
    return IndexReport(m, canon, cls, value, regime, comp, witness, images, cert)


def design_triangle(alpha) -> TriangleMetric:
    """A metric whose free space has numerical index ``alpha``.

    Unit legs over a base of ``(1 - alpha) / alpha``; ``alpha = 1`` gives
    the aligned metric (2, 1, 1).
    """
    alpha = to_scalar(alpha)
    half = Fraction(1, 2) if isinstance(alpha, Fraction) else 0.5
    if not (half <= alpha <= 1):
        raise AlphaOutOfRange(f"alpha must lie in [1/2, 1], got {alpha}")
    one = alpha / alpha
    if alpha == 1:
        return validate(2 * one, one, one)
    return validate((1 - alpha) / alpha, one, one)

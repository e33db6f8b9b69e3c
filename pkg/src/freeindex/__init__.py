"""Numerical index of 2-dimensional Lipschitz-free spaces."""
from freeindex.index import IndexReport, Regime, design_triangle, numerical_index
from freeindex.metric import PointId, TriangleMetric, canonicalize, validate
from freeindex.operators import Operator2, numerical_radius, op_norm
from freeindex.oracle import OracleConfig, estimate_index

__all__ = [
    "IndexReport",
    "Operator2",
    "OracleConfig",
    "PointId",
    "Regime",
    "TriangleMetric",
    "canonicalize",
    "design_triangle",
    "estimate_index",
    "numerical_index",
    "numerical_radius",
    "op_norm",
    "validate",
]

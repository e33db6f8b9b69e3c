"""Brute-force estimate of the numerical index.

Minimises ``v(T)`` over operators with ``||T|| = 1`` by restarted
coordinate pattern search on the four matrix entries.  The search only uses
the polyhedral norm and the incidence structure of the unit ball; it never
looks at the closed-form index, so agreement between the two is evidence
for the formula.

All restarts run in lock step on numpy arrays.  Each restart ``i`` draws its
start from its own generator seeded with ``rng_seed + i``, and the batch
arithmetic is elementwise, so results do not depend on the batch size.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from freeindex.freespace import functionals, molecule, molecules
from freeindex.metric import PAIRS, POINTS, TriangleMetric, gromov, third, validate
from freeindex.operators import Operator2, numerical_radius, op_norm

MODES = ("uniform_scalene", "isosceles", "near_aligned", "near_equilateral")

# stride between per-triangle seeds in a sweep; larger than any restart count
SEED_STRIDE = 1 << 20


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 200
    init_step: float = 0.25
    step_tolerance: float = 1e-7
    max_iters_per_restart: int = 5000
    rng_seed: int = 0
    seed_with_witness: bool = False

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.init_step <= 0 or self.step_tolerance <= 0:
            raise ValueError("step sizes must be > 0")
        if self.max_iters_per_restart < 1:
            raise ValueError("max_iters_per_restart must be >= 1")


@dataclass(frozen=True)
class OracleResult:
    min_v: float
    argmin: Operator2
    evaluations: int
    per_restart_minima: tuple[float, ...] = field(repr=False)


class _Geometry:
    """Float arrays describing the unit ball of one metric."""

    def __init__(self, m: TriangleMetric):
        mols = molecules(m)
        funcs = functionals(m)
        # rows: molecules m_{x,y}, m_{x,0}, m_{y,0}
        self.mols = np.array([[float(v.coords.c1), float(v.coords.c2)] for v in mols])
        # rows: rho_x, rho_y, rho_0
        self.funcs = np.array([[float(f.a), float(f.b)] for f in funcs])
        # +-mol meets +-f on a face exactly when |f(mol)| = 1
        mask = np.array([[m.eq(abs(f(mol.coords)), m.one) for mol in mols] for f in funcs])
        self.mask = mask
        # for each molecule m_{p,q}: the two endpoints m_{p,r}, m_{q,r} of
        # the face opposite to it
        self.opposite = []
        for p, q in PAIRS:
            r = third(p, q)
            self.opposite.append(
                (_coords(molecule(m, p, r)), _coords(molecule(m, q, r)))
            )

    def evaluate(self, T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Numerical radius and operator norm of a batch ``T[..., 2, 2]``."""
        images = T @ self.mols.T  # [..., 2, molecule]
        evals = np.abs(np.einsum("fk,...km->...fm", self.funcs, images))
        norms = evals.max(axis=-2).max(axis=-1)
        radius = np.where(self.mask, evals, 0.0).max(axis=-2).max(axis=-1)
        return radius, norms


def _coords(mol) -> np.ndarray:
    return np.array([float(mol.coords.c1), float(mol.coords.c2)])


def _start(geom: _Geometry, rng: np.random.Generator, structured: bool) -> np.ndarray:
    if not structured:
        return rng.standard_normal((2, 2))
    # two of the three molecules serve as a basis; the first goes onto the
    # face opposite to it, the second onto its own opposite face scaled
    # into the ball
    i, j = rng.choice(3, size=2, replace=False)
    images = []
    for k, scale in ((i, 1.0), (j, rng.random())):
        a, b = geom.opposite[k]
        lam = rng.random()
        sign = 1.0 if rng.random() < 0.5 else -1.0
        images.append(scale * sign * (lam * a + (1 - lam) * b))
    basis = np.column_stack([geom.mols[i], geom.mols[j]])
    return np.column_stack(images) @ np.linalg.inv(basis)


def _normalize(geom: _Geometry, T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    radius, norms = geom.evaluate(T)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(norms > 0, radius / norms, np.inf)
        scale = np.where(norms > 0, norms, 1.0)
    return T / scale[..., None, None], values


def _pattern_search(geom: _Geometry, starts: np.ndarray, cfg: OracleConfig):
    n = starts.shape[0]
    X, fx = _normalize(geom, starts)
    step = np.full(n, cfg.init_step)
    iters = np.zeros(n, dtype=np.int64)
    evaluations = n
    directions = np.concatenate([np.eye(4), -np.eye(4)]).reshape(8, 2, 2)
    active = np.ones(n, dtype=bool)
    while active.any():
        idx = np.flatnonzero(active)
        polls = X[idx, None] + step[idx, None, None, None] * directions
        polls, values = _normalize(geom, polls)
        evaluations += values.size
        best = values.argmin(axis=1)
        best_val = values[np.arange(idx.size), best]
        improved = best_val < fx[idx]
        moved = idx[improved]
        X[moved] = polls[improved, best[improved]]
        fx[moved] = best_val[improved]
        step[idx[~improved]] *= 0.5
        iters[idx] += 1
        active[idx] = (step[idx] >= cfg.step_tolerance) & (
            iters[idx] < cfg.max_iters_per_restart
        )
    return X, fx, evaluations


def estimate_index(
    m: TriangleMetric, cfg: OracleConfig = OracleConfig()
) -> OracleResult:
    """Smallest numerical radius found over norm-one operators."""
    mf = m.as_float()
    geom = _Geometry(mf)
    starts = [
        _start(geom, np.random.default_rng(cfg.rng_seed + i), structured=bool(i % 2))
        for i in range(cfg.restarts)
    ]
    if cfg.seed_with_witness:
        starts.append(_witness_start(m))
    X, fx, evaluations = _pattern_search(geom, np.array(starts), cfg)
    best = int(np.argmin(fx))
    T = Operator2(*(float(v) for v in X[best].ravel()))
    T = T / op_norm(mf, T)
    return OracleResult(
        min_v=float(numerical_radius(mf, T)),
        argmin=T,
        evaluations=int(evaluations),
        per_restart_minima=tuple(float(v) for v in fx),
    )


def _witness_start(m: TriangleMetric) -> np.ndarray:
    from freeindex.index import numerical_index

    report = numerical_index(m)
    if report.witness is None:
        return np.eye(2)
    # the witness lives in the canonical basis; pull it back to m's basis
    order = report.classification.canonical_order
    P = _basis_change(m.as_float(), order)
    W = np.array([[float(v) for v in row] for row in report.witness.rows])
    return P @ W @ np.linalg.inv(P)


def _basis_change(m: TriangleMetric, order) -> np.ndarray:
    """Matrix taking canonical-basis coordinates to ``m``-basis coordinates."""
    # canonical basis vectors are molecules of m under the relabelling
    cols = []
    for canon_point in POINTS[:2]:
        old_src = order[POINTS.index(canon_point)]
        old_dst = order[2]
        v = molecule(m, old_src, old_dst).coords
        cols.append([float(v.c1), float(v.c2)])
    return np.array(cols).T


def random_triangle(
    rng: np.random.Generator, mode: str = "uniform_scalene", exact: bool = False
) -> TriangleMetric:
    """A random valid metric from one of the sampling families in ``MODES``.

    Distances are normalised so the largest equals 1.  With ``exact=True`` the
    draw is rounded to a nearby rational and redrawn until it still belongs
    to the family.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    while True:
        d = _draw(rng, mode)
        d = d / d.max()
        rng.shuffle(d)
        if exact:
            from fractions import Fraction

            vals = [Fraction(float(v)).limit_denominator(1000) for v in d]
        else:
            vals = [float(v) for v in d]
        try:
            m = validate(*vals)
        except ValueError:
            continue
        if _in_family(m, mode):
            return m


def _draw(rng: np.random.Generator, mode: str) -> np.ndarray:
    if mode == "uniform_scalene":
        while True:
            d = rng.uniform(0.05, 1.0, 3)
            a, b, c = np.sort(d)
            if a + b > c:
                return d
    if mode == "isosceles":
        leg = 1.0
        base = rng.uniform(0.05, 1.95)
        return np.array([leg, leg, base])
    if mode == "near_aligned":
        b = rng.uniform(0.1, 0.9)
        gap = rng.uniform(0.0, 0.05)
        while gap == 0.0:
            gap = rng.uniform(0.0, 0.05)
        return np.array([1.0, b, 1.0 - b + gap])
    return 1.0 + rng.uniform(-0.02, 0.02, 3)


def _in_family(m: TriangleMetric, mode: str) -> bool:
    d = [float(v) for v in m.distances]
    g = [float(gromov(m, p)) for p in POINTS]
    if min(g) <= 0:
        return False
    if mode == "isosceles":
        return m.distances[0] in m.distances[1:] or m.distances[1] == m.distances[2]
    if mode == "near_aligned":
        return min(g) <= 0.05 * max(d)
    if mode == "near_equilateral":
        return all(0.95 <= a / b <= 1.05 for a in d for b in d)
    return True


@dataclass(frozen=True)
class SweepRecord:
    metric: TriangleMetric
    formula_index: float
    oracle_min: float
    gap: float
    regime: str
    mode: str
    seed: int


def sweep(
    n: int,
    cfg: OracleConfig = OracleConfig(),
    modes: Sequence[str] = MODES,
) -> list[SweepRecord]:
    """Compare the closed form with the oracle on ``n`` random triangles.

    Triangle ``i`` uses mode ``modes[i % len(modes)]`` and seed
    ``cfg.rng_seed + i * SEED_STRIDE`` (mod 2**64) for both its draw and its
    oracle restarts.
    """
    from dataclasses import replace

    from freeindex.index import numerical_index

    if n < 1:
        raise ValueError("n must be >= 1")
    modes = list(modes)
    records = []
    for i in range(n):
        seed = (cfg.rng_seed + i * SEED_STRIDE) % (1 << 64)
        mode = modes[i % len(modes)]
        m = random_triangle(np.random.default_rng(seed), mode)
        report = numerical_index(m)
        result = estimate_index(m, replace(cfg, rng_seed=seed))
        formula = float(report.index)
        records.append(
            SweepRecord(m, formula, result.min_v, result.min_v - formula,
                        report.regime.value, mode, seed)
        )
    return records


def modes_from(names: Iterable[str] | None) -> list[str]:
    if not names:
        return list(MODES)
    out = list(names)
    for name in out:
        if name not in MODES:
            raise ValueError(f"unknown mode {name!r}; expected one of {MODES}")
    return out

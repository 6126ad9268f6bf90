"""Representing measures, determined points and extension spaces on a grid.

Fix a finite set ``G`` of functions on the grid and a node ``x``.  A
nonnegative weight vector ``w`` on the nodes *represents* ``x`` for ``G``
when ``sum_j w_j g(t_j) = g(x)`` for every ``g`` in ``G``.  The point mass at
``x`` always does.  ``x`` is *determined* when it is the only one, and ``f``
belongs to the extension space of ``G`` when every representing measure
reproduces ``f(x)`` at every node.  When every node is determined, ``G`` is a
Korovkin set at this resolution.

All verdicts are relative to the grid resolution ``m``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .grid import GridFunction, GridMismatchError, is_strictly_positive
from .simplex import OPTIMAL, LPResult, simplex_solve

DEFAULT_TOL = 1e-8


class LPBreakdownError(RuntimeError):
    """The simplex solver did not reach an optimum on a problem that has one."""

    def __init__(self, what: str, result: LPResult):
        super().__init__(f"{what}: simplex returned {result.status!r}")
        self.result = result


@dataclass(frozen=True)
class MomentSystem:
    """Basis functions on a shared grid plus an anchor node index."""

    basis: tuple[GridFunction, ...]
    anchor: int

    def __init__(self, basis: Sequence[GridFunction], anchor: int):
        basis = tuple(basis)
        if not basis:
            raise ValueError("moment system needs at least one basis function")
        for g in basis[1:]:
            if not basis[0].compatible(g):
                raise GridMismatchError("basis functions live on different grids")
        if not 0 <= anchor < basis[0].m:
            raise IndexError(f"anchor {anchor} outside 0..{basis[0].m - 1}")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "anchor", int(anchor))

    @property
    def m(self) -> int:
        return self.basis[0].m

    @property
    def nodes(self) -> np.ndarray:
        return self.basis[0].nodes

    @property
    def x(self) -> float:
        return float(self.nodes[self.anchor])

    @property
    def matrix(self) -> np.ndarray:
        """Constraint matrix ``A[i, j] = g_i(t_j)``."""
        return np.array([g.values for g in self.basis])

    @property
    def rhs(self) -> np.ndarray:
        return self.matrix[:, self.anchor]

    def point_mass(self) -> np.ndarray:
        w = np.zeros(self.m)
        w[self.anchor] = 1.0
        return w

    def residual(self, w: np.ndarray) -> float:
        """Largest moment mismatch of the weights ``w``."""
        return float(np.max(np.abs(self.matrix @ w - self.rhs)))

    def scaled(self, c: float) -> "MomentSystem":
        return MomentSystem([g * c for g in self.basis], self.anchor)


def _solve(sys: MomentSystem, probe: np.ndarray, sense: str, what: str) -> LPResult:
    res = simplex_solve(probe, sys.matrix, sys.rhs, sense)
    if res.status != OPTIMAL:
        # the point mass is feasible, so anything else is a solver failure
        # or a genuinely unbounded probe (no strictly positive g in lin G)
        raise LPBreakdownError(what, res)
    return res


def representing_measure_extremes(sys: MomentSystem, probe: GridFunction) -> tuple[float, float]:
    """Smallest and largest ``sum_j w_j probe(t_j)`` over representing measures ``w``."""
    if not sys.basis[0].compatible(probe):
        raise GridMismatchError("probe lives on a different grid")
    lo = _solve(sys, probe.values, "min", "lower extreme").objective
    hi = _solve(sys, probe.values, "max", "upper extreme").objective
    return lo, hi


@dataclass(frozen=True)
class DeterminacyResult:
    x: float
    determined: bool
    probe_objective: float
    max_spread: float
    weights: np.ndarray = field(repr=False)


def determinacy(sys: MomentSystem, tol: float = DEFAULT_TOL) -> DeterminacyResult:
    """Maximise ``sum_j w_j |t_j - x|`` over representing measures.

    ``probe_objective`` is that maximum; ``max_spread`` is the farthest node
    (from ``x``) carrying weight above ``tol`` in the maximising measure.
    """
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    dist = np.abs(sys.nodes - sys.x)
    res = _solve(sys, dist, "max", f"determinacy at x={sys.x}")
    support = res.weights > tol
    spread = float(dist[support].max()) if support.any() else 0.0
    return DeterminacyResult(sys.x, res.objective <= tol, res.objective, spread, res.weights)


def is_determined(sys: MomentSystem, tol: float = DEFAULT_TOL) -> bool:
    """True iff the point mass at the anchor is the only representing measure (to ``tol``)."""
    return determinacy(sys, tol).determined


def moment_family(basis: Sequence[GridFunction]) -> list[MomentSystem]:
    """One moment system per grid node."""
    return [MomentSystem(basis, j) for j in range(basis[0].m)]


def determinacy_sweep(basis: Sequence[GridFunction], tol: float = DEFAULT_TOL) -> list[DeterminacyResult]:
    return [determinacy(sys, tol) for sys in moment_family(basis)]


@dataclass(frozen=True)
class MembershipRow:
    x: float
    low: float
    high: float
    f_of_x: float
    passed: bool


def membership_rows(
    basis: Sequence[GridFunction], f: GridFunction, tol: float = DEFAULT_TOL
) -> list[MembershipRow]:
    rows = []
    for sys in moment_family(basis):
        lo, hi = representing_measure_extremes(sys, f)
        fx = float(f.values[sys.anchor])
        ok = (hi - lo) <= tol and abs(lo - fx) <= tol
        rows.append(MembershipRow(sys.x, lo, hi, fx, ok))
    return rows


def extension_space_contains(
    basis: Sequence[GridFunction], f: GridFunction, tol: float = DEFAULT_TOL
) -> bool:
    """True iff every representing measure at every node reproduces ``f`` there."""
    for sys in moment_family(basis):
        lo, hi = representing_measure_extremes(sys, f)
        fx = float(f.values[sys.anchor])
        if hi - lo > tol or abs(lo - fx) > tol:
            return False
    return True


def positive_combination(S: Sequence[GridFunction]) -> np.ndarray | None:
    """Coefficients ``c`` with ``sum_i c_i S_i >= 1`` at every node, or ``None``.

    Solved as an LP feasibility problem with free ``c`` split into positive
    and negative parts and a slack per node.
    """
    A = np.array([g.values for g in S]).T  # m x k
    m, k = A.shape
    A_eq = np.hstack([A, -A, -np.eye(m)])
    res = simplex_solve(np.zeros(2 * k + m), A_eq, np.ones(m), "min")
    if res.status != OPTIMAL:
        return None
    return res.weights[:k] - res.weights[k:2 * k]


@dataclass
class KorovkinReport:
    """Korovkin-set verification on one grid.

    ``verdict`` is ``None`` when no strictly positive member or combination
    exists, in which case the hypothesis is unmet and no claim is made.
    """

    strictly_positive: bool
    positive_witness: np.ndarray | None
    determined: np.ndarray
    sweep: list[DeterminacyResult]
    verdict: bool | None

    @property
    def determined_fraction(self) -> float:
        return float(np.mean(self.determined))

    @property
    def determined_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.determined)


def verify_korovkin_set(S: Sequence[GridFunction], tol: float = DEFAULT_TOL) -> KorovkinReport:
    if not S:
        raise ValueError("test set is empty")
    witness = None
    for i, g in enumerate(S):
        if is_strictly_positive(g):
            witness = np.eye(len(S))[i]
            break
    if witness is None:
        witness = positive_combination(S)
    positive = witness is not None
    if positive:
        sweep = determinacy_sweep(S, tol)
    else:
        # without a strictly positive g the measure LP can be unbounded
        sweep = []
        for sys in moment_family(S):
            try:
                sweep.append(determinacy(sys, tol))
            except LPBreakdownError:
                sweep.append(DeterminacyResult(sys.x, False, np.inf, np.inf, np.zeros(sys.m)))
    determined = np.array([r.determined for r in sweep])
    verdict = bool(determined.all()) if positive else None
    return KorovkinReport(positive, witness, determined, sweep, verdict)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return format(float(v), ".17g")


def determinacy_csv(sweep: Sequence[DeterminacyResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "determined", "max_spread", "probe_objective"])
    for r in sweep:
        w.writerow([_fmt(r.x), _fmt(r.determined), _fmt(r.max_spread), _fmt(r.probe_objective)])
    return buf.getvalue()


def membership_csv(rows: Sequence[MembershipRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "low", "high", "f_of_x", "pass"])
    for r in rows:
        w.writerow([_fmt(r.x), _fmt(r.low), _fmt(r.high), _fmt(r.f_of_x), _fmt(r.passed)])
    return buf.getvalue()

"""Dense two-phase tableau simplex for ``A w = b, w >= 0``.

Bland's rule (smallest eligible index enters, ties on the ratio test go to
the smallest basic index) rules out cycling.  The problems solved here are
tiny and dense, so clarity and robustness beat speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
BREAKDOWN = "breakdown"

PIVOT_FLOOR = 1e-11
ZERO_TOL = 1e-12


class SimplexError(ValueError):
    """Inconsistent problem dimensions."""


@dataclass(frozen=True)
class LPResult:
    """Outcome of :func:`simplex_solve`.

    ``weights`` holds the primal solution (a discrete measure when the
    variables are node weights).  It is ``None`` unless ``status`` is
    ``"optimal"``.
    """

    status: str
    objective: float
    weights: np.ndarray | None
    iterations: int = 0

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, A, basis):
        self.A = A  # rows: constraints; last column holds the rhs
        self.basis = basis
        self.iterations = 0

    def pivot(self, r: int, c: int):
        A = self.A
        A[r] /= A[r, c]
        col = A[:, c].copy()
        col[r] = 0.0
        A -= np.outer(col, A[r])
        A[:, c] = 0.0
        A[r, c] = 1.0
        self.basis[r] = c
        self.iterations += 1

    def run(self, cost: np.ndarray, allowed: int, max_iter: int) -> str:
        """Minimise ``cost @ x`` over columns ``< allowed``; returns a status."""
        A = self.A
        while self.iterations < max_iter:
            cb = cost[self.basis]
            reduced = cost[:allowed] - cb @ A[:, :allowed]
            scale = max(1.0, float(np.max(np.abs(cost[:allowed]))))
            entering = np.flatnonzero(reduced < -ZERO_TOL * scale)
            if entering.size == 0:
                return OPTIMAL
            c = int(entering[0])
            col = A[:, c]
            rows = np.flatnonzero(col > ZERO_TOL)
            if rows.size == 0:
                return UNBOUNDED
            ratios = A[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + ZERO_TOL * max(1.0, abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            if abs(col[r]) < PIVOT_FLOOR:
                return BREAKDOWN
            self.pivot(r, c)
        return BREAKDOWN


def simplex_solve(
    costs,
    A_eq,
    b_eq,
    sense: str = "min",
    max_iter: int = 10_000,
) -> LPResult:
    """Optimise ``costs @ w`` subject to ``A_eq @ w = b_eq`` and ``w >= 0``.

    Parameters
    ----------
    costs : array_like, shape (n,)
    A_eq : array_like, shape (k, n)
    b_eq : array_like, shape (k,)
    sense : {"min", "max"}

    Returns
    -------
    LPResult
        ``status`` is one of ``optimal``, ``infeasible``, ``unbounded`` or
        ``breakdown`` (a pivot below 1e-11 in magnitude, or the iteration
        cap was hit).
    """
    c = np.asarray(costs, dtype=float)
    A = np.atleast_2d(np.asarray(A_eq, dtype=float))
    b = np.asarray(b_eq, dtype=float).ravel()
    if c.ndim != 1:
        raise SimplexError("costs must be one-dimensional")
    if A.shape != (b.size, c.size):
        raise SimplexError(f"A_eq has shape {A.shape}, expected ({b.size}, {c.size})")
    if sense not in ("min", "max"):
        raise SimplexError(f"sense must be 'min' or 'max', got {sense!r}")
    sign = 1.0 if sense == "min" else -1.0
    k, n = A.shape

    flip = b < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)

    # phase I: artificials n..n+k-1 start basic
    T = np.hstack([A, np.eye(k), b[:, None]])
    tab = _Tableau(T, list(range(n, n + k)))
    phase1 = np.concatenate([np.zeros(n), np.ones(k)])
    status = tab.run(phase1, n + k, max_iter)
    if status != OPTIMAL:
        return LPResult(status if status == BREAKDOWN else BREAKDOWN, np.nan, None, tab.iterations)
    infeas = float(phase1[tab.basis] @ tab.A[:, -1])
    if infeas > 1e-9 * max(1.0, float(np.abs(b).max(initial=0.0))):
        return LPResult(INFEASIBLE, np.nan, None, tab.iterations)

    # drive artificials out of the basis; drop rows that are redundant
    keep = []
    for r in range(k):
        if tab.basis[r] >= n:
            cand = np.flatnonzero(np.abs(tab.A[r, :n]) > PIVOT_FLOOR)
            if cand.size:
                tab.pivot(r, int(cand[0]))
                keep.append(r)
        else:
            keep.append(r)
    tab.A = np.ascontiguousarray(np.delete(tab.A[keep], np.s_[n:n + k], axis=1))
    tab.basis = [tab.basis[r] for r in keep]

    status = tab.run(sign * c, n, max_iter)
    if status != OPTIMAL:
        return LPResult(status, np.nan, None, tab.iterations)
    w = np.zeros(n)
    w[tab.basis] = np.maximum(tab.A[:, -1], 0.0)
    return LPResult(OPTIMAL, float(c @ w), w, tab.iterations)

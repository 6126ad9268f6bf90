"""Composite quadrature on an interval and L^p norms of grid functions.

Norms of grid functions always use the trapezoid rule on the function's own
nodes, so a reported error is a fixed functional of the sampled data.
Composite Gauss-Legendre is meant for integrands that can be evaluated
anywhere, such as kernel integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .grid import GridFunction, Interval

TRAPEZOID = "composite-trapezoid"
GAUSS_LEGENDRE = "composite-gauss-legendre"


@dataclass(frozen=True)
class QuadratureScheme:
    """Composite rule with ``panels`` equal subintervals.

    ``nodes_per_panel`` is only used by Gauss-Legendre (2 to 8 nodes).
    """

    kind: str = TRAPEZOID
    panels: int = 256
    nodes_per_panel: int = 2

    def __post_init__(self):
        if self.kind not in (TRAPEZOID, GAUSS_LEGENDRE):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if int(self.panels) != self.panels or self.panels < 1:
            raise ValueError(f"panels must be a positive integer, got {self.panels}")
        if self.kind == GAUSS_LEGENDRE and not 2 <= self.nodes_per_panel <= 8:
            raise ValueError(
                f"Gauss-Legendre needs 2..8 nodes per panel, got {self.nodes_per_panel}"
            )

    @classmethod
    def trapezoid(cls, panels: int) -> "QuadratureScheme":
        return cls(TRAPEZOID, panels)

    @classmethod
    def gauss(cls, panels: int, nodes_per_panel: int = 4) -> "QuadratureScheme":
        return cls(GAUSS_LEGENDRE, panels, nodes_per_panel)

    def rule(self, interval: Interval) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and strictly positive weights on ``interval``."""
        if self.kind == TRAPEZOID:
            t = interval.nodes(self.panels + 1)
            return t, trapezoid_weights(interval, self.panels + 1)
        x, w = _leggauss(self.nodes_per_panel)
        edges = interval.nodes(self.panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return t, weights


@lru_cache(maxsize=None)
def _leggauss(k: int):
    x, w = np.polynomial.legendre.leggauss(k)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def trapezoid_weights(interval: Interval, m: int) -> np.ndarray:
    """Trapezoid weights for the ``m`` uniform nodes of ``interval``."""
    h = interval.length / (m - 1)
    w = np.full(m, h)
    w[0] = w[-1] = 0.5 * h
    return w


def integrate(
    f: GridFunction | Callable,
    interval: Interval | None = None,
    scheme: QuadratureScheme | None = None,
) -> float:
    """Approximate the integral of ``f`` over ``interval``.

    A :class:`GridFunction` is always integrated by the trapezoid rule on
    its native nodes; ``scheme`` is ignored for it.  A callable must accept
    an array of abscissae and needs both ``interval`` and ``scheme``.
    """
    if isinstance(f, GridFunction):
        if interval is not None and interval != f.interval:
            raise ValueError("interval does not match the grid function's interval")
        return float(trapezoid_weights(f.interval, f.m) @ f.values)
    if interval is None or scheme is None:
        raise ValueError("a callable integrand needs an interval and a scheme")
    t, w = scheme.rule(interval)
    return float(w @ np.broadcast_to(f(t), t.shape))


def lp_norm(f: GridFunction, p: float = 1.0) -> float:
    """``(integral |f|^p)^(1/p)`` by the trapezoid rule on the native grid."""
    if not p >= 1:
        raise ValueError(f"L^p norm needs p >= 1, got {p}")
    w = trapezoid_weights(f.interval, f.m)
    a = np.abs(f.values)
    if p == 1:
        return float(w @ a)
    scale = a.max()
    if scale == 0:
        return 0.0
    # scaled to avoid overflow of |f|^p
    return float(scale * (w @ (a / scale) ** p) ** (1.0 / p))


def sup_norm(f: GridFunction) -> float:
    """Largest absolute node value (a grid surrogate of the sup norm)."""
    return float(np.max(np.abs(f.values)))

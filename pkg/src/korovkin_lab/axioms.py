"""Grid-level checks of the Banach function space axioms for L^p norms.

Three axioms are checked. Solidity: ``|g| <= |f|`` implies
``||g|| <= ||f||``. Monotone convergence: ``0 <= f_k`` increasing to ``f``
implies ``||f_k|| -> ||f||``. Invariance under changes on null sets. A
uniform grid has no genuine null sets, so the third axiom is tested as a
single-node perturbation whose effect must vanish linearly under refinement.
:func:`density_demo` shows continuous functions approximating a jump in L^p.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .grid import GridFunction, Interval, lattice_inf
from .quadrature import lp_norm

SLACK = 1e-12


class AxiomPreconditionError(ValueError):
    """The inputs do not satisfy an axiom's hypothesis (distinct from a failed axiom)."""


@dataclass(frozen=True)
class NormKind:
    """The L^p norm, ``p >= 1``."""

    p: float = 1.0
    tag: str = "Lp"

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"L^p needs p >= 1, got {self.p}")

    def __call__(self, f: GridFunction) -> float:
        return lp_norm(f, self.p)


def check_solidity(f: GridFunction, g: GridFunction, norm: NormKind) -> bool:
    """``|g| <= |f|`` nodewise must give ``||g|| <= ||f||``."""
    f._check(g)
    if np.any(np.abs(g.values) > np.abs(f.values)):
        raise AxiomPreconditionError("solidity check needs |g| <= |f| at every node")
    return norm(g) <= norm(f) + SLACK


def capped_sequence(f: GridFunction, steps: int) -> list[GridFunction]:
    """``f_k = min(f, k * max(f) / steps)`` for ``k = 1..steps``; the last term is ``f``."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    top = float(f.values.max())
    seq = [lattice_inf(f, GridFunction(f.interval, np.full(f.m, k * top / steps)))
           for k in range(1, steps)]
    seq.append(f)
    return seq


def check_monotone_sequence(seq: Sequence[GridFunction], f: GridFunction, norm: NormKind) -> bool:
    """Norms along a nonnegative increasing sequence ending at ``f`` must rise to ``||f||``."""
    if np.any(f.values < 0):
        raise AxiomPreconditionError("monotone convergence needs f >= 0")
    prev = None
    for g in seq:
        f._check(g)
        if np.any(g.values < 0) or np.any(g.values > f.values):
            raise AxiomPreconditionError("sequence must satisfy 0 <= f_k <= f")
        if prev is not None and np.any(g.values < prev.values):
            raise AxiomPreconditionError("sequence is not nodewise increasing")
        prev = g
    norms = [norm(g) for g in seq]
    nondecreasing = all(b >= a - SLACK for a, b in zip(norms, norms[1:]))
    return nondecreasing and abs(norms[-1] - norm(f)) <= SLACK


def check_monotone_convergence(f: GridFunction, steps: int, norm: NormKind) -> bool:
    """Monotone convergence along the canonical capped sequence of ``f``."""
    if np.any(f.values < 0):
        raise AxiomPreconditionError("monotone convergence needs f >= 0")
    return check_monotone_sequence(capped_sequence(f, steps), f, norm)


def null_perturbation_shift(f: GridFunction, norm: NormKind, node: int | None = None) -> float:
    """``| ||f'|| - ||f|| |`` where ``f'`` adds 1 to ``f`` at one node (default: middle node)."""
    node = f.m // 2 if node is None else node
    if not 0 <= node < f.m:
        raise IndexError(f"node {node} outside 0..{f.m - 1}")
    bumped = f.values.copy()
    bumped[node] += 1.0
    return abs(norm(GridFunction(f.interval, bumped)) - norm(f))


def null_perturbation_bound(f: GridFunction, norm: NormKind, C: float = 2.0) -> float:
    """``C * h**(1/p)``; a single-node bump of size one has L^p mass at most ``h**(1/p)``."""
    return C * f.spacing ** (1.0 / norm.p)


def check_null_invariance(
    f: GridFunction, norm: NormKind, node: int | None = None, C: float = 2.0
) -> bool:
    if f.m < 16:
        raise AxiomPreconditionError(f"null-set check needs m >= 16, got {f.m}")
    return null_perturbation_shift(f, norm, node) <= null_perturbation_bound(f, norm, C)


def _find_jump(target: GridFunction) -> tuple[int, float, float]:
    v = target.values
    change = np.flatnonzero(np.diff(v) != 0)
    if change.size != 1:
        raise AxiomPreconditionError("target must be a step with exactly one jump")
    j = int(change[0]) + 1
    if not 0 < j < target.m - 1:
        raise AxiomPreconditionError("jump must sit at an interior node")
    return j, float(v[0]), float(v[-1])


def ramp_approximant(target: GridFunction, width: float) -> GridFunction:
    """Continuous ramp equal to the step outside a window of ``width`` centred at the jump."""
    j, lo, hi = _find_jump(target)
    t = target.nodes
    c = t[j]
    frac = np.clip((t - (c - width / 2)) / width, 0.0, 1.0)
    return GridFunction(target.interval, lo + (hi - lo) * frac)


def ramp_error_rate(width: float, p: float, jump: float = 1.0) -> float:
    """Analytic ``||step - ramp||_p`` for a ramp of ``width`` across a jump of size ``jump``."""
    return abs(jump) * (width / (2.0**p * (p + 1.0))) ** (1.0 / p)


def density_demo(target: GridFunction, norm: NormKind, widths: Sequence[float]) -> list[float]:
    """Distances from a one-jump step to ramps of decreasing width.

    The distances shrink like ``width**(1/p)``, so continuous functions
    come arbitrarily close to the discontinuous target.
    """
    widths = [float(w) for w in widths]
    if any(w <= 0 for w in widths) or any(b >= a for a, b in zip(widths, widths[1:])):
        raise ValueError("widths must be positive and strictly decreasing")
    return [norm(target - ramp_approximant(target, w)) for w in widths]


@dataclass(frozen=True)
class AxiomRecord:
    axiom: str
    instance: int
    parameter: str
    passed: bool
    detail: str


DENSITY_MIN_NODES = 1025


def run_axiom_suite(
    interval: Interval,
    m: int,
    ps: Iterable[float] = (1.0, 2.0),
    trials: int = 100,
    seed: int = 0,
) -> list[AxiomRecord]:
    """Randomised solidity/monotone-convergence trials plus null-set and density checks."""
    rng = np.random.default_rng(seed)
    t = interval.nodes(m)
    out: list[AxiomRecord] = []
    for p in ps:
        norm = NormKind(p)
        par = f"p={p:g}"
        for i in range(trials):
            f = GridFunction(interval, rng.normal(size=m) * rng.uniform(0.1, 10))
            g = GridFunction(interval, f.values * rng.uniform(-1, 1, size=m))
            ok = check_solidity(f, g, norm)
            out.append(AxiomRecord("solidity", i, par, ok,
                                   f"|g|={norm(g):.17g} |f|={norm(f):.17g}"))
        for i in range(trials):
            f = GridFunction(interval, np.abs(rng.normal(size=m)) * rng.uniform(0.1, 10))
            steps = int(rng.integers(1, 33))
            ok = check_monotone_convergence(f, steps, norm)
            out.append(AxiomRecord("monotone-convergence", i, f"{par};steps={steps}", ok,
                                   f"|f|={norm(f):.17g}"))
        f = GridFunction(interval, np.cos(3 * t))
        shift = null_perturbation_shift(f, norm)
        bound = null_perturbation_bound(f, norm)
        out.append(AxiomRecord("null-invariance", 0, par, shift <= bound,
                               f"shift={shift:.17g} bound={bound:.17g}"))
        # density concerns the space, not the user grid: resolve the ramps
        m_fine = max(m, DENSITY_MIN_NODES)
        t_fine = interval.nodes(m_fine)
        step = GridFunction(interval, (t_fine >= t_fine[m_fine // 2]).astype(float))
        widths = [interval.length * w for w in (0.2, 0.1, 0.05, 0.025)]
        errs = density_demo(step, norm, widths)
        ratio = errs[-1] / ramp_error_rate(widths[-1], p)
        ok = all(b < a for a, b in zip(errs, errs[1:])) and 0.5 <= ratio <= 2.0
        out.append(AxiomRecord("density", 0, par, ok,
                               "errors=" + ";".join(f"{e:.17g}" for e in errs)
                               + f" ratio={ratio:.17g}"))
    return out


def axiom_records_csv(records: Iterable[AxiomRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["axiom", "instance", "parameter", "pass", "detail"])
    for r in records:
        w.writerow([r.axiom, r.instance, r.parameter, "true" if r.passed else "false", r.detail])
    return buf.getvalue()

"""Korovkin test sets in the finite vector lattice R^m.

``R^m`` with the componentwise order is ``C(X)`` for an ``m``-point set
``X``.  Given generators ``u_1..u_k`` the element ``u = sum_i |u_i|`` plays
the role of the unit.  The lattice isomorphism ``C(X) -> E_u`` is
multiplication by ``u``.  The test elements are then

    u,   u_i,   u_i^(2) = u * (u_i / u)^2 = u_i^2 / u,

at most ``2k + 1`` vectors.  Positive maps are nonnegative matrices.
Lattice homomorphisms are nonnegative matrices with at most one nonzero
entry per row.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


def _as_matrix(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class FiniteVectorLattice:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")

    def sup(self, x, y) -> np.ndarray:
        return np.maximum(x, y)

    def inf(self, x, y) -> np.ndarray:
        return np.minimum(x, y)

    def abs(self, x) -> np.ndarray:
        return np.abs(x)

    def leq(self, x, y) -> bool:
        return bool(np.all(np.asarray(x) <= np.asarray(y)))


class PositiveMap:
    """Linear map on R^m with a nonnegative matrix."""

    def __init__(self, matrix):
        a = _as_matrix(matrix)
        if np.any(a < 0) or not np.all(np.isfinite(a)):
            raise ValueError("positive map needs a finite nonnegative matrix")
        a.setflags(write=False)
        self.matrix = a

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)

    def norm(self) -> float:
        """Operator norm for the max-norm: the largest row sum."""
        return float(self.matrix.sum(axis=1).max())

    def __repr__(self):
        return f"{type(self).__name__}({self.matrix.tolist()})"


class LatticeHom(PositiveMap):
    """Positive map with at most one nonzero entry per row."""

    def __init__(self, matrix):
        super().__init__(matrix)
        if not row_support_ok(self.matrix):
            raise ValueError("a lattice homomorphism has at most one nonzero entry per row")

    @classmethod
    def from_assignment(cls, m: int, source, scale) -> "LatticeHom":
        """``(Px)_r = scale[r] * x[source[r]]``; a negative source gives a zero row."""
        a = np.zeros((m, m))
        for r, (j, s) in enumerate(zip(source, scale)):
            if j >= 0:
                a[r, j] = s
        return cls(a)


def row_support_ok(matrix) -> bool:
    return bool(np.all(np.count_nonzero(np.asarray(matrix), axis=1) <= 1))


@dataclass
class LatticeHomCheck:
    structural: bool
    randomized: bool
    witness: tuple[np.ndarray, np.ndarray] | None = None

    def __bool__(self):
        return self.structural and self.randomized


def is_lattice_hom(
    map_: PositiveMap | np.ndarray,
    trials: int = 32,
    tol: float = 1e-12,
    seed: int | None = 0,
) -> LatticeHomCheck:
    """Structural row-support test plus randomised ``P sup(x, y) == sup(Px, Py)``.

    The result is truthy only when both agree that the map is a lattice
    homomorphism.  When a random pair breaks commutation it is returned as
    ``witness``.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    a = map_.matrix if isinstance(map_, PositiveMap) else _as_matrix(map_)
    structural = row_support_ok(a)
    rng = np.random.default_rng(seed)
    m = a.shape[0]
    for _ in range(trials):
        x, y = rng.normal(size=(2, m))
        lhs = a @ np.maximum(x, y)
        rhs = np.maximum(a @ x, a @ y)
        scale = np.abs(a) @ (np.abs(x) + np.abs(y))
        if np.any(np.abs(lhs - rhs) > tol * np.maximum(scale, 1.0)):
            return LatticeHomCheck(structural, False, (x, y))
    return LatticeHomCheck(structural, True)


def quasi_interior_point(generators: Sequence) -> tuple[np.ndarray, bool]:
    """``u = sum_i |u_i|`` and whether it is strictly positive (quasi-interior in R^m)."""
    gens = np.atleast_2d(np.asarray(generators, dtype=float))
    if gens.size == 0:
        raise ValueError("need at least one generator")
    u = np.abs(gens).sum(axis=0)
    return u, bool(np.all(u > 0))


def _unit_coordinates(gens: np.ndarray, u: np.ndarray) -> np.ndarray:
    # T^{-1}(u_i) = u_i / u on the support of u, zero elsewhere
    return np.divide(gens, u, out=np.zeros_like(gens), where=u > 0)


def korovkin_test_set(generators: Sequence, dedup_tol: float = 0.0) -> list[np.ndarray]:
    """The test elements ``u``, ``u_i`` and ``u_i^2 / u`` with duplicates removed."""
    gens = np.atleast_2d(np.asarray(generators, dtype=float))
    u, _ = quasi_interior_point(gens)
    h = _unit_coordinates(gens, u)
    candidates = [u, *gens, *(u * h**2)]
    out: list[np.ndarray] = []
    for v in candidates:
        if not any(np.max(np.abs(v - w)) <= dedup_tol for w in out):
            out.append(v)
    return out


def point_classes(generators: Sequence) -> np.ndarray:
    """Label coordinates that the generated sublattice cannot tell apart.

    Two coordinates carry the same label when every ``u_i / u`` agrees on
    them (up to 1e-12).  Coordinates where ``u == 0`` get label ``-1``.
    """
    gens = np.atleast_2d(np.asarray(generators, dtype=float))
    u, _ = quasi_interior_point(gens)
    h = _unit_coordinates(gens, u)
    labels = np.full(u.size, -1)
    reps: list[int] = []
    for j in range(u.size):
        if u[j] == 0:
            continue
        for lab, r in enumerate(reps):
            if np.max(np.abs(h[:, j] - h[:, r])) <= 1e-12:
                labels[j] = lab
                break
        else:
            labels[j] = len(reps)
            reps.append(j)
    return labels


def separation(generators: Sequence) -> float:
    """Smallest ``sum_i (h_i(j) - h_i(l))^2`` over coordinates in different classes.

    ``h_i = u_i / u``.  Infinite when there is at most one class.
    """
    gens = np.atleast_2d(np.asarray(generators, dtype=float))
    u, _ = quasi_interior_point(gens)
    h = _unit_coordinates(gens, u)
    labels = point_classes(gens)
    best = np.inf
    for j in range(u.size):
        for l in range(j + 1, u.size):
            if labels[j] >= 0 and labels[l] >= 0 and labels[j] != labels[l]:
                best = min(best, float(np.sum((h[:, j] - h[:, l]) ** 2)))
    return best


def spans_everything(generators: Sequence) -> bool:
    """True when the generated sublattice is all of R^m."""
    labels = point_classes(generators)
    return bool(np.all(labels >= 0) and np.unique(labels).size == labels.size)


def sample_generated_sublattice(
    generators: Sequence,
    count: int,
    seed: int = 0,
    depth: int = 3,
) -> list[np.ndarray]:
    """Random elements of the vector sublattice generated by ``generators``.

    Each sample is a random expression tree of height at most ``depth``.
    Leaves are random linear combinations of the generators (sometimes the
    zero vector).  Inner nodes are ``sup``, ``inf`` or a linear combination
    of two subtrees.  ``depth=0`` gives plain linear combinations.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    gens = np.atleast_2d(np.asarray(generators, dtype=float))
    rng = np.random.default_rng(seed)

    def leaf():
        if rng.random() < 0.2:
            return np.zeros(gens.shape[1])
        return rng.normal(size=gens.shape[0]) @ gens

    def expr(d):
        if d == 0 or rng.random() < 0.25:
            return leaf()
        a, b = expr(d - 1), expr(d - 1)
        op = rng.integers(3)
        if op == 0:
            return np.maximum(a, b)
        if op == 1:
            return np.minimum(a, b)
        return rng.normal() * a + rng.normal() * b

    return [expr(depth) for _ in range(count)]


@dataclass
class TransferReport:
    """Outcome of :func:`verify_test_set_convergence`.

    ``test_errors[n]`` and ``sample_errors[n]`` are the largest max-norm
    errors ``|(T_n - P) v|`` over the test set and over the samples.
    Samples are normalised so that ``max |v / u| = 1``.  ``constant`` is
    the factor ``C`` in ``sample error <= C * test error``.
    """

    verdict: str
    constant: float
    norm_bound: float
    map_norms: list[float]
    test_set: list[np.ndarray]
    test_errors: list[float]
    sample_errors: list[float]
    quasi_interior: bool
    spanning: bool
    witness: np.ndarray | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def worst_error(self) -> float:
        return float(max(self.sample_errors, default=0.0))


def verify_test_set_convergence(
    generators: Sequence,
    maps: Sequence[PositiveMap],
    P: LatticeHom,
    samples: int = 64,
    tol_schedule: Sequence[float] = (1e-1, 1e-2, 1e-3),
    seed: int = 0,
) -> TransferReport:
    """Check that convergence on the test set carries over to the sublattice.

    Let ``eps_n`` be the largest test-set error of ``T_n``.  For a sampled
    ``f`` with ``max |f / u| <= 1`` positivity gives

        |(T_n - P) f| <= (1 + 8k / delta) * eps_n,

    where ``delta`` is :func:`separation`.  The verdict is PASS when every
    time ``eps_n <= tol`` the sample errors stay below ``C * tol`` for
    ``C = 1 + 8k/delta``.  Otherwise it is FAIL and the offending vector is
    kept.
    """
    gens = np.atleast_2d(np.asarray(generators, dtype=float))
    k, m = gens.shape
    u, quasi = quasi_interior_point(gens)
    spanning = spans_everything(gens)
    notes = []
    if not quasi:
        notes.append("u is not strictly positive: E_u is a proper ideal")
    tests = korovkin_test_set(gens)
    delta = separation(gens)
    constant = 1.0 + (8.0 * k / delta if np.isfinite(delta) else 0.0)

    elems = sample_generated_sublattice(gens, samples, seed)
    if spanning:
        elems.extend(np.eye(m))
    normed = []
    for v in elems:
        s = np.max(np.abs(_unit_coordinates(v[None, :], u)))
        if s > 0:
            normed.append(v / s)

    map_norms = [T.norm() for T in maps]
    norm_bound = max(map_norms, default=0.0)
    test_err, sample_err, worst = [], [], []
    for T in maps:
        D = T.matrix - P.matrix
        test_err.append(max(float(np.max(np.abs(D @ v))) for v in tests))
        errs = [float(np.max(np.abs(D @ v))) for v in normed]
        j = int(np.argmax(errs)) if errs else -1
        sample_err.append(errs[j] if errs else 0.0)
        worst.append(normed[j] if errs else None)

    verdict, witness = "PASS", None
    for tol in tol_schedule:
        for i, (te, se) in enumerate(zip(test_err, sample_err)):
            # slack covers rounding in the matrix-vector products
            slack = 1e-12 * (1.0 + norm_bound + float(np.max(P.matrix, initial=0.0)))
            if te <= tol and se > constant * tol + slack * constant:
                verdict, witness = "FAIL", worst[i]
                break
        if witness is not None:
            break
    return TransferReport(verdict, constant, norm_bound, map_norms, tests, test_err,
                          sample_err, quasi, spanning, witness, notes)


@dataclass(frozen=True)
class CampaignRow:
    trial: int
    seed: int
    m: int
    k: int
    testset_size: int
    verdict: str
    worst_error: float


def random_trial(seed: int, max_m: int = 6, max_k: int = 3, steps: int = 12):
    """Random generators, lattice homomorphism and maps ``T_n = P + R_n / n``."""
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, max_m + 1))
    k = int(rng.integers(1, max_k + 1))
    gens = rng.uniform(0.1, 1.0, size=(k, m))
    source = rng.integers(0, m, size=m)
    source[rng.random(m) < 0.15] = -1
    P = LatticeHom.from_assignment(m, source, rng.uniform(0.5, 2.0, size=m))
    ns = 2 ** np.arange(steps)
    maps = [PositiveMap(P.matrix + rng.uniform(0, 1, size=(m, m)) / n) for n in ns]
    return gens, maps, P


def run_campaign(trials: int = 200, seed: int = 0, samples: int = 64) -> list[CampaignRow]:
    rows = []
    for t in range(trials):
        s = seed + t
        gens, maps, P = random_trial(s)
        rep = verify_test_set_convergence(gens, maps, P, samples=samples, seed=s)
        rows.append(CampaignRow(t, s, gens.shape[1], gens.shape[0], len(rep.test_set),
                                rep.verdict, rep.worst_error))
    return rows


def campaign_csv(rows: Sequence[CampaignRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "seed", "m", "k", "testset_size", "verdict", "worst_error"])
    for r in rows:
        w.writerow([r.trial, r.seed, r.m, r.k, r.testset_size, r.verdict,
                    format(r.worst_error, ".17g")])
    return buf.getvalue()

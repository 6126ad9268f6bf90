"""Convergence experiments for positive operator sequences in L^p.

The scheme: check the hypotheses (a uniform operator-norm bound,
convergence on the test set ``S``, and that ``S`` is a Korovkin set on the
grid), then measure ``||T_n f - f||_p`` on arbitrary targets.  A finite
schedule can only refute convergence, never prove it.  Every verdict is a
decay heuristic at desk scale.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .grid import GridFunction, Interval, make_monomial
from .korovkin import DEFAULT_TOL, KorovkinReport, extension_space_contains, verify_korovkin_set
from .operators import OperatorFamily, landau_stieltjes_family
from .quadrature import lp_norm

DECAY_FACTOR = 0.75
RIPPLE = 0.10
NORM_SLACK = 1e-6
# curves at round-off level count as converged (exact reproduction)
ERROR_FLOOR = 1e-12

PASS, FAIL, INSUFFICIENT = "PASS", "FAIL", "INSUFFICIENT"


def decay_verdict(errors: Sequence[float]) -> str:
    """``PASS`` if the curve drops by a factor 0.75 and never rises more than 10%.

    A single point gives ``INSUFFICIENT``.  A curve whose errors all stay
    below ``ERROR_FLOOR`` passes outright.
    """
    if len(errors) < 2:
        return INSUFFICIENT
    e = np.asarray(errors, dtype=float)
    if np.all(e <= ERROR_FLOOR):
        return PASS
    ripple_ok = np.all(e[1:] <= (1.0 + RIPPLE) * e[:-1])
    return PASS if ripple_ok and e[-1] <= DECAY_FACTOR * e[0] else FAIL


def _check_schedule(schedule: Sequence[int]) -> list[int]:
    sched = [int(n) for n in schedule]
    if not sched:
        raise ValueError("schedule is empty")
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise ValueError(f"schedule must be strictly increasing, got {sched}")
    if sched[0] < 1:
        raise ValueError("schedule entries must be positive")
    return sched


@dataclass
class Curve:
    name: str
    errors: list[float]

    @property
    def verdict(self) -> str:
        return decay_verdict(self.errors)


@dataclass
class ConvergenceReport:
    family: str
    schedule: list[int]
    p: float
    operator_norms: list[float] | None
    test_curves: list[Curve]
    target_curves: list[Curve]
    korovkin: KorovkinReport | None = None
    notes: list[str] = field(default_factory=list)
    norm_limit: float | None = None

    @property
    def norm_bound(self) -> float | None:
        return None if self.operator_norms is None else max(self.operator_norms)

    @property
    def hypotheses_verified(self) -> bool:
        return (
            self.korovkin is not None
            and bool(self.korovkin.verdict)
            and self.norm_bound is not None
            and np.isfinite(self.norm_bound)
            and all(c.verdict == PASS for c in self.test_curves)
        )

    @property
    def norm_within_limit(self) -> bool:
        if self.norm_limit is None or self.norm_bound is None:
            return True
        return self.norm_bound <= self.norm_limit

    @property
    def verdict(self) -> str:
        if len(self.schedule) < 2:
            return INSUFFICIENT
        if not self.norm_within_limit:
            return FAIL
        curves = self.test_curves + self.target_curves
        return PASS if all(c.verdict == PASS for c in curves) else FAIL

    def curve(self, name: str) -> Curve:
        for c in self.test_curves + self.target_curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def report_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["target", "n", "error", "p", "family"])
        for c in self.test_curves + self.target_curves:
            for n, e in zip(self.schedule, c.errors):
                w.writerow([c.name, n, format(e, ".17g"), format(self.p, "g"), self.family])
        return buf.getvalue()

    def hypothesis_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "operator_norm"])
        norms = self.operator_norms or [float("nan")] * len(self.schedule)
        for n, v in zip(self.schedule, norms):
            w.writerow([n, format(v, ".17g")])
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"family: {self.family}", f"schedule: {' '.join(map(str, self.schedule))}",
                 f"p: {self.p:g}"]
        if self.norm_bound is not None:
            lines.append(f"operator norm bound: {self.norm_bound:.17g}")
        if self.korovkin is not None:
            lines.append(f"determined fraction: {self.korovkin.determined_fraction:.17g}")
            lines.append(f"korovkin verdict: {self.korovkin.verdict}")
        for c in self.test_curves + self.target_curves:
            lines.append(f"{c.name}: {c.verdict}")
        lines.extend(self.notes)
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def _names(fs: Sequence[GridFunction], names: Sequence[str] | None, prefix: str) -> list[str]:
    if names is None:
        return [f"{prefix}{i}" for i in range(len(fs))]
    if len(names) != len(fs):
        raise ValueError("one name per function expected")
    return list(names)


def run_convergence(
    family: OperatorFamily,
    S: Sequence[GridFunction],
    targets: Sequence[GridFunction],
    schedule: Sequence[int],
    p: float = 1.0,
    S_names: Sequence[str] | None = None,
    target_names: Sequence[str] | None = None,
    korovkin_tol: float = DEFAULT_TOL,
    verify_test_set: bool = True,
) -> ConvergenceReport:
    """Error curves ``||T_n g - g||_p`` over ``schedule`` for test and target functions.

    Parameters
    ----------
    family : OperatorFamily
        The operator sequence.  Its ``norm`` callable, if any, fills the
        uniform-boundedness table.
    S : sequence of GridFunction
        Test set.  It is checked with :func:`verify_korovkin_set` unless
        ``verify_test_set`` is false, in which case the hypotheses are
        reported as unverified.
    targets : sequence of GridFunction
        Functions on which convergence is concluded.
    schedule : sequence of int
        Strictly increasing operator indices.
    p : float
        Exponent of the L^p error norm.
    """
    sched = _check_schedule(schedule)
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not S:
        raise ValueError("test set is empty")
    fs = list(S) + list(targets)
    for g in fs[1:]:
        fs[0]._check(g)
    interval = fs[0].interval

    def curve(name, f):
        return Curve(name, [lp_norm(family(n, f) - f, p) for n in sched])

    test_curves = [curve(nm, g) for nm, g in zip(_names(S, S_names, "test"), S)]
    target_curves = [curve(nm, f) for nm, f in zip(_names(targets, target_names, "target"), targets)]
    norms = None if family.norm is None else [float(family.norm(n, interval)) for n in sched]
    notes = []
    korovkin = verify_korovkin_set(S, korovkin_tol) if verify_test_set else None
    if korovkin is None:
        notes.append("hypotheses: test set not verified")
    elif korovkin.verdict is None:
        notes.append("hypotheses: no strictly positive function in lin S")
    elif not korovkin.verdict:
        notes.append("hypotheses: test set is not a Korovkin set at this resolution")
    return ConvergenceReport(family.descriptor, sched, float(p), norms, test_curves,
                             target_curves, korovkin, notes)


def standard_targets(interval: Interval, m: int) -> tuple[list[GridFunction], list[str]]:
    """``|t - c|`` with ``c`` at one third of the interval, ``exp``, and a unit step at the midpoint node."""
    t = interval.nodes(m)
    c = interval.a + interval.length / 3
    kink = GridFunction(interval, np.abs(t - c))
    expo = GridFunction(interval, np.exp((t - interval.a) / interval.length))
    step = GridFunction(interval, (t >= t[(m - 1) // 2]).astype(float))
    return [kink, expo, step], ["abs-kink", "exp", "step"]


def run_landau_l1_experiment(
    interval: Interval = Interval(0.0, 1.0),
    m: int = 257,
    schedule: Sequence[int] = (8, 32, 128),
    p: float = 1.0,
    verify_test_set: bool = True,
) -> ConvergenceReport:
    """Landau-Stieltjes operators in L^p with test set ``{1, t, t^2}``.

    The report includes the uniform operator-norm table; a norm above
    ``1 + 1e-6`` fails the verdict.
    """
    S = [make_monomial(interval, m, i) for i in range(3)]
    targets, names = standard_targets(interval, m)
    rep = run_convergence(landau_stieltjes_family(), S, targets, schedule, p,
                          S_names=["pi0", "pi1", "pi2"], target_names=names,
                          verify_test_set=verify_test_set)
    rep.norm_limit = 1.0 + NORM_SLACK
    if not rep.norm_within_limit:
        rep.notes.append(f"operator norm {rep.norm_bound:.17g} exceeds 1 + 1e-6")
    return rep


@dataclass
class ImplicationReport:
    """Falsification check: extension-space members must show decay.

    ``holds`` is ``True`` when no counterexample was found.  That is
    evidence, not proof.
    """

    holds: bool
    determined_fraction: float
    members: list[str]
    non_members: list[str]
    counterexamples: list[str]
    convergence: ConvergenceReport

    def __bool__(self):
        return self.holds


def check_extension_implication(
    family: OperatorFamily,
    S: Sequence[GridFunction],
    candidates: Sequence[GridFunction],
    schedule: Sequence[int],
    p: float = 1.0,
    candidate_names: Sequence[str] | None = None,
    tol: float = DEFAULT_TOL,
) -> ImplicationReport:
    """Convergence on ``S`` should propagate to every member of the extension space.

    Candidates that fail the membership test are set aside (no claim is
    made about them).  The implication is refuted only if ``S`` decays and
    some member does not.
    """
    names = _names(candidates, candidate_names, "candidate")
    member_flags = [extension_space_contains(S, f, tol) for f in candidates]
    members = [f for f, ok in zip(candidates, member_flags) if ok]
    member_names = [nm for nm, ok in zip(names, member_flags) if ok]
    conv = run_convergence(family, S, members, schedule, p, target_names=member_names,
                           korovkin_tol=tol)
    premise = all(c.verdict == PASS for c in conv.test_curves)
    bad = [c.name for c in conv.target_curves if c.verdict != PASS] if premise else []
    return ImplicationReport(
        holds=not bad,
        determined_fraction=conv.korovkin.determined_fraction,
        members=member_names,
        non_members=[nm for nm, ok in zip(names, member_flags) if not ok],
        counterexamples=bad,
        convergence=conv,
    )

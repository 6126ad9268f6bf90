"""Positive integral operators on ``[a, b]``.

The main family is the Landau-Stieltjes convolution

    T_n(f, x) = 1/(b-a) * sqrt(n/pi) * int_a^b (1 - ((t-x)/(b-a))^2)^n f(t) dt,

which maps every integrable ``f`` to a polynomial of degree ``2n`` in ``x``.
Bernstein polynomials on ``[0, 1]`` are provided as a second positive family
so the convergence harness is not tied to one operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

from .grid import GridFunction, Interval
from .quadrature import QuadratureScheme, trapezoid_weights

_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class LandauStieltjesKernel:
    n: int
    interval: Interval

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"kernel index must be a positive integer, got {self.n}")

    @property
    def peak(self) -> float:
        """Prefactor ``sqrt(n/pi) / (b - a)``, the value at ``t == x``."""
        return np.sqrt(self.n / np.pi) / self.interval.length

    def __call__(self, t, x):
        """Vectorised kernel values; ``t`` and ``x`` broadcast together."""
        s = (np.asarray(t, dtype=float) - np.asarray(x, dtype=float)) / self.interval.length
        return self.peak * _power_profile(s, self.n)


def _power_profile(s, n: int) -> np.ndarray:
    # (1 - s^2)^n via exp(n log1p(-s^2)); zero once s^2 >= 1
    s2 = np.square(s)
    inside = s2 < 1.0
    out = np.zeros(np.shape(s2))
    out[inside] = np.exp(n * np.log1p(-s2[inside]))
    return out


def kernel_value(k: LandauStieltjesKernel, t: float, x: float) -> float:
    """Value of the Landau-Stieltjes kernel at one point, checked against the interval."""
    iv = k.interval
    slack = _EDGE_SLACK * iv.length
    if not (iv.contains(t, slack) and iv.contains(x, slack)):
        raise ValueError(f"kernel arguments t={t}, x={x} outside [{iv.a}, {iv.b}]")
    return float(k(t, x))


def apply_landau_stieltjes(
    k: LandauStieltjesKernel,
    f: GridFunction,
    scheme: QuadratureScheme | None = None,
) -> GridFunction:
    """Evaluate ``T_n f`` at the nodes of ``f``.

    Parameters
    ----------
    k : LandauStieltjesKernel
        Kernel of index ``n`` on the same interval as ``f``.
    f : GridFunction
        Input function.
    scheme : QuadratureScheme, optional
        Rule for the ``t``-integral.  ``None`` (the default) uses the
        trapezoid rule on the nodes of ``f``.  Any other scheme integrates
        the piecewise-linear interpolant of ``f``.

    Returns
    -------
    GridFunction
        ``T_n f`` sampled at the nodes of ``f``.  Nonnegative whenever ``f``
        is, since both the kernel and the quadrature weights are.
    """
    if f.interval != k.interval:
        raise ValueError("kernel and grid function live on different intervals")
    x = f.nodes
    if scheme is None:
        t, w = x, trapezoid_weights(f.interval, f.m)
        ft = f.values
    else:
        t, w = scheme.rule(f.interval)
        ft = f(t)
    K = k(t[None, :], x[:, None])
    return GridFunction(f.interval, K @ (w * ft))


def operator_l1_norm(
    k: LandauStieltjesKernel,
    scheme: QuadratureScheme | None = None,
    m: int = 257,
) -> float:
    """Estimate ``||T_n||`` on ``L^1[a, b]``.

    For an integral operator with nonnegative kernel the ``L^1`` operator
    norm is ``max_t int_a^b K_n(t, x) dx``.  The maximum is taken over the
    ``m`` uniform nodes plus the midpoint (the analytic maximiser); the
    ``x``-integral uses ``scheme``, composite Gauss-Legendre by default.
    """
    if scheme is None:
        scheme = QuadratureScheme.gauss(panels=64, nodes_per_panel=8)
    iv = k.interval
    ts = np.append(iv.nodes(m), iv.midpoint)
    x, w = scheme.rule(iv)
    mass = k(ts[:, None], x[None, :]) @ w
    return float(mass.max())


def landau_mass_closed_form(n: int) -> float:
    """``sqrt(n/pi) * int_{-1}^{1} (1 - s^2)^n ds``, which is below one for all ``n``.

    Uses ``int_{-1}^{1} (1-s^2)^n ds = 2^(2n+1) (n!)^2 / (2n+1)!`` in log form.
    """
    from scipy.special import gammaln

    log_int = (2 * n + 1) * np.log(2.0) + 2 * gammaln(n + 1) - gammaln(2 * n + 2)
    return float(np.sqrt(n / np.pi) * np.exp(log_int))


def apply_bernstein(n: int, f: GridFunction) -> GridFunction:
    """Bernstein polynomial ``B_n f`` at the nodes of ``f`` (interval must be [0, 1]).

    ``f(k/n)`` is read off the piecewise-linear interpolant of the samples.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"Bernstein degree must be a positive integer, got {n}")
    if f.interval != Interval(0.0, 1.0):
        raise ValueError("Bernstein operator is defined on [0, 1] only")
    knots = np.arange(n + 1) / n
    fk = f(knots)
    x = f.nodes
    basis = stats.binom.pmf(np.arange(n + 1)[None, :], n, x[:, None])
    return GridFunction(f.interval, basis @ fk)


def degree_bound_check(k: LandauStieltjesKernel, f: GridFunction, degree: int | None = None) -> float:
    """Relative least-squares residual of a polynomial fit to ``T_n f``.

    ``degree`` defaults to ``2n``, for which the residual is at rounding
    level.  The fit uses a Chebyshev basis on the interval mapped to
    ``[-1, 1]``.
    """
    degree = 2 * k.n if degree is None else degree
    if f.m < degree + 2:
        raise ValueError(f"need at least {degree + 2} nodes for a degree-{degree} fit, got {f.m}")
    y = apply_landau_stieltjes(k, f).values
    scale = np.linalg.norm(y)
    if scale == 0:
        return 0.0
    iv = f.interval
    u = (2 * f.nodes - (iv.a + iv.b)) / iv.length
    coef = np.polynomial.chebyshev.chebfit(u, y, degree)
    resid = y - np.polynomial.chebyshev.chebval(u, coef)
    return float(np.linalg.norm(resid) / scale)


@dataclass(frozen=True)
class OperatorFamily:
    """A sequence of operators ``n -> T_n`` acting on grid functions.

    ``norm`` optionally estimates ``||T_n||`` in the space where the
    harness measures convergence; ``None`` means no estimate is available.
    """

    name: str
    apply: Callable[[int, GridFunction], GridFunction]
    norm: Callable[[int, Interval], float] | None = None
    params: dict = field(default_factory=dict)

    def __call__(self, n: int, f: GridFunction) -> GridFunction:
        return self.apply(n, f)

    @property
    def descriptor(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})"


def landau_stieltjes_family(scheme: QuadratureScheme | None = None) -> OperatorFamily:
    def apply(n, f):
        return apply_landau_stieltjes(LandauStieltjesKernel(n, f.interval), f, scheme)

    def norm(n, interval):
        return operator_l1_norm(LandauStieltjesKernel(n, interval))

    params = {} if scheme is None else {"quadrature": scheme.kind}
    return OperatorFamily("landau-stieltjes", apply, norm, params)


def bernstein_family() -> OperatorFamily:
    # sup-norm of a positive operator is the sup of its image of 1, which is 1 here
    return OperatorFamily("bernstein", apply_bernstein, lambda n, iv: 1.0)


def identity_family() -> OperatorFamily:
    return OperatorFamily("identity", lambda n, f: f, lambda n, iv: 1.0)


def scaled_identity_family() -> OperatorFamily:
    """``T_n = (1 + 1/n) id``: positive, linear, converging to the identity."""
    return OperatorFamily(
        "scaled-identity", lambda n, f: f * (1.0 + 1.0 / n), lambda n, iv: 1.0 + 1.0 / n
    )

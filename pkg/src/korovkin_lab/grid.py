"""Functions on a compact interval sampled on a uniform grid.

A :class:`GridFunction` is the computational stand-in for an element of
``C(K)`` or of a Banach function space over ``K = [a, b]``.  Values live on
``m`` equally spaced nodes including both endpoints.  Grid functions are
immutable; arithmetic returns new objects and refuses to mix grids.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from os import PathLike
from typing import Callable, Sequence

import numpy as np


class GridMismatchError(ValueError):
    """Raised when two grid functions live on different grids."""


@dataclass(frozen=True)
class Interval:
    """Compact interval ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValueError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise ValueError(f"degenerate interval [{a}, {b}]: need a < b")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def nodes(self, m: int) -> np.ndarray:
        """Uniform nodes ``a + j (b - a) / (m - 1)``, ``j = 0..m-1``."""
        if m < 2:
            raise ValueError(f"need at least 2 nodes, got m={m}")
        j = np.arange(m)
        t = self.a + j * (self.length / (m - 1))
        t[-1] = self.b
        return t

    def contains(self, t, slack: float = 0.0) -> bool:
        t = np.asarray(t)
        return bool(np.all((t >= self.a - slack) & (t <= self.b + slack)))


class GridFunction:
    """Real function sampled at the uniform nodes of an interval.

    Parameters
    ----------
    interval : Interval
        Domain of the function.
    values : array_like
        Samples at the ``m >= 2`` uniform nodes of ``interval``.
    """

    __slots__ = ("_interval", "_values")

    def __init__(self, interval: Interval, values):
        values = np.array(values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("values must be a 1-d sequence of length >= 2")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function values must be finite")
        values.setflags(write=False)
        self._interval = interval
        self._values = values

    @classmethod
    def from_callable(cls, interval: Interval, m: int, func: Callable) -> "GridFunction":
        """Sample a vectorised callable at the ``m`` nodes of ``interval``."""
        t = interval.nodes(m)
        return cls(interval, np.broadcast_to(func(t), t.shape))

    @classmethod
    def zeros(cls, interval: Interval, m: int) -> "GridFunction":
        return cls(interval, np.zeros(m))

    @property
    def interval(self) -> Interval:
        return self._interval

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def m(self) -> int:
        return self._values.size

    @property
    def nodes(self) -> np.ndarray:
        return self._interval.nodes(self.m)

    @property
    def spacing(self) -> float:
        return self._interval.length / (self.m - 1)

    def compatible(self, other: "GridFunction") -> bool:
        return self._interval == other._interval and self.m == other.m

    def _check(self, other: "GridFunction"):
        if not isinstance(other, GridFunction):
            raise TypeError(f"expected GridFunction, got {type(other).__name__}")
        if not self.compatible(other):
            raise GridMismatchError(
                f"grid mismatch: [{self.interval.a}, {self.interval.b}] m={self.m} vs "
                f"[{other.interval.a}, {other.interval.b}] m={other.m}"
            )

    def _new(self, values) -> "GridFunction":
        return GridFunction(self._interval, values)

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return self._new(self._values + other._values)
        return self._new(self._values + float(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return self._new(self._values - other._values)
        return self._new(self._values - float(other))

    def __rsub__(self, other):
        return self._new(float(other) - self._values)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return self._new(self._values * other._values)
        return self._new(self._values * float(other))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self._new(self._values / float(c))

    def __neg__(self):
        return self._new(-self._values)

    def __abs__(self):
        return lattice_sup(self, -self)

    def __call__(self, t):
        """Piecewise-linear interpolation between nodes."""
        return np.interp(t, self.nodes, self._values)

    def __eq__(self, other):
        if not isinstance(other, GridFunction):
            return NotImplemented
        return self.compatible(other) and np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash((self._interval, self._values.tobytes()))

    def __repr__(self):
        iv = self._interval
        return f"GridFunction([{iv.a}, {iv.b}], m={self.m})"

    def to_csv(self, path: str | PathLike | None = None) -> str:
        """Write ``t,value`` rows at full double precision.

        Returns the CSV text; also writes it to ``path`` when given.
        """
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "value"])
        for t, v in zip(self.nodes, self._values):
            writer.writerow([format(t, ".17g"), format(v, ".17g")])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_csv(cls, path: str | PathLike) -> "GridFunction":
        """Read a grid function written by :meth:`to_csv`.

        The nodes must be uniform; the interval is taken from the first and
        last ``t`` entries.
        """
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows or [c.strip() for c in rows[0]] != ["t", "value"]:
            raise ValueError(f"{path}: expected header 't,value'")
        data = np.array([[float(c) for c in row] for row in rows[1:] if row], dtype=float)
        if data.shape[0] < 2:
            raise ValueError(f"{path}: need at least two rows")
        t, v = data[:, 0], data[:, 1]
        interval = Interval(t[0], t[-1])
        expected = interval.nodes(len(t))
        if not np.allclose(t, expected, rtol=0, atol=1e-12 * max(1.0, interval.length)):
            raise ValueError(f"{path}: nodes are not uniform")
        return cls(interval, v)


def _two_sum(x, y):
    # Knuth: s + e == x + y exactly
    s = x + y
    yv = s - x
    e = (x - (s - yv)) + (y - yv)
    return s, e


def _half_sum_plus_half_gap(f: np.ndarray, g: np.ndarray, sign: float) -> np.ndarray:
    # (f + g)/2 + sign*|f - g|/2 carried in error-free arithmetic, so the
    # result is the correctly rounded max/min (which is itself a double).
    s, es = _two_sum(f, g)
    d, ed = _two_sum(f, -g)
    sgn = np.where(d < 0, -1.0, 1.0) * sign
    head, eh = _two_sum(s, sgn * d)
    tail = (eh + es) + sgn * ed
    return (head + tail) / 2


def lattice_sup(f: GridFunction, g: GridFunction) -> GridFunction:
    """Supremum ``(f + g)/2 + |f - g|/2``, equal to the nodewise maximum."""
    f._check(g)
    return f._new(_half_sum_plus_half_gap(f.values, g.values, 1.0))


def lattice_inf(f: GridFunction, g: GridFunction) -> GridFunction:
    """Infimum ``(f + g)/2 - |f - g|/2``, equal to the nodewise minimum."""
    f._check(g)
    return f._new(_half_sum_plus_half_gap(f.values, g.values, -1.0))


def lattice_abs(f: GridFunction) -> GridFunction:
    return lattice_sup(f, -f)


def is_strictly_positive(f: GridFunction) -> bool:
    """True iff every node value is ``> 0``.

    Only the nodes are inspected; positivity between nodes is the caller's
    concern.
    """
    return bool(np.min(f.values) > 0)


def make_monomial(interval: Interval, m: int, i: int) -> GridFunction:
    """The monomial ``t**i`` sampled at the ``m`` nodes of ``interval``."""
    if i < 0:
        raise ValueError(f"degree must be >= 0, got {i}")
    t = interval.nodes(m)
    return GridFunction(interval, t**i if i else np.ones_like(t))


def linear_combination(coeffs: Sequence[float], fs: Sequence[GridFunction]) -> GridFunction:
    if len(coeffs) != len(fs):
        raise ValueError(f"{len(coeffs)} coefficients for {len(fs)} functions")
    if not fs:
        raise ValueError("empty linear combination")
    head = fs[0]
    for g in fs[1:]:
        head._check(g)
    values = np.zeros(head.m)
    for c, g in zip(coeffs, fs):
        values = values + float(c) * g.values
    return head._new(values)

"""Orlicz machinery on intervals with Lebesgue measure.

Functions are piecewise constant on a partition of (0, L): the cell edges are
arbitrary increasing reals starting at 0, typically geometric below 1. All
norms are exact functionals of that representation: the Luxemburg norm by
bisection on the modular, the Marcinkiewicz norm through the exact running
average of the decreasing rearrangement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .grid import as_float_array, geometric
from .young import YoungFunction, fundamental

INF = math.inf


@dataclass
class SampledFunction:
    """Nonnegative piecewise-constant function on (0, L).

    values[i] holds on (edges[i], edges[i+1]]; edges[0] == 0.
    """

    edges: np.ndarray
    values: np.ndarray
    monotone_nonincreasing: bool = False
    step: bool = True

    def __post_init__(self):
        self.edges = as_float_array(self.edges)
        self.values = as_float_array(self.values)
        if self.edges.ndim != 1 or self.values.ndim != 1 or self.edges.size != self.values.size + 1:
            raise ValueError("need edges of length len(values)+1")
        if self.edges[0] != 0.0 or np.any(np.diff(self.edges) <= 0):
            raise ValueError("edges must start at 0 and increase strictly")
        if np.any(self.values < 0) or np.any(~np.isfinite(self.values)):
            raise ValueError("values must be finite and nonnegative")

    @property
    def L(self) -> float:
        return float(self.edges[-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def eval_at(self, s):
        s = np.atleast_1d(as_float_array(s))
        idx = np.clip(np.searchsorted(self.edges, s, side="left") - 1, 0, self.values.size - 1)
        out = self.values[idx]
        out = np.where((s <= 0) | (s > self.L), 0.0, out)
        return out

    def integral(self) -> float:
        return float(np.dot(self.values, self.widths))

    def scaled(self, factor: float) -> "SampledFunction":
        return replace(self, values=self.values * factor)

    @staticmethod
    def from_callable(fn, L: float = 1.0, per_decade: int = 64, floor: float = 1e-12,
                      support_lo: float = 0.0) -> "SampledFunction":
        """Sample a callable at geometric cell midpoints; cells below
        support_lo are zeroed (sharp truncation)."""
        inner = geometric(floor, L, per_decade)
        edges = np.concatenate([[0.0], inner])
        mids = np.sqrt(edges[:-1] * edges[1:])
        mids[0] = edges[1] * 0.5
        vals = np.atleast_1d(as_float_array(fn(mids)))
        if support_lo > 0.0:
            vals = np.where(edges[1:] <= support_lo, 0.0, vals)
        return SampledFunction(edges, vals)

    @staticmethod
    def chi(r: float, L: float = 1.0, per_decade: int = 64, floor: float = 1e-12) -> "SampledFunction":
        """Characteristic function of (0, r]; r is inserted as an exact edge."""
        if not (0.0 < r <= L):
            raise ValueError("chi needs 0 < r <= L")
        inner = geometric(min(floor, r), L, per_decade)
        inner = np.unique(np.concatenate([inner, [r]]))
        edges = np.concatenate([[0.0], inner])
        vals = (edges[1:] <= r * (1 + 1e-15)).astype(float)
        return SampledFunction(edges, vals, monotone_nonincreasing=True)

    @staticmethod
    def power(theta: float, L: float = 1.0, per_decade: int = 64, floor: float = 1e-12,
              support_lo: float = 0.0) -> "SampledFunction":
        """Exact cell averages of r**(-theta), theta < 1; optional sharp
        truncation below support_lo."""
        if theta >= 1.0:
            raise ValueError("cell averages of r^-theta need theta < 1")
        inner = geometric(floor, L, per_decade)
        edges = np.concatenate([[0.0], inner])
        a, b = edges[:-1], edges[1:]
        if theta == 0.0:
            vals = np.ones_like(b)
        else:
            vals = (b ** (1.0 - theta) - a ** (1.0 - theta)) / ((1.0 - theta) * (b - a))
        if support_lo > 0.0:
            vals = np.where(b <= support_lo, 0.0, vals)
        mono = support_lo == 0.0 and theta >= 0.0
        return SampledFunction(edges, vals, monotone_nonincreasing=mono)


def rearrange(f: SampledFunction) -> SampledFunction:
    """Decreasing rearrangement: same multiset of (value, cell width) pairs."""
    if f.monotone_nonincreasing and np.all(np.diff(f.values) <= 1e-15):
        return f
    order = np.argsort(-f.values, kind="stable")
    w = f.widths[order]
    v = f.values[order]
    edges = np.concatenate([[0.0], np.cumsum(w)])
    edges[-1] = f.L  # guard rounding in the cumulative sum
    return SampledFunction(edges, v, monotone_nonincreasing=True, step=f.step)


class RunningAverage:
    """Exact evaluator of f**(s) = (1/s) * integral_0^s fstar for
    piecewise-constant nonincreasing fstar."""

    def __init__(self, fstar: SampledFunction):
        self.fstar = fstar
        self._cum = np.concatenate([[0.0], np.cumsum(fstar.values * fstar.widths)])

    def __call__(self, s):
        s = np.atleast_1d(as_float_array(s))
        e = self.fstar.edges
        idx = np.clip(np.searchsorted(e, s, side="right") - 1, 0, self.fstar.values.size - 1)
        inside = np.minimum(s, self.fstar.L)
        cum = self._cum[idx] + self.fstar.values[idx] * np.maximum(inside - e[idx], 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(s > 0, cum / s, INF)
        return out


def doublestar(fstar: SampledFunction) -> SampledFunction:
    """Hardy average f** sampled exactly at the right edge of each cell.

    The right-edge value is the minimum of f** over the cell, so the returned
    step function still dominates fstar pointwise.
    """
    if not fstar.monotone_nonincreasing:
        raise ValueError("doublestar expects a nonincreasing input")
    avg = RunningAverage(fstar)
    vals = avg(fstar.edges[1:])
    return SampledFunction(fstar.edges, vals, monotone_nonincreasing=True, step=False)


def luxemburg_norm(f: SampledFunction, A: YoungFunction, rel_tol: float = 1e-11) -> float:
    """inf{lambda > 0 : integral A(|f|/lambda) <= 1} by bracketed bisection."""
    v = f.values
    w = f.widths
    pos = v > 0
    if not pos.any():
        return 0.0
    v, w = v[pos], w[pos]

    def modular(lam: float) -> float:
        with np.errstate(over="ignore"):
            vals = np.atleast_1d(as_float_array(A(v / lam)))
        return float(np.dot(np.where(np.isfinite(vals), vals, 1e300), w))

    hi = 1.0
    for _ in range(120):
        if modular(hi) <= 1.0:
            break
        hi *= 10.0
        if hi > 1e300:
            return INF
    lo = hi / 10.0
    for _ in range(120):
        if modular(lo) > 1.0 or lo < 1e-300:
            break
        lo /= 10.0
    if modular(lo) <= 1.0:
        return lo  # modular stays below 1 down to the float floor
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if modular(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rel_tol * hi:
            break
    return hi


def marcinkiewicz_norm(f: SampledFunction, A: YoungFunction) -> float:
    """sup_s f**(s) / A^{-1}(1/s), evaluated on cell edges and midpoints."""
    fstar = rearrange(f)
    if not np.any(fstar.values > 0):
        return 0.0
    avg = RunningAverage(fstar)
    e = fstar.edges[1:]
    mids = np.sqrt(fstar.edges[:-1].clip(min=fstar.edges[1] * 1e-6) * fstar.edges[1:])
    s = np.unique(np.concatenate([e, mids]))
    s = s[s > 0]
    phi = np.atleast_1d(as_float_array(fundamental(A, s)))
    return float(np.max(avg(s) * phi))

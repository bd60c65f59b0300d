"""Log-spaced evaluation grids and monotone/unimodal search primitives.

Everything downstream (Young-function calculus, Boyd indices, Hardy probes)
samples on geometric grids because every definition in this domain is
multiplicative: dilations t -> st, ratios A(st)/A(s), log-log slopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_PER_DECADE = 64
DEFAULT_T_MIN = 1e-12
DEFAULT_T_MAX = 1e12

# Default regime windows, shared by all numeric decisions.
NEAR_ZERO_WINDOW = (1e-12, 1e-2)
NEAR_INF_WINDOW = (1e2, 1e12)


@lru_cache(maxsize=128)
def _cached_geometric(lo: float, hi: float, per_decade: int) -> np.ndarray:
    n = max(2, int(round(np.log10(hi / lo) * per_decade)) + 1)
    pts = np.geomspace(lo, hi, n)
    pts.setflags(write=False)
    return pts


def geometric(lo: float, hi: float, per_decade: int = DEFAULT_PER_DECADE) -> np.ndarray:
    """Geometric grid on [lo, hi] with ~per_decade points per decade (read-only)."""
    if not (0.0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got ({lo}, {hi})")
    return _cached_geometric(float(lo), float(hi), int(per_decade))


@dataclass(frozen=True)
class Grid:
    """Default evaluation grid: geometric, 64 points/decade over [1e-12, 1e12]."""

    t_min: float = DEFAULT_T_MIN
    t_max: float = DEFAULT_T_MAX
    per_decade: int = DEFAULT_PER_DECADE

    def __post_init__(self):
        if not (0.0 < self.t_min < 1.0 < self.t_max):
            raise ValueError("grid must satisfy t_min < 1 < t_max")
        if not (8 <= self.per_decade <= 512):
            raise ValueError("per_decade must lie in [8, 512]")

    def points(self) -> np.ndarray:
        return geometric(self.t_min, self.t_max, self.per_decade)

    def window(self, lo: float, hi: float) -> np.ndarray:
        return geometric(lo, hi, self.per_decade)


DEFAULT_GRID = Grid()


def as_float_array(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def scalar_or_array(values: np.ndarray, scalar_input: bool):
    if scalar_input:
        return float(values.reshape(-1)[0])
    return values


def invert_nondecreasing(f, targets, hi_cap: float = 1e300, lo_floor: float = 1e-300,
                         rel_tol: float = 1e-13, max_iter: int = 200):
    """Generalized right-continuous inverse sup{x : f(x) <= target}.

    f must be vectorized and nondecreasing with f(0+) <= all targets.
    Bracketed log-space bisection with geometric bracket expansion.
    """
    t = as_float_array(targets)
    scalar = t.ndim == 0
    t = np.atleast_1d(t).astype(float)
    out = np.full_like(t, np.nan)

    lo = np.ones_like(t)
    hi = np.ones_like(t)
    # expand hi until f(hi) > target (or cap)
    for _ in range(120):
        fh = f(hi)
        need = (fh <= t) & (hi < hi_cap)
        if not need.any():
            break
        hi[need] = np.minimum(hi[need] * 1e3, hi_cap)
    # expand lo until f(lo) <= target (or floor)
    for _ in range(120):
        fl = f(lo)
        need = (fl > t) & (lo > lo_floor)
        if not need.any():
            break
        lo[need] = np.maximum(lo[need] / 1e3, lo_floor)

    # stuck cases: target below f(everything) -> 0; above f(everything) -> cap
    below = f(np.full_like(t, lo_floor)) > t
    above = f(np.full_like(t, hi_cap)) <= t
    # log-space bisection on the rest
    for _ in range(max_iter):
        mid = np.sqrt(lo * hi)
        fm = f(mid)
        le = fm <= t
        lo = np.where(le, mid, lo)
        hi = np.where(le, hi, mid)
        if np.all((hi - lo) <= rel_tol * hi):
            break
    out = lo
    out = np.where(below, 0.0, out)
    out = np.where(above, hi_cap, out)
    return scalar_or_array(out, scalar)


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, iters: int = 90):
    """Vectorized golden-section maximum of per-component unimodal f on [lo, hi].

    Returns (argmax, max). f is called with full arrays.
    """
    a = as_float_array(lo).copy()
    b = as_float_array(hi).copy()
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(iters):
        pick_c = fc >= fd
        b = np.where(pick_c, d, b)
        a = np.where(pick_c, a, c)
        d_new = np.where(pick_c, c, a + _INVPHI * (b - a))
        c_new = np.where(pick_c, b - _INVPHI * (b - a), d)
        c, d = c_new, d_new
        fc = f(c)
        fd = f(d)
    x = np.where(fc >= fd, c, d)
    fx = np.maximum(fc, fd)
    return x, fx


def golden_min(f, lo, hi, iters: int = 90):
    x, fx = golden_max(lambda z: -f(z), lo, hi, iters=iters)
    return x, -fx


def log_mean(a, b):
    """Logarithmic mean; exact quadrature weight for power-law segments."""
    a = as_float_array(a)
    b = as_float_array(b)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(np.isclose(a, b, rtol=1e-12), a, (b - a) / np.log(b / a))
    return r


def loglog_slope_fit(t, v):
    """Least-squares slope of log v against log t."""
    x = np.log(as_float_array(t))
    y = np.log(as_float_array(v))
    x = x - x.mean()
    return float(np.dot(x, y) / np.dot(x, x))

"""Young function calculus.

A Young function is a convex, left-continuous A : [0, inf) -> [0, inf] with
A(0) = 0, not identically zero and tending to infinity (possibly by jumping).
This module provides the closed-form catalog (powers, Zygmund-type functions,
exponential families, the L-infinity indicator), table- and grid-backed
functions, and the calculus on them: generalized inverses, Fenchel conjugation,
fundamental functions, domination / equivalence / doubling decisions, scaling.

Numeric conventions:
  * evaluation is vectorized over numpy arrays; scalars map to floats,
  * the generalized inverse is sup{t : A(t) <= tau} (right-continuous),
  * conjugation is computed per query point by a grid scan plus golden-section
    refinement of the concave objective s -> s*t - A(s), which keeps the
    conjugate-pair identity t <= A^{-1}(t) Atilde^{-1}(t) <= 2t accurate to
    ~1e-12 instead of the grid resolution.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .grid import (
    DEFAULT_GRID,
    NEAR_INF_WINDOW,
    NEAR_ZERO_WINDOW,
    as_float_array,
    geometric,
    golden_max,
    golden_min,
    invert_nondecreasing,
    scalar_or_array,
)

INF = math.inf


class SpecError(ValueError):
    """Invalid Young-function specification (bad family or parameters)."""


class DegenerateFunctionError(SpecError):
    """Candidate function is identically zero or bounded: not a Young function."""


class ConvexJoinError(SpecError):
    """Glue pieces cannot be joined convexly inside the search window."""


# ---------------------------------------------------------------------------
# metadata, regimes, decisions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactMeta:
    """Exact analytic facts attached to closed-form families.

    indices: (i_global, I_global, i_local, I_local) Boyd indices, or None.
    zero_exponent: growth exponent of A near 0 (inf when A vanishes on an
        interval), used by exact near-zero decay checks.
    """

    indices: tuple[float, float, float, float] | None = None
    zero_exponent: float | None = None
    note: str = ""


@dataclass(frozen=True)
class Regime:
    """Range qualifier: near zero, near infinity, or global, with its window."""

    tag: str
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.t_lo < self.t_hi):
            raise ValueError("regime window needs t_lo < t_hi")
        if self.tag == "near_zero" and self.t_hi > 1.0:
            raise ValueError("near_zero window must lie in (0, 1]")
        if self.tag == "near_infinity" and self.t_lo < 1.0:
            raise ValueError("near_infinity window must lie in [1, inf)")
        if self.tag not in ("near_zero", "near_infinity", "global"):
            raise ValueError(f"unknown regime tag {self.tag!r}")

    @staticmethod
    def near_zero(t_lo: float = NEAR_ZERO_WINDOW[0], t_hi: float = NEAR_ZERO_WINDOW[1]) -> "Regime":
        return Regime("near_zero", t_lo, t_hi)

    @staticmethod
    def near_infinity(t_lo: float = NEAR_INF_WINDOW[0], t_hi: float = NEAR_INF_WINDOW[1]) -> "Regime":
        return Regime("near_infinity", t_lo, t_hi)

    @staticmethod
    def global_(t_lo: float = NEAR_ZERO_WINDOW[0], t_hi: float = NEAR_INF_WINDOW[1]) -> "Regime":
        return Regime("global", t_lo, t_hi)

    @staticmethod
    def from_tag(tag: str) -> "Regime":
        return {
            "near_zero": Regime.near_zero,
            "near_infinity": Regime.near_infinity,
            "global": Regime.global_,
        }[tag]()


@dataclass
class Decision:
    """Outcome of a sampled boundedness test: yes / no / indeterminate."""

    verdict: str
    witness: dict | None = None
    diagnostics: dict = field(default_factory=dict)

    def __bool__(self):  # pragma: no cover - convenience only
        return self.verdict == "yes"


def _combine_equivalence(fwd: Decision, bwd: Decision) -> Decision:
    if fwd.verdict == "yes" and bwd.verdict == "yes":
        witness = {"forward": fwd.witness, "backward": bwd.witness}
        return Decision("yes", witness, {"forward": fwd.diagnostics, "backward": bwd.diagnostics})
    if fwd.verdict == "no" or bwd.verdict == "no":
        return Decision("no", None, {"forward": fwd.diagnostics, "backward": bwd.diagnostics})
    return Decision("indeterminate", None, {"forward": fwd.diagnostics, "backward": bwd.diagnostics})


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------

FAMILIES = ("power", "zygmund", "exp_power", "exp_sqrt_log", "linf", "table", "glue", "custom")


@dataclass(frozen=True)
class YoungFunctionSpec:
    """Declarative recipe for a catalog Young function."""

    family: str
    params: dict = field(default_factory=dict)
    zero_spec: "YoungFunctionSpec | None" = None
    inf_spec: "YoungFunctionSpec | None" = None
    path: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}")

    def depth(self) -> int:
        sub = [s.depth() for s in (self.zero_spec, self.inf_spec) if s is not None]
        return 1 + (max(sub) if sub else 0)


def spec(family: str, **params) -> YoungFunctionSpec:
    """Shorthand constructor for YoungFunctionSpec."""
    zero = params.pop("zero", None)
    inf_ = params.pop("inf", None)
    path = params.pop("path", None)
    return YoungFunctionSpec(family, params, zero_spec=zero, inf_spec=inf_, path=path)


# ---------------------------------------------------------------------------
# base class
# ---------------------------------------------------------------------------


class YoungFunction:
    """Evaluable Young function with finiteness metadata.

    Attributes
    ----------
    t_inf : sup{t : A(t) < inf}; inf for finite-valued functions.
    origin_flat : sup{t : A(t) = 0}.
    meta : optional exact index / asymptotic data.
    """

    t_inf: float = INF
    origin_flat: float = 0.0
    meta: ExactMeta | None = None

    # -- evaluation --------------------------------------------------------

    def _eval(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, t):
        arr = as_float_array(t)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr).astype(float)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise ValueError("Young functions are defined for t >= 0")
        out = np.zeros_like(arr)
        pos = arr > 0
        inside = pos & (arr <= self.t_inf)
        beyond = arr > self.t_inf
        if inside.any():
            with np.errstate(over="ignore"):
                out[inside] = self._eval(arr[inside])
        out[beyond] = INF
        return scalar_or_array(out, scalar)

    def log_eval(self, t):
        """log A(t), computed stably for fast-growing families; -inf where A = 0."""
        arr = np.atleast_1d(as_float_array(t)).astype(float)
        scalar = np.asarray(t).ndim == 0
        with np.errstate(divide="ignore", over="ignore"):
            out = np.log(self.__call__(arr))
        return scalar_or_array(out, scalar)

    # -- structural hints ---------------------------------------------------

    def slope_zero(self) -> float:
        """lim_{t->0+} A(t)/t (the flat edge of the conjugate)."""
        if self.origin_flat > 0:
            return 0.0
        t1, t2 = 1e-9, 1e-12
        s1 = float(self(t1)) / t1
        s2 = float(self(t2)) / t2
        if s1 <= 0 or s2 <= 0:
            return 0.0
        return s2 if s2 <= s1 else s1

    def slope_inf(self) -> float:
        """lim_{t->inf} A(t)/t (the finiteness threshold of the conjugate)."""
        if self.t_inf < INF:
            return INF
        t1, t2 = 1e9, 1e12
        s1 = float(self(t1)) / t1
        s2 = float(self(t2)) / t2
        if not np.isfinite(s2):
            return INF
        if s2 > 1.02 * s1:
            return INF
        return s2

    # -- inverse ------------------------------------------------------------

    def inverse(self, tau):
        """Generalized right-continuous inverse sup{t : A(t) <= tau}."""
        arr = as_float_array(tau)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr).astype(float)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise ValueError("inverse is defined for tau >= 0")
        out = np.empty_like(arr)
        isinf = np.isinf(arr)
        out[isinf] = self.t_inf
        fin = ~isinf
        if fin.any():
            out[fin] = self._inverse_finite(arr[fin])
        zero = arr == 0.0
        if zero.any():
            out[zero] = self.origin_flat
        return scalar_or_array(out, scalar)

    def _inverse_finite(self, tau: np.ndarray) -> np.ndarray:
        res = invert_nondecreasing(self.__call__, tau)
        return np.minimum(np.atleast_1d(as_float_array(res)), self.t_inf)

    # -- misc ----------------------------------------------------------------

    def conjugate_closed(self) -> "YoungFunction | None":
        return None

    def label(self) -> str:
        return type(self).__name__

    def snapshot(self, lo: float = 1e-14, hi: float = 1e14, per_decade: int = 64) -> "GridYoung":
        """Sample onto a convex piecewise-linear grid function (fast to reuse)."""
        hi = min(hi, self.t_inf) if self.t_inf < INF else hi
        t = geometric(lo, hi, per_decade)
        v = np.atleast_1d(as_float_array(self(t)))
        finite = np.isfinite(v)
        t, v = t[finite], v[finite]
        return GridYoung(t, v, t_inf=self.t_inf, meta=self.meta, name=f"snapshot({self.label()})")

    def __repr__(self):  # pragma: no cover
        return f"<YoungFunction {self.label()}>"


# ---------------------------------------------------------------------------
# closed-form families
# ---------------------------------------------------------------------------


class PowerYoung(YoungFunction):
    """A(t) = t**p, p >= 1."""

    def __init__(self, p: float):
        if not (p >= 1.0) or not math.isfinite(p):
            raise SpecError(f"power family needs p >= 1, got {p}")
        self.p = float(p)
        self.meta = ExactMeta(indices=(self.p,) * 4, zero_exponent=self.p, note="power")

    def _eval(self, t):
        return t ** self.p

    def log_eval(self, t):
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        with np.errstate(divide="ignore"):
            out = self.p * np.log(arr)
        return scalar_or_array(out, scalar)

    def _inverse_finite(self, tau):
        return tau ** (1.0 / self.p)

    def slope_zero(self):
        return 1.0 if self.p == 1.0 else 0.0

    def slope_inf(self):
        return 1.0 if self.p == 1.0 else INF

    def conjugate_closed(self):
        if self.p == 1.0:
            return LInfYoung()
        pc = self.p / (self.p - 1.0)
        coeff = (self.p - 1.0) * self.p ** (-pc)
        return ScaledYoung(PowerYoung(pc), b=1.0, c=coeff)

    def label(self):
        return f"power(p={self.p:g})"


class ZygmundYoung(YoungFunction):
    """A(t) = t**q * (shift + log(1+t))**a; behaves like t^q (log t)^a at infinity.

    The shift is chosen large enough that A is convex on all of [0, inf);
    any such representative is equivalent to the Zygmund-space Young function.
    """

    def __init__(self, q: float, a: float, shift: float | None = None):
        ok = (q > 1.0 and math.isfinite(a)) or (q == 1.0 and a >= 0.0)
        if not ok or not math.isfinite(q):
            raise SpecError(f"zygmund family needs q > 1 (a real) or q = 1 (a >= 0), got q={q} a={a}")
        self.q = float(q)
        self.a = float(a)
        self.shift = float(shift) if shift is not None else self._default_shift(self.q, self.a)
        self.meta = ExactMeta(indices=(self.q,) * 4, zero_exponent=self.q, note="zygmund")

    @staticmethod
    def _default_shift(q: float, a: float) -> float:
        # the analytic bound keeps A convex; the floor of 12 keeps the slowly
        # varying factor flat enough that constructed-domain log-log slopes sit
        # well inside their asymptotic tolerance over the standard windows
        if q == 1.0:
            return 12.0
        m = (q - 1.0) * abs(a) + q * abs(a - 1.0) + abs(a) + abs(a) * abs(a - 1.0)
        return max(12.0, 2.0 * m / (q * (q - 1.0)))

    def _eval(self, t):
        return t ** self.q * (self.shift + np.log1p(t)) ** self.a

    def log_eval(self, t):
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        with np.errstate(divide="ignore"):
            out = self.q * np.log(arr) + self.a * np.log(self.shift + np.log1p(arr))
        return scalar_or_array(out, scalar)

    def slope_zero(self):
        return self.shift ** self.a if self.q == 1.0 else 0.0

    def slope_inf(self):
        return INF if (self.q > 1.0 or self.a > 0.0) else 1.0

    def label(self):
        return f"zygmund(q={self.q:g}, a={self.a:g})"


class ExpPowerYoung(YoungFunction):
    """A(t) = exp(t**beta) - 1 for beta >= 1; tangent-linearized near 0 for beta < 1.

    For beta < 1 the raw function is concave near the origin, so the convex
    envelope replaces it below the tangency point t_c: linear through the
    origin, touching exp(t**beta) - 1 tangentially at t_c.
    """

    def __init__(self, beta: float):
        if not (beta > 0.0) or not math.isfinite(beta):
            raise SpecError(f"exp_power family needs beta > 0, got {beta}")
        self.beta = float(beta)
        if self.beta >= 1.0:
            self.t_c = 0.0
            self.lin_slope = 1.0 if self.beta == 1.0 else 0.0
            zero_exp = self.beta
            glob = (self.beta, INF)
        else:
            self.t_c = self._tangent_point(self.beta)
            g = math.expm1(self.t_c ** self.beta)
            self.lin_slope = g / self.t_c
            zero_exp = 1.0
            glob = (1.0, INF)
        self.meta = ExactMeta(indices=(glob[0], glob[1], INF, INF), zero_exponent=zero_exp,
                              note="exp_power")

    @staticmethod
    def _tangent_point(beta: float) -> float:
        # root of h(t) = t g'(t) - g(t), g = exp(t^beta) - 1; h < 0 near 0, -> inf
        def h(t):
            e = math.exp(t ** beta)
            return beta * t ** beta * e - (e - 1.0)

        lo, hi = 1e-8, 1.0
        while h(hi) < 0:
            hi *= 2.0
            if hi > 1e6:  # pragma: no cover - cannot happen for beta in (0,1)
                raise SpecError("tangent search failed")
        for _ in range(200):
            mid = math.sqrt(lo * hi)
            if h(mid) < 0:
                lo = mid
            else:
                hi = mid
        return hi

    def _eval(self, t):
        out = np.expm1(t ** self.beta)
        if self.t_c > 0.0:
            lin = t < self.t_c
            out = np.where(lin, self.lin_slope * t, out)
        return out

    def log_eval(self, t):
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        x = arr ** self.beta
        with np.errstate(divide="ignore"):
            small = x < 30.0
            out = np.where(small, np.log(np.expm1(np.minimum(x, 30.0))), x + np.log1p(-np.exp(-np.maximum(x, 1.0))))
            if self.t_c > 0.0:
                lin = arr < self.t_c
                out = np.where(lin, np.log(self.lin_slope * arr), out)
        return scalar_or_array(out, scalar)

    def _inverse_finite(self, tau):
        out = np.log1p(tau) ** (1.0 / self.beta)
        if self.t_c > 0.0:
            cutoff = self.lin_slope * self.t_c
            lin = tau < cutoff
            out = np.where(lin, tau / self.lin_slope, out)
        return out

    def slope_zero(self):
        if self.beta > 1.0:
            return 0.0
        return self.lin_slope if self.beta < 1.0 else 1.0

    def slope_inf(self):
        return INF

    def label(self):
        return f"exp_power(beta={self.beta:g})"


class ExpSqrtLogYoung(YoungFunction):
    """A(t) = t**q * exp(sqrt(log t)) for t >= e, power-continued below.

    The continuation below e is the slope-matched power t^(q + 1/2), which
    keeps A convex and Young; only the behavior near infinity matters for the
    constructions that consume this family.
    """

    def __init__(self, q: float):
        if not (q >= 1.0) or not math.isfinite(q):
            raise SpecError(f"exp_sqrt_log family needs q >= 1, got {q}")
        self.q = float(q)
        self.low_exp = self.q + 0.5
        self.low_coeff = math.exp(0.5)  # continuity at t = e
        self.meta = ExactMeta(indices=(self.q, self.q + 0.5, self.q, self.q),
                              zero_exponent=self.low_exp, note="exp_sqrt_log")

    def _eval(self, t):
        out = np.empty_like(t)
        hi = t >= math.e
        with np.errstate(invalid="ignore"):
            out[hi] = t[hi] ** self.q * np.exp(np.sqrt(np.log(t[hi])))
        lo = ~hi
        out[lo] = self.low_coeff * t[lo] ** self.low_exp
        return out

    def log_eval(self, t):
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            logt = np.log(arr)
            hi = arr >= math.e
            out = np.where(hi, self.q * logt + np.sqrt(np.maximum(logt, 0.0)),
                           0.5 + self.low_exp * logt)
        return scalar_or_array(out, scalar)

    def _inverse_finite(self, tau):
        out = np.empty_like(tau)
        cutoff = math.exp(self.q + 1.0)  # A(e)
        lo = tau < cutoff
        out[lo] = (tau[lo] / self.low_coeff) ** (1.0 / self.low_exp)
        hi = ~lo
        if hi.any():
            res = invert_nondecreasing(self.__call__, tau[hi])
            out[hi] = np.atleast_1d(as_float_array(res))
        return out

    def slope_zero(self):
        return 0.0

    def slope_inf(self):
        return INF

    def label(self):
        return f"exp_sqrt_log(q={self.q:g})"


class LInfYoung(YoungFunction):
    """Indicator-type Young function of L^inf: 0 on [0, 1], infinity beyond."""

    t_inf = 1.0
    origin_flat = 1.0

    def __init__(self):
        self.meta = ExactMeta(indices=(INF, INF, INF, INF), zero_exponent=INF, note="linf")

    def _eval(self, t):
        return np.zeros_like(t)

    def _inverse_finite(self, tau):
        return np.ones_like(tau)

    def slope_zero(self):
        return 0.0

    def slope_inf(self):
        return INF

    def conjugate_closed(self):
        return PowerYoung(1.0)

    def label(self):
        return "linf()"


class ExpTowerYoung(YoungFunction):
    """Iterated exponential exp(...(exp(t**beta) - 1)...) - 1, `levels` deep.

    Exponentials of convex nondecreasing functions stay convex, so only the
    base level needs the tangent fix (inherited from ExpPowerYoung).
    Evaluations saturate to float infinity early; the index metadata carries
    the analytic content (all local indices infinite).
    """

    def __init__(self, levels: int, beta: float = 1.0):
        if levels < 1:
            raise SpecError("exp_tower needs levels >= 1")
        self.levels = int(levels)
        self.base = ExpPowerYoung(beta)
        gi = self.base.meta.zero_exponent  # global lower index follows the near-zero power
        self.meta = ExactMeta(indices=(gi, INF, INF, INF),
                              zero_exponent=self.base.meta.zero_exponent, note="exp_tower")

    def _eval(self, t):
        with np.errstate(over="ignore"):
            v = self.base._eval(t)
            for _ in range(self.levels - 1):
                v = np.expm1(np.minimum(v, 700.0)) * np.where(v > 700.0, INF, 1.0)
                v = np.where(np.isnan(v), INF, v)
        return v

    def label(self):
        return f"exp_tower(levels={self.levels}, beta={self.base.beta:g})"


class CustomYoung(YoungFunction):
    """In-code Young function wrapping a vectorized callable."""

    def __init__(self, fn, name: str, t_inf: float = INF, origin_flat: float = 0.0,
                 meta: ExactMeta | None = None, log_fn=None):
        self._fn = fn
        self._log_fn = log_fn
        self._name = name
        self.t_inf = t_inf
        self.origin_flat = origin_flat
        self.meta = meta

    def _eval(self, t):
        return as_float_array(self._fn(t))

    def log_eval(self, t):
        if self._log_fn is None:
            return super().log_eval(t)
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        return scalar_or_array(as_float_array(self._log_fn(arr)), scalar)

    def label(self):
        return self._name


# ---------------------------------------------------------------------------
# grid-backed (piecewise linear) functions
# ---------------------------------------------------------------------------


class GridYoung(YoungFunction):
    """Convex piecewise-linear Young function on geometric knots.

    Below the first knot the function is linear through the origin (or flat
    when the first value is 0); above the last knot it follows the
    elasticity-matched power extension, which preserves convexity.
    """

    def __init__(self, knots, values, t_inf: float = INF, meta: ExactMeta | None = None,
                 name: str = "grid", asymptote=None, enforce_convex: bool = True,
                 exact_below: bool = False):
        # exact_below: the linear origin piece is the true function below the
        # first knot (constructed domains), not just an interpolation artifact
        self.exact_below = exact_below
        t = np.ascontiguousarray(as_float_array(knots))
        v = np.ascontiguousarray(as_float_array(values))
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise SpecError("grid function needs matching 1-d knots/values, >= 2 points")
        if np.any(np.diff(t) <= 0):
            raise SpecError("grid knots must increase strictly")
        if np.any(v < 0) or np.any(np.diff(v) < -1e-12 * np.maximum(v[1:], 1e-300)):
            raise SpecError("grid values must be nonnegative and nondecreasing")
        v = np.maximum.accumulate(v)
        slopes = np.diff(v) / np.diff(t)
        if enforce_convex:
            # clean up quadrature-level slope wiggles; never used to hide real defects
            slopes = np.maximum.accumulate(slopes)
            v = np.concatenate([[v[0]], v[0] + np.cumsum(slopes * np.diff(t))])
        else:
            bad = slopes[1:] - slopes[:-1] < -1e-9 * np.maximum(np.abs(slopes[1:]), np.abs(slopes[:-1]))
            if bad.any():
                raise SpecError("grid data is not convex")
        self.knots = t
        self.values = v
        self._slopes = slopes
        self.t_inf = t_inf
        self.meta = meta
        self.asymptote = asymptote
        self._name = name
        if v[-1] <= 0 or (t_inf == INF and slopes[-1] <= 0):
            raise DegenerateFunctionError("grid function is bounded or identically zero")
        # origin behavior
        if v[0] <= 0.0:
            self.origin_flat = t[0]
            self._slope0 = 0.0
        else:
            self.origin_flat = 0.0
            self._slope0 = v[0] / t[0]
        # power extension above the last knot (elasticity matched)
        self.p_top = max(1.0, slopes[-1] * t[-1] / v[-1])

    def _eval(self, t):
        out = np.interp(t, self.knots, self.values)
        below = t < self.knots[0]
        if below.any():
            out[below] = self._slope0 * t[below]
        above = t > self.knots[-1]
        if above.any():
            with np.errstate(over="ignore"):
                out[above] = self.values[-1] * (t[above] / self.knots[-1]) ** self.p_top
        return out

    def log_eval(self, t):
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        with np.errstate(divide="ignore", over="ignore"):
            out = np.log(self.__call__(np.minimum(arr, self.knots[-1])))
            above = arr > self.knots[-1]
            if above.any():
                out[above] = np.log(self.values[-1]) + self.p_top * (np.log(arr[above]) - math.log(self.knots[-1]))
        return scalar_or_array(out, scalar)

    def _inverse_finite(self, tau):
        v, t = self.values, self.knots
        out = np.empty_like(tau)
        above = tau >= v[-1]
        out[above] = t[-1] * (tau[above] / v[-1]) ** (1.0 / self.p_top)
        if self.t_inf < INF:
            out[above] = np.minimum(out[above], self.t_inf)
        below = tau < v[0]
        if below.any():
            if self._slope0 > 0:
                out[below] = tau[below] * t[0] / v[0]
            else:
                out[below] = t[0]
        mid = ~(above | below)
        if mid.any():
            j = np.searchsorted(v, tau[mid], side="right")
            j = np.clip(j, 1, v.size - 1)
            v0, v1 = v[j - 1], v[j]
            t0, t1 = t[j - 1], t[j]
            dv = v1 - v0
            flat = dv <= 0
            frac = np.where(flat, 1.0, (tau[mid] - v0) / np.where(flat, 1.0, dv))
            out[mid] = t0 + frac * (t1 - t0)
        return out

    def slope_zero(self):
        return self._slope0

    def slope_inf(self):
        if self.t_inf < INF or self.p_top > 1.0 + 1e-9:
            return INF
        return self._slopes[-1]

    def label(self):
        return self._name


class TableYoung(GridYoung):
    """Young function loaded from a two-column CSV table (t, value)."""

    @staticmethod
    def from_csv(path: str) -> "TableYoung":
        ts, vs = [], []
        origin_flat = None
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip().lower() for h in header[:2]] != ["t", "value"]:
                raise SpecError(f"table {path}: header 't,value' required")
            has_of = len(header) >= 3 and header[2].strip().lower() == "origin_flat"
            for row in reader:
                if not row:
                    continue
                ts.append(float(row[0]))
                vs.append(INF if row[1].strip().lower() == "inf" else float(row[1]))
                if has_of and origin_flat is None and len(row) >= 3 and row[2].strip():
                    origin_flat = float(row[2])
        t = np.asarray(ts)
        v = np.asarray(vs)
        if t.size < 2:
            raise SpecError(f"table {path}: need at least two rows")
        if np.any(np.diff(t) <= 0):
            raise SpecError(f"table {path}: t must increase strictly")
        if np.any(np.diff(v[np.isfinite(v)]) < 0):
            raise SpecError(f"table {path}: values must be nondecreasing")
        finite = np.isfinite(v)
        t_inf = INF
        if not finite.all():
            first_inf = int(np.argmin(finite))
            if finite[first_inf:].any():
                raise SpecError(f"table {path}: 'inf' rows must be final")
            t_inf = t[first_inf - 1] if first_inf > 0 else 0.0
            t, v = t[:first_inf], v[:first_inf]
            if t.size < 2:
                raise SpecError(f"table {path}: too few finite rows")
        if origin_flat is None and t[0] > 1e-9 and v[0] > 0:
            raise SpecError(f"table {path}: first t must be <= 1e-9 or origin_flat given")
        if origin_flat is not None:
            if origin_flat >= t[0]:
                raise SpecError(f"table {path}: origin_flat must precede the first t")
            t = np.concatenate([[origin_flat], t])
            v = np.concatenate([[0.0], v])
        obj = TableYoung.__new__(TableYoung)
        GridYoung.__init__(obj, t, v, t_inf=t_inf, name=f"table({path})", enforce_convex=False)
        return obj


# ---------------------------------------------------------------------------
# wrappers: scaling and conjugation
# ---------------------------------------------------------------------------


class ScaledYoung(YoungFunction):
    """result(t) = c * A(b * t) for b, c > 0."""

    def __init__(self, base: YoungFunction, b: float, c: float):
        if not (b > 0 and c > 0):
            raise SpecError("scale needs b > 0 and c > 0")
        self.base = base
        self.b = float(b)
        self.c = float(c)
        self.t_inf = base.t_inf / self.b
        self.origin_flat = base.origin_flat / self.b
        self.meta = base.meta

    def _eval(self, t):
        return self.c * np.atleast_1d(as_float_array(self.base(self.b * t)))

    def log_eval(self, t):
        arr = np.atleast_1d(as_float_array(t))
        scalar = np.asarray(t).ndim == 0
        out = math.log(self.c) + np.atleast_1d(as_float_array(self.base.log_eval(self.b * arr)))
        return scalar_or_array(out, scalar)

    def _inverse_finite(self, tau):
        return np.atleast_1d(as_float_array(self.base.inverse(tau / self.c))) / self.b

    def slope_zero(self):
        return self.base.slope_zero() * self.b * self.c

    def slope_inf(self):
        s = self.base.slope_inf()
        return s * self.b * self.c if math.isfinite(s) else INF

    def conjugate_closed(self):
        inner = conjugate(self.base)
        return ScaledYoung(inner, b=1.0 / (self.b * self.c), c=self.c)

    def label(self):
        return f"scale({self.base.label()}, b={self.b:g}, c={self.c:g})"


def _dual_index(x: float) -> float:
    if x == INF:
        return 1.0
    if x <= 1.0:
        return INF
    return x / (x - 1.0)


class ConjugateYoung(YoungFunction):
    """Fenchel conjugate computed per query: grid scan + golden refinement."""

    _SCAN_LO = 1e-14
    _SCAN_HI = 1e14
    _PER_DECADE = 48

    def __init__(self, base: YoungFunction):
        self.base = base
        self.t_inf = base.slope_inf()
        self.origin_flat = base.slope_zero()
        if base.meta is not None and base.meta.indices is not None:
            ig, Ig, il, Il = base.meta.indices
            self.meta = ExactMeta(indices=(_dual_index(Ig), _dual_index(ig),
                                           _dual_index(Il), _dual_index(il)),
                                  note=f"conjugate of {base.meta.note}")
        hi = min(self._SCAN_HI, base.t_inf)
        self._scan = geometric(self._SCAN_LO, hi, self._PER_DECADE)
        if base.t_inf < INF and base.t_inf not in self._scan:
            self._scan = np.sort(np.append(self._scan, base.t_inf))
        self._scan_vals = np.atleast_1d(as_float_array(base(self._scan)))

    def _objective(self, s, t):
        with np.errstate(over="ignore", invalid="ignore"):
            val = np.atleast_1d(as_float_array(self.base(s)))
            obj = s * t - val
        return np.where(np.isfinite(val), obj, -INF)

    def _eval(self, t):
        out = np.empty_like(t)
        scan, vals = self._scan, self._scan_vals
        finite_mask = np.isfinite(vals)
        s_ok = scan[finite_mask]
        v_ok = vals[finite_mask]
        for start in range(0, t.size, 512):
            tb = t[start:start + 512]
            obj = tb[:, None] * s_ok[None, :] - v_ok[None, :]
            j = np.argmax(obj, axis=1)
            best = obj[np.arange(tb.size), j]
            # expand upward while the maximizer sits on the top edge
            top = j == s_ok.size - 1
            if top.any() and self.base.t_inf == INF:
                s_hi = s_ok[-1]
                for _ in range(60):
                    s_hi *= 10.0
                    if s_hi > 1e280:
                        break
                    cand = self._objective(np.full(tb.shape, s_hi), tb)
                    improve = top & (cand > best)
                    if not improve.any():
                        break
                    best = np.where(improve, cand, best)
            lo = s_ok[np.maximum(j - 1, 0)]
            hi = np.minimum(s_ok[np.minimum(j + 1, s_ok.size - 1)], self.base.t_inf)
            x, fx = golden_max(lambda s, _tb=tb: self._objective(s, _tb), lo, hi, iters=80)
            out[start:start + 512] = np.maximum(np.maximum(best, fx), 0.0)
        return out

    def _inverse_finite(self, tau):
        # sup{t : conj(t) <= y} = inf_{s > 0} (y + A(s)) / s, the objective is unimodal
        out = np.empty_like(tau)
        scan = self._scan
        vals = self._scan_vals
        finite_mask = np.isfinite(vals)
        s_ok = scan[finite_mask]
        v_ok = vals[finite_mask]
        for start in range(0, tau.size, 512):
            yb = tau[start:start + 512]
            obj = (yb[:, None] + v_ok[None, :]) / s_ok[None, :]
            j = np.argmin(obj, axis=1)
            best = obj[np.arange(yb.size), j]
            top = j == s_ok.size - 1
            if top.any() and self.base.t_inf == INF:
                s_hi = s_ok[-1]
                for _ in range(60):
                    s_hi *= 10.0
                    if s_hi > 1e280:
                        break
                    with np.errstate(over="ignore"):
                        cand = (yb + np.atleast_1d(as_float_array(self.base(np.full(yb.shape, s_hi))))) / s_hi
                    improve = top & (cand < best)
                    if not improve.any():
                        break
                    best = np.where(improve, cand, best)
            lo = s_ok[np.maximum(j - 1, 0)]
            hi = np.minimum(s_ok[np.minimum(j + 1, s_ok.size - 1)], self.base.t_inf)

            def specific(s, _yb=yb):
                with np.errstate(over="ignore", invalid="ignore"):
                    val = np.atleast_1d(as_float_array(self.base(s)))
                    o = (_yb + val) / s
                return np.where(np.isfinite(val), o, INF)

            x, fx = golden_min(specific, lo, hi, iters=80)
            out[start:start + 512] = np.minimum(best, fx)
        return out

    def slope_zero(self):
        of = self.base.origin_flat
        return of if of > 0 else 0.0

    def slope_inf(self):
        # conj'(inf) = sup{s : A(s) < inf}
        return self.base.t_inf

    def conjugate_closed(self):
        return None

    def label(self):
        return f"conjugate({self.base.label()})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def make_young(sp: YoungFunctionSpec) -> YoungFunction:
    """Build and validate a Young function from its spec."""
    fn = _build(sp)
    validate_young(fn)
    return fn


def _build(sp: YoungFunctionSpec) -> YoungFunction:
    fam = sp.family
    p = sp.params
    if fam == "power":
        return PowerYoung(_need(p, "p"))
    if fam == "zygmund":
        return ZygmundYoung(_need(p, "q"), _need(p, "a"), shift=p.get("shift"))
    if fam == "exp_power":
        return ExpPowerYoung(_need(p, "beta"))
    if fam == "exp_sqrt_log":
        return ExpSqrtLogYoung(_need(p, "q"))
    if fam == "linf":
        return LInfYoung()
    if fam == "table":
        if not sp.path:
            raise SpecError("table family needs path=<csv>")
        return TableYoung.from_csv(sp.path)
    if fam == "glue":
        if sp.zero_spec is None or sp.inf_spec is None:
            raise SpecError("glue needs zero= and inf= sub-specs")
        if sp.depth() > 2:
            raise SpecError("glue specs nest at most depth 2")
        t_s = float(p.get("t_s", 1.0))
        if t_s <= 0:
            raise SpecError("glue switch t_s must be positive")
        return glue(_build(sp.zero_spec), _build(sp.inf_spec), t_s=t_s)
    if fam == "custom":
        raise SpecError("custom functions are constructed in code, not from specs")
    raise SpecError(f"unknown family {fam!r}")  # pragma: no cover


def _need(params: dict, key: str) -> float:
    if key not in params:
        raise SpecError(f"missing parameter {key!r}")
    return float(params[key])


def validate_young(fn: YoungFunction, per_decade: int = 16) -> None:
    """Invariant scan: nonnegative, nondecreasing, convex, non-degenerate."""
    hi = min(1e10, fn.t_inf) if fn.t_inf < INF else 1e10
    t = geometric(1e-10, hi, per_decade)
    with np.errstate(over="ignore"):
        v = np.atleast_1d(as_float_array(fn(t)))
    if np.any(v < 0) or np.any(np.isnan(v)):
        raise SpecError(f"{fn.label()}: negative or NaN values")
    with np.errstate(invalid="ignore"):  # inf - inf on overflowing tails
        dv = np.diff(v)
    if np.any(dv < -1e-9 * np.maximum.reduce([v[1:], v[:-1], np.full(v.size - 1, 1e-300)])):
        raise SpecError(f"{fn.label()}: values decrease")
    fin = np.isfinite(v)
    tf, vf = t[fin], v[fin]
    if tf.size >= 3:
        slopes = np.diff(vf) / np.diff(tf)
        bad = slopes[1:] - slopes[:-1] < -1e-9 * np.maximum(np.abs(slopes[1:]), np.abs(slopes[:-1]))
        if bad.any():
            raise SpecError(f"{fn.label()}: convexity scan failed at {int(np.argmax(bad))}")
    if fn.t_inf == INF:
        top, mid = float(fn(1e10)), float(fn(1e4))
        if not np.isfinite(top):
            pass  # grows to overflow: certainly unbounded
        elif top <= 1e-300:
            raise DegenerateFunctionError(f"{fn.label()}: identically zero on the scan range")
        elif top <= mid * (1.0 + 1e-9):
            raise DegenerateFunctionError(f"{fn.label()}: bounded, not a Young function")


def inverse(fn: YoungFunction, tau):
    """Module-level alias for the generalized right-continuous inverse."""
    return fn.inverse(tau)


def conjugate(fn: YoungFunction) -> YoungFunction:
    closed = fn.conjugate_closed()
    return closed if closed is not None else ConjugateYoung(fn)


def scale(fn: YoungFunction, b: float, c: float) -> YoungFunction:
    return ScaledYoung(fn, b=b, c=c)


def fundamental(fn: YoungFunction, s):
    """Fundamental function phi(s) = 1 / A^{-1}(1/s); the chi_E Luxemburg norm."""
    arr = as_float_array(s)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    if np.any(arr <= 0):
        raise ValueError("measure s must be positive")
    inv = np.atleast_1d(as_float_array(fn.inverse(1.0 / arr)))
    with np.errstate(divide="ignore"):
        out = 1.0 / inv
    return scalar_or_array(out, scalar)


def glue(zero_piece: YoungFunction, inf_piece: YoungFunction, t_s: float = 1.0,
         per_decade: int = 64, bridge_decades: float = 6.0) -> GridYoung:
    """Join two Young functions: zero_piece below t_s, inf_piece above.

    Works at the derivative level on a geometric grid: cell slopes of the zero
    piece are used up to the join, then a constant bridge, then the inf
    piece's slopes once they exceed the bridge level. The join pair is chosen
    to minimize the bridge length around t_s, which keeps the result convex
    and equivalent to the pieces on their respective sides.
    """
    if zero_piece.t_inf < t_s:
        raise ConvexJoinError("zero piece jumps to infinity before the switch point")
    lo = min(1e-14, t_s / 1e4)
    hi0 = max(1e16, t_s * 1e4)
    if inf_piece.t_inf < INF:
        # the glued function keeps the zero piece up to the switch, then jumps
        t = geometric(lo, min(t_s, zero_piece.t_inf), per_decade)
        v0 = np.atleast_1d(as_float_array(zero_piece(t)))
        out = GridYoung(t, v0, t_inf=t_s, name=f"glue({zero_piece.label()} | jump @ {t_s:g})")
        out.join_window = (t_s, t_s)
        return out
    hi = hi0
    t = geometric(lo, hi, per_decade)
    v0 = np.atleast_1d(as_float_array(zero_piece(t)))
    v1 = np.atleast_1d(as_float_array(inf_piece(t)))
    with np.errstate(invalid="ignore"):
        s0 = np.diff(v0) / np.diff(t)
        s1 = np.diff(v1) / np.diff(t)
    k_s = int(np.searchsorted(t, t_s))
    k_s = min(max(k_s, 1), t.size - 2)
    window = int(round(bridge_decades * per_decade))
    i_lo = max(0, k_s - window)
    i_opts = [i for i in range(k_s, i_lo - 1, -1) if np.isfinite(s0[i])]
    j_opts = np.arange(k_s, min(s1.size, k_s + window + 1))
    best = None
    for i in i_opts:
        ok = j_opts[s1[j_opts] >= s0[i] * (1.0 - 1e-12)]
        if ok.size:
            j = int(ok[0])
            cand = (j - i, i, j)
            if best is None or cand < best:
                best = cand
        if best is not None and best[0] <= (k_s - i):
            break
    if best is None:
        raise ConvexJoinError(
            f"cannot convexly join {zero_piece.label()} -> {inf_piece.label()} near t_s={t_s:g}")
    _, i, j = best
    slopes = np.concatenate([s0[:i], np.full(j - i, s0[i]), s1[j:]])
    vals = np.concatenate([[v0[0]], v0[0] + np.cumsum(slopes * np.diff(t))])
    name = f"glue({zero_piece.label()} | {inf_piece.label()} @ {t[i]:.3g}..{t[j]:.3g})"
    out = GridYoung(t, vals, name=name)
    out.join_window = (float(t[i]), float(t[j]))
    # local (near-infinity) indices follow the inf piece when known
    if inf_piece.meta is not None and inf_piece.meta.indices is not None:
        il, Il = inf_piece.meta.indices[2], inf_piece.meta.indices[3]
        z = zero_piece.meta.zero_exponent if zero_piece.meta else None
        out.meta = ExactMeta(indices=None, zero_exponent=z, note="glue")
        out.local_indices_hint = (il, Il)
    elif zero_piece.meta is not None:
        out.meta = ExactMeta(indices=None, zero_exponent=zero_piece.meta.zero_exponent, note="glue")
    return out


# ---------------------------------------------------------------------------
# sampled boundedness decisions
# ---------------------------------------------------------------------------


def _directional_verdict(t: np.ndarray, r: np.ndarray, toward: str, far_r: np.ndarray,
                         stable_factor: float = 1.05, growth_factor: float = 2.0) -> Decision:
    """Decide boundedness of samples r(t) as t approaches one end of the window.

    toward: 'hi' (near infinity) or 'lo' (near zero). Yes only when the
    maximum is attained away from the limit or the last decade is flat; no on
    solid (>= 2x / two decades) growth inside the window, or when the far
    probes beyond the window keep climbing to twice the window maximum (this
    catches slow logarithmic divergences). Anything else is indeterminate:
    the bias protects against false positives, not false negatives.
    """
    if np.isinf(r).any():
        return Decision("no", None, {"reason": "infinite ratio in window"})
    good = np.isfinite(r)
    t, r = t[good], r[good]
    if t.size < 8:
        return Decision("indeterminate", None, {"reason": "too few finite samples"})
    if toward == "lo":
        t, r = t[::-1], r[::-1]
        edge = t[-1]
        last_dec = t <= edge * 10.0
        prev_dec = (t > edge * 10.0) & (t <= edge * 100.0)
    else:
        edge = t[-1]
        last_dec = t >= edge / 10.0
        prev_dec = (t < edge / 10.0) & (t >= edge / 100.0)
    r_max = float(np.max(r))
    if r_max == 0.0:
        return Decision("yes", {"c": 1.0}, {"reason": "ratio identically zero"})
    med = float(np.median(r))
    last_max = float(np.max(r[last_dec])) if last_dec.any() else r_max
    prev_max = float(np.max(r[prev_dec])) if prev_dec.any() else last_max
    diagnostics = {"r_max": r_max, "median": med, "last_decade_max": last_max,
                   "prev_decade_max": prev_max, "n": int(t.size)}
    growth = last_max / prev_max if prev_max > 0 else INF
    diagnostics["growth_two_decades"] = growth
    if growth >= growth_factor:
        return Decision("no", None, diagnostics)
    if far_r.size >= 3:
        diagnostics["far_probes"] = [float(v) for v in far_r]
        if np.isinf(far_r).any():
            return Decision("no", None, diagnostics)
        climbing = np.all(np.diff(far_r) >= -0.02 * far_r[:-1])
        if climbing and far_r[-1] >= growth_factor * r_max:
            return Decision("no", None, diagnostics)
    interior_max = bool(np.max(r[~last_dec]) >= last_max) if (~last_dec).any() else False
    if interior_max or last_max <= stable_factor * med:
        return Decision("yes", {"c": r_max * (1.0 + 1e-9)}, diagnostics)
    return Decision("indeterminate", None, diagnostics)


_FAR_STEPS = (1e4, 1e12, 1e24, 1e40, 1e60)


def _far_points(regime_edge: float, toward: str, hi_cap: float, lo_cap: float) -> np.ndarray:
    if toward == "hi":
        pts = np.array([regime_edge * s for s in _FAR_STEPS])
        pts = pts[pts <= hi_cap]
    else:
        pts = np.array([regime_edge / s for s in _FAR_STEPS])
        pts = pts[pts >= max(lo_cap, 1e-280)]
    return pts


def _ratio_decision(t: np.ndarray, r_fn, regime: Regime, hi_cap: float = INF,
                    lo_cap: float = 0.0) -> Decision:
    """Shared verdict engine: r_fn maps argument arrays to ratio samples."""
    r = np.atleast_1d(as_float_array(r_fn(t)))

    def far(toward, edge):
        # probe points are generated in toward-the-limit order for both ends
        pts = _far_points(edge, toward, hi_cap, lo_cap)
        if pts.size < 3:
            return np.empty(0)
        vals = np.atleast_1d(as_float_array(r_fn(pts)))
        vals = vals[~np.isnan(vals)]  # overflow probes carry no information
        return vals if vals.size >= 3 else np.empty(0)

    if regime.tag == "near_infinity":
        d = _directional_verdict(t, r, "hi", far("hi", regime.t_hi))
    elif regime.tag == "near_zero":
        d = _directional_verdict(t, r, "lo", far("lo", regime.t_lo))
    else:
        mid = t.size // 2
        d_lo = _directional_verdict(t[: mid + 1], r[: mid + 1], "lo", far("lo", regime.t_lo))
        d_hi = _directional_verdict(t[mid:], r[mid:], "hi", far("hi", regime.t_hi))
        if d_lo.verdict == "no" or d_hi.verdict == "no":
            return Decision("no", None, {"lo": d_lo.diagnostics, "hi": d_hi.diagnostics})
        if d_lo.verdict == "yes" and d_hi.verdict == "yes":
            c = max(d_lo.witness["c"], d_hi.witness["c"])
            return Decision("yes", {"c": c}, {"lo": d_lo.diagnostics, "hi": d_hi.diagnostics})
        return Decision("indeterminate", None, {"lo": d_lo.diagnostics, "hi": d_hi.diagnostics})
    if d.verdict == "yes":
        t0 = regime.t_lo if regime.tag == "near_infinity" else regime.t_hi
        d.witness = {"c": d.witness["c"], "t0": t0}
    return d


def _grid_cap(*fns: YoungFunction) -> tuple[float, float]:
    """Far probes stay inside grid-backed functions' sampled range: beyond it
    the power extension (or the interpolated origin piece) would fake
    pure-power behavior. Returns (hi_cap, lo_cap)."""
    hi_cap, lo_cap = INF, 0.0
    for fn in fns:
        knots = getattr(fn, "knots", None)
        if knots is not None:
            hi_cap = min(hi_cap, float(knots[-1]))
            if not getattr(fn, "exact_below", False):
                lo_cap = max(lo_cap, float(knots[0]))
    return hi_cap, lo_cap


def dominates(A: YoungFunction, B: YoungFunction, regime: Regime,
              per_decade: int = 48) -> Decision:
    """Does A dominate B (B(t) <= A(c t)) on the regime window?

    Decided through boundedness of r(t) = A^{-1}(B(t)) / t, the inverse-ratio
    form, which behaves better than the direct inequality near flat spots.
    """
    if A is B:
        return Decision("yes", {"c": 1.0, "t0": regime.t_lo}, {"reason": "identical function"})
    t = geometric(regime.t_lo, regime.t_hi, per_decade)

    def r_fn(ts):
        ts = np.atleast_1d(as_float_array(ts))
        vb = np.atleast_1d(as_float_array(B(ts)))
        r = np.zeros_like(ts)  # B(t) = 0 imposes no constraint
        inf_b = np.isinf(vb)
        jump = inf_b & (ts > B.t_inf)  # a genuine jump, not float overflow
        overflow = inf_b & ~jump
        fin = ~inf_b & (vb > 0)
        if fin.any():
            r[fin] = np.atleast_1d(as_float_array(A.inverse(vb[fin]))) / ts[fin]
        if jump.any():
            r[jump] = INF if A.t_inf == INF else A.t_inf / ts[jump]
        r[overflow] = np.nan  # not evaluable in float range: drop the sample
        return r

    hi_cap, lo_cap = _grid_cap(A, B)
    return _ratio_decision(t, r_fn, regime, hi_cap=hi_cap, lo_cap=lo_cap)


def equivalent(A: YoungFunction, B: YoungFunction, regime: Regime) -> Decision:
    """Mutual domination on the regime window."""
    return _combine_equivalence(dominates(A, B, regime), dominates(B, A, regime))


def delta2(A: YoungFunction, regime: Regime, per_decade: int = 48) -> Decision:
    """Doubling condition A(2t) <= c A(t) on the regime window."""
    if A.t_inf < INF and regime.t_hi > A.t_inf / 2.0:
        return Decision("no", None, {"reason": "A jumps to infinity inside the doubled window"})
    t = geometric(regime.t_lo, regime.t_hi, per_decade)

    def r_fn(ts):
        ts = np.atleast_1d(as_float_array(ts))
        la = np.atleast_1d(as_float_array(A.log_eval(ts)))
        l2 = np.atleast_1d(as_float_array(A.log_eval(2.0 * ts)))
        with np.errstate(over="ignore", invalid="ignore"):
            r = np.exp(l2 - la)
        both_zero = np.isneginf(la) & np.isneginf(l2)
        r[both_zero] = 1.0  # 0 <= c*0 imposes no constraint
        r[np.isneginf(la) & ~np.isneginf(l2)] = INF
        return r

    hi_cap, lo_cap = _grid_cap(A)
    d = _ratio_decision(t, r_fn, regime, hi_cap=hi_cap, lo_cap=lo_cap)
    if d.verdict == "yes":
        d.witness = {"c": d.witness["c"]}
    return d

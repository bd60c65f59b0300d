"""Boyd indices of Young functions: global and local, exact and numeric.

The global indices come from the dilation function h(t) = sup_s A^{-1}(st)/A^{-1}(s)
through the limits of log t / log h(t); the local ones from the ratio form
hhat(t) = limsup_{s->inf} A(st)/A(s), truncated to the top decades of the grid.
Numeric estimates extrapolate the leading O(1/log t) corrections away and
report an uncertainty; closed-form families short-circuit to exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import DEFAULT_GRID, Grid, as_float_array, geometric
from .young import ConjugateYoung, Decision, YoungFunction, conjugate

INF = math.inf

_LIMSUP_DECADES = 3.0  # truncated limsup window: top three decades of the grid
_INDEX_MARGIN = 0.02  # relative margin below/above a threshold before going numeric


@dataclass(frozen=True)
class BoydIndexReport:
    """Four Boyd indices with provenance and (for numeric paths) uncertainty."""

    i_global: float
    I_global: float
    i_local: float
    I_local: float
    method: str  # "exact" | "numeric"
    uncertainty: float = 0.0

    def __post_init__(self):
        for lo, hi in ((self.i_global, self.I_global), (self.i_local, self.I_local)):
            if not (lo <= hi * (1 + 1e-9) + self.uncertainty * 2 or hi == INF):
                raise ValueError(f"index ordering violated: {self}")

    def as_dict(self) -> dict:
        def enc(x):
            return "inf" if x == INF else x

        return {
            "i_global": enc(self.i_global),
            "I_global": enc(self.I_global),
            "i_local": enc(self.i_local),
            "I_local": enc(self.I_local),
            "method": self.method,
            "uncertainty": self.uncertainty,
        }


def _working_copy(fn: YoungFunction) -> YoungFunction:
    """Conjugate closures are expensive per call; index scans use a snapshot."""
    if isinstance(fn, ConjugateYoung):
        return fn.snapshot()
    return fn


class _Dilation:
    """Caches grid inverses of one function for repeated h evaluations."""

    def __init__(self, fn: YoungFunction, grid: Grid = DEFAULT_GRID):
        self.fn = fn
        self.grid = grid
        self.s = grid.points()
        self.inv_s = np.atleast_1d(as_float_array(fn.inverse(self.s)))

    def h_global(self, t: float) -> float:
        inv_st = np.atleast_1d(as_float_array(self.fn.inverse(self.s * t)))
        ok = self.inv_s > 0
        return float(np.max(inv_st[ok] / self.inv_s[ok]))

    def hhat(self, t: float, scope: str, adaptive: bool = False) -> float:
        """log of hhat(t); global sup over the grid, local over the top decades.

        adaptive: for t < 1 slide the limsup window up so that s*t stays in
        the near-infinity range; otherwise deep dilations leak the near-zero
        behavior into a quantity that is about infinity only.
        """
        if scope == "local":
            lo = self.grid.t_max / 10.0 ** _LIMSUP_DECADES
            hi = self.grid.t_max
            if adaptive and t < 1.0:
                lo = max(lo, 1e2 / t)
                hi = max(hi, 1e5 / t)
            s = geometric(lo, hi, self.grid.per_decade)
        else:
            s = self.s
        ls = np.atleast_1d(as_float_array(self.fn.log_eval(s)))
        lst = np.atleast_1d(as_float_array(self.fn.log_eval(s * t)))
        gap = lst - ls
        gap = gap[np.isfinite(gap)]
        if gap.size == 0:
            return INF
        return float(np.max(gap))


def h_global(fn: YoungFunction, t: float, grid: Grid = DEFAULT_GRID) -> float:
    """Dilation function sup_s A^{-1}(st) / A^{-1}(s) over the grid."""
    if t <= 0:
        raise ValueError("dilation argument must be positive")
    return _Dilation(_working_copy(fn), grid).h_global(t)


def hhat(fn: YoungFunction, t: float, scope: str = "global", grid: Grid = DEFAULT_GRID) -> float:
    """Ratio-form dilation sup_s A(st)/A(s); local scope truncates the limsup."""
    if t <= 0:
        raise ValueError("dilation argument must be positive")
    if scope not in ("global", "local"):
        raise ValueError("scope must be 'global' or 'local'")
    if fn.t_inf < INF:
        if scope == "local" or t > 1.0:
            return INF
    g = _Dilation(_working_copy(fn), grid).hhat(t, scope)
    return float(np.exp(min(g, 700.0))) if g < INF else INF


def _fit_limit(us: np.ndarray, vs: np.ndarray) -> tuple[float, float]:
    """Extrapolate v(u) to u -> inf and return (limit, uncertainty).

    Fits both a + b/u and a + b/sqrt(u); log-perturbed powers follow the
    first, slowly-varying exponential corrections the second. The midpoint is
    reported, the model spread feeds the uncertainty. Infinite or exploding
    samples force an infinite limit.
    """
    vs = as_float_array(vs)
    if np.any(~np.isfinite(vs)) or np.any(vs > 500.0):
        return INF, 0.0
    us = as_float_array(us)
    fits = []
    worst_resid = 0.0
    for x in (1.0 / us, 1.0 / np.sqrt(us)):
        coeffs = np.polyfit(x, vs, 1)
        fits.append(float(coeffs[1]))
        resid = vs - np.polyval(coeffs, x)
        worst_resid = max(worst_resid, float(np.max(np.abs(resid))))
    a = 0.5 * (fits[0] + fits[1])
    unc = max(3.0 * worst_resid, 0.75 * abs(fits[0] - fits[1]), 0.01)
    return a, unc


def _numeric_indices(fn: YoungFunction, grid: Grid) -> BoydIndexReport:
    work = _working_copy(fn)
    dil = _Dilation(work, grid)
    # wide dilation span: the O(1/log t) corrections of log-perturbed powers
    # saturate only once st crosses the window, so extrapolate from far out
    t_big = np.array([1e8, 1e12, 1e16, 1e20])
    t_small = 1.0 / t_big

    # global indices from h = sup inverse ratios
    def v_global(ts):
        out = []
        for t in ts:
            h = dil.h_global(float(t))
            lh = math.log(h) if h > 0 else -INF
            if abs(lh) < 1e-12:
                out.append(INF)  # h == 1: index degenerates to infinity
            else:
                out.append(math.log(t) / lh)
        return np.asarray(out)

    i_g, unc_ig = _fit_limit(np.log(t_big), v_global(t_big))
    I_g, unc_Ig = _fit_limit(np.log(t_big), v_global(t_small))

    # local indices from the truncated limsup of value ratios
    if work.t_inf < INF:
        i_l, I_l, unc_il, unc_Il = INF, INF, 0.0, 0.0
    else:
        def v_local(ts):
            out = []
            for t in ts:
                g = dil.hhat(float(t), "local", adaptive=True)
                if not np.isfinite(g) or abs(g) < 1e-12:
                    out.append(INF)
                else:
                    out.append(g / math.log(t))
            return np.asarray(out)

        i_l, unc_il = _fit_limit(np.log(t_big), v_local(t_small))
        I_l, unc_Il = _fit_limit(np.log(t_big), v_local(t_big))

    unc = max(unc_ig, unc_Ig, unc_il, unc_Il)
    i_g = max(1.0, i_g)
    i_l = max(1.0, i_l)
    I_g = max(i_g, I_g)
    I_l = max(i_l, I_l)
    return BoydIndexReport(i_g, I_g, i_l, I_l, method="numeric", uncertainty=unc)


def indices(fn: YoungFunction, grid: Grid = DEFAULT_GRID, prefer: str = "exact") -> BoydIndexReport:
    """Boyd index report: exact from family metadata when available, else numeric."""
    if prefer not in ("exact", "numeric"):
        raise ValueError("prefer must be 'exact' or 'numeric'")
    if prefer == "exact" and fn.meta is not None and fn.meta.indices is not None:
        ig, Ig, il, Il = fn.meta.indices
        return BoydIndexReport(ig, Ig, il, Il, method="exact", uncertainty=0.0)
    if prefer == "exact" and getattr(fn, "local_indices_hint", None) is not None:
        il, Il = fn.local_indices_hint
        num = _numeric_indices(fn, grid)
        return BoydIndexReport(num.i_global, num.I_global, il, Il,
                               method="numeric", uncertainty=num.uncertainty)
    return _numeric_indices(fn, grid)


# ---------------------------------------------------------------------------
# Equivalent growth conditions for the upper index (six-way proposition)
# ---------------------------------------------------------------------------


def _window(scope: str, grid: Grid) -> np.ndarray:
    if scope == "local":
        return geometric(1e2, grid.t_max, grid.per_decade)
    return grid.points()


def pointwise_growth_condition(E: YoungFunction, alpha: float, scope: str = "local",
                               grid: Grid = DEFAULT_GRID) -> Decision:
    """Direct test of E(sigma t) <= c sigma^(1/alpha) E(t), c < 1, on the window.

    The verdict margin scales with (1/alpha) log sigma so that boundary cases
    (index equal to 1/alpha) come out indeterminate rather than wrong.
    """
    t = _window(scope, grid)
    le = np.atleast_1d(as_float_array(E.log_eval(t)))
    best = None
    for sigma in (2.0, 4.0, 8.0, 16.0):
        with np.errstate(invalid="ignore"):
            ls = np.atleast_1d(as_float_array(E.log_eval(sigma * t)))
            gap = ls - le - (1.0 / alpha) * math.log(sigma)
        keep = np.isfinite(gap)
        gap, tt = gap[keep], t[keep]
        if gap.size < 8:
            continue
        # "near infinity" permits a threshold t0: take the best suffix that
        # still spans at least the top three decades of the window
        suffix_max = np.maximum.accumulate(gap[::-1])[::-1]
        allowed = tt <= tt[-1] / 1e3
        worst = float(np.min(suffix_max[allowed])) if allowed.any() else float(suffix_max[0])
        if best is None or worst < best[0]:
            best = (worst, sigma)
    if best is None:
        return Decision("no", None, {"reason": "values overflow: growth beyond any power"})
    worst, sigma = best
    tol = 0.02 * (1.0 / alpha) * math.log(sigma)
    if worst < -tol:
        return Decision("yes", {"sigma": sigma, "c": math.exp(worst)}, {"worst_gap": worst})
    if worst > tol:
        return Decision("no", None, {"worst_gap": worst, "sigma": sigma})
    return Decision("indeterminate", None, {"worst_gap": worst, "sigma": sigma})


def tail_integral_condition(E: YoungFunction, alpha: float, scope: str = "local",
                            grid: Grid = DEFAULT_GRID) -> Decision:
    """Tail test: integral_t^inf E(s) s^(-1/alpha - 1) ds <= E(kt) / t^(1/alpha)."""
    kappa = 1.0 / alpha
    s = geometric(1e-2 if scope == "global" else 1.0, grid.t_max, grid.per_decade)
    le = np.atleast_1d(as_float_array(E.log_eval(s)))
    if not np.isfinite(le[-1]):
        return Decision("no", None, {"reason": "E overflows: integral diverges"})
    # integrand in the log-substituted variable: E(s) s^{-kappa-1} * s = E(s)/s^kappa
    log_g = le - kappa * np.log(s)
    # divergence check from the top-decade growth of log g
    top = s >= grid.t_max / 100.0
    if np.sum(top) >= 3:
        tail_slope = np.polyfit(np.log(s[top]), log_g[top], 1)[0]
        if tail_slope >= -0.005:
            return Decision("no", None, {"tail_slope": float(tail_slope)})
    else:  # pragma: no cover
        return Decision("indeterminate", None, {"reason": "window too thin"})
    g = np.exp(log_g)
    u = np.log(s)
    body = np.concatenate([
        np.cumsum(((g[1:] + g[:-1]) * 0.5 * np.diff(u))[::-1])[::-1], [0.0]])
    tail = g[-1] / max(-tail_slope, 1e-3)
    total = body + tail
    t_lo = 1e2 if scope == "local" else 1e-2
    sel = (s >= t_lo) & (s <= grid.t_max / 1e3)
    if not sel.any():
        return Decision("indeterminate", None, {"reason": "no test points"})
    lhs = np.log(np.maximum(total[sel], 1e-300))
    rhs_base = kappa * np.log(s[sel])
    s_sel = s[sel]
    # the inequality only has to hold past a threshold; accept a suffix that
    # spans at least the top three decades of the test range
    suffix_ok_from = s_sel <= s_sel[-1] / 1e3
    for k in 2.0 ** np.arange(1, 13):
        le_k = np.atleast_1d(as_float_array(E.log_eval(k * s_sel)))
        ok = np.isfinite(le_k) & (lhs <= le_k - rhs_base + 1e-9)
        holds_from = np.logical_and.accumulate(ok[::-1])[::-1]
        if bool(np.any(holds_from & suffix_ok_from)):
            return Decision("yes", {"k": float(k)}, {})
    return Decision("indeterminate", None, {"reason": "no k in range certified the tail bound"})


def upper_index_condition(E: YoungFunction, alpha: float, scope: str = "local",
                          grid: Grid = DEFAULT_GRID) -> Decision:
    """Is the upper Boyd index of E strictly below 1/alpha (per scope)?

    Exact metadata decides strictly; numeric paths use a margin of
    2% of 1/alpha and fall back to the pointwise and tail-integral forms of
    the same condition when the index estimate sits near the boundary.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if scope not in ("local", "global"):
        raise ValueError("scope must be 'local' or 'global'")
    thr = 1.0 / alpha
    rep = indices(E, grid=grid)
    idx = rep.I_local if scope == "local" else rep.I_global
    if rep.method == "exact":
        verdict = "yes" if idx < thr else "no"
        witness = {"upper_index": idx, "threshold": thr} if verdict == "yes" else None
        return Decision(verdict, witness, {"upper_index": idx, "threshold": thr, "method": "exact"})
    margin = _INDEX_MARGIN * thr
    diag = {"upper_index": idx, "threshold": thr, "uncertainty": rep.uncertainty, "method": "numeric"}
    if idx + rep.uncertainty < thr - margin:
        return Decision("yes", {"upper_index": idx, "threshold": thr}, diag)
    if idx != INF and idx - rep.uncertainty <= thr + margin:
        # boundary zone: try the direct growth forms before giving up
        d3 = pointwise_growth_condition(E, alpha, scope, grid) if E.t_inf == INF else Decision("indeterminate")
        if d3.verdict == "yes":
            return Decision("yes", d3.witness, {**diag, "via": "pointwise"})
        d1 = tail_integral_condition(E, alpha, scope, grid) if E.t_inf == INF else Decision("indeterminate")
        if d1.verdict == "yes":
            return Decision("yes", d1.witness, {**diag, "via": "tail_integral"})
        if d1.verdict == "no" and d3.verdict == "no":
            return Decision("no", None, {**diag, "via": "fallbacks"})
        return Decision("indeterminate", None, diag)
    return Decision("no", None, diag)


def lower_index_condition(E: YoungFunction, threshold: float, scope: str = "local",
                          grid: Grid = DEFAULT_GRID) -> Decision:
    """Is the lower Boyd index of E strictly above `threshold` (per scope)?"""
    rep = indices(E, grid=grid)
    idx = rep.i_local if scope == "local" else rep.i_global
    if rep.method == "exact":
        verdict = "yes" if idx > threshold else "no"
        return Decision(verdict, {"lower_index": idx} if verdict == "yes" else None,
                        {"lower_index": idx, "threshold": threshold, "method": "exact"})
    margin = _INDEX_MARGIN * max(threshold, 1.0)
    diag = {"lower_index": idx, "threshold": threshold, "uncertainty": rep.uncertainty}
    if idx - rep.uncertainty > threshold + margin:
        return Decision("yes", {"lower_index": idx}, diag)
    if idx + rep.uncertainty < threshold - margin:
        return Decision("no", None, diag)
    return Decision("indeterminate", None, diag)


def conjugate_index_consistency(E: YoungFunction, alpha: float, scope: str = "local",
                                grid: Grid = DEFAULT_GRID) -> Decision:
    """Self-test: upper-index condition on E agrees with the dual lower-index
    condition on the conjugate (the two sides of the duality)."""
    if E.t_inf < INF:
        raise ValueError("conjugate consistency needs a finite-valued E")
    primal = upper_index_condition(E, alpha, scope=scope, grid=grid)
    dual = lower_index_condition(conjugate(E), 1.0 / (1.0 - alpha), scope=scope, grid=grid)
    diag = {"primal": primal.diagnostics, "dual": dual.diagnostics}
    if "indeterminate" in (primal.verdict, dual.verdict):
        return Decision("indeterminate", None, diag)
    if primal.verdict == dual.verdict:
        return Decision("yes", {"shared_verdict": primal.verdict}, diag)
    return Decision("no", None, diag)

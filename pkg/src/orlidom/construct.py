"""Optimal-domain Young function constructions for the Hardy reduction.

Given a target Young function B and parameters (alpha, beta), the candidate
optimal domain is

    D(t) = integral_0^t Ginv(s)/s ds,

where G(t) = t * inf_{1<=s<=t} B^{-1}(s^{1/beta}) s^(alpha-1) for t >= 1 and
G(t) = t * B^{-1}(1) below; the global (infinity-window) variant takes the
infimum over 0 < s <= t instead and exists when B decays at least like
t^(1/(beta(1-alpha))) near zero. Both come out convex by construction since
Ginv(s)/s is nondecreasing; the quadrature runs in log coordinates with the
logarithmic-mean segment rule, which is exact on power segments.

A shortcut form of the inverse, B^{-1}(t^{1/beta}) t^alpha, is valid when the
lower Boyd index of B exceeds 1/(beta(1-alpha)); it is returned together with
a numeric band check against G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boyd
from .grid import DEFAULT_GRID, Grid, as_float_array, geometric
from .young import (
    ExpPowerYoung,
    ExpSqrtLogYoung,
    ExpTowerYoung,
    GridYoung,
    LInfYoung,
    PowerYoung,
    Regime,
    ScaledYoung,
    YoungFunction,
    ZygmundYoung,
    equivalent,
    glue,
)

INF = math.inf

EQUIV_BAND = 64.0  # ratio band accepted as "equivalent" across constructions


class ConditionError(RuntimeError):
    """A named analytic condition failed (e.g. the near-zero decay bound)."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"condition {condition} failed{': ' + detail if detail else ''}")


@dataclass(frozen=True)
class HardyParams:
    """Exponent pair of the Hardy operator; embeddings use alpha=m/n, beta=n/gamma."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError("alpha must lie in (0, 1)")
        if not (self.beta > 0.0):
            raise ValueError("beta must be positive")
        if self.alpha + 1.0 / self.beta < 1.0 - 1e-12:
            raise ValueError("need alpha + 1/beta >= 1")

    @staticmethod
    def for_embedding(n: int, m: int, gamma: float) -> "HardyParams":
        return HardyParams(alpha=m / n, beta=n / gamma)

    @property
    def zero_power(self) -> float:
        """Critical near-zero exponent 1/(beta(1-alpha))."""
        return 1.0 / (self.beta * (1.0 - self.alpha))


@dataclass(frozen=True)
class Asymptote:
    """Closed-form behavior near infinity: t^power (log t)^log_power exp(c sqrt(log t))."""

    power: float
    log_power: float = 0.0
    sqrtlog_coeff: float = 0.0
    text: str = ""

    def describe(self) -> str:
        if self.text:
            return self.text
        parts = [f"t^{self.power:.6g}"]
        if self.log_power:
            parts.append(f"(log t)^{self.log_power:.6g}")
        if self.sqrtlog_coeff:
            parts.append(f"exp({self.sqrtlog_coeff:.6g} sqrt(log t))")
        return " * ".join(parts)

    def eval(self, t):
        t = as_float_array(t)
        logt = np.log(t)
        out = self.power * logt
        if self.log_power:
            out = out + self.log_power * np.log(logt)
        if self.sqrtlog_coeff:
            out = out + self.sqrtlog_coeff * np.sqrt(logt)
        return np.exp(out)


@dataclass(frozen=True)
class DomainProfile:
    """Exact-metadata conclusion about the constructed domain's upper index."""

    upper_index: float
    boundary_exact: bool  # upper index equals 1/alpha exactly (analytic fact)
    asymptote: Asymptote | None
    note: str = ""


class GCurve:
    """The running-infimum function G, sampled on a geometric argument grid."""

    def __init__(self, x: np.ndarray, g_vals: np.ndarray, params: HardyParams, variant: str):
        G = np.maximum.accumulate(x * g_vals)  # guard tiny sampling wiggles
        keep = np.concatenate([[True], np.diff(G) > 0])
        self.x = x[keep]
        self.G = G[keep]
        self.params = params
        self.variant = variant
        self._logx = np.log(self.x)
        self._logG = np.log(self.G)

    def __call__(self, t):
        t = np.atleast_1d(as_float_array(t))
        out = np.exp(np.interp(np.log(t), self._logx, self._logG))
        if self.variant == "finite":
            below = t <= self.x[0]
            out[below] = t[below] * (self.G[0] / self.x[0])
        return out

    def inverse(self, sigma):
        sigma = np.atleast_1d(as_float_array(sigma))
        out = np.exp(np.interp(np.log(sigma), self._logG, self._logx))
        if self.variant == "finite":
            below = sigma <= self.G[0]
            out[below] = sigma[below] * (self.x[0] / self.G[0])
        return out


def near_zero_decay_ok(B: YoungFunction, kappa: float, grid: Grid = DEFAULT_GRID) -> tuple[bool, dict]:
    """Check that B(t) stays below a multiple of t**kappa near zero.

    This is the condition that keeps the global running infimum positive:
    B^{-1}(s^{1/beta}) s^(alpha-1) must not vanish as s -> 0. Exact near-zero
    exponents decide directly; otherwise the ratio B(t)/t^kappa is sampled on
    the near-zero window and its trend toward zero is inspected.
    """
    if B.meta is not None and B.meta.zero_exponent is not None:
        q0 = B.meta.zero_exponent
        return q0 >= kappa - 1e-9, {"zero_exponent": q0, "kappa": kappa, "method": "exact"}
    t = geometric(*_near_zero_window(grid), grid.per_decade)
    v = np.atleast_1d(as_float_array(B(t)))
    ratio = v / t ** kappa
    pos = ratio > 0
    if not pos.any():
        return True, {"method": "numeric", "note": "B vanishes on the window"}
    slope = np.polyfit(np.log(t[pos]), np.log(ratio[pos]), 1)[0]
    ok = slope >= -0.02 and float(np.max(ratio[pos])) < 1e12
    return ok, {"method": "numeric", "ratio_slope": float(slope),
                "ratio_max": float(np.max(ratio[pos]))}


def _near_zero_window(grid: Grid) -> tuple[float, float]:
    return (max(grid.t_min, 1e-12), 1e-2)


def build_G(B: YoungFunction, params: HardyParams, variant: str = "finite",
            grid: Grid = DEFAULT_GRID, sigma_max: float = 1e18) -> GCurve:
    """Sample G (finite) or its global variant on an argument grid wide enough
    that G reaches sigma_max; running infimum by prefix minimum with golden
    refinement inside cells that carry an interior local minimum."""
    if variant not in ("finite", "global"):
        raise ValueError("variant must be 'finite' or 'global'")
    alpha, beta = params.alpha, params.beta

    def integrand(s):
        s = np.atleast_1d(as_float_array(s))
        inv = np.atleast_1d(as_float_array(B.inverse(s ** (1.0 / beta))))
        return inv * s ** (alpha - 1.0)

    if variant == "global":
        ok, diag = near_zero_decay_ok(B, params.zero_power, grid)
        if not ok:
            raise ConditionError("near-zero decay bound (Bzero)",
                                 f"B must lie below t^{params.zero_power:.4g} near zero; {diag}")
        x_lo = 1e-30
    else:
        x_lo = 1.0

    # extend the argument grid until G clears sigma_max
    x_hi = 1e8
    for _ in range(40):
        x = geometric(x_lo, x_hi, grid.per_decade)
        g = integrand(x)
        m = np.minimum.accumulate(g)
        if (x * m)[-1] >= sigma_max or x_hi >= 1e250:
            break
        x_hi = min(x_hi * 1e8, 1e250)

    # golden refinement where the sampled infimum has an interior dip
    interior = np.where((g[1:-1] < g[:-2]) & (g[1:-1] < g[2:]))[0] + 1
    if interior.size:
        from .grid import golden_min

        lo = x[interior - 1]
        hi = x[interior + 1]
        _, refined = golden_min(lambda s: integrand(s), lo, hi, iters=60)
        g2 = g.copy()
        g2[interior] = np.minimum(g2[interior], refined)
        m = np.minimum.accumulate(g2)

    if not np.all(m > 0):
        raise ConditionError("positivity of G", "running infimum hit zero")
    return GCurve(x, m, params, variant)


def _segment_integrals(x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """integral of x du across segments, exact on power-law pieces."""
    dx = np.diff(x)
    du = np.diff(u)
    dlx = np.diff(np.log(x))
    flat = np.abs(dlx) < 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        seg = np.where(flat, x[:-1] * du, dx * du / np.where(flat, 1.0, dlx))
    return seg


@dataclass
class ConstructedDomain:
    """The constructed domain Young function together with its G curve."""

    B_ab: GridYoung
    G: GCurve
    params: HardyParams
    variant: str
    target_label: str
    shortcut_used: bool = False
    shortcut_band: tuple[float, float] | None = None
    profile: DomainProfile | None = None

    @property
    def asymptote(self) -> Asymptote | None:
        return self.profile.asymptote if self.profile else None


def build_B(B: YoungFunction, params: HardyParams, variant: str = "finite",
            grid: Grid = DEFAULT_GRID, sigma_max: float = 1e18) -> ConstructedDomain:
    """Construct the candidate optimal domain function for the Hardy operator."""
    curve = build_G(B, params, variant, grid=grid, sigma_max=sigma_max)
    x, G = curve.x, curve.G
    u = np.log(G)
    seg = _segment_integrals(x, u)
    if variant == "finite":
        # integral over (0, G(1)] of (s / B^{-1}(1)) / s ds = G(1) / B^{-1}(1) = 1 exactly
        head = 1.0
    else:
        k0 = (np.log(G[1]) - np.log(G[0])) / (np.log(x[1]) - np.log(x[0]))
        head = x[0] * k0  # analytic head assuming the bottom power-law profile
    vals = head + np.concatenate([[0.0], np.cumsum(seg)])
    name = f"domain({B.label()}; alpha={params.alpha:g}, beta={params.beta:g}, {variant})"
    fn = GridYoung(G, vals, name=name, exact_below=(variant == "finite"))
    dom = ConstructedDomain(B_ab=fn, G=curve, params=params, variant=variant,
                            target_label=B.label())
    dom.profile = exact_domain_profile(B, params, variant)
    if dom.profile is not None and dom.profile.asymptote is not None:
        fn.asymptote = dom.profile.asymptote
    return dom


def shortcut_inverse(B: YoungFunction, params: HardyParams, scope: str = "local",
                     grid: Grid = DEFAULT_GRID, curve: GCurve | None = None):
    """Inverse shortcut t -> B^{-1}(t^{1/beta}) t^alpha, when the lower Boyd
    index of B strictly exceeds 1/(beta(1-alpha)); returns (callable, band)
    or None. The band is the spread of shortcut/G over the check window."""
    thr = params.zero_power
    d = boyd.lower_index_condition(B, thr, scope=scope, grid=grid)
    if d.verdict != "yes":
        return None

    def phi(t):
        t = np.atleast_1d(as_float_array(t))
        return np.atleast_1d(as_float_array(B.inverse(t ** (1.0 / params.beta)))) * t ** params.alpha

    if curve is None:
        curve = build_G(B, params, "finite", grid=grid)
    t = geometric(1e2, min(grid.t_max, curve.x[-1]), grid.per_decade)
    ratio = phi(t) / curve(t)
    band = (float(np.min(ratio)), float(np.max(ratio)))
    return phi, band


def glue_for_rn(B: YoungFunction, inf_behavior: YoungFunction) -> GridYoung:
    """Whole-space domain: inf_behavior near infinity, the target B near zero.

    The result is verified to be equivalent to its pieces on the respective
    regime windows; a failure raises, since it would mean the convex bridge
    destroyed the prescribed behavior.
    """
    out = glue(B, inf_behavior, t_s=1.0)
    near0 = equivalent(out, B, Regime.near_zero())
    nearI = equivalent(out, inf_behavior, Regime.near_infinity())
    if near0.verdict == "no" or nearI.verdict == "no":
        raise ConditionError("glue equivalence",
                             f"near_zero={near0.verdict}, near_infinity={nearI.verdict}")
    return out


# ---------------------------------------------------------------------------
# exact catalog reductions
# ---------------------------------------------------------------------------


def _unwrap(B: YoungFunction) -> YoungFunction:
    while isinstance(B, ScaledYoung):
        B = B.base
    return B


def exact_domain_profile(B: YoungFunction, params: HardyParams,
                         variant: str = "finite") -> DomainProfile | None:
    """Closed-form upper index and asymptote of the constructed domain for
    catalog targets; None when only the numeric path is available."""
    alpha, beta = params.alpha, params.beta
    crit = params.zero_power
    base = _unwrap(B)
    tol = 1e-9

    def via_lemma_index(i_upper_B: float) -> float:
        if i_upper_B == INF:
            return 1.0 / alpha
        return 1.0 / (alpha + 1.0 / (beta * i_upper_B))

    if isinstance(base, (PowerYoung, ZygmundYoung)):
        q = base.p if isinstance(base, PowerYoung) else base.q
        a = 0.0 if isinstance(base, PowerYoung) else base.a
        if q > crit + tol:
            k = via_lemma_index(q)
            return DomainProfile(k, False, Asymptote(k, a * k / q), note="power/zygmund branch 1")
        if abs(q - crit) <= tol and a > 0:
            return DomainProfile(1.0, False, Asymptote(1.0, a / crit), note="zygmund boundary branch")
        return DomainProfile(1.0, False, Asymptote(1.0, 0.0), note="sub-critical branch: linear")
    if isinstance(base, LInfYoung):
        k = 1.0 / alpha
        return DomainProfile(k, True, Asymptote(k, 0.0, text=f"{alpha:g} * t^{k:.6g} exactly"),
                             note="indicator target: exact boundary power")
    if isinstance(base, (ExpPowerYoung, ExpTowerYoung)):
        return DomainProfile(1.0 / alpha, True, None,
                             note="exponential-type target: upper index sits at the boundary")
    if isinstance(base, ExpSqrtLogYoung):
        q = base.q
        if q >= crit - tol:
            k = via_lemma_index(q)
            coeff = q ** -1.5 * beta ** -0.5 * k ** 1.5
            return DomainProfile(k, False, Asymptote(k, 0.0, coeff), note="exp-sqrt-log branch")
        return DomainProfile(1.0, False, Asymptote(1.0, 0.0), note="sub-critical branch: linear")
    return None

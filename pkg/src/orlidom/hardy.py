"""Hardy-type operators and empirical boundedness probes.

The operator sends f on (0, 1) to Hf(s) = integral_{s^beta}^1 f(r) r^(alpha-1) dr;
its infinite-window variant integrates up to a truncation of (0, inf).
Piecewise-constant inputs integrate in closed form cell by cell, so applying
the operator is exact and linear at the cell level.

The probes estimate sup ||Hf||_target / ||f||_domain over a fixed trial family
at three grid depths; the grid doubles its decade span between levels, which
is what lets genuinely unbounded pairs reveal a stable geometric growth while
bounded pairs settle. Probes provide evidence, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .construct import ConditionError, HardyParams, build_B
from .grid import as_float_array, geometric
from .norms import SampledFunction, luxemburg_norm, marcinkiewicz_norm
from .young import Decision, YoungFunction, conjugate

INF = math.inf

PROBE_FLOORS = (1e-14, 1e-28, 1e-56)  # decade span doubles per refinement level
TRIAL_FAMILY_VERSION = "v1"


def hardy_apply(f: SampledFunction, params: HardyParams, out_floor: float | None = None) -> SampledFunction:
    """Exact cellwise application of the Hardy operator on (0, 1)."""
    return _apply(f, params, upper=1.0, out_floor=out_floor)


def hardy_inf_apply(f: SampledFunction, params: HardyParams, out_floor: float | None = None) -> SampledFunction:
    """Infinite-window variant, truncated at the input's length L."""
    return _apply(f, params, upper=f.L, out_floor=out_floor)


def _tail_integral(f: SampledFunction, alpha: float, upper: float):
    """Exact T(x) = integral_x^upper f(r) r^(alpha-1) dr for cell functions."""
    e, v = f.edges, f.values
    a, b = e[:-1], np.minimum(e[1:], upper)
    seg = np.where(b > a, v * (b ** alpha - np.maximum(a, 0.0) ** alpha) / alpha, 0.0)
    suffix = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])

    def T(x):
        x = np.atleast_1d(as_float_array(x))
        idx = np.clip(np.searchsorted(e, x, side="right") - 1, 0, v.size - 1)
        partial = v[idx] * (np.minimum(e[idx + 1], upper) ** alpha - np.minimum(x, upper) ** alpha) / alpha
        out = suffix[idx + 1] + np.maximum(partial, 0.0)
        return np.where(x >= upper, 0.0, out)

    return T


def _apply(f: SampledFunction, params: HardyParams, upper: float,
           out_floor: float | None) -> SampledFunction:
    alpha, beta = params.alpha, params.beta
    T = _tail_integral(f, alpha, upper)
    s_hi = upper ** (1.0 / beta)
    # the output grid floor mirrors the input floor so that the plateau of Hf
    # below the support keeps its full measure
    floor = out_floor if out_floor is not None else max(f.edges[1] ** (1.0 / beta), 1e-300)
    inner = geometric(min(floor, s_hi / 10.0), s_hi, 64)
    edges = np.concatenate([[0.0], inner])
    mids = np.sqrt(edges[:-1] * edges[1:])
    mids[0] = edges[1] * 0.5
    vals = T(mids ** beta)
    return SampledFunction(edges, vals, monotone_nonincreasing=True, step=False)


# ---------------------------------------------------------------------------
# dual integral condition
# ---------------------------------------------------------------------------


def integral_condition_check(A: YoungFunction, B: YoungFunction, params: HardyParams,
                             c2_max_pow: int = 40) -> Decision:
    """Check the dual condition for the infinite-window weak-type bound:

        integral_0^t conj(A)(s) / s^(kappa'+1) ds <= conj(Dinf)(C2 t) / t^kappa'

    for every t, where kappa' = 1/(1-alpha) and Dinf is the global-variant
    constructed domain of the target. C2 is searched over powers of two.
    """
    kappa = 1.0 / (1.0 - params.alpha)
    dom = build_B(B, params, "global")  # raises ConditionError when (Bzero) fails
    conj_dom = conjugate(dom.B_ab)
    conj_A = conjugate(A)

    s = geometric(1e-12, 1e12, 32)
    ca = np.atleast_1d(as_float_array(conj_A(s)))
    inf_mask = np.isinf(ca)
    first_inf = float(s[np.argmax(inf_mask)]) if inf_mask.any() else INF
    s_f, ca_f = s[~inf_mask], ca[~inf_mask]
    # integral in log coordinates; integrand g(u) = conj(A)(s)/s^kappa
    g = ca_f / s_f ** kappa
    u = np.log(s_f)
    seg = 0.5 * (g[1:] + g[:-1]) * np.diff(u)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    pos = g > 0
    if conj_A.origin_flat == 0.0 and pos.sum() >= 3 and bool(pos[0]):
        # head below the grid: bottom power-law continuation, divergence-aware
        k_b = (math.log(g[2]) - math.log(g[0])) / (u[2] - u[0])
        if k_b <= 0.01:
            return Decision("no", None, {"reason": "left integral diverges at zero"})
        cum = cum + g[0] / k_b

    t = geometric(1e-10, 1e10, 16)
    lhs_at_t = np.interp(np.log(t), u, cum)
    if first_inf < INF:
        lhs_at_t = np.where(t >= first_inf, INF, lhs_at_t)
    rhs1 = np.atleast_1d(as_float_array(conj_dom(t))) / t ** kappa

    # a C2 shift cannot repair an end-slope mismatch: the inequality is for
    # every t > 0, so compare log-log slopes at both ends before searching
    def _slope(vals, sel):
        both = sel & np.isfinite(vals) & (vals > 0)
        if both.sum() < 4:
            return None
        return float(np.polyfit(np.log(t[both]), np.log(vals[both]), 1)[0])

    lo_sel = t <= t[0] * 1e3
    hi_sel = t >= t[-1] / 1e3
    diagnostics = {"kappa": kappa}
    if np.isinf(lhs_at_t).any() and np.all(np.isfinite(np.atleast_1d(as_float_array(conj_dom(t[-1] * 2.0 ** c2_max_pow))))):
        return Decision("no", None, {**diagnostics, "reason": "left side jumps to infinity"})
    for sel, end, cmp in ((lo_sel, "zero", -1.0), (hi_sel, "infinity", +1.0)):
        sl, sr = _slope(lhs_at_t, sel), _slope(rhs1, sel)
        if sl is not None and sr is not None and cmp * (sl - sr) > 0.05:
            diagnostics["reason"] = f"slope mismatch near {end}: lhs {sl:.3f} vs rhs {sr:.3f}"
            return Decision("no", None, diagnostics)

    for k in range(c2_max_pow + 1):
        c2 = 2.0 ** k
        rhs = np.atleast_1d(as_float_array(conj_dom(c2 * t))) / t ** kappa
        with np.errstate(invalid="ignore"):
            ok = (lhs_at_t <= rhs * (1.0 + 1e-9)) | np.isinf(rhs)
        if bool(np.all(ok)):
            return Decision("yes", {"C2": c2}, diagnostics)
    return Decision("indeterminate", None, diagnostics)


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------


@dataclass
class TrialResult:
    trial_id: str
    ratios: list  # one strong-norm ratio per refinement level
    weak_ratios: list | None = None

    def growth_factors(self) -> list:
        g = []
        for a, b in zip(self.ratios, self.ratios[1:]):
            g.append(b / a if a > 0 else INF)
        return g


@dataclass
class ProbeReport:
    trials: list
    sup_ratio: float
    refinement_deltas: list
    verdict: str
    levels: list = field(default_factory=list)
    seed: int = 0
    family_version: str = TRIAL_FAMILY_VERSION

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "family_version": self.family_version,
            "seed": self.seed,
            "levels": self.levels,
            "trials": [
                {"id": tr.trial_id, "ratios": [float(x) for x in tr.ratios],
                 **({"weak_ratios": [float(x) for x in tr.weak_ratios]}
                    if tr.weak_ratios is not None else {})}
                for tr in self.trials
            ],
            "sup_ratio": float(self.sup_ratio),
            "refinement_deltas": [float(d) for d in self.refinement_deltas],
            "verdict": self.verdict,
        }


def _structured_trials(A: YoungFunction, floor: float, per_decade: int):
    """The fixed 12-member trial family for one refinement level.

    Floor-tied members (indicators at the grid floor, offset powers of the
    extremal profile A^{-1}(1/r)) scale with the level and expose unbounded
    pairs; fixed-support members pin down grid convergence.
    """
    inv = A.inverse
    trials: list[tuple[str, SampledFunction]] = []

    trials.append(("chi_fixed_1e-4", SampledFunction.chi(1e-4, per_decade=per_decade, floor=floor)))
    trials.append(("chi_sqrt_floor", SampledFunction.chi(math.sqrt(floor), per_decade=per_decade, floor=floor)))
    trials.append(("chi_floor", SampledFunction.chi(floor, per_decade=per_decade, floor=floor)))

    for w in (1.25, 1.5, 2.0):
        def prof(r, _w=w):
            return np.atleast_1d(as_float_array(inv(1.0 / r))) ** _w

        trials.append((f"extremal_pow_{w:g}",
                       SampledFunction.from_callable(prof, per_decade=per_decade, floor=floor)))

    for c in (1.0, 2.0):
        def tempered(r, _c=c):
            base = np.atleast_1d(as_float_array(inv(1.0 / r)))
            return base / (1.0 + np.abs(np.log(r))) ** _c

        trials.append((f"extremal_tempered_{c:g}",
                       SampledFunction.from_callable(tempered, per_decade=per_decade, floor=floor)))

    trials.append(("pow_fixed_0.25",
                   SampledFunction.power(0.25, per_decade=per_decade, floor=floor, support_lo=1e-8)))
    trials.append(("pow_fixed_0.6",
                   SampledFunction.power(0.6, per_decade=per_decade, floor=floor, support_lo=1e-8)))

    def logpow(r):
        return r ** -0.4 * (1.0 + np.abs(np.log(r))) ** 2

    trials.append(("logpow_fixed",
                   SampledFunction.from_callable(logpow, per_decade=per_decade, floor=floor,
                                                 support_lo=1e-8)))
    trials.append(("const_one", SampledFunction.from_callable(
        lambda r: np.ones_like(r), per_decade=per_decade, floor=floor)))
    return trials


def _random_steps(count: int, seed: int) -> list:
    """Seeded nonincreasing step profiles on the fixed coarse partition
    (1e-6, 1), identical across refinement levels."""
    rng = np.random.default_rng(seed)
    coarse = np.concatenate([[0.0], geometric(1e-6, 1.0, 4)])
    out = []
    for j in range(count):
        vals = np.sort(np.exp(rng.normal(0.0, 2.0, coarse.size - 1)))[::-1]
        out.append((f"random_{j}", coarse.copy(), vals))
    return out


def _resample_steps(coarse_edges, coarse_vals, floor: float, per_decade: int) -> SampledFunction:
    inner = geometric(floor, 1.0, per_decade)
    edges = np.concatenate([[0.0], inner])
    idx = np.clip(np.searchsorted(coarse_edges, edges[1:], side="left") - 1, 0, coarse_vals.size - 1)
    vals = coarse_vals[idx]
    vals = np.where(edges[1:] <= coarse_edges[1], 0.0, vals)  # zero below the coarse support
    return SampledFunction(edges, vals, monotone_nonincreasing=False)


def norm_probe(A: YoungFunction, B: YoungFunction, params: HardyParams,
               trials: int = 3, seed: int = 0, per_decade: int = 64,
               include_weak: bool = False) -> ProbeReport:
    """Empirical ratios ||Hf||_{L^B} / ||f||_{L^A} over the trial family at
    three grid depths; bounded needs both sup-ratio deltas under 5%, while a
    trial whose ratio at least doubles at every refinement flags an unbounded
    trend."""
    if trials < 1:
        raise ValueError("need at least one random trial")
    levels = list(PROBE_FLOORS)
    randoms = _random_steps(trials, seed)
    results: dict[str, TrialResult] = {}
    for floor in levels:
        fam = _structured_trials(A, floor, per_decade)
        fam += [(tid, _resample_steps(ce, cv, floor, per_decade)) for tid, ce, cv in randoms]
        for tid, f in fam:
            nf = luxemburg_norm(f, A)
            if not (0.0 < nf < INF):
                ratio = 0.0
                weak = 0.0
            else:
                hf = hardy_apply(f, params, out_floor=floor)
                ratio = luxemburg_norm(hf, B) / nf
                weak = marcinkiewicz_norm(hf, B) / nf if include_weak else None
            tr = results.setdefault(tid, TrialResult(tid, [], [] if include_weak else None))
            tr.ratios.append(ratio)
            if include_weak:
                tr.weak_ratios.append(weak)
    ordered = [results[tid] for tid in sorted(results)]
    report = _assemble_report(ordered, levels, seed, use_weak=False)
    return report


def _assemble_report(ordered, levels, seed, use_weak: bool) -> ProbeReport:
    sups = []
    for k in range(len(levels)):
        vals = [(tr.weak_ratios if use_weak else tr.ratios)[k] for tr in ordered]
        sups.append(max(vals))
    deltas = [abs(b - a) / a if a > 0 else INF for a, b in zip(sups, sups[1:])]
    growth = 0.0
    for tr in ordered:
        seq = tr.weak_ratios if use_weak else tr.ratios
        if all(x > 0 for x in seq):
            gmin = min(b / a for a, b in zip(seq, seq[1:]))
            growth = max(growth, gmin)
    if growth >= 2.0:
        verdict = "unbounded_trend"
    elif all(d < 0.05 for d in deltas):
        verdict = "bounded"
    else:
        verdict = "inconclusive"
    return ProbeReport(ordered, sups[-1], deltas, verdict, levels=list(levels), seed=seed)


@dataclass
class WeakStrongReport:
    strong: ProbeReport
    weak: ProbeReport
    verdicts_agree: bool
    weak_le_strong: bool
    max_weak_over_strong: float

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "strong": self.strong.as_dict(),
            "weak": self.weak.as_dict(),
            "verdicts_agree": self.verdicts_agree,
            "weak_le_strong": self.weak_le_strong,
            "max_weak_over_strong": self.max_weak_over_strong,
        }


def weak_vs_strong_probe(A: YoungFunction, B: YoungFunction, params: HardyParams,
                         trials: int = 3, seed: int = 0, per_decade: int = 64) -> WeakStrongReport:
    """Run the probe in both the Orlicz and the Marcinkiewicz target norm and
    compare: the verdicts must coincide and the weak ratios stay below the
    strong ones (the weak space is larger)."""
    base = norm_probe(A, B, params, trials=trials, seed=seed, per_decade=per_decade,
                      include_weak=True)
    weak = _assemble_report(base.trials, base.levels, seed, use_weak=True)
    ratio_max = 0.0
    ok = True
    for tr in base.trials:
        for rs, rw in zip(tr.ratios, tr.weak_ratios):
            if rs > 0:
                ratio_max = max(ratio_max, rw / rs)
                ok = ok and rw <= rs * (1.0 + 1e-9)
    return WeakStrongReport(base, weak, base.verdict == weak.verdict, ok, ratio_max)

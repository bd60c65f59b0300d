"""Command-line front end.

Subcommands wrap the library modules one to one: existence analysis, Boyd
indices, conjugation, domain construction, Hardy-operator probes, the worked
example verifier, and plain curve emission. Output is JSON (schema: 1) or
CSV with 17 significant digits; identical command, config and seed give
byte-identical output.

Exit codes: 0 success, 1 parse/validation errors, 2 analytic condition
failures (near-zero decay bound, failing example fixtures), 3 internal
numeric failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import boyd, embeddings, hardy
from .construct import ConditionError, HardyParams, build_B
from .grid import Grid, geometric
from .specparse import ParseError, parse_spec, to_young_spec
from .young import SpecError, YoungFunction, conjugate, fundamental, make_young

CONFIG_ENV = "ORLIDOM_CONFIG"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONDITION = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    grid_min: float = 1e-12
    grid_max: float = 1e12
    per_decade: int = 64
    margin: float = 0.02
    tol: float = 1e-11
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if not (self.grid_min < 1.0 < self.grid_max):
            raise SpecError("grid_min < 1 < grid_max required")
        if not (8 <= self.per_decade <= 512):
            raise SpecError("per_decade must lie in [8, 512]")
        if self.format not in ("json", "csv"):
            raise SpecError("format must be json or csv")

    def grid(self) -> Grid:
        return Grid(self.grid_min, self.grid_max, self.per_decade)


def _config_from(args) -> RunConfig:
    base = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        with open(path) as fh:
            base.update(json.load(fh))
    for key in ("grid_min", "grid_max", "per_decade", "margin", "tol", "format", "seed"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            base[key] = val
    return RunConfig(**base)


def _parse_target(text: str) -> YoungFunction:
    return make_young(to_young_spec(parse_spec(text)))


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _emit_curve(t, v) -> None:
    sys.stdout.write("t,value\n")
    for ti, vi in zip(t, v):
        sys.stdout.write(f"{ti:.17g},{vi:.17g}\n")


def _curve_doc(t, v) -> dict:
    return {"schema": 1, "points": [[float(f"{ti:.17g}"), float(f"{vi:.17g}")]
                                    for ti, vi in zip(t, v)]}


# -- subcommand implementations ---------------------------------------------


def _cmd_analyze(args, cfg: RunConfig) -> int:
    target = _parse_target(args.target)
    problem = embeddings.EmbeddingProblem(args.n, args.m, args.setting, target,
                                          gamma=args.gamma)
    verdict = embeddings.decide(problem, grid=cfg.grid(), margin=cfg.margin)
    _emit_json(verdict.as_dict())
    return EXIT_OK


def _cmd_indices(args, cfg: RunConfig) -> int:
    fn = _parse_target(args.spec)
    rep = boyd.indices(fn, grid=cfg.grid())
    doc = {"schema": 1, "spec": args.spec.strip(), **rep.as_dict()}
    _emit_json(doc)
    return EXIT_OK


def _cmd_conjugate(args, cfg: RunConfig) -> int:
    fn = _parse_target(args.spec)
    conj = conjugate(fn)
    t = geometric(cfg.grid_min, cfg.grid_max, min(cfg.per_decade, 16))
    v = np.atleast_1d(conj(t))
    keep = np.isfinite(v)
    if args.format == "csv" or cfg.format == "csv":
        _emit_curve(t[keep], v[keep])
    else:
        _emit_json({"schema": 1, "spec": args.spec.strip(), "curve": _curve_doc(t[keep], v[keep])["points"]})
    return EXIT_OK


def _cmd_construct(args, cfg: RunConfig) -> int:
    fn = _parse_target(args.spec)
    params = HardyParams(alpha=args.alpha, beta=args.beta)
    variant = "global" if getattr(args, "global_variant") else "finite"
    dom = build_B(fn, params, variant, grid=cfg.grid())
    knots = dom.B_ab.knots
    vals = dom.B_ab.values
    step = max(1, len(knots) // (24 * 16))
    doc = {
        "schema": 1,
        "alpha": params.alpha,
        "beta": params.beta,
        "variant": variant,
        "target": args.spec.strip(),
        "asymptote": dom.asymptote.describe() if dom.asymptote else None,
        "shortcut_used": dom.shortcut_used,
        "points": _curve_doc(knots[::step], vals[::step])["points"],
    }
    if cfg.format == "csv":
        _emit_curve(knots[::step], vals[::step])
    else:
        _emit_json(doc)
    return EXIT_OK


def _cmd_hardy_probe(args, cfg: RunConfig) -> int:
    domain = _parse_target(args.domain)
    target = _parse_target(args.target)
    params = HardyParams(alpha=args.alpha, beta=args.beta)
    rep = hardy.norm_probe(domain, target, params, trials=args.trials, seed=cfg.seed,
                           per_decade=cfg.per_decade)
    _emit_json(rep.as_dict())
    return EXIT_OK


def _cmd_verify_examples(args, cfg: RunConfig) -> int:
    results = embeddings.verify_examples(grid=cfg.grid())
    width = max(len(name) for name, _, _ in results)
    ok_all = True
    for name, ok, detail in results:
        ok_all &= ok
        sys.stdout.write(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}\n")
    sys.stdout.write(f"{'all examples reproduced' if ok_all else 'FAILURES present'}\n")
    return EXIT_OK if ok_all else EXIT_CONDITION


def _cmd_emit_curve(args, cfg: RunConfig) -> int:
    fn = _parse_target(args.spec)
    t = geometric(cfg.grid_min, cfg.grid_max, min(cfg.per_decade, 16))
    if args.what == "eval":
        v = np.atleast_1d(fn(t))
    elif args.what == "inverse":
        v = np.atleast_1d(fn.inverse(t))
    else:
        v = np.atleast_1d(fundamental(fn, t))
    keep = np.isfinite(v)
    _emit_curve(t[keep], v[keep])
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orlidom",
                                description="Optimal Orlicz-Sobolev domain calculus")
    p.add_argument("--grid-min", type=float, dest="grid_min")
    p.add_argument("--grid-max", type=float, dest="grid_max")
    p.add_argument("--per-decade", type=int, dest="per_decade")
    p.add_argument("--margin", type=float, help="relative index margin around thresholds")
    p.add_argument("--tol", type=float, help="relative tolerance of norm bisections")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--seed", type=int)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="decide existence of the optimal domain")
    a.add_argument("-n", type=int, required=True)
    a.add_argument("-m", type=int, required=True)
    a.add_argument("--setting", choices=embeddings.SETTINGS, required=True)
    a.add_argument("--gamma", type=float, default=None)
    a.add_argument("--target", required=True, help="Young function spec, e.g. \"power(p=6)\"")
    a.set_defaults(fn=_cmd_analyze)

    i = sub.add_parser("indices", help="Boyd index report of a Young function")
    i.add_argument("spec")
    i.set_defaults(fn=_cmd_indices)

    c = sub.add_parser("conjugate", help="sampled Fenchel conjugate")
    c.add_argument("spec")
    c.set_defaults(fn=_cmd_conjugate)

    k = sub.add_parser("construct", help="construct the candidate optimal domain")
    k.add_argument("spec")
    k.add_argument("--alpha", type=float, required=True)
    k.add_argument("--beta", type=float, required=True)
    k.add_argument("--global", dest="global_variant", action="store_true",
                   help="build the infinite-window variant")
    k.set_defaults(fn=_cmd_construct)

    h = sub.add_parser("hardy-probe", help="empirical Hardy-operator boundedness probe")
    h.add_argument("--alpha", type=float, required=True)
    h.add_argument("--beta", type=float, required=True)
    h.add_argument("--domain", required=True)
    h.add_argument("--target", required=True)
    h.add_argument("--trials", type=int, default=3)
    h.set_defaults(fn=_cmd_hardy_probe)

    v = sub.add_parser("verify-examples", help="reproduce the worked examples")
    v.set_defaults(fn=_cmd_verify_examples)

    e = sub.add_parser("emit-curve", help="CSV curve of a Young function")
    e.add_argument("spec")
    e.add_argument("--what", choices=("eval", "inverse", "fundamental"), default="eval")
    e.set_defaults(fn=_cmd_emit_curve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        cfg = _config_from(args)
        return args.fn(args, cfg)
    except (ParseError, SpecError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except ConditionError as e:
        sys.stderr.write(f"condition failure: {e}\n")
        return EXIT_CONDITION
    except (ArithmeticError, RuntimeError) as e:  # pragma: no cover
        sys.stderr.write(f"numeric failure: {e}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())

"""Command-line interface: ``cfzeta <subcommand> [options]``.

Exit codes: 0 on success, 1 if an identity check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

import mpmath

from .cf import CFExpansion, convergents, expand
from .genfun import closed_form_series, direct_series, generating_vector, radius_of_convergence
from .levy import LEVY_AE, levy_ae_montecarlo, levy_report
from .parsing import ParseError, RationalInputError, parse_cf, parse_input, parse_matrix, parse_surd
from .qfield import QuadraticSurd, SurdError, minimal_polynomial, surd_to_float
from .ratfun import series_expand
from .torus import (
    NotHyperbolicError,
    ToralAutomorphism,
    entropy,
    fix_count,
    from_quadratic,
    is_prime_hyperbolic,
    norm_and_geodesic_length,
    zeta,
    zeta_pole_radius,
    zeta_series,
)
from .zetaid import det_v, det_v_formula, main_identity_check

__all__ = ["RunConfig", "InputError", "parse_input", "run", "main", "SUBCOMMANDS"]

SUBCOMMANDS = ("expand", "convergents", "genfun", "levy", "torus", "zeta", "verify", "montecarlo", "report")

Input = Union[QuadraticSurd, CFExpansion, ToralAutomorphism]


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    """Validated options shared by all subcommands."""

    surds: list[str] = field(default_factory=list)
    cfs: list[str] = field(default_factory=list)
    matrices: list[str] = field(default_factory=list)
    order: int = 40
    precision: int = 128
    r: int = 1
    depth: int | None = None
    samples: int = 100
    seed: int = 0
    json: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise InputError("--order must be at least 1")
        if self.precision < 53:
            raise InputError("--precision must be at least 53 bits")
        forms = sum(bool(x) for x in (self.surds, self.cfs, self.matrices))
        if forms > 1:
            raise InputError("give exactly one of --surd, --cf, --matrix")

    @property
    def digits(self) -> int:
        return max(15, int(self.precision * math.log10(2)) - 2)

    def inputs(self) -> list[Input]:
        return [parse_surd(t) for t in self.surds] + [parse_cf(t) for t in self.cfs] + [parse_matrix(t) for t in self.matrices]


# -- report builders (module level so worker processes can pickle them) ----


def _num(x, digits: int) -> str:
    return mpmath.nstr(x, digits, strip_zeros=False)


def _as_cf(obj: Input) -> CFExpansion:
    if isinstance(obj, CFExpansion):
        return obj
    if isinstance(obj, QuadraticSurd):
        return expand(obj)
    raise InputError("this subcommand needs a quadratic irrational (--surd or --cf), not a matrix")


def _as_map(obj: Input) -> ToralAutomorphism:
    if isinstance(obj, ToralAutomorphism):
        return obj
    return from_quadratic(_as_cf(obj))


def _surd_json(x: QuadraticSurd) -> dict:
    return {"p": x.p_num, "q": x.q_den, "d": x.d_rad, "text": str(x)}


def expand_report(obj: Input, cfg: RunConfig) -> dict:
    cf = _as_cf(obj)
    x = obj if isinstance(obj, QuadraticSurd) else cf.to_surd()
    return {
        "cf": str(cf),
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "k": cf.k,
        "ell": cf.ell,
        "surd": _surd_json(x),
        "value": _num(surd_to_float(x, cfg.precision), cfg.digits),
        "minimal_polynomial": list(minimal_polynomial(x)),
    }


def convergents_report(obj: Input, cfg: RunConfig) -> dict:
    cf = _as_cf(obj)
    return {"cf": str(cf), "convergents": [[p, q] for p, q in convergents(cf, cfg.order + 1)]}


def genfun_report(obj: Input, cfg: RunConfig) -> dict:
    cf = _as_cf(obj)
    gv = generating_vector(cf, cfg.r)
    checks = [closed_form_series(cf, cfg.r, s, cfg.order) == direct_series(cf, cfg.r, s, cfg.order) for s in range(cfg.r + 1)]
    out = gv.to_json()
    for entry, f in zip(out["entries"], gv.entries):
        entry["text"] = str(f)
    out.update(
        cf=str(cf),
        series_match=all(checks),
        order=cfg.order,
        radius=_num(radius_of_convergence(cf, cfg.r, cfg.precision), cfg.digits),
    )
    return out


def levy_json(obj: Input, cfg: RunConfig) -> dict:
    cf = _as_cf(obj)
    rep = levy_report(cf, cfg.depth or 10_000, cfg.precision)
    return {"cf": str(cf), **rep.to_json(cfg.digits)}


def torus_report(obj: Input, cfg: RunConfig) -> dict:
    f = _as_map(obj)
    norm, length = norm_and_geodesic_length(f, cfg.precision)
    out = {
        "matrix": f.m.tolist(),
        "det": f.det,
        "trace": f.trace,
        "fix_counts": [fix_count(f, n) for n in range(1, cfg.order + 1)],
        "entropy": _num(entropy(f, cfg.precision), cfg.digits),
        "norm": _num(norm, cfg.digits),
        "geodesic_length": _num(length, cfg.digits),
    }
    if not isinstance(obj, ToralAutomorphism):
        cf = _as_cf(obj)
        prime = is_prime_hyperbolic(cf)
        out["cf"] = str(cf)
        out["prime"] = {"prime": prime.prime, "case": prime.case, "length": prime.length}
    return out


def zeta_report(obj: Input, cfg: RunConfig) -> dict:
    f = _as_map(obj)
    z = zeta(f)
    match = zeta_series(f, cfg.order) == series_expand(z, cfg.order)
    with mpmath.workprec(cfg.precision):
        decay = mpmath.exp(-entropy(f, cfg.precision + 16))
    return {
        "matrix": f.m.tolist(),
        "zeta": {**z.to_json(), "text": str(z)},
        "series_match": match,
        "order": cfg.order,
        "pole_radius": _num(zeta_pole_radius(f, cfg.precision), cfg.digits),
        "exp_minus_entropy": _num(decay, cfg.digits),
    }


def verify_report(obj: Input, cfg: RunConfig) -> dict:
    cf = _as_cf(obj)
    order = max(cfg.order, 10)
    rep = main_identity_check(cf, order)
    dv, dvf = det_v(cf), det_v_formula(cf)
    return {
        "cf": str(cf),
        **rep.to_json(),
        "det_v": dv.int_coeffs(),
        "det_v_formula_match": dv == dvf,
        "passed": rep.equal_exact and dv == dvf,
    }


def full_report(obj: Input, cfg: RunConfig) -> dict:
    out = {}
    for name, fn in _SINGLE.items():
        if name == "report":
            continue
        if isinstance(obj, ToralAutomorphism) and name not in ("torus", "zeta"):
            continue
        out[name] = fn(obj, cfg)
    out["passed"] = all(sec.get("passed", sec.get("series_match", True)) for sec in out.values() if isinstance(sec, dict))
    return out


_SINGLE: dict[str, Callable[[Input, RunConfig], dict]] = {
    "expand": expand_report,
    "convergents": convergents_report,
    "genfun": genfun_report,
    "levy": levy_json,
    "torus": torus_report,
    "zeta": zeta_report,
    "verify": verify_report,
    "report": full_report,
}


def _call(job: tuple[str, Input, RunConfig]) -> dict:
    name, obj, cfg = job
    return _SINGLE[name](obj, cfg)


def _fan_out(name: str, objs: Sequence[Input], cfg: RunConfig) -> list[dict]:
    """Per-case reports in input order; uses a process pool for batches."""
    jobs = [(name, o, cfg) for o in objs]
    workers = min(cfg.jobs, len(jobs))
    if workers <= 1:
        return [_call(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_call, jobs))


# -- text rendering -----------------------------------------------------------


def _render_text(name: str, reports: Iterable[dict], extra: dict | None = None) -> str:
    lines = []
    for rep in reports:
        lines.extend(_text_lines(name, rep))
        lines.append("")
    if extra:
        lines.extend(f"{k}: {v}" for k, v in extra.items())
    return "\n".join(lines).rstrip() + "\n"


def _text_lines(name: str, rep: dict) -> list[str]:
    if name == "report":
        out = []
        for sub, sec in rep.items():
            if isinstance(sec, dict):
                out.append(f"== {sub} ==")
                out.extend("  " + line for line in _text_lines(sub, sec))
        out.append(f"passed: {rep['passed']}")
        return out
    if name == "convergents":
        return [f"cf: {rep['cf']}"] + [f"  n={n}: {p}/{q}" for n, (p, q) in enumerate(rep["convergents"])]
    if name == "genfun":
        head = [f"cf: {rep['cf']}  r={rep['r']}"]
        body = [f"  F[{e['monomial']}] = {e['text']}" for e in rep["entries"]]
        tail = [f"series match to order {rep['order']}: {rep['series_match']}", f"radius of convergence: {rep['radius']}"]
        return head + body + tail
    if name == "zeta":
        return [
            f"matrix: {rep['matrix']}",
            f"zeta(z) = {rep['zeta']['text']}",
            f"series match to order {rep['order']}: {rep['series_match']}",
            f"smallest pole: {rep['pole_radius']}  exp(-h_top): {rep['exp_minus_entropy']}",
        ]
    if name == "verify":
        status = "PASS" if rep["passed"] else f"FAIL (witness {rep['witness']})"
        return [
            f"cf: {rep['cf']}  {status}",
            f"  lhs = {rep['lhs_text']}",
            f"  rhs = {rep['rhs_text']}",
            f"  det V = {rep['det_v']}  formula match: {rep['det_v_formula_match']}",
        ]
    out = []
    for key, val in rep.items():
        if isinstance(val, dict):
            val = ", ".join(f"{k}={v}" for k, v in val.items())
        elif isinstance(val, list):
            val = ", ".join(map(str, val))
        out.append(f"{key}: {val}")
    return out


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- entry points -------------------------------------------------------------


def run(subcommand: str, cfg: RunConfig) -> tuple[str, int]:
    """Run one subcommand; returns the rendered output and the exit code."""
    if subcommand == "montecarlo":
        depth = cfg.depth or 500
        mean, spread = levy_ae_montecarlo(cfg.samples, depth, cfg.seed)
        rep = {
            "samples": cfg.samples,
            "depth": depth,
            "seed": cfg.seed,
            "mean": repr(mean),
            "stddev": repr(spread),
            "target": repr(LEVY_AE),
            "relative_error": repr(abs(mean - LEVY_AE) / LEVY_AE),
        }
        return (_dump(rep) if cfg.json else _render_text("montecarlo", [rep])), 0
    if subcommand not in _SINGLE:
        raise InputError(f"unknown subcommand {subcommand!r}")
    objs = cfg.inputs()
    if not objs:
        raise InputError("an input is required (--surd, --cf or --matrix)")
    if len(objs) > 1 and subcommand not in ("verify", "report"):
        raise InputError(f"{subcommand} takes a single input")
    reports = _fan_out(subcommand, objs, cfg)
    code = 0
    if subcommand in ("verify", "report") and not all(r["passed"] for r in reports):
        code = 1
    if subcommand == "genfun" and not reports[0]["series_match"]:
        code = 1
    if cfg.json:
        body = {"cases": reports, "passed": code == 0} if subcommand in ("verify", "report") else reports[0]
        return _dump(body), code
    return _render_text(subcommand, reports), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfzeta", description="Continued fractions, Levy constants and zeta functions of quadratic irrationals.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surd", action="append", default=[], help="quadratic irrational, e.g. '(-1+sqrt(5))/2'")
    common.add_argument("--cf", action="append", default=[], help="continued fraction, e.g. '[1;(2)]' (repeatable for verify/report)")
    common.add_argument("--matrix", action="append", default=[], help="integer matrix, e.g. '[[2,1],[1,1]]'")
    common.add_argument("--order", type=int, default=40, help="series truncation order (default 40)")
    common.add_argument("--precision", type=int, default=128, help="working precision in bits (default 128)")
    common.add_argument("--r", type=int, default=1, help="monomial level for genfun (default 1)")
    common.add_argument("--depth", type=int, default=None, help="convergent depth (levy: 10000, montecarlo: 500)")
    common.add_argument("--samples", type=int, default=100, help="Monte Carlo sample count (default 100)")
    common.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (default 0)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for verify/report batches")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            surds=args.surd,
            cfs=args.cf,
            matrices=args.matrix,
            order=args.order,
            precision=args.precision,
            r=args.r,
            depth=args.depth,
            samples=args.samples,
            seed=args.seed,
            json=args.json,
            jobs=args.jobs,
        )
        text, code = run(args.command, cfg)
    except (InputError, ParseError, RationalInputError, NotHyperbolicError, SurdError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code

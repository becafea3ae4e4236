"""Command-line front end.

Subcommands evaluate transforms (`ft`), generalized derivatives (`ld`),
convolutions (`conv`), and the summability inversion (`invert`) on grids,
emitting deterministic CSV; `verify` drives the identity suites and emits
one JSON line per check.

Numbers are printed with repr(), the shortest decimal that round-trips
binary64, so identical configs produce byte-identical files.  Exit codes:
0 all rows converged / all checks passed, 1 otherwise, 2 on config errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import convolution as cv
from . import fourier as fr
from . import laplace_means as lm
from . import interchange as ic
from .core import (
    CONVERGED,
    ExtendedInterval,
    RealFn,
    corpus,
)
from .exprs import ExprError, expr_fn, piecewise_fn

__all__ = ["RunConfig", "parse_config", "serialize_config", "resolve_fn", "main"]


class ConfigError(ValueError):
    pass


def _abs_eval(x):
    return np.abs(np.asarray(x, dtype=float))


def _sign_eval(x):
    return np.sign(np.asarray(x, dtype=float))


def _extras() -> dict:
    return {
        "abs": RealFn(_abs_eval, tail_class="bounded-variation-tail", name="abs"),
        "sign": RealFn(_sign_eval, tail_class="bounded-variation-tail", name="sign"),
    }


def resolve_fn(spec: str) -> RealFn:
    """Corpus name, extra named function, piecewise spec, or bare expression."""
    table = corpus()
    if spec in table:
        return table[spec]
    extras = _extras()
    if spec in extras:
        return extras[spec]
    if spec.lstrip().startswith("piecewise"):
        try:
            return piecewise_fn(spec)
        except ExprError as e:
            raise ConfigError(f"bad piecewise spec: {e}") from e
    try:
        return expr_fn(spec)
    except ExprError as e:
        raise ConfigError(f"unknown function {spec!r}: {e}") from e


# key -> (python type, default); `out` empty means stdout
_SCHEMA = {
    "fn": (str, ""),
    "gn": (str, ""),
    "xs": (tuple, ()),
    "ys": (tuple, ()),
    "tol": (float, 1e-8),
    "out": (str, ""),
    "format": (str, "csv"),
    "zeta": (float, 0.0),
    "eta": (float, 0.0),
    "z": (float, 0.0),
    "delta": (float, 0.5),
    "suites": (str, "all"),
}


@dataclass(frozen=True)
class RunConfig:
    fn: str = ""
    gn: str = ""
    xs: tuple = ()
    ys: tuple = ()
    tol: float = 1e-8
    out: str = ""
    format: str = "csv"
    zeta: float = 0.0
    eta: float = 0.0
    z: float = 0.0
    delta: float = 0.5
    suites: str = "all"

    def __post_init__(self):
        if self.format not in ("csv", "jsonl"):
            raise ConfigError(f"format must be csv or jsonl, got {self.format!r}")
        if self.tol <= 0:
            raise ConfigError("tol must be positive")


def _parse_value(key: str, raw: str):
    typ, _ = _SCHEMA[key]
    raw = raw.strip()
    if typ is tuple:
        if not raw:
            return ()
        try:
            return tuple(float(v) for v in raw.split(","))
        except ValueError as e:
            raise ConfigError(f"bad number list for {key}: {raw!r}") from e
    if typ is float:
        try:
            return float(raw)
        except ValueError as e:
            raise ConfigError(f"bad number for {key}: {raw!r}") from e
    return raw


def parse_config(text: str) -> RunConfig:
    """Flat key = value lines; blank lines and # comments ignored."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    return RunConfig(**values)


def _fmt_value(v) -> str:
    if isinstance(v, tuple):
        return ",".join(repr(float(x)) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def serialize_config(cfg: RunConfig) -> str:
    """Canonical form: every key, sorted, one per line."""
    lines = [f"{k} = {_fmt_value(getattr(cfg, k))}" for k in sorted(_SCHEMA)]
    return "\n".join(lines) + "\n"


def _merge_flags(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    for key in _SCHEMA:
        flag = getattr(args, key, None)
        if flag is not None:
            updates[key] = _parse_value(key, flag) if isinstance(flag, str) else flag
    return replace(cfg, **updates) if updates else cfg


def _load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    return _merge_flags(cfg, args)


def _emit(text: str, out: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _r(v: float) -> str:
    return repr(float(v))


# ---------------------------------------------------------------------------
# subcommands


def cmd_ft(cfg: RunConfig) -> int:
    f = resolve_fn(cfg.fn)
    table = fr.spectrum(fr.TransformRequest(f, tuple(sorted(cfg.ys)), cfg.tol))
    lines = ["y,re,im,abs_err,status"]
    all_ok = True
    for y, v, e, st in table.rows:
        lines.append(f"{_r(y)},{_r(v.real)},{_r(v.imag)},{_r(e)},{st}")
        all_ok = all_ok and st == CONVERGED
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if all_ok else 1


def cmd_ld(cfg: RunConfig) -> int:
    f = resolve_fn(cfg.fn)
    spec = lm.MeanSpec(delta=cfg.delta, tol=max(cfg.tol, 1e-9))
    lines = ["x,ld0,ld1,converged,rate"]
    all_ok = True
    for x in cfg.xs:
        r0 = lm.ld0(f, x, spec)
        r1 = lm.ld1(f, x, spec)
        ok = r0.converged and r1.converged
        all_ok = all_ok and ok
        cell0 = _r(r0.value) if r0.converged else r0.status
        cell1 = _r(r1.value) if r1.converged else r1.status
        rate = _r(r1.rate_estimate) if r1.rate_estimate is not None else ""
        lines.append(f"{_r(x)},{cell0},{cell1},{str(ok).lower()},{rate}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if all_ok else 1


def cmd_conv(cfg: RunConfig) -> int:
    f = resolve_fn(cfg.fn)
    g = resolve_fn(cfg.gn)
    plan = cv.ConvPlan(tol=cfg.tol)
    lines = ["x,value,abs_err,status"]
    all_ok = True
    for x in cfg.xs:
        r = cv.convolve(f, g, x, plan)
        all_ok = all_ok and r.status == CONVERGED
        lines.append(f"{_r(x)},{_r(np.real(r.value))},{_r(r.abs_error_estimate)},{r.status}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if all_ok else 1


def cmd_invert(cfg: RunConfig) -> int:
    f = resolve_fn(cfg.fn)
    provider = fr.SpectrumProvider(f, cfg.tol)
    lines = ["x,value,residual_vs_f,condition_ok"]
    all_ok = True
    for x in cfg.xs:
        delta = lm.clip_delta(f, x, cfg.delta)
        cond = lm.inversion_condition_check(f, x, delta)
        cond_ok = cond.converged and cond.value <= 1e-3
        r = fr.invert(provider, x, tol=max(cfg.tol, 1e-8))
        resid = abs(r.value - float(f(x)))
        all_ok = all_ok and (not cond_ok or (r.converged and resid < 100 * max(cfg.tol, 1e-6)))
        lines.append(f"{_r(x)},{_r(np.real(r.value))},{_r(resid)},{str(cond_ok).lower()}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# verify


def _jnum(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    out = float(np.real(v))
    return out if math.isfinite(out) else None


def _record(identity, fixture, lhs, rhs, abs_residual, ok) -> dict:
    resid = float(abs_residual)
    return {
        "identity_name": identity,
        "fixture": fixture,
        "lhs": _jnum(lhs),
        "rhs": _jnum(rhs),
        "abs_residual": resid if math.isfinite(resid) else None,
        "pass": bool(ok),
    }


def _rec_from(report, fixture: str) -> dict:
    return _record(report.identity_name, fixture, report.lhs, report.rhs,
                   report.abs_residual, report.passed)


def _suite_fourier(records):
    C = corpus()
    for rep in fr.shift_modulation_check(C["gauss"], 1.0, 0.5, [0.0, 0.5], 1e-8):
        records.append(_rec_from(rep, "gauss"))
    for rep in fr.shift_modulation_check(C["box"], 0.5, 1.0, [0.0], 1e-8):
        records.append(_rec_from(rep, "box"))
    for rep in fr.derivative_rule_check(C["gauss"], [0.0, 1.0], 1e-8):
        records.append(_rec_from(rep, "gauss"))
    for rep in fr.derivative_rule_check(C["bump"], [2.0], 1e-8):
        records.append(_rec_from(rep, "bump"))
    for rep in fr.multiplication_rule_check(C["gauss"], [0.0, 0.5], 1e-3, 1e-8):
        records.append(_rec_from(rep, "gauss"))
    for rep in fr.multiplication_rule_check(C["bump"], [1.0], 1e-3, 1e-8):
        records.append(_rec_from(rep, "bump"))


def _suite_riemann_lebesgue(records):
    C = corpus()
    for name in ("box", "bump"):
        res = fr.riemann_lebesgue_check(C[name], [1, 2, 4, 8, 16, 32, 64], 1e-2)
        records.append(_record("riemann-lebesgue-decay", name,
                               res.value, 0.0, abs(res.value), res.converged))


def _suite_parseval(records):
    C = corpus()
    records.append(_rec_from(fr.parseval_exchange_check(C["gauss"], C["gauss"]),
                             "gauss/gauss"))
    records.append(_rec_from(fr.parseval_exchange_check(C["box"], C["gauss"]),
                             "box/gauss"))


def _suite_convolution(records):
    C = corpus()
    plan = cv.ConvPlan()
    for rep in cv.commutativity_check(C["box"], C["gauss"], [0.0], plan):
        records.append(_rec_from(rep, "box/gauss"))
    for rep in cv.commutativity_check(C["sinc_tail"], C["bump"], [1.0], plan):
        records.append(_rec_from(rep, "sinc_tail/bump"))
    for rep in cv.translation_check(C["box"], C["gauss"], 1.0, [1.0], plan):
        records.append(_rec_from(rep, "box/gauss,z=1"))
    for rep in cv.associativity_check(C["box"], C["gauss"], C["bump"], [0.0], plan):
        records.append(_rec_from(rep, "box/gauss/bump"))
    for rep in cv.support_check(C["box"], C["box"], [-1.2, 1.2], plan):
        records.append(_rec_from(rep, "box/box"))
    for x in (-0.5, 0.0, 0.5):
        got = cv.convolve(C["box"], C["box"], x, plan)
        want = max(0.0, 1.0 - abs(x))
        records.append(_record("convolution-triangle", f"box/box@x={x:g}",
                               got.value, want, abs(got.value - want),
                               abs(got.value - want) < 1e-6))


def _suite_norms(records, broken: bool = False):
    C = corpus()
    g = C["gauss"] if broken else C["gauss_prime"]
    try:
        r1, r2 = cv.norm_inequality_check(C["bump_prime"], g)
        records.append(_rec_from(r1, "bump_prime/gauss_prime"))
        records.append(_rec_from(r2, "bump_prime/gauss_prime"))
    except cv.HypothesisViolation as e:
        records.append(_record("conv-norm-hypothesis",
                               "bump_prime/gauss" if broken else "bump_prime/gauss_prime",
                               0.0, 0.0, math.inf, False)
                       | {"note": f"hypothesis-violation: {e}"})


def _suite_interchange(records):
    k_xy = ic.Kernel2D(lambda x, y: x * y, ExtendedInterval(-4, 4),
                       ExtendedInterval(-4, 4), name="product")
    rep = ic.fubini_residual(k_xy, (0, 1), (0, 1), 1e-9)
    records.append(_rec_from(rep, "product-kernel"))

    def sing_eval(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        d = x * x + y * y
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(d > 0, (x * x - y * y) / np.where(d > 0, d * d, 1.0), 0.0)

    k_sing = ic.Kernel2D(sing_eval, ExtendedInterval(-2, 2), ExtendedInterval(-2, 2),
                         singular_points=((0.0, 0.0),), name="classical")
    rep = ic.fubini_residual(k_sing, (0, 1), (0, 1), 1e-6)
    records.append(_record("interchange-failure-residual", "classical-kernel",
                           rep.abs_residual, math.pi / 2.0,
                           abs(rep.abs_residual - math.pi / 2.0),
                           abs(rep.abs_residual - math.pi / 2.0) < 1e-3))

    k_gc = ic.Kernel2D(
        lambda x, y: np.exp(-np.pi * x * x) * np.cos(y),
        ExtendedInterval(-6, 6), ExtendedInterval(-6, 6),
        dx_eval=lambda x, y: -2 * np.pi * x * np.exp(-np.pi * x * x)
        * np.cos(np.asarray(y, dtype=float)),
        name="gauss-cos")
    rep = ic.diff_under_integral(k_gc, 0.5, (0, 1))
    records.append(_rec_from(rep, "gauss-cos-kernel"))


def _suite_ftc(records):
    C = corpus()
    spec = lm.MeanSpec(tol=1e-5)
    for rep in lm.ftc_check(C["gauss"], -3.0, [0.0, 0.5], spec):
        records.append(_rec_from(rep, "gauss"))
    reps = lm.ftc_check(C["box"], -2.0, [0.0, 0.5], spec)
    records.append(_rec_from(reps[0], "box"))
    jump = reps[1]
    records.append(_record("ftc-jump-exceptional", "box@0.5",
                           jump.lhs, jump.rhs, jump.abs_residual,
                           jump.note == "sides-disagree"))


def _suite_inversion(records):
    C = corpus()
    for name, xs in (("gauss", [0.0, 0.5]), ("box", [0.0]), ("bump", [0.3])):
        for rep in fr.inversion_roundtrip(C[name], xs):
            records.append(_rec_from(rep, name))
    zero_prov = lambda t: np.zeros_like(np.atleast_1d(np.asarray(t, dtype=float)),
                                        dtype=complex)
    for x in (-1.0, 0.0, 2.0):
        res = fr.invert(zero_prov, x, tol=1e-8)
        records.append(_record("inversion-uniqueness", f"zero-spectrum@x={x:g}",
                               res.value, 0.0, abs(res.value),
                               abs(res.value) < 1e-8))


_SUITES = {
    "fourier": _suite_fourier,
    "riemann-lebesgue": _suite_riemann_lebesgue,
    "parseval": _suite_parseval,
    "convolution": _suite_convolution,
    "norms": _suite_norms,
    "interchange": _suite_interchange,
    "ftc": _suite_ftc,
    "inversion": _suite_inversion,
}


def cmd_verify(cfg: RunConfig) -> int:
    wanted = cfg.suites.strip()
    records: list = []
    if wanted in ("all", ""):
        names = list(_SUITES) if wanted == "all" else []
    else:
        names = [s.strip() for s in wanted.split(",") if s.strip()]
    for name in names:
        if name == "broken-hypothesis":
            _suite_norms(records, broken=True)
            continue
        if name not in _SUITES:
            raise ConfigError(f"unknown suite {name!r}")
        _SUITES[name](records)
    text = "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in records)
    _emit(text, cfg.out)
    return 0 if all(rec["pass"] for rec in records) else 1


# ---------------------------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--fn", type=str, default=None)
    sp.add_argument("--gn", type=str, default=None)
    sp.add_argument("--xs", type=str, default=None)
    sp.add_argument("--ys", type=str, default=None)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--zeta", type=float, default=None)
    sp.add_argument("--eta", type=float, default=None)
    sp.add_argument("--z", type=float, default=None)
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--suites", type=str, default=None)
    sp.add_argument("--config", type=str, default=None)
    sp.add_argument("--out", type=str, default=None)
    sp.add_argument("--format", type=str, default=None, choices=("csv", "jsonl"))


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lapint",
        description="Transforms, generalized derivatives, convolutions and "
                    "identity verification on a numeric function corpus.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("ft", "Fourier transform on a frequency grid"),
        ("ld", "order-0/1 exponential-mean derivatives on a point grid"),
        ("conv", "convolution values on a point grid"),
        ("invert", "summability inversion with condition checks"),
        ("verify", "run identity suites, emit JSON lines"),
    ):
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp)
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        handler = {
            "ft": cmd_ft,
            "ld": cmd_ld,
            "conv": cmd_conv,
            "invert": cmd_invert,
            "verify": cmd_verify,
        }[args.command]
        return handler(cfg)
    except (ConfigError, ExprError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

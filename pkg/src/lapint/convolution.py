"""Convolution over the generalized-integral machinery and its identity and
norm-inequality suites.

`convolve` evaluates  (f*g)(x) = int f(x-y) g(y) dy  directly, except when
f decays only through oscillation and g is a well-behaved L1/BV function:
then the pointwise values come from the integration-by-parts form
int F(x-y) g'(y) dy  with F the cumulative integral of f, which trades the
conditionally convergent integrand for an absolutely convergent one.

Nested convolutions (associativity) are materialized on a refinement of
the evaluation grid and interpolated cubically; the interpolation error is
folded into the reported tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .core import (
    CONVERGED,
    ExtendedInterval,
    HYPOTHESIS_VIOLATION,
    IntegralResult,
    RealFn,
    ResidualReport,
    translate,
)
from .quadrature import (
    CumulativeFn,
    TruncationPolicy,
    _worst,
    alexiewicz_norm,
    default_policy,
    integrate_bounded,
    integrate_improper,
)

__all__ = [
    "ConvPlan",
    "HypothesisViolation",
    "convolve",
    "commutativity_check",
    "associativity_check",
    "translation_check",
    "support_check",
    "norm_inequality_check",
]

_L1_CLASSES = ("absolutely-integrable", "compact-support")


class HypothesisViolation(ValueError):
    """Fixture metadata contradicts the hypotheses of the identity."""


@dataclass(frozen=True)
class ConvPlan:
    policy: TruncationPolicy = TruncationPolicy()
    tol: float = 1e-8
    eval_grid: tuple = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)

    def __post_init__(self):
        if len(self.eval_grid) == 0:
            raise ValueError("eval_grid must be nonempty")


def _halfwidth(f: RealFn, fallback: float = 12.0) -> float:
    iv = f.effective_interval(fallback)
    return max(abs(iv.lo), abs(iv.hi))


def _integrand_fn(f: RealFn, g: RealFn, x: float) -> RealFn:
    """y -> f(x-y) g(y) with combined metadata in the y variable."""
    support = g.support
    if f.support is not None:
        mapped = ExtendedInterval(x - f.support.hi, x - f.support.lo)
        support = mapped if support is None else support.intersect(mapped)
        if support is None:
            support = ExtendedInterval(-1e-300, 1e-300)  # empty overlap
    sing = sorted(set(list(g.singular_points) +
                      [x - s for s in f.singular_points]))
    if f.tail_class in _L1_CLASSES or g.tail_class in _L1_CLASSES:
        tail = "absolutely-integrable"
    else:
        tail = "oscillatory-decaying"
    return RealFn(
        lambda y, _f=f, _g=g, _x=x: np.asarray(_f(_x - np.asarray(y, dtype=float)))
        * np.asarray(_g(y)),
        singular_points=tuple(sing),
        support=support,
        tail_class=tail,
        name=f"conv-integrand({f.name},{g.name})",
    )


def _derivative_handle(g: RealFn, h: float = 1e-6) -> RealFn:
    if g.derivative is not None:
        return g.derivative
    return RealFn(
        lambda y, _g=g, _h=h: (np.asarray(_g(np.asarray(y, dtype=float) + _h))
                               - np.asarray(_g(np.asarray(y, dtype=float) - _h)))
        / (2.0 * _h),
        support=g.support,
        tail_class=g.tail_class,
        name=f"fd({g.name})",
    )


def _cumulative_from_minus_inf(f: RealFn, lo: float, hi: float,
                               tol: float) -> CumulativeFn:
    left = integrate_improper(f, ExtendedInterval(-math.inf, lo), tol)
    return CumulativeFn(f, lo, lo, hi, tol=tol,
                        offset=float(np.real(left.value)))


def convolve(f: RealFn, g: RealFn, x: float, plan: ConvPlan = ConvPlan(),
             route: str = "auto") -> IntegralResult:
    """(f*g)(x).  `route` picks the evaluation path: 'direct' integrates the
    defining integrand, 'parts' the integration-by-parts form; 'auto' uses
    parts for oscillatory-tailed f against L1/BV g."""
    if route not in ("auto", "direct", "parts"):
        raise ValueError(f"unknown route {route!r}")
    if route == "auto":
        route = ("parts" if f.tail_class == "oscillatory-decaying"
                 and g.tail_class in _L1_CLASSES else "direct")

    if route == "parts":
        wg = _halfwidth(g)
        lo, hi = x - wg - _halfwidth(f, 40.0) - 1.0, x + wg + 1.0
        F = _cumulative_from_minus_inf(f, lo, hi, plan.tol * 0.1)
        gd = _derivative_handle(g)
        integrand = RealFn(
            lambda y, _F=F, _gd=gd, _x=x: np.asarray(
                _F(_x - np.asarray(y, dtype=float))) * np.asarray(_gd(y)),
            support=g.support,
            tail_class="absolutely-integrable",
            name="conv-parts-integrand",
        )
        win = g.effective_interval(12.0)
        if win.bounded:
            return integrate_bounded(integrand, win.lo, win.hi, plan.tol)
        return integrate_improper(integrand, ExtendedInterval(-math.inf, math.inf),
                                  plan.tol, plan.policy)

    h = _integrand_fn(f, g, x)
    if h.support is not None and h.support.bounded:
        if h.support.hi - h.support.lo < 4e-300:
            return IntegralResult(0.0, 0.0, CONVERGED, 0)
        return integrate_bounded(h, h.support.lo, h.support.hi, plan.tol)
    return integrate_improper(h, ExtendedInterval(-math.inf, math.inf),
                              plan.tol, plan.policy)


def commutativity_check(f: RealFn, g: RealFn, xs: Sequence[float],
                        plan: ConvPlan = ConvPlan()) -> list:
    """|f*g - g*f| at each grid point; both orders evaluated independently."""
    out = []
    for x in xs:
        a = convolve(f, g, x, plan)
        b = convolve(g, f, x, plan)
        out.append(ResidualReport.build(
            "convolution-commutativity", a.value, b.value,
            tol=max(2.0 * plan.tol,
                    2.0 * (a.abs_error_estimate + b.abs_error_estimate))))
    return out


def _materialize(f: RealFn, g: RealFn, lo: float, hi: float, step: float,
                 plan: ConvPlan):
    """Cubic interpolant of (f*g) sampled on [lo, hi] with spacing <= step."""
    n = max(int(math.ceil((hi - lo) / step)), 8)
    xs = np.linspace(lo, hi, n + 1)
    vals = np.asarray([float(np.real(convolve(f, g, float(t), plan).value))
                       for t in xs])
    return CubicSpline(xs, vals)


def associativity_check(f: RealFn, g: RealFn, h: RealFn, xs: Sequence[float],
                        plan: ConvPlan = ConvPlan()) -> list:
    """|((f*g)*h) - (f*(g*h))| at grid points.

    Hypotheses: g twice differentiable with integrable second derivative,
    h absolutely integrable; violations raise HypothesisViolation.
    """
    if g.smooth_c2 is False:
        raise HypothesisViolation("middle function lacks an integrable second derivative")
    if h.tail_class not in _L1_CLASSES:
        raise HypothesisViolation("right function is not absolutely integrable")
    xs = list(xs)
    grid = sorted(set(list(plan.eval_grid) + xs))
    step = min(np.diff(grid).min() if len(grid) > 1 else 0.25, 0.25) / 4.0
    reach_h = _halfwidth(h)
    reach_f = _halfwidth(f)
    lo, hi = min(xs), max(xs)

    fg_lo, fg_hi = lo - reach_h - 0.5, hi + reach_h + 0.5
    gh_lo, gh_hi = lo - reach_f - 0.5, hi + reach_f + 0.5
    fg = _materialize(f, g, fg_lo, fg_hi, step, plan)
    gh = _materialize(g, h, gh_lo, gh_hi, step, plan)

    fg_fn = RealFn(lambda t: fg(np.asarray(t, dtype=float)),
                   support=ExtendedInterval(fg_lo, fg_hi),
                   tail_class="absolutely-integrable", name="fg-spline")
    gh_fn = RealFn(lambda t: gh(np.asarray(t, dtype=float)),
                   support=ExtendedInterval(gh_lo, gh_hi),
                   tail_class="absolutely-integrable", name="gh-spline")

    out = []
    for x in xs:
        lhs = convolve(fg_fn, h, x, plan)        # (f*g)*h
        rhs = convolve(f, gh_fn, x, plan)        # f*(g*h)
        out.append(ResidualReport.build(
            "convolution-associativity", lhs.value, rhs.value,
            tol=max(5.0 * plan.tol, 1e-5)))
    return out


def translation_check(f: RealFn, g: RealFn, z: float, xs: Sequence[float],
                      plan: ConvPlan = ConvPlan()) -> list:
    """tau_z(f*g) vs (tau_z f)*g vs f*(tau_z g) at grid points; two residual
    reports per point."""
    out = []
    fz = translate(f, z)
    gz = translate(g, z)
    for x in xs:
        base = convolve(f, g, x - z, plan)       # tau_z(f*g)(x)
        left = convolve(fz, g, x, plan)
        right = convolve(f, gz, x, plan)
        tol = max(2.0 * plan.tol,
                  2.0 * (base.abs_error_estimate + left.abs_error_estimate))
        out.append(ResidualReport.build("convolution-translation-left",
                                        base.value, left.value, tol=tol))
        out.append(ResidualReport.build("convolution-translation-right",
                                        base.value, right.value, tol=tol))
    return out


def support_check(f: RealFn, g: RealFn, probes: Sequence[float],
                  plan: ConvPlan = ConvPlan(), tol: float = 1e-9) -> list:
    """(f*g) vanishes outside the closed sumset of the two supports."""
    if f.support is None or g.support is None or \
            not (f.support.bounded and g.support.bounded):
        raise HypothesisViolation("support confinement needs bounded declared supports")
    lo = f.support.lo + g.support.lo
    hi = f.support.hi + g.support.hi
    out = []
    for p in probes:
        if lo <= p <= hi:
            raise ValueError(f"probe {p} inside the sumset [{lo}, {hi}]")
        v = convolve(f, g, p, plan)
        out.append(ResidualReport.build("convolution-support", v.value, 0.0,
                                        tol=tol))
    return out


def norm_inequality_check(f: RealFn, g: RealFn, plan: ConvPlan = ConvPlan(),
                          grid_halfwidth: float = 12.0, grid_n: int = 193):
    """Both norm inequalities for f*G with G the cumulative integral of g:
    the L1 bound ||f*G||_1 <= ||F||_1 ||g||_1 and the sup-of-partial-
    integrals bound ||f*G||_A <= ||f||_A ||G||_1.

    Hypotheses (g in L1 and BV with G vanishing at +inf, F and G
    integrable) are probed numerically first; failures raise
    HypothesisViolation.
    """
    if g.tail_class not in _L1_CLASSES:
        raise HypothesisViolation("g must be absolutely integrable")
    W = grid_halfwidth
    Gcum = _cumulative_from_minus_inf(g, -W - 4.0, W + 4.0, plan.tol * 0.1)
    g_inf = abs(Gcum(W + 4.0))
    if g_inf > 10.0 * plan.tol:
        raise HypothesisViolation(
            f"G(+inf) = {Gcum(W + 4.0):.3e} does not vanish")
    G = RealFn(Gcum, support=None, tail_class="absolutely-integrable", name="G")

    Fcum = _cumulative_from_minus_inf(f, -W - 4.0, W + 4.0, plan.tol * 0.1)
    F = RealFn(Fcum, tail_class="absolutely-integrable", name="F")

    xs = np.linspace(-W, W, grid_n)
    conv_vals = np.asarray([float(np.real(convolve(f, G, float(t), plan).value))
                            for t in xs])
    spline = CubicSpline(xs, conv_vals)
    conv_fn = RealFn(lambda t: spline(np.asarray(t, dtype=float)),
                     tail_class="absolutely-integrable", name="f*G")

    abs_of = lambda fn: RealFn(
        lambda t, _fn=fn: np.abs(np.asarray(_fn(t))), tail_class="absolutely-integrable")
    l1 = lambda fn: float(np.real(
        integrate_bounded(abs_of(fn), -W, W, plan.tol).value))

    lhs1 = l1(conv_fn)
    rhs1 = l1(F) * l1(g)
    lhs2 = alexiewicz_norm(conv_fn, plan.policy, xs.tolist(), tol=plan.tol)
    rhs2 = alexiewicz_norm(f, plan.policy, xs.tolist(), tol=plan.tol) * l1(G)
    slack = 1e-6 * (1.0 + abs(rhs1) + abs(rhs2))
    r1 = ResidualReport.build("conv-norm-l1", lhs1, rhs1,
                              passed=lhs1 <= rhs1 + slack)
    r2 = ResidualReport.build("conv-norm-alexiewicz", lhs2, rhs2,
                              passed=lhs2 <= rhs2 + slack)
    return r1, r2

"""Iterated-integral interchange harness.

Whether differentiation under the integral sign is legitimate for
F(x) = int k(x, y) dy reduces to whether the two iterated integrals of the
x-partial agree on every sub-rectangle; this module computes both orders,
their residual, and the derivative-under-the-integral residual itself.

Inner integrals are driven to a tolerance ten times tighter than the
requested one so the reported residual reflects interchange failure, not
quadrature noise.  Kernels with a singular point on the rectangle boundary
are integrated with a collar ladder in the outer variable, matching how
the classical counterexample values are defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    CONVERGED,
    ExtendedInterval,
    IntegralResult,
    RealFn,
    ResidualReport,
)
from .laplace_means import MeanSpec, ld1
from .quadrature import _adaptive, _collar_integral, _initial_mesh, _worst, integrate_bounded

__all__ = ["Kernel2D", "iterated_integrals", "fubini_residual", "diff_under_integral"]


@dataclass(frozen=True)
class Kernel2D:
    """Two-variable kernel with optional x-partial and declared singular points.

    `eval(x, y)` must broadcast over numpy arrays.  `dx_eval`, when present,
    is validated against central differences in the test suite.
    """

    eval: Callable
    x_domain: ExtendedInterval = ExtendedInterval(-math.inf, math.inf)
    y_domain: ExtendedInterval = ExtendedInterval(-math.inf, math.inf)
    dx_eval: Optional[Callable] = None
    singular_points: tuple = ()  # (x, y) pairs
    name: str = ""

    def __call__(self, x, y):
        return np.asarray(self.eval(np.asarray(x, dtype=float),
                                    np.asarray(y, dtype=float)), dtype=float)

    def transpose(self) -> "Kernel2D":
        return Kernel2D(
            lambda x, y, _e=self.eval: _e(y, x),
            self.y_domain,
            self.x_domain,
            None,
            tuple((b, a) for a, b in self.singular_points),
            f"{self.name}^T" if self.name else "",
        )


def _inner_cut_points(k: Kernel2D, outer: float, lo: float, hi: float,
                      outer_is_x: bool) -> list:
    """Split points for one inner integral, concentrated where the kernel's
    declared singular points project near the current outer value."""
    pts = []
    for xs, ys in k.singular_points:
        o, i = (xs, ys) if outer_is_x else (ys, xs)
        d = abs(outer - o)
        for c in (i, i - d, i + d, i - 2 * d, i + 2 * d):
            if lo < c < hi:
                pts.append(c)
    return pts


def _inner_integral_fn(k: Kernel2D, lo: float, hi: float, tol: float,
                       outer_is_x: bool) -> Callable:
    """Vectorized function of the outer variable: inner integral at each value."""

    def fn(outer_vals):
        outer_vals = np.atleast_1d(np.asarray(outer_vals, dtype=float))
        out = np.empty(len(outer_vals))
        for i, o in enumerate(outer_vals):
            if outer_is_x:
                integrand = lambda yy, _o=o: k.eval(_o, np.asarray(yy, dtype=float))
            else:
                integrand = lambda xx, _o=o: k.eval(np.asarray(xx, dtype=float), _o)
            segs = _initial_mesh(lo, hi, _inner_cut_points(k, o, lo, hi, outer_is_x))
            v, _, _, _ = _adaptive(integrand, segs, tol, 60_000)
            out[i] = v
        return out

    return fn


def _outer_singulars(k: Kernel2D, outer_is_x: bool, olo: float, ohi: float) -> list:
    coords = [xs if outer_is_x else ys for xs, ys in k.singular_points]
    return [c for c in coords if olo <= c <= ohi]


def _iterated(k: Kernel2D, outer_rect, inner_rect, tol: float,
              outer_is_x: bool) -> IntegralResult:
    olo, ohi = outer_rect
    ilo, ihi = inner_rect
    inner = _inner_integral_fn(k, ilo, ihi, tol / 10.0, outer_is_x)
    sing = _outer_singulars(k, outer_is_x, olo, ohi)
    evals = 0
    if any(abs(s - olo) < 1e-12 or abs(s - ohi) < 1e-12 for s in sing):
        # singular outer endpoint: collar ladder in the outer variable
        at_lo = any(abs(s - olo) < 1e-12 for s in sing)
        v, e, n, st = _collar_integral(inner, olo if at_lo else ohi,
                                       ohi if at_lo else olo, tol, 40_000)
        if not at_lo:
            v = -v
        return IntegralResult(v, e, st, n)
    segs = _initial_mesh(olo, ohi, [s for s in sing if olo < s < ohi])
    v, e, n, st = _adaptive(inner, segs, tol, 40_000)
    return IntegralResult(v, e, st, n)


def iterated_integrals(k: Kernel2D, xrect: Sequence[float], yrect: Sequence[float],
                       tol: float = 1e-8):
    """Both iterated integrals over [s,t] x [a,b].

    Returns (I1, I2): I1 integrates over x first (outer over y), I2 over y
    first (outer over x).
    """
    i1 = _iterated(k, tuple(yrect), tuple(xrect), tol, outer_is_x=False)
    i2 = _iterated(k, tuple(xrect), tuple(yrect), tol, outer_is_x=True)
    return i1, i2


def fubini_residual(k: Kernel2D, xrect: Sequence[float], yrect: Sequence[float],
                    tol: float = 1e-8) -> ResidualReport:
    """|I1 - I2| on one rectangle; a near-zero residual is the certificate
    that differentiation under the integral sign applies there."""
    i1, i2 = iterated_integrals(k, xrect, yrect, tol)
    ok = i1.status == CONVERGED and i2.status == CONVERGED
    note = "" if ok else _worst(i1.status, i2.status)
    return ResidualReport.build(
        "iterated-interchange", i1.value, i2.value,
        tol=max(tol * 10.0, 2.0 * (i1.abs_error_estimate + i2.abs_error_estimate)),
        note=note)


def diff_under_integral(k: Kernel2D, x: float, yrect: Sequence[float],
                        spec: MeanSpec = MeanSpec(), tol: float = 1e-6) -> ResidualReport:
    """Residual between the generalized derivative of F(x) = int k(x,y) dy
    and the integral of the declared x-partial at x."""
    if k.dx_eval is None:
        raise ValueError("kernel needs dx_eval for this check")
    a, b = yrect
    profile = _inner_integral_fn(k, a, b, tol / 10.0, outer_is_x=True)
    F = RealFn(profile, domain=k.x_domain, name=f"profile({k.name})")
    lhs_res = ld1(F, x, spec)
    integrand = lambda yy: np.asarray(k.dx_eval(x, np.asarray(yy, dtype=float)),
                                      dtype=float)
    rhs, rhs_err, _, rhs_st = _adaptive(integrand, [(a, b)], tol / 10.0, 60_000)
    note = "" if (lhs_res.status == CONVERGED and rhs_st == CONVERGED) \
        else f"ld1:{lhs_res.status} rhs:{rhs_st}"
    return ResidualReport.build(
        "derivative-under-integral", lhs_res.value, rhs,
        tol=max(tol, 4.0 * (lhs_res.abs_error_estimate + rhs_err)), note=note)

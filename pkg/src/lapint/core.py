"""Domain types and the built-in test-function corpus.

Everything here is immutable after construction: function handles are pure
(point evaluation only, no hidden state), so any module may re-evaluate them
freely and results are deterministic.  All corpus evaluators are numpy
vectorized: they accept a float or an ndarray and return the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ExtendedInterval",
    "RealFn",
    "IntegralResult",
    "LimitResult",
    "LadderConfig",
    "ResidualReport",
    "REAL_LINE",
    "CONVERGED",
    "DIVERGED",
    "MAX_WORK_EXCEEDED",
    "OSCILLATION_UNRESOLVED",
    "SIDES_DISAGREE",
    "NO_CONVERGENCE",
    "HYPOTHESIS_VIOLATION",
    "corpus",
    "translate",
    "scale",
    "constant_fn",
    "from_callable",
]

# Integration / limit statuses.  Plain strings so they serialize to CSV and
# JSON without ceremony.
CONVERGED = "converged"
DIVERGED = "diverged"
MAX_WORK_EXCEEDED = "max-work-exceeded"
OSCILLATION_UNRESOLVED = "oscillation-unresolved"
SIDES_DISAGREE = "sides-disagree"
NO_CONVERGENCE = "no-convergence"
HYPOTHESIS_VIOLATION = "hypothesis-violation"

TAIL_CLASSES = (
    "absolutely-integrable",
    "oscillatory-decaying",
    "bounded-variation-tail",
    "compact-support",
)


@dataclass(frozen=True)
class ExtendedInterval:
    """An interval on the extended real line; either endpoint may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def lo_finite(self) -> bool:
        return math.isfinite(self.lo)

    @property
    def hi_finite(self) -> bool:
        return math.isfinite(self.hi)

    @property
    def bounded(self) -> bool:
        return self.lo_finite and self.hi_finite

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "ExtendedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "ExtendedInterval") -> Optional["ExtendedInterval"]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo < hi:
            return ExtendedInterval(lo, hi)
        return None


REAL_LINE = ExtendedInterval(-math.inf, math.inf)


@dataclass(frozen=True)
class RealFn:
    """A real-valued function handle with the metadata the integrators need.

    `eval` must return finite values at every non-singular point of `domain`
    and must be numpy-vectorized.  If `support` is declared, `__call__`
    forces exact zeros outside it, so the support invariant holds by
    construction.  `singular_points` are declared, never discovered;
    quadrature splits at them.  Optional companions:

    * `known_transform`: closed-form Fourier transform, oracle use only.
    * `derivative`: a handle for f', used by identities that need one.
    * `smooth_c2`: True when f is twice differentiable with integrable
      second derivative (a convolution-associativity hypothesis); False
      when that is known to fail; None when unknown.
    * `parity`: 'even' / 'odd' / None, drives spectrum symmetry checks.
    """

    eval: Callable
    domain: ExtendedInterval = REAL_LINE
    singular_points: tuple = ()
    support: Optional[ExtendedInterval] = None
    tail_class: str = "absolutely-integrable"
    known_transform: Optional[Callable] = None
    derivative: Optional["RealFn"] = None
    smooth_c2: Optional[bool] = None
    parity: Optional[str] = None
    name: str = ""

    def __post_init__(self):
        if self.tail_class is not None and self.tail_class not in TAIL_CLASSES:
            raise ValueError(f"unknown tail_class {self.tail_class!r}")
        if tuple(self.singular_points) != tuple(sorted(self.singular_points)):
            raise ValueError("singular_points must be sorted")
        for s in self.singular_points:
            if not self.domain.contains(s):
                raise ValueError(f"singular point {s} outside domain")

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.asarray(self.eval(x), dtype=float)
        if self.support is not None:
            inside = (x >= self.support.lo) & (x <= self.support.hi)
            y = np.where(inside, y, 0.0)
        if scalar:
            return float(y[0])
        return y

    def effective_interval(self, fallback_halfwidth: float = 50.0) -> ExtendedInterval:
        """Interval outside which the function is exactly zero, when known."""
        if self.support is not None:
            return self.support
        return self.domain if self.domain.bounded else ExtendedInterval(
            max(self.domain.lo, -fallback_halfwidth),
            min(self.domain.hi, fallback_halfwidth),
        )


@dataclass(frozen=True)
class IntegralResult:
    """Value, error estimate, status and work count for one integral."""

    value: object  # float or complex
    abs_error_estimate: float
    status: str
    evaluations: int
    hypothesis: str = ""

    @property
    def ok(self) -> bool:
        return self.status == CONVERGED


@dataclass(frozen=True)
class LimitResult:
    """Extrapolated limit of a parameterized family of values.

    `ladder` holds (parameter, best estimate after extrapolation at that
    rung); `raw_values` keeps the unextrapolated samples so convergence
    rates stay observable.  `side_values` carries the two one-sided limits
    for the mean-based derivatives when they disagree.
    """

    value: object
    ladder: tuple
    converged: bool
    rate_estimate: Optional[float] = None
    status: str = CONVERGED
    abs_error_estimate: float = math.inf
    raw_values: tuple = ()
    side_values: Optional[tuple] = None


@dataclass(frozen=True)
class LadderConfig:
    """Geometric parameter ladder: start, ratio > 1, count, direction."""

    start: float
    ratio: float
    count: int
    direction: str = "increasing"  # s -> inf; "decreasing" for lambda -> 0+

    def __post_init__(self):
        if self.start <= 0:
            raise ValueError("start must be positive")
        if self.ratio <= 1:
            raise ValueError("ratio must exceed 1")
        if self.count < 1:
            raise ValueError("count must be positive")
        if self.direction not in ("increasing", "decreasing"):
            raise ValueError(f"bad direction {self.direction!r}")

    def values(self) -> np.ndarray:
        k = np.arange(self.count, dtype=float)
        if self.direction == "increasing":
            return self.start * self.ratio**k
        return self.start * self.ratio**-k


@dataclass(frozen=True)
class ResidualReport:
    """Left side vs right side of one identity, with residuals."""

    lhs: object
    rhs: object
    abs_residual: float
    rel_residual: float
    identity_name: str
    passed: bool = True
    note: str = ""

    @staticmethod
    def build(identity_name: str, lhs, rhs, tol: Optional[float] = None,
              passed: Optional[bool] = None, note: str = "") -> "ResidualReport":
        abs_res = abs(lhs - rhs)
        rel_res = abs_res / max(abs(lhs), abs(rhs), 1.0)
        if passed is None:
            passed = True if tol is None else abs_res <= tol
        return ResidualReport(lhs, rhs, abs_res, rel_res, identity_name, passed, note)


# ---------------------------------------------------------------------------
# corpus


def _gauss_eval(x):
    return np.exp(-np.pi * np.square(x))


def _gauss_transform(y):
    return np.exp(-np.pi * np.square(y)) + 0.0j


def _gauss_deriv_eval(x):
    return -2.0 * np.pi * x * np.exp(-np.pi * np.square(x))


def _box_eval(x):
    return np.where((x >= -0.5) & (x <= 0.5), 1.0, 0.0)


def _box_transform(y):
    y = np.asarray(y, dtype=float)
    py = np.where(y == 0.0, 1.0, np.pi * y)
    out = np.where(y == 0.0, 1.0, np.sin(np.pi * y) / py)
    return out + 0.0j


def _sinc_eval(x):
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    nz = x != 0
    out[nz] = np.sin(x[nz]) / x[nz]
    return out


def _sinc_deriv_eval(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    nz = x != 0
    xv = x[nz]
    out[nz] = np.cos(xv) / xv - np.sin(xv) / xv**2
    return out


def _fresnel_eval(x):
    return np.sin(np.square(x))


def _fresnel_deriv_eval(x):
    return 2.0 * x * np.cos(np.square(x))


def _spike_eval(x):
    # below ~1e-150 the phase 1/x^2 overflows; the true values there are
    # irrelevant at double precision (any panel is narrower than 1e-150)
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = (x > 1e-150) & (x <= 1)
    xv = x[inside]
    inv2 = 1.0 / (xv * xv)
    out[inside] = 2.0 * xv * np.sin(inv2) - (2.0 / xv) * np.cos(inv2)
    return out


def _bump_eval(x):
    # exp(1 - 1/(1 - x^2)) on (-1, 1): peak value 1 at 0, smooth, compact.
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xv = x[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - np.square(xv)))
    return out


def _bump_deriv_eval(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xv = x[inside]
    u = 1.0 - np.square(xv)
    out[inside] = np.exp(1.0 - 1.0 / u) * (-2.0 * xv / np.square(u))
    return out


def _expdecay_eval(x):
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, np.exp(-np.clip(x, 0.0, None)), 0.0)


def _expdecay_transform(y):
    # integral_0^inf e^(-x) e^(-2 pi i y x) dx = 1 / (1 + 2 pi i y)
    return 1.0 / (1.0 + 2.0j * np.pi * np.asarray(y, dtype=float))


def corpus() -> dict:
    """Named test functions with full metadata, keyed by name."""
    gauss_d = RealFn(
        _gauss_deriv_eval,
        tail_class="absolutely-integrable",
        parity="odd",
        smooth_c2=True,
        name="gauss_prime",
    )
    gauss = RealFn(
        _gauss_eval,
        tail_class="absolutely-integrable",
        known_transform=_gauss_transform,
        derivative=gauss_d,
        smooth_c2=True,
        parity="even",
        name="gauss",
    )
    box = RealFn(
        _box_eval,
        support=ExtendedInterval(-0.5, 0.5),
        tail_class="compact-support",
        known_transform=_box_transform,
        smooth_c2=False,
        parity="even",
        name="box",
    )
    sinc_d = RealFn(_sinc_deriv_eval, tail_class="oscillatory-decaying", name="sinc_tail_prime")
    sinc = RealFn(
        _sinc_eval,
        tail_class="oscillatory-decaying",
        derivative=sinc_d,
        smooth_c2=None,
        parity="even",
        name="sinc_tail",
    )
    fresnel_d = RealFn(_fresnel_deriv_eval, tail_class="oscillatory-decaying", name="fresnel_prime")
    fresnel = RealFn(
        _fresnel_eval,
        tail_class="oscillatory-decaying",
        derivative=fresnel_d,
        parity="even",
        name="fresnel",
    )
    spike = RealFn(
        _spike_eval,
        singular_points=(0.0,),
        support=ExtendedInterval(0.0, 1.0),
        tail_class="compact-support",
        name="hk_spike",
    )
    bump_d = RealFn(
        _bump_deriv_eval,
        support=ExtendedInterval(-1.0, 1.0),
        tail_class="compact-support",
        parity="odd",
        name="bump_prime",
    )
    bump = RealFn(
        _bump_eval,
        support=ExtendedInterval(-1.0, 1.0),
        tail_class="compact-support",
        derivative=bump_d,
        smooth_c2=True,
        parity="even",
        name="bump",
    )
    expdecay = RealFn(
        _expdecay_eval,
        support=ExtendedInterval(0.0, math.inf),
        tail_class="absolutely-integrable",
        known_transform=_expdecay_transform,
        name="expdecay",
    )
    zero = constant_fn(0.0, name="zero")
    fns = [gauss, box, sinc, fresnel, spike, bump, expdecay, zero,
           gauss_d, bump_d, sinc_d, fresnel_d]
    return {f.name: f for f in fns}


def translate(f: RealFn, z: float) -> RealFn:
    """Shift a handle: the result evaluates to f(x - z), metadata shifted too."""
    base = f.eval
    support = None
    if f.support is not None:
        support = ExtendedInterval(f.support.lo + z, f.support.hi + z)
    domain = ExtendedInterval(f.domain.lo + z, f.domain.hi + z)
    deriv = translate(f.derivative, z) if f.derivative is not None else None
    return replace(
        f,
        eval=lambda x, _b=base, _z=z: _b(np.asarray(x, dtype=float) - _z),
        domain=domain,
        support=support,
        singular_points=tuple(s + z for s in f.singular_points),
        known_transform=None,
        derivative=deriv,
        parity=None if z != 0 else f.parity,
        name=f"{f.name}<<{z:g}" if f.name else "",
    )


def scale(f: RealFn, c: float) -> RealFn:
    """Pointwise multiple c*f with metadata preserved."""
    base = f.eval
    deriv = scale(f.derivative, c) if f.derivative is not None else None
    kt = None
    if f.known_transform is not None:
        kt = lambda y, _k=f.known_transform, _c=c: _c * _k(y)
    return replace(
        f,
        eval=lambda x, _b=base, _c=c: _c * np.asarray(_b(x), dtype=float),
        known_transform=kt,
        derivative=deriv,
        name=f"{c:g}*{f.name}" if f.name else "",
    )


def constant_fn(c: float, name: str = "") -> RealFn:
    tail = "compact-support" if c == 0.0 else "bounded-variation-tail"
    support = ExtendedInterval(-1e-300, 1e-300) if c == 0.0 else None
    return RealFn(
        lambda x, _c=c: np.full_like(np.asarray(x, dtype=float), _c),
        support=support,
        tail_class=tail,
        parity="even",
        name=name or f"const{c:g}",
    )


def from_callable(g: Callable, name: str = "", **kwargs) -> RealFn:
    """Wrap a plain scalar callable (auto-vectorized) as a RealFn."""
    vec = np.vectorize(g, otypes=[float])
    return RealFn(lambda x, _v=vec: _v(x), name=name, **kwargs)

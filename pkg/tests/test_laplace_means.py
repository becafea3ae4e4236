import math

import numpy as np
import pytest

from lapint.core import (
    CONVERGED,
    SIDES_DISAGREE,
    LadderConfig,
    RealFn,
    constant_fn,
    corpus,
    from_callable,
    scale,
)
from lapint.laplace_means import (
    MeanSpec,
    clip_delta,
    ftc_check,
    inversion_condition_check,
    laplace_mean,
    ld0,
    ld1,
)

from oracles import fd_derivative


def sign_fn():
    return from_callable(lambda t: math.copysign(1.0, t) if t != 0 else 0.0,
                         name="sign")


def test_mean_constant_closed_form():
    one = constant_fn(1.0)
    got = laplace_mean(one, 0.0, "+", 10.0, 1.0)
    assert got == pytest.approx(1.0 - math.exp(-10.0), abs=1e-12)


def test_mean_zero():
    z = constant_fn(0.0)
    assert laplace_mean(z, 0.3, "+", 25.0, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_mean_linear_closed_form():
    lin = from_callable(lambda t: t, name="t")
    got = laplace_mean(lin, 0.0, "+", 10.0, 1.0)
    want = (1.0 - 11.0 * math.exp(-10.0)) / 10.0
    assert got == pytest.approx(want, abs=1e-12)


def test_mean_bound_property():
    # |f| <= M on the window implies |mean| <= M (1 - e^(-s delta))
    rng = np.random.RandomState(3)
    coeffs = rng.uniform(-1, 1, (5, 3))
    for c0, c1, c2 in coeffs:
        f = from_callable(lambda t, a=c0, b=c1, c=c2: a + b * t + c * t * t)
        delta, s, x = 0.5, 12.0, 0.2
        ts = np.linspace(x, x + delta, 1001)
        M = float(np.max(np.abs(f(ts))))
        mean = laplace_mean(f, x, "+", s, delta)
        assert abs(mean) <= M * (1.0 - math.exp(-s * delta)) * (1 + 1e-12)


def test_ld0_at_continuity_point(fns):
    r = ld0(fns["gauss"], 0.3)
    want = math.exp(-math.pi * 0.09)
    assert r.converged and r.status == CONVERGED
    assert r.value == pytest.approx(want, abs=1e-9)


def test_ld0_constant():
    r = ld0(constant_fn(3.5), 1.2)
    assert r.converged and r.value == pytest.approx(3.5, abs=1e-10)


def test_ld0_sign_sides_disagree():
    r = ld0(sign_fn(), 0.0)
    assert not r.converged and r.status == SIDES_DISAGREE
    plus, minus = r.side_values
    assert plus == pytest.approx(1.0, abs=1e-4)
    assert minus == pytest.approx(-1.0, abs=1e-4)


def test_ld1_square_closed_form():
    sq = from_callable(lambda t: t * t, name="t^2")
    r = ld1(sq, 1.0)
    assert r.converged and r.value == pytest.approx(2.0, abs=1e-8)


def test_ld1_constant_zero():
    r = ld1(constant_fn(7.0), 0.4)
    assert r.converged and r.value == pytest.approx(0.0, abs=1e-10)


def test_ld1_abs_sides_disagree():
    r = ld1(from_callable(abs, name="abs"), 0.0)
    assert r.status == SIDES_DISAGREE
    plus, minus = r.side_values
    assert plus == pytest.approx(1.0, abs=1e-4)
    assert minus == pytest.approx(-1.0, abs=1e-4)


@pytest.mark.parametrize("name,x", [
    ("gauss", 0.0), ("gauss", 0.5), ("gauss", -1.0),
    ("bump", 0.2), ("bump", -0.5),
    ("sinc_tail", 0.7), ("sinc_tail", 2.0),
    ("fresnel", 0.4), ("fresnel", 1.2),
    ("expdecay", 1.0),
])
def test_ld1_matches_finite_differences(fns, name, x):
    f = fns[name]
    r = ld1(f, x)
    assert r.converged, (name, x, r.status)
    assert abs(r.value - fd_derivative(f, x)) < 1e-5


def test_delta_independence(fns):
    f = fns["gauss"]
    for x in (0.0, 0.4):
        full = ld1(f, x, MeanSpec(delta=0.5, tol=1e-7))
        half = ld1(f, x, MeanSpec(delta=0.25, tol=1e-7))
        assert abs(full.value - half.value) < 1e-7


def test_ld1_linearity(fns):
    f, g = fns["gauss"], fns["bump"]
    x = 0.3
    both = RealFn(lambda t: np.asarray(f(t)) + np.asarray(g(t)), name="f+g")
    rf = ld1(f, x)
    rg = ld1(g, x)
    rb = ld1(both, x)
    assert abs(rb.value - (rf.value + rg.value)) < 2e-6
    r2 = ld1(scale(f, 3.0), x)
    assert abs(r2.value - 3.0 * rf.value) < 2e-6


def test_clip_delta(fns):
    d = clip_delta(fns["hk_spike"], 0.3, 0.5)
    assert d == pytest.approx(0.3)
    with pytest.raises(ValueError):
        clip_delta(fns["hk_spike"], 0.0, 0.5)


def test_ladder_rate_is_observable(fns):
    r = ld1(fns["gauss"], 0.5)
    # error model ~ 1/s on a ratio-2 ladder: raw differences halve
    assert r.rate_estimate is not None
    assert 0.1 < r.rate_estimate < 0.9


# ---------------------------------------------------------------------------
# inversion condition


def test_inversion_condition_gauss_certifies(fns):
    r = inversion_condition_check(fns["gauss"], 0.0, 0.5)
    assert r.converged and r.value <= 1e-4


def test_inversion_condition_constant_zero():
    r = inversion_condition_check(constant_fn(2.0), 0.7, 0.5)
    assert all(v == pytest.approx(0.0, abs=1e-12) for v in r.raw_values)


def test_inversion_condition_sign_fails():
    # closed form: the one-sided cumulative tends to 1, so the sup stays put
    r = inversion_condition_check(sign_fn(), 0.0, 0.5)
    assert r.value > 0.5


def test_inversion_condition_box_jump_fails(fns):
    r = inversion_condition_check(fns["box"], 0.5, 0.4)
    assert r.value > 0.5


# ---------------------------------------------------------------------------
# fundamental theorem harness


def test_ftc_gauss(fns):
    reps = ftc_check(fns["gauss"], -3.0, [0.0, 0.5, 1.0], MeanSpec(tol=1e-5))
    for rep in reps:
        assert rep.passed and rep.abs_residual < 1e-5


def test_ftc_box_interior_and_jump(fns):
    reps = ftc_check(fns["box"], -2.0, [0.0, 0.5], MeanSpec(tol=1e-5))
    interior, jump = reps
    assert interior.passed and interior.abs_residual < 1e-5
    assert not jump.passed and jump.note == SIDES_DISAGREE


def test_ftc_spike(fns):
    reps = ftc_check(fns["hk_spike"], 0.0, [0.35, 0.6, 0.85], MeanSpec(tol=1e-4))
    for rep in reps:
        assert rep.passed, rep
        assert rep.abs_residual < 1e-4

import math

import numpy as np
import pytest

from lapint.core import ExtendedInterval, RealFn, constant_fn, scale, translate
from lapint.convolution import (
    ConvPlan,
    HypothesisViolation,
    associativity_check,
    commutativity_check,
    convolve,
    norm_inequality_check,
    support_check,
    translation_check,
)
from lapint.quadrature import integrate_bounded

import oracles

PLAN = ConvPlan()


def triangle(x):
    return max(0.0, 1.0 - abs(x))


def test_box_box_triangle(fns):
    for x in (-1.5, -1.0, -0.6, -0.2, 0.0, 0.3, 0.5, 1.0, 2.5):
        r = convolve(fns["box"], fns["box"], x, PLAN)
        assert abs(r.value - triangle(x)) < 1e-9, x


def test_shifted_box_peak(fns):
    # indicators of [0,1]: peak of the triangle sits at x = 1
    b01 = translate(fns["box"], 0.5)
    r = convolve(b01, b01, 1.0, PLAN)
    assert r.value == pytest.approx(1.0, abs=1e-9)
    assert convolve(b01, b01, 2.5, PLAN).value == 0.0


def test_gauss_self_convolution(fns):
    # closed form (1/sqrt 2) e^(-pi x^2 / 2)
    for x in (0.0, 0.7):
        r = convolve(fns["gauss"], fns["gauss"], x, PLAN)
        want = math.exp(-math.pi * x * x / 2.0) / math.sqrt(2.0)
        assert abs(r.value - want) < 1e-9


def test_convolve_direct_vs_parts_routes(fns):
    for x in (0.0, 0.5, 1.0):
        d = convolve(fns["sinc_tail"], fns["bump"], x, PLAN, route="direct")
        p = convolve(fns["sinc_tail"], fns["bump"], x, PLAN, route="parts")
        assert abs(d.value - p.value) < 2e-8, x
    d = convolve(fns["sinc_tail"], fns["gauss"], 0.3, PLAN, route="direct")
    p = convolve(fns["sinc_tail"], fns["gauss"], 0.3, PLAN, route="parts")
    assert abs(d.value - p.value) < 2e-8


def test_convolve_matches_dense_riemann(fns):
    f, g = fns["box"], fns["gauss"]
    x = 0.4
    want = oracles.dense_riemann(lambda y: f(x - y) * g(y), -8.0, 8.0, panels=2**19)
    got = convolve(f, g, x, PLAN)
    assert abs(got.value - want) < 1e-7


def test_commutativity(fns):
    for rep in commutativity_check(fns["box"], fns["gauss"], [-0.5, 0.0, 1.0], PLAN):
        assert rep.passed and rep.abs_residual < 1e-8
    for rep in commutativity_check(fns["sinc_tail"], fns["bump"], [1.0], PLAN):
        assert rep.passed and rep.abs_residual < 1e-5
    # g = f: identical by symmetry of the roles
    for rep in commutativity_check(fns["bump"], fns["bump"], [0.3], PLAN):
        assert rep.abs_residual < 1e-10


def test_translation_rule(fns):
    reps = translation_check(fns["box"], fns["gauss"], 1.0, [1.0], PLAN)
    for rep in reps:
        assert rep.passed and rep.abs_residual < 1e-8
    reps = translation_check(fns["bump"], fns["bump"], -0.5, [0.0], PLAN)
    for rep in reps:
        assert rep.passed and rep.abs_residual < 1e-8
    # z = 0 is the identity translation
    reps = translation_check(fns["bump"], fns["gauss"], 0.0, [0.25], PLAN)
    for rep in reps:
        assert rep.abs_residual == 0.0


def test_associativity(fns):
    reps = associativity_check(fns["box"], fns["gauss"], fns["bump"], [0.0], PLAN)
    assert all(r.passed and r.abs_residual < 1e-4 for r in reps)
    reps = associativity_check(fns["sinc_tail"], fns["gauss"], fns["bump"], [0.5], PLAN)
    assert all(r.passed and r.abs_residual < 1e-4 for r in reps)


def test_associativity_zero_right(fns):
    reps = associativity_check(fns["box"], fns["gauss"], fns["zero"], [0.0], PLAN)
    for r in reps:
        assert abs(r.lhs) < 1e-12 and abs(r.rhs) < 1e-12


def test_associativity_hypothesis_violation(fns):
    with pytest.raises(HypothesisViolation):
        associativity_check(fns["box"], fns["box"], fns["bump"], [0.0], PLAN)
    bad_h = RealFn(fns["sinc_tail"].eval, tail_class="oscillatory-decaying",
                   name="sinc-h")
    with pytest.raises(HypothesisViolation):
        associativity_check(fns["box"], fns["gauss"], bad_h, [0.0], PLAN)


def test_support_confinement(fns):
    for rep in support_check(fns["box"], fns["bump"], [2.0, -1.8], PLAN):
        assert rep.passed and abs(rep.lhs) < 1e-9
    for rep in support_check(fns["box"], fns["box"], [-1.1, 1.1], PLAN):
        assert rep.passed
    for rep in support_check(fns["zero"], fns["box"], [5.0], PLAN):
        assert rep.passed and rep.lhs == 0.0
    with pytest.raises(ValueError):
        support_check(fns["box"], fns["box"], [0.5], PLAN)  # inside sumset
    with pytest.raises(HypothesisViolation):
        support_check(fns["gauss"], fns["box"], [9.0], PLAN)


def test_norm_inequalities(fns):
    r1, r2 = norm_inequality_check(fns["bump_prime"], fns["gauss_prime"], PLAN)
    assert r1.passed and r1.lhs <= r1.rhs
    assert r2.passed and r2.lhs <= r2.rhs
    # slack should be genuinely positive, not borderline
    assert r1.rhs - r1.lhs > 0.1
    assert r2.rhs - r2.lhs > 0.05


def test_norm_inequalities_windowed_sinc(fns):
    sinc_w = RealFn(fns["sinc_tail"].eval, support=ExtendedInterval(-20.0, 20.0),
                    tail_class="compact-support", name="sinc-window")
    r1, r2 = norm_inequality_check(sinc_w, fns["gauss_prime"], PLAN,
                                   grid_halfwidth=24.0)
    assert r1.passed and r2.passed


def test_norm_hypothesis_violation(fns):
    with pytest.raises(HypothesisViolation):
        norm_inequality_check(fns["bump_prime"], fns["gauss"], PLAN)
    with pytest.raises(HypothesisViolation):
        norm_inequality_check(fns["bump_prime"], fns["sinc_tail"], PLAN)


def test_zero_function_norms(fns):
    r1, r2 = norm_inequality_check(fns["zero"], fns["gauss_prime"], PLAN)
    assert r1.passed and abs(r1.lhs) < 1e-9
    assert r2.passed and abs(r2.lhs) < 1e-9


def test_partial_integral_interchange_identity(fns):
    # int_-inf^T (f*G) dx equals int G(y) F(T-y) dy for the cumulative F
    from lapint.convolution import _cumulative_from_minus_inf
    from lapint.core import ExtendedInterval as EI
    from lapint.quadrature import integrate_improper

    f, G = fns["bump_prime"], fns["gauss"]
    F = _cumulative_from_minus_inf(f, -8.0, 8.0, 1e-10)  # = bump
    for T in (0.0, 1.0):
        conv_fn = RealFn(
            lambda x: np.asarray([np.real(convolve(f, G, float(t), PLAN).value)
                                  for t in np.atleast_1d(x)]),
            tail_class="absolutely-integrable", name="f*G")
        lhs = integrate_bounded(conv_fn, -8.0, T, 1e-6)
        inner = RealFn(lambda y, _T=T: np.asarray(G(y)) * np.asarray(F(_T - np.asarray(y, dtype=float))),
                       tail_class="absolutely-integrable", name="G*F(T-.)")
        rhs = integrate_bounded(inner, -8.0, 8.0, 1e-8)
        assert abs(lhs.value - rhs.value) < 1e-5, T


def test_bilinearity(fns):
    f, g, h = fns["box"], fns["gauss"], fns["bump"]
    x = 0.25
    fg = convolve(f, g, x, PLAN).value
    fh = convolve(f, h, x, PLAN).value
    mixed = RealFn(lambda t: 2.0 * np.asarray(g(t)) + np.asarray(h(t)),
                   tail_class="absolutely-integrable", name="2g+h")
    got = convolve(f, mixed, x, PLAN).value
    assert abs(got - (2 * fg + fh)) < 1e-8

import math

import numpy as np
import pytest

from lapint.core import ExtendedInterval
from lapint.interchange import (
    Kernel2D,
    diff_under_integral,
    fubini_residual,
    iterated_integrals,
)

from oracles import gauss_cdf_interval

BOXD = ExtendedInterval(-6.0, 6.0)


def product_kernel():
    return Kernel2D(lambda x, y: x * y, BOXD, BOXD,
                    dx_eval=lambda x, y: np.broadcast_to(
                        np.asarray(y, dtype=float), np.broadcast(x, y).shape).copy(),
                    name="product")


def zero_kernel():
    return Kernel2D(lambda x, y: np.zeros(np.broadcast(x, y).shape), BOXD, BOXD,
                    name="zero")


def classical_kernel():
    def eval_(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        d = x * x + y * y
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(d > 0, (x * x - y * y) / np.where(d > 0, d * d, 1.0), 0.0)
    return Kernel2D(eval_, ExtendedInterval(-2, 2), ExtendedInterval(-2, 2),
                    singular_points=((0.0, 0.0),), name="classical")


def gauss_cos_kernel():
    return Kernel2D(
        lambda x, y: np.exp(-np.pi * np.square(np.asarray(x, dtype=float)))
        * np.cos(np.asarray(y, dtype=float)),
        BOXD, BOXD,
        dx_eval=lambda x, y: -2.0 * np.pi * np.asarray(x, dtype=float)
        * np.exp(-np.pi * np.square(np.asarray(x, dtype=float)))
        * np.cos(np.asarray(y, dtype=float)),
        name="gauss-cos")


def test_product_kernel_quarter():
    i1, i2 = iterated_integrals(product_kernel(), (0, 1), (0, 1), 1e-10)
    assert i1.value == pytest.approx(0.25, abs=1e-10)
    assert i2.value == pytest.approx(0.25, abs=1e-10)


def test_zero_kernel():
    i1, i2 = iterated_integrals(zero_kernel(), (0, 1), (0, 1), 1e-10)
    assert i1.value == 0.0 and i2.value == 0.0


def test_oscillatory_kernel_inner_transform(fns):
    # inner x-integral is the gaussian cosine transform; outer over y
    k = Kernel2D(
        lambda x, y: np.exp(-np.pi * np.square(np.asarray(x, dtype=float)))
        * np.cos(2 * np.pi * np.asarray(x, dtype=float) * np.asarray(y, dtype=float)),
        ExtendedInterval(-4.5, 4.5), ExtendedInterval(-1, 2), name="gauss-wave")
    i1, i2 = iterated_integrals(k, (-4, 4), (0, 1), 1e-9)
    want = gauss_cdf_interval(0.0, 1.0)  # int_0^1 e^(-pi y^2) dy
    assert i1.value == pytest.approx(want, abs=1e-7)
    assert i2.value == pytest.approx(want, abs=1e-7)


def test_fubini_residual_smooth():
    rep = fubini_residual(product_kernel(), (0, 1), (0, 1), 1e-9)
    assert rep.abs_residual < 1e-8 and rep.passed
    rep = fubini_residual(gauss_cos_kernel(), (-1, 1), (0, 1), 1e-9)
    assert rep.abs_residual < 1e-8


def test_fubini_residual_classical_failure():
    rep = fubini_residual(classical_kernel(), (0, 1), (0, 1), 1e-6)
    assert rep.abs_residual == pytest.approx(math.pi / 2.0, abs=1e-3)


def test_transpose_symmetry():
    k = gauss_cos_kernel()
    r1 = fubini_residual(k, (0.0, 1.0), (-0.5, 0.5), 1e-9)
    r2 = fubini_residual(k.transpose(), (-0.5, 0.5), (0.0, 1.0), 1e-9)
    assert abs(r1.abs_residual - r2.abs_residual) < 1e-10


def test_dx_eval_matches_finite_differences():
    k = gauss_cos_kernel()
    rng = np.random.RandomState(11)
    pts = rng.uniform(-1.5, 1.5, (50, 2))
    h = 1e-5
    for x, y in pts:
        fd = (float(k(x + h, y)) - float(k(x - h, y))) / (2 * h)
        assert abs(float(np.asarray(k.dx_eval(x, y))) - fd) < 1e-4


def test_diff_under_integral_gauss_cos():
    rep = diff_under_integral(gauss_cos_kernel(), 0.5, (0, 1))
    want = -math.pi * math.exp(-math.pi / 4.0) * math.sin(1.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(want, abs=1e-6)
    assert rep.rhs == pytest.approx(want, abs=1e-9)


def test_diff_under_integral_y_only_kernel():
    k = Kernel2D(lambda x, y: np.cos(np.asarray(y, dtype=float))
                 * np.ones(np.broadcast(x, y).shape),
                 BOXD, BOXD,
                 dx_eval=lambda x, y: np.zeros(np.broadcast(x, y).shape),
                 name="y-only")
    rep = diff_under_integral(k, 0.7, (0, 1))
    assert rep.passed
    assert rep.lhs == pytest.approx(0.0, abs=1e-6)
    assert rep.rhs == pytest.approx(0.0, abs=1e-12)


def test_diff_under_integral_product():
    rep = diff_under_integral(product_kernel(), 1.0, (0, 1))
    assert rep.passed
    assert rep.lhs == pytest.approx(0.5, abs=1e-6)
    assert rep.rhs == pytest.approx(0.5, abs=1e-10)


def test_equivalence_direction():
    # wherever the interchange certificate holds on sub-rectangles, the
    # derivative-under-the-integral residual is small at interior points
    k = gauss_cos_kernel()
    for rect in [((-1, 1), (0, 1)), ((0, 0.5), (0.25, 0.75)), ((-0.5, 0.25), (0, 0.5))]:
        rep = fubini_residual(k, rect[0], rect[1], 1e-9)
        assert rep.abs_residual < 1e-7
    for x in (-0.75, -0.25, 0.0, 0.3, 0.8):
        rep = diff_under_integral(k, x, (0, 1))
        assert rep.abs_residual < 1e-4, x

import math

import numpy as np
import pytest

from lapint.extrapolate import geometric_rate, richardson, wynn_epsilon


def test_wynn_on_alternating_log_series():
    partial = np.cumsum([(-1.0) ** k / (k + 1) for k in range(30)])
    est, err = wynn_epsilon(partial)
    assert abs(est - math.log(2.0)) < 1e-12
    assert err < 1e-10


def test_wynn_on_geometric_series():
    partial = np.cumsum([0.5**k for k in range(20)])
    est, err = wynn_epsilon(partial)
    assert abs(est - 2.0) < 1e-12


def test_wynn_constant_sequence_falls_back():
    est, err = wynn_epsilon(np.ones(8))
    assert est == 1.0
    assert err == 0.0


def test_wynn_complex():
    z = 0.4 + 0.3j
    partial = np.cumsum([z**k for k in range(25)])
    est, _ = wynn_epsilon(partial)
    assert abs(est - 1.0 / (1.0 - z)) < 1e-10


def test_richardson_first_order():
    s = 8.0 * 2.0 ** np.arange(10)
    vals = 3.0 + 2.0 / s + 5.0 / s**2
    est, err, diag = richardson(s, vals, first_order=1)
    assert abs(est - 3.0) < 1e-12
    assert len(diag) == len(s)


def test_richardson_even_orders_decreasing_ladder():
    lam = 0.5 * 0.7 ** np.arange(12)
    vals = 1.0 - 0.3 * lam**2 + 0.1 * lam**4
    est, err, diag = richardson(lam, vals, first_order=2, order_step=2)
    assert abs(est - 1.0) < 1e-12


def test_geometric_rate_detects_halving():
    vals = 1.0 + 2.0 ** -np.arange(10.0)
    rate = geometric_rate(vals)
    assert rate == pytest.approx(0.5, rel=1e-6)

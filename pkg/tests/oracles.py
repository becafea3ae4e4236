"""Independent oracles used to freeze expected values.

Everything here stays deliberately dumb: dense midpoint Riemann sums,
closed forms from scipy.special, and central finite differences.  None of
it shares code with the integration engine under test.
"""

import math

import numpy as np
from scipy.special import erf, fresnel, sici


def dense_riemann(fn, a, b, panels=2**20):
    """Midpoint Riemann sum with `panels` uniform panels, vectorized."""
    h = (b - a) / panels
    # evaluate in blocks to keep memory flat
    total = 0.0
    block = 1 << 18
    for start in range(0, panels, block):
        n = min(block, panels - start)
        mids = a + (start + np.arange(n) + 0.5) * h
        total += float(np.sum(fn(mids)))
    return total * h


def fd_derivative(fn, x, h=1e-5):
    return (float(fn(x + h)) - float(fn(x - h))) / (2.0 * h)


def gauss_cdf_interval(a, b):
    """integral_a^b e^(-pi x^2) dx."""
    s = math.sqrt(math.pi)
    return 0.5 * (erf(s * b) - erf(s * a))


def sinc_integral_to(c):
    """integral_0^c sin(x)/x dx."""
    return float(sici(c)[0])


def fresnel_sin_integral_to(c):
    """integral_0^c sin(x^2) dx."""
    s, _ = fresnel(c * math.sqrt(2.0 / math.pi))
    return float(s) * math.sqrt(math.pi / 2.0)


SINC_FULL_LINE = math.pi                      # integral_R sin(x)/x dx
FRESNEL_HALF_LINE = math.sqrt(math.pi / 8.0)  # integral_0^inf sin(x^2) dx
SPIKE_UNIT = math.sin(1.0)                    # limit of int_eps^1 of the spike

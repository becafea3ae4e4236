"""Scalar sequence extrapolation: Wynn's epsilon algorithm and Richardson
ladders for geometric parameter families.

Both transforms return a best estimate together with an empirical error
estimate taken from the stability of the extrapolation table, never from
the model alone.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

__all__ = ["wynn_epsilon", "richardson", "geometric_rate"]

_TINY = 1e-300


def wynn_epsilon(partial_sums: Sequence[float]):
    """Accelerate a sequence of partial sums with the epsilon algorithm.

    Returns (estimate, err_estimate).  Works on real or complex input.
    Falls back to the raw last term (with a raw error estimate) when the
    table produces non-finite intermediates, e.g. on constant sequences.
    """
    s = np.asarray(partial_sums)
    n = len(s)
    if n == 0:
        raise ValueError("empty sequence")
    if n == 1:
        return complex(s[0]) if np.iscomplexobj(s) else float(s[0]), math.inf

    raw_err = abs(s[-1] - s[-2])
    # eps[j] holds the current column; standard two-column recurrence.
    prev = np.zeros(n + 1, dtype=complex)
    cur = s.astype(complex).copy()
    best = cur[-1]
    best_err = raw_err
    history = [best]
    for col in range(1, n):
        nxt = np.empty(n - col, dtype=complex)
        ok = True
        for i in range(n - col):
            diff = cur[i + 1] - cur[i]
            if abs(diff) < _TINY:
                ok = False
                break
            nxt[i] = prev[i + 1] + 1.0 / diff
        if not ok:
            # the current column is (locally) constant: if it is an estimate
            # column, its value has converged to working precision
            if (col - 1) % 2 == 0 and len(cur) >= 2:
                spread = float(np.max(np.abs(np.diff(cur))))
                cand_err = spread + 4e-16 * (1.0 + abs(cur[-1]))
                if cand_err <= best_err:
                    best, best_err = cur[-1], cand_err
            break
        prev = cur
        cur = nxt
        if col % 2 == 0:
            # even columns approximate the limit; deeper stable columns win
            history.append(cur[-1])
            if len(history) >= 2:
                err = abs(history[-1] - history[-2])
                if err <= best_err:
                    best = history[-1]
                    best_err = err
        if len(cur) < 2:
            break
    if not np.isfinite(best) or not math.isfinite(best_err):
        best, best_err = complex(s[-1]), raw_err
    if not np.iscomplexobj(s):
        best = best.real
    return best, best_err


def richardson(params: Sequence[float], values: Sequence[float],
               first_order: int = 1, order_step: int = 1,
               max_depth: Optional[int] = None):
    """Richardson extrapolation of values sampled along a geometric ladder.

    Error model: value(p) = L + sum_j c_j * p^(-(first_order + j*order_step))
    for increasing ladders, or + sum_j c_j * p^(first_order + j*order_step)
    for decreasing ladders (the two are the same after p -> 1/p).

    Returns (estimate, err_estimate, diagonal) where diagonal[k] is the best
    estimate available after rung k; the diagonal is what limit code should
    expose as the per-rung ladder value.
    """
    p = np.asarray(params, dtype=float)
    v = np.asarray(values)
    n = len(p)
    if n != len(v) or n == 0:
        raise ValueError("params/values length mismatch or empty")
    if n == 1:
        val = v[0]
        return (complex(val) if np.iscomplexobj(v) else float(val)), math.inf, [v[0]]

    # ladder ratio; increasing ladders are mapped onto h = 1/p
    with np.errstate(divide="ignore"):
        h = 1.0 / p if p[1] > p[0] else p.astype(float)
    r = h[0] / h[1]  # > 1 for a geometric ladder

    depth = n if max_depth is None else min(n, max_depth + 1)
    table = v.astype(complex).copy()
    diagonal = [table[0]]
    errs = [math.inf]
    for i in range(1, n):
        row = np.empty(i + 1, dtype=complex)
        row[0] = v[i]
        limit = min(i, depth - 1)
        for j in range(1, limit + 1):
            factor = r ** (first_order + (j - 1) * order_step)
            row[j] = row[j - 1] + (row[j - 1] - table[j - 1]) / (factor - 1.0)
        table[: limit + 1] = row[: limit + 1]
        diagonal.append(row[limit])
        errs.append(abs(diagonal[-1] - diagonal[-2]))

    est = diagonal[-1]
    err = errs[-1] if math.isfinite(errs[-1]) else abs(v[-1] - v[-2])
    # guard against a last-step fluke: include the previous diagonal move
    if len(errs) >= 3 and math.isfinite(errs[-2]):
        err = max(err, 0.25 * errs[-2])
    if not np.iscomplexobj(v):
        est = est.real
        diagonal = [d.real for d in diagonal]
    return est, err, diagonal


def geometric_rate(values: Sequence[float]) -> Optional[float]:
    """Empirical geometric convergence factor of successive differences.

    Median of d_{k+1}/d_k over the tail of the sequence; None when the
    differences vanish or are too few.
    """
    v = np.asarray(values, dtype=complex)
    if len(v) < 4:
        return None
    d = np.abs(np.diff(v))
    mask = d > 0
    d = d[mask]
    if len(d) < 3:
        return None
    ratios = d[1:] / d[:-1]
    return float(np.median(ratios))

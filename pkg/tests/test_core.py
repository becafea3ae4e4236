import math

import numpy as np
import pytest

from lapint.core import (
    ExtendedInterval,
    LadderConfig,
    RealFn,
    ResidualReport,
    constant_fn,
    corpus,
    scale,
    translate,
)

from oracles import dense_riemann


def test_interval_invariants():
    iv = ExtendedInterval(-math.inf, 2.0)
    assert not iv.lo_finite and iv.hi_finite and not iv.bounded
    assert iv.contains(0.0) and not iv.contains(3.0)
    with pytest.raises(ValueError):
        ExtendedInterval(1.0, 1.0)
    with pytest.raises(ValueError):
        ExtendedInterval(2.0, -1.0)


def test_ladder_config():
    lad = LadderConfig(8.0, 2.0, 4)
    assert lad.values().tolist() == [8.0, 16.0, 32.0, 64.0]
    lam = LadderConfig(0.5, 1.0 / 0.7, 3, "decreasing").values()
    assert lam[0] == 0.5 and lam[1] == pytest.approx(0.35) and len(lam) == 3
    assert np.all(np.diff(lam) < 0)
    with pytest.raises(ValueError):
        LadderConfig(1.0, 0.9, 3)
    with pytest.raises(ValueError):
        LadderConfig(-1.0, 2.0, 3)


def test_residual_report_invariant():
    rep = ResidualReport.build("demo", 2.0, 1.5)
    assert rep.abs_residual == pytest.approx(abs(rep.lhs - rep.rhs))
    assert rep.rel_residual == pytest.approx(rep.abs_residual / 2.0)
    small = ResidualReport.build("demo", 1e-12, 0.0)
    assert small.rel_residual == pytest.approx(1e-12)  # denominator floors at 1


def test_corpus_membership_and_point_values(fns):
    for name in ("gauss", "box", "sinc_tail", "fresnel", "hk_spike", "bump", "expdecay"):
        assert name in fns
    assert fns["gauss"](0.0) == pytest.approx(1.0)
    assert fns["box"](0.75) == 0.0
    assert fns["box"](0.25) == 1.0
    assert fns["sinc_tail"](0.0) == pytest.approx(1.0)
    assert fns["fresnel"](2.0) == pytest.approx(math.sin(4.0))
    assert fns["expdecay"](-0.5) == 0.0
    assert fns["expdecay"](1.0) == pytest.approx(math.exp(-1.0))
    x = 0.3
    spike = 2 * x * math.sin(x**-2) - (2 / x) * math.cos(x**-2)
    assert fns["hk_spike"](x) == pytest.approx(spike)
    assert fns["hk_spike"](-0.2) == 0.0
    assert fns["bump"](0.0) == pytest.approx(1.0)
    assert fns["bump"](1.0) == 0.0


def test_corpus_metadata(fns):
    assert fns["sinc_tail"].tail_class == "oscillatory-decaying"
    assert fns["fresnel"].tail_class == "oscillatory-decaying"
    assert fns["hk_spike"].singular_points == (0.0,)
    assert fns["hk_spike"].support.hi == 1.0
    assert fns["box"].support.lo == -0.5
    assert fns["gauss"].known_transform is not None
    assert fns["bump"].derivative is not None


def test_translate_examples(fns):
    assert translate(fns["box"], 1.0)(1.0) == pytest.approx(1.0)
    assert translate(fns["gauss"], 2.0)(2.0) == pytest.approx(1.0)
    assert translate(fns["expdecay"], -1.0)(0.0) == pytest.approx(math.exp(-1.0))


def test_translate_roundtrip_pointwise(fns):
    rng = np.random.RandomState(42)
    xs = rng.uniform(-5, 5, 100)
    for name in ("gauss", "box", "bump", "expdecay", "sinc_tail"):
        f = fns[name]
        g = translate(translate(f, 1.7), -1.7)
        assert np.allclose(g(xs), f(xs), atol=1e-14)


def test_translate_shifts_metadata(fns):
    g = translate(fns["hk_spike"], 2.0)
    assert g.singular_points == (2.0,)
    assert g.support.lo == 2.0 and g.support.hi == 3.0
    assert g(2.3) == pytest.approx(fns["hk_spike"](0.3))


def test_support_zero_outside(fns):
    rng = np.random.RandomState(7)
    for name in ("box", "bump", "hk_spike", "expdecay"):
        f = fns[name]
        lo, hi = f.support.lo, f.support.hi
        pts = []
        if math.isfinite(lo):
            pts.extend(rng.uniform(lo - 10, lo - 1e-9, 50))
        if math.isfinite(hi):
            pts.extend(rng.uniform(hi + 1e-9, hi + 10, 50))
        vals = f(np.asarray(pts))
        assert np.all(vals == 0.0)


def test_scale_and_constant():
    c = constant_fn(5.0)
    assert c(123.0) == 5.0
    half = scale(constant_fn(5.0), 0.5)
    assert half(0.0) == 2.5


@pytest.mark.parametrize("name,freqs", [
    ("gauss", (-1.5, -0.5, 0.0, 0.5, 1.5)),
    ("box", (-1.5, -0.5, 0.0, 0.5, 1.5)),
    ("expdecay", (-1.0, -0.25, 0.0, 0.25, 1.0)),
])
def test_known_transforms_match_dense_riemann(fns, name, freqs):
    # spot check of the closed-form transform against a dumb dense sum
    f = fns[name]
    iv = f.effective_interval(14.0)
    lo = iv.lo if math.isfinite(iv.lo) else -14.0
    hi = iv.hi if math.isfinite(iv.hi) else 36.0
    for y in freqs:
        re = dense_riemann(lambda x: f(x) * np.cos(2 * math.pi * y * x), lo, hi,
                           panels=2**18)
        im = dense_riemann(lambda x: -f(x) * np.sin(2 * math.pi * y * x), lo, hi,
                           panels=2**18)
        known = complex(np.complex128(f.known_transform(y)))
        assert abs(complex(re, im) - known) < 1e-6


def test_realfn_rejects_bad_metadata():
    with pytest.raises(ValueError):
        RealFn(lambda x: x, tail_class="nonsense")
    with pytest.raises(ValueError):
        RealFn(lambda x: x, singular_points=(2.0, 1.0))
    with pytest.raises(ValueError):
        RealFn(lambda x: x, domain=ExtendedInterval(0, 1), singular_points=(5.0,))

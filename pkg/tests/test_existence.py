import math

import numpy as np
import pytest

from ammonia_rd.errors import Inapplicable
from ammonia_rd.existence import (Status, amplitudes_from_equalities, check, check_fast,
                                  check_slow, feasible_b_search)
from ammonia_rd.model import Regime, derive_exponents
from ammonia_rd.similarity import make_scaling

from conftest import model


def setup(**over):
    m = model(**over)
    e = derive_exponents(m)
    return m, e, make_scaling(m, e)


SYNTH = dict(N=1, m1=2.0, m2=2.0, sigma1=0.0, sigma2=0.0, D1=1.0, D2=1.0,
             alpha1=2.0, beta1=0.0, alpha2=0.0, beta2=2.0, a1=1.0, a2=1.0)
CERTIFIABLE = dict(N=2, m1=2.0, m2=2.0, sigma1=0.0, sigma2=0.0, D1=1.0, D2=1.0,
                   alpha1=3.0, beta1=2.0, alpha2=2.0, beta2=3.0, a1=1.0, a2=0.05)


def test_amplitude_from_first_equality():
    m, e, s = setup(**SYNTH)
    B1, B2 = amplitudes_from_equalities(m, e, s, Regime.SLOW)
    assert B1 == pytest.approx(math.sqrt(0.5)) and B2 == pytest.approx(math.sqrt(0.5))
    assert 4 * B1 ** m.k1 * m.D1 * e.gamma1 * (m.m1 - 1) == pytest.approx(1, abs=1e-12)


def test_baseline_amplitudes_inapplicable():
    m, e, s = setup()
    with pytest.raises(Inapplicable):
        amplitudes_from_equalities(m, e, s, Regime.SLOW)
    assert check_slow(m, e, s, 1.0).status is Status.INAPPLICABLE


def test_fast_amplitude():
    m, e, s = setup(m1=0.0, m2=0.0, sigma1=-2.0, sigma2=-2.0, D1=0.5)
    B1, _ = amplitudes_from_equalities(m, e, s, Regime.FAST)
    assert B1 == pytest.approx(1.0)


def test_synthetic_violates_c3():
    m, e, s = setup(**SYNTH)
    assert s.psi1 == pytest.approx(-1.0) and s.p == pytest.approx(-1.0)
    cert = check_slow(m, e, s, 1.0)
    expected = -1.0 * (math.sqrt(0.5) - 1) - 0.5
    assert cert.residuals["C3"] == pytest.approx(expected, abs=1e-12)
    assert cert.residuals["C3"] == pytest.approx(-0.20711, abs=1e-5)
    assert cert.status is Status.VIOLATED and "C3" in cert.violated


def test_zero_reaction_always_violates_c3():
    m, e, s = setup(**{**SYNTH, "a1": 0.0})
    for b in (0.01, 1.0, 100.0):
        assert check_slow(m, e, s, b).residuals["C3"] == pytest.approx(-0.5)


def test_certified_instance():
    m, e, s = setup(**CERTIFIABLE)
    cert = check_slow(m, e, s, 3.0)
    # B = 1/sqrt(2) so B^4 = 1/4, and both b-exponents equal 2
    assert cert.residuals["C3"] == pytest.approx(2.0 * (9 / 4 - 1) - 1.0, abs=1e-12)
    assert cert.residuals["C4"] == pytest.approx(0.1 * (9 / 4 + 1) - 1.0, abs=1e-12)
    assert cert.status is Status.CERTIFIED


def test_c3_grows_with_b():
    m, e, s = setup(**CERTIFIABLE)
    bs = 2.0 ** np.arange(-4, 6)
    r3 = [check_slow(m, e, s, float(b)).residuals["C3"] for b in bs]
    assert np.all(np.diff(r3) > 0)
    assert r3[0] < 0 < r3[-1]


def test_fast_zero_reaction_c7_sign():
    from ammonia_rd.existence import _residual_terms

    m, e, s = setup(m1=2.0, m2=2.0, sigma1=-3.0, sigma2=-3.0, a1=0.0)
    assert e.regime is Regime.FAST and s.psi1 == 0.0
    p1, _, k1, _ = _residual_terms(m, e, s, 1.0, 1.0, 1.0)
    assert p1 + k1 == pytest.approx(1.0)  # N / (2 (m1 - 1)) > 0 breaks C7
    # with m1 > 1 and gamma1 < 0 the amplitude equality has a negative base
    assert check_fast(m, e, s, 1.0).status is Status.INAPPLICABLE


def test_regime_mismatch_is_inapplicable():
    m, e, s = setup(**CERTIFIABLE)
    assert check_fast(m, e, s, 1.0).status is Status.INAPPLICABLE


def test_synthetic_certified_for_small_b():
    m, e, s = setup(**SYNTH)
    cert = check_slow(m, e, s, 0.1)
    assert cert.residuals["C3"] == pytest.approx(0.5 - math.sqrt(0.05), abs=1e-12)
    assert cert.status is Status.CERTIFIED


def test_search_finds_certified():
    m, e, s = setup(**CERTIFIABLE)
    found = feasible_b_search(m, e, s, 0.5, 64.0, 61)
    assert found.certified is not None
    assert found.certified.status is Status.CERTIFIED
    # the first certified point is where C3 turns non-negative
    assert check_slow(m, e, s, found.certified.b).residuals["C3"] >= 0


def test_search_all_violated():
    m, e, s = setup(**SYNTH)
    # r3 = 0.5 - sqrt(b/2) is negative for every b > 1/2
    found = feasible_b_search(m, e, s, 1.0, 10.0, 9)
    assert found.certified is None
    assert found.best.status is Status.VIOLATED
    assert found.scanned == 9


def test_search_two_steps_hits_endpoints(monkeypatch):
    import ammonia_rd.existence as ex
    seen = []
    real = ex.check

    def spy(m, e, s, b):
        seen.append(b)
        return real(m, e, s, b)

    monkeypatch.setattr(ex, "check", spy)
    m, e, s = setup(**SYNTH)
    ex.feasible_b_search(m, e, s, 1.0, 4.0, 2)
    assert seen == pytest.approx([1.0, 4.0])


def test_residuals_are_reproducible():
    m, e, s = setup(**CERTIFIABLE)
    assert check(m, e, s, 2.7).residuals == check(m, e, s, 2.7).residuals

import math

import numpy as np
import pytest

from gevreytf.associated import (
    assoc_bracket,
    assoc_simplified,
    assoc_t,
    assoc_t_gevrey_limit,
    assoc_t_grid,
    envelope,
)
from gevreytf.sequences import GevreyParams

from _oracles import brute_assoc_max


def test_frozen_value_sigma_one():
    # argmax over p of p(2 - ln p): attained at p = 3
    ev = assoc_t(GevreyParams(1.0, 1.0), math.exp(2))
    assert ev.value == pytest.approx(6 - 3 * math.log(3), abs=1e-12)
    assert ev.value == pytest.approx(2.704163, abs=5e-6)
    assert ev.argmax_p == 3


def test_frozen_value_sigma_two():
    ev = assoc_t(GevreyParams(1.0, 2.0), math.exp(4))
    assert ev.value == pytest.approx(8 - 4 * math.log(2), abs=1e-12)
    assert ev.value == pytest.approx(5.22741, abs=5e-6)
    assert ev.argmax_p == 2


def test_zero_below_activation():
    ev = assoc_t(GevreyParams(1.0, 1.5), 1.0)
    assert ev.value == 0.0
    assert ev.argmax_p == 0
    ev = assoc_t(GevreyParams(1.0, 1.5, h=0.5), 1.2)
    assert ev.value == 0.0


def test_oracle_equivalence_randomized():
    rng = np.random.default_rng(7)
    for _ in range(120):
        tau = rng.uniform(0.3, 3.0)
        sigma = rng.uniform(1.05, 3.0)
        h = rng.uniform(0.25, 4.0)
        k = 10.0 ** rng.uniform(0.0, 8.0)
        ev = assoc_t(GevreyParams(tau, sigma, h), k)
        val, arg = brute_assoc_max(tau, sigma, h, k, 10 * max(ev.truncation_p, 1))
        assert val == ev.value, (tau, sigma, h, k)
        assert arg == ev.argmax_p, (tau, sigma, h, k)


def test_oracle_equivalence_sigma_one():
    rng = np.random.default_rng(8)
    for _ in range(40):
        tau = rng.uniform(0.5, 3.0)
        h = rng.uniform(0.25, 4.0)
        k = 10.0 ** rng.uniform(0.0, 4.0)
        ev = assoc_t(GevreyParams(tau, 1.0, h), k)
        val, arg = brute_assoc_max(tau, 1.0, h, k, 10 * max(ev.truncation_p, 1))
        assert val == ev.value
        assert arg == ev.argmax_p


def test_gevrey_limit_frozen():
    assert assoc_t_gevrey_limit(1.0, math.e) == pytest.approx(1.0, abs=1e-14)
    assert assoc_t_gevrey_limit(2.0, math.exp(4)) == pytest.approx(2 * math.e, rel=1e-14)


def test_gevrey_band():
    # (tau/e) k^(1/tau) - tau <= T <= (tau/e) k^(1/tau) on a modest grid
    for tau in (0.5, 1.0, 2.0):
        params = GevreyParams(tau, 1.0)
        for k in np.logspace(math.log10(math.e), 6, 60):
            ev = assoc_t(params, float(k))
            lim = assoc_t_gevrey_limit(tau, float(k))
            assert ev.value <= lim * (1 + 1e-12) + 1e-12
            assert ev.value >= lim - (tau / math.e) * math.e - 1e-9


def test_monotone_in_k():
    params = GevreyParams(0.7, 1.3, h=2.0)
    ks = np.logspace(-2, 7, 400)
    vals, _ = assoc_t_grid(params, ks)
    assert (np.diff(vals) >= -1e-12).all()
    assert (vals >= 0).all()


def test_grid_matches_scalar():
    for params in [
        GevreyParams(1.0, 1.5),
        GevreyParams(0.25, 1.5, h=0.25),
        GevreyParams(2.0, 3.0, h=4.0),
        GevreyParams(1.0, 1.0),
        GevreyParams(0.3, 1.05, h=4.0),
    ]:
        ks = np.unique(np.concatenate([np.logspace(-2, 5, 300), [1.0, math.e]]))
        vals, args = assoc_t_grid(params, ks)
        for i in range(0, ks.size, 17):
            ev = assoc_t(params, float(ks[i]))
            assert vals[i] == pytest.approx(ev.value, rel=1e-12, abs=1e-12)


def test_bracket_frozen_constant():
    br = assoc_bracket(GevreyParams(1.0, 2.0, h=1.0), math.exp(10))
    assert br.c_tsh == pytest.approx(math.sqrt(math.e) / 2.0, rel=1e-14)
    br2 = assoc_bracket(GevreyParams(1.0, 2.0, h=2.0), math.exp(10))
    assert br2.c_tsh == pytest.approx(math.sqrt(math.e) / 4.0, rel=1e-14)
    assert br.lower_exponent < br.upper_exponent


def test_bracket_encloses_up_to_constants():
    params = GevreyParams(1.0, 1.5)
    for k in np.logspace(1, 10, 40):
        ev = assoc_t(params, float(k))
        br = assoc_bracket(params, float(k))
        assert ev.value >= br.lower_exponent - 5.0
        assert ev.value <= br.upper_exponent + 5.0


def test_simplified_frozen():
    assert assoc_simplified(2.0, math.exp(math.e)) == pytest.approx(math.e**2, rel=1e-14)
    assert assoc_simplified(2.0, math.exp(math.e**2)) == pytest.approx(
        math.e**4 / 2.0, rel=1e-14
    )


def test_envelope_values_and_bounds():
    params = GevreyParams(1.0, 1.0)
    val = envelope(params, math.exp(2))
    assert val == pytest.approx(math.exp(-(6 - 3 * math.log(3))), rel=1e-12)
    assert val == pytest.approx(0.066926, abs=5e-6)
    assert envelope(params, 0.0) == 1.0
    arr = envelope(params, np.array([0.0, 1.0, 10.0, 5.0]))
    assert arr[0] == 1.0
    assert (arr <= 1.0 + 1e-15).all()


def test_envelope_beats_polynomials_where_resolvable():
    # sigma = 1: xi^N e^(-T) must die out on the grid for N up to 20
    params = GevreyParams(1.0, 1.0)
    xi = np.logspace(0, 3, 2000)
    env = envelope(params, xi)
    for n in (1, 5, 10, 20):
        curve = xi**n * env
        assert curve[-1] < 1e-6 * curve.max()
    # sigma > 1 with small tau: resolvable for low polynomial orders
    params = GevreyParams(0.25, 1.5)
    xi = np.logspace(0, 4, 2000)
    env = envelope(params, xi)
    for n in (1, 3, 5):
        curve = xi**n * env
        assert curve[-1] < 1e-3 * curve.max()


def test_domain_errors():
    params = GevreyParams(1.0, 1.5)
    with pytest.raises(ValueError):
        assoc_t(params, 0.0)
    with pytest.raises(ValueError):
        assoc_t(params, -3.0)
    with pytest.raises(ValueError):
        assoc_t(params, float("inf"))
    with pytest.raises(ValueError):
        assoc_bracket(GevreyParams(1.0, 1.0), 10.0)  # sigma must exceed 1
    with pytest.raises(ValueError):
        assoc_bracket(params, 2.0)  # k <= e
    with pytest.raises(ValueError):
        assoc_simplified(1.0, 10.0)
    with pytest.raises(ValueError):
        envelope(params, -1.0)
    with pytest.raises(ValueError):
        assoc_t_gevrey_limit(-1.0, 2.0)


def test_representability_guard():
    # sigma = 1, tiny tau, huge k pushes the maximizer past 2^52
    with pytest.raises(ValueError):
        assoc_t(GevreyParams(0.4, 1.0), 1e17)

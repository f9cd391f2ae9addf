import json
import pathlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zalpha.cartesian import (
    DiagonalMultiplier,
    indicator,
    interleave_order,
    multiplier_apply,
    multiplier_constant_estimate,
    split_bound,
    u_merge,
    u_norm_estimate,
    u_split,
)
from zalpha.linalg import trial_rng
from zalpha.zspace import ZPoint, add, draw_point, pad, zero_point, znorm, direct_sum_norm

from conftest import complex_entry
from test_zspace import points

ORACLE = json.loads((pathlib.Path(__file__).parent / "data" / "oracle_values.json").read_text())


def test_u_split_example():
    xi = np.array([1, 2j, 3, 4j])
    odd, even = u_split(ZPoint(xi, np.zeros(4), 1.0))
    np.testing.assert_array_equal(odd.x, [1, 3])
    np.testing.assert_array_equal(even.x, [2j, 4j])
    assert odd.alpha == even.alpha == 1.0
    np.testing.assert_array_equal(odd.y, 0)


def test_u_split_zero_and_odd_length():
    a, b = u_split(zero_point(6, 2.0))
    assert a == zero_point(3, 2.0) and b == zero_point(3, 2.0)
    odd, even = u_split(ZPoint([1, 2, 3], [4, 5, 6], 0.0))
    np.testing.assert_array_equal(odd.x, [1, 3])
    np.testing.assert_array_equal(even.x, [2, 0])


def test_u_merge_example_and_errors():
    m = u_merge(ZPoint([1, 3], [0, 0], 1), ZPoint([2, 4], [0, 0], 1))
    np.testing.assert_array_equal(m.x, [1, 2, 3, 4])
    assert u_merge(zero_point(2, 1), zero_point(2, 1)) == zero_point(4, 1)
    with pytest.raises(ValueError):
        u_merge(zero_point(2, 1), zero_point(2, -1))
    with pytest.raises(ValueError):
        u_merge(zero_point(2, 1), zero_point(3, 1))


@given(points())
def test_round_trips_bit_exact(p):
    q = pad(p, p.dim + p.dim % 2)
    assert u_merge(*u_split(q)) == q
    a, b = u_split(q)
    a2, b2 = u_split(u_merge(a, b))
    assert a2 == a and b2 == b


def test_interleave_order_is_permutation():
    for n1 in range(5):
        for n2 in range(5):
            order = interleave_order(n1, n2)
            assert sorted(order) == list(range(n1 + n2))


def test_multiplier_examples():
    p = ZPoint([1, 1], [0, 0], 1.0)
    ones = DiagonalMultiplier(np.ones(2))
    assert multiplier_apply(ones, p) == p
    assert znorm(multiplier_apply(DiagonalMultiplier(np.zeros(2)), p)) == 0
    r = znorm(multiplier_apply(DiagonalMultiplier([1, 0]), p)) / znorm(p)
    assert r == pytest.approx(ORACLE["multiplier_10_on_11_alpha1"], rel=1e-14)
    assert r == pytest.approx(0.525117, abs=1e-4)
    with pytest.raises(ValueError):
        multiplier_apply(DiagonalMultiplier([1, 2, 3]), p)


def test_spike_with_unimodular_multiplier_has_ratio_one(rng):
    for _ in range(20):
        n = 16
        x = np.zeros(n, dtype=complex)
        x[rng.integers(n)] = rng.standard_normal() + 1j
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        p = ZPoint(x, y * (x != 0), 1.0)
        s = DiagonalMultiplier(np.exp(2j * np.pi * rng.random(n)))
        assert znorm(multiplier_apply(s, p)) / znorm(p) == pytest.approx(1.0, rel=1e-15)


exact_units = st.sampled_from([0, 1, -1, 1j, -1j])


@given(points(min_size=2, max_size=8), st.data())
def test_multiplier_composition_bit_exact_on_units(p, data):
    s = np.array(data.draw(st.lists(exact_units, min_size=p.dim, max_size=p.dim)), dtype=complex)
    t = np.array(data.draw(st.lists(exact_units, min_size=p.dim, max_size=p.dim)), dtype=complex)
    S, T = DiagonalMultiplier(s), DiagonalMultiplier(t)
    assert multiplier_apply(S * T, p) == multiplier_apply(S, multiplier_apply(T, p))


@given(points(min_size=2, max_size=8), st.data())
def test_multiplier_composition_general(p, data):
    # complex products are not associative in floating point: rounding level only
    s = np.array(data.draw(st.lists(complex_entry, min_size=p.dim, max_size=p.dim)))
    t = np.array(data.draw(st.lists(complex_entry, min_size=p.dim, max_size=p.dim)))
    S, T = DiagonalMultiplier(s), DiagonalMultiplier(t)
    a = multiplier_apply(S * T, p)
    b = multiplier_apply(S, multiplier_apply(T, p))
    bound = 4e-16 * np.abs(s) * np.abs(t)
    assert np.all(np.abs(a.x - b.x) <= bound * np.abs(p.x))
    assert np.all(np.abs(a.y - b.y) <= bound * np.abs(p.y))


@given(points())
def test_odd_even_decomposition_bit_exact(p):
    odd = multiplier_apply(indicator(p.dim, "odd"), p)
    even = multiplier_apply(indicator(p.dim, "even"), p)
    assert add(odd, even) == p


@given(points())
def test_split_inequality_chain(p):
    if p.is_zero():
        return
    lhs, rhs = split_bound(p)
    assert lhs <= rhs * (1 + 1e-10)


def test_odd_supported_point_has_forward_ratio_one():
    x = np.array([1, 0, 2j, 0, -1, 0])
    y = np.array([0.5, 0, 1, 0, 3j, 0])
    p = ZPoint(x, y, 1.0)
    odd, even = u_split(p)
    assert even.is_zero()
    assert direct_sum_norm(odd, even) / znorm(p) == pytest.approx(1.0, rel=1e-14)


def test_multiplier_estimate_properties():
    rep = multiplier_constant_estimate(32, 1.0, 200, seed=2)
    assert rep.estimate >= 1.0
    assert rep.recompute() == rep.estimate
    s = np.array([complex(*v) if isinstance(v, list) else v for v in rep.witness["s"]])
    assert np.max(np.abs(s)) <= 1 + 1e-15
    assert multiplier_constant_estimate(32, 1.0, 200, seed=2).estimate == rep.estimate


def test_u_norm_estimate_properties():
    fwd, inv = u_norm_estimate(32, 1.0, 200, seed=2)
    assert fwd.constant_name == "u_forward" and inv.constant_name == "u_inverse"
    assert fwd.recompute() == fwd.estimate and inv.recompute() == inv.estimate
    assert fwd.estimate >= 1.0
    m = multiplier_constant_estimate(32, 1.0, 200, seed=2)
    assert fwd.estimate <= 2 * m.estimate
    with pytest.raises(ValueError):
        u_norm_estimate(7, 1.0, 10)


def test_u_norm_dimension_stability():
    vals = [u_norm_estimate(2**k, 1.0, 60, seed=5)[0].estimate for k in range(4, 13)]
    assert max(vals) / min(vals) <= 4


def test_forward_estimate_dominated_by_indicator_ratios():
    # every forward sample p is also scored by the multiplier estimator with both indicators
    for t in range(30):
        p = draw_point(trial_rng(8, t), 20, ("gaussian", "flat"), 1.0)
        lhs, rhs = split_bound(p)
        assert lhs <= rhs * (1 + 1e-10)

import json
import pathlib

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zalpha.centralizer import f_alpha, log_ratios, omega, quasilinearity_estimate
from zalpha.linalg import l2_norm

from conftest import ALPHAS, alphas, lambdas, vectors

ORACLE = json.loads((pathlib.Path(__file__).parent / "data" / "oracle_values.json").read_text())


def mp_omega(x, alpha, dps=40):
    """Entrywise definition evaluated at ``dps`` digits."""
    with mp.workdps(dps):
        norm = mp.sqrt(mp.fsum(abs(mp.mpc(complex(v))) ** 2 for v in x))
        out = []
        for v in x:
            v = mp.mpc(complex(v))
            if v == 0:
                out.append(mp.mpc(0))
                continue
            t = mp.log(norm / abs(v))
            out.append(v * (mp.exp(mp.mpc(1, alpha) * mp.log(t)) if t != 0 else 0))
        return np.array([complex(z) for z in out])


def test_f_alpha_boundary_values():
    for a in ALPHAS:
        assert f_alpha(0.0, a) == 0
        assert f_alpha(1.0, a) == 1


def test_f_alpha_pinned_value():
    z = f_alpha(0.34657359, 1.0)
    assert z.real == pytest.approx(ORACLE["f1_at_0.34657359_re"], abs=1e-14)
    assert z.imag == pytest.approx(ORACLE["f1_at_0.34657359_im"], abs=1e-14)
    # six-digit pinned value
    assert abs(z - (0.169538 - 0.302287j)) < 1e-5 * np.sqrt(2)


def test_f_alpha_rejects_negative_t():
    with pytest.raises(ValueError):
        f_alpha(-0.1, 1.0)


@given(st.floats(1e-8, 50.0), alphas)
def test_f_alpha_modulus_is_t(t, a):
    assert abs(f_alpha(t, a)) == pytest.approx(t, rel=1e-13)


def test_omega_examples():
    for a in ALPHAS:
        np.testing.assert_array_equal(omega(np.array([1, 0, 0]), a), 0)
        np.testing.assert_array_equal(omega(np.zeros(4), a), 0)
    expected = complex(ORACLE["f1_ln_sqrt2_re"], ORACLE["f1_ln_sqrt2_im"])
    np.testing.assert_allclose(omega(np.array([1, 1]), 1.0), [expected, expected], rtol=1e-14)


def test_omega_batches_match_rows(rng):
    X = rng.standard_normal((5, 7)) + 1j * rng.standard_normal((5, 7))
    X[2] = 0
    X[3, 1:] = 0
    batch = omega(X, 0.7)
    for row, out in zip(X, batch):
        np.testing.assert_array_equal(omega(row, 0.7), out)


@given(vectors(), alphas)
def test_omega_matches_high_precision_definition(x, a):
    got = omega(x, a)
    want = mp_omega(x, a)
    scale = max(l2_norm(x), 1e-300)
    assert np.all(np.abs(got - want) <= 1e-12 * scale)


@given(vectors(), alphas)
def test_modulus_identity(x, a):
    got = np.abs(omega(x, a))
    with mp.workdps(40):
        norm = mp.sqrt(mp.fsum(abs(mp.mpc(complex(v))) ** 2 for v in x))
        want = [float(abs(mp.mpc(complex(v))) * mp.log(norm / abs(mp.mpc(complex(v))))) if v != 0 else 0.0 for v in x]
    np.testing.assert_allclose(got, want, rtol=1e-10, atol=0)


@given(vectors(), lambdas, alphas)
def test_homogeneity(x, lam, a):
    lhs = omega(lam * x, a)
    rhs = lam * omega(x, a)
    # relative 1e-9, plus an absolute floor at rounding level of ||lam x||
    assert l2_norm(lhs - rhs) <= 1e-9 * l2_norm(rhs) + 1e-14 * abs(lam) * l2_norm(x)


@given(vectors(), alphas)
def test_conjugation_symmetry(x, a):
    lhs = omega(np.conj(x), -a)
    rhs = np.conj(omega(x, a))
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * np.maximum(np.abs(rhs), 1e-300))


@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=10))
def test_alpha_zero_is_real_on_real_vectors(xs):
    out = omega(np.array(xs, dtype=complex), 0.0)
    assert np.all(out.imag == 0)


def test_basis_vectors_are_fixed_points():
    for n in (1, 2, 9, 64):
        for k in range(n):
            e = np.zeros(n, dtype=complex)
            e[k] = 3 - 4j
            assert not np.any(omega(e, 1.3))


def test_log_ratios_precise_near_zero():
    # dominant entry: t = 0.5 * log1p(1e-16) must not round to 0 or to 1e-16 noise
    t = log_ratios(np.array([1e4, 1e-4]))
    assert t[0] == pytest.approx(5e-17, rel=1e-14)


def test_tiny_entries_use_zero_branch():
    x = np.array([1.0, 1e-305])
    np.testing.assert_array_equal(omega(x, 1.0), 0)


def test_quasilinearity_basis_pair():
    e1, e2 = np.array([1.0, 0]), np.array([0, 1.0])
    d = omega(e1 + e2, 1.0) - omega(e1, 1.0) - omega(e2, 1.0)
    assert l2_norm(d) / 2 == pytest.approx(ORACLE["quasilinearity_e1_e2_alpha1"], abs=1e-12)
    assert l2_norm(d) / 2 == pytest.approx(0.245065, abs=1e-6)


@given(vectors(min_size=2), alphas)
def test_quasilinearity_vanishes_on_equal_pairs(x, a):
    d = omega(2 * x, a) - 2 * omega(x, a)
    assert l2_norm(d) <= 1e-12 * max(l2_norm(x), 1e-300)


def test_quasilinearity_estimate_reproducible_and_monotone():
    a = quasilinearity_estimate(32, 1.0, 200, seed=4)
    b = quasilinearity_estimate(32, 1.0, 200, seed=4)
    assert a.estimate == b.estimate
    assert a.recompute() == a.estimate
    more = quasilinearity_estimate(32, 1.0, 400, seed=4)
    assert more.estimate >= a.estimate
    assert 0 < a.estimate < np.inf


def test_quasilinearity_estimate_validates():
    with pytest.raises(ValueError):
        quasilinearity_estimate(0, 1.0, 10)
    with pytest.raises(ValueError):
        quasilinearity_estimate(4, 1.0, 0)
    with pytest.raises(ValueError):
        quasilinearity_estimate(4, 1.0, 5, families=("cauchy",))


def test_quasilinearity_single_family():
    rep = quasilinearity_estimate(16, 1.0, 50, families=("spike",), seed=0)
    assert rep.families == ("spike",)
    # two spikes span at most two coordinates, and t*ln(1/t) <= 1/e, so the
    # defect is at most sqrt(2)/e times ||x + y|| <= ||x|| + ||y||
    assert 0 <= rep.estimate <= np.sqrt(2) / np.e

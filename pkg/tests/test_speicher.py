from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quonlib import speicher
from quonlib.qfock import parse_word
from quonlib.speicher import (expectation_given_signs, expected_over_signs,
                              mc_estimate, quon_target, sample_sign_matrix)


def test_sign_matrix_properties():
    sm = sample_sign_matrix(20, 0.3, np.random.default_rng(0))
    assert np.array_equal(sm.signs, sm.signs.T)
    assert np.all(np.diag(sm.signs) == 1)
    assert set(np.unique(sm.signs)) <= {-1, 1}


def test_sign_matrix_extremes():
    plus = sample_sign_matrix(8, 1.0, np.random.default_rng(1))
    assert np.all(plus.signs == 1)
    minus = sample_sign_matrix(8, -1.0, np.random.default_rng(1))
    off = ~np.eye(8, dtype=bool)
    assert np.all(minus.signs[off] == -1)


def test_sign_matrix_rejects_bad_q():
    with pytest.raises(ValueError):
        sample_sign_matrix(4, 1.5, np.random.default_rng(0))


def test_bose_corner_is_exact():
    # all-plus signs reproduce the Bose value for every N
    word = parse_word("a1 a1 c1 c1")
    for n in (1, 3, 10):
        sm = sample_sign_matrix(n, 1.0, np.random.default_rng(0))
        assert expectation_given_signs(word, sm) == 2
    assert quon_target(word, 1.0) == 2.0


def test_single_chord_is_sign_free():
    word = parse_word("a1 c1")
    sm = sample_sign_matrix(5, -0.7, np.random.default_rng(3))
    assert expectation_given_signs(word, sm) == 1


def test_expectation_given_signs_exact_value():
    # N=2 crossing diagram: (N + sum of off-diagonal signs pairings)/N^2
    word = parse_word("a1 a2 c1 c2")
    signs = np.array([[1, -1], [-1, 1]], dtype=np.int64)
    sm = speicher.SignMatrix(n_components=2, signs=signs)
    # assignments: (0,0),(1,1) give +1 each; (0,1),(1,0) give -1 each
    assert expectation_given_signs(word, sm) == Fraction(0)


def test_expected_over_signs_matches_brute_force():
    # enumerate all sign matrices for small N and average explicitly
    word = parse_word("a1 a1 c1 c1")
    q = Fraction(1, 3)
    n = 2
    prob_plus = (1 + q) / 2
    total = Fraction(0)
    for s01 in (1, -1):
        signs = np.array([[1, s01], [s01, 1]], dtype=np.int64)
        sm = speicher.SignMatrix(n_components=n, signs=signs)
        p = prob_plus if s01 == 1 else 1 - prob_plus
        total += p * expectation_given_signs(word, sm)
    assert expected_over_signs(word, q, n) == total


def test_expected_over_signs_three_chords():
    word = parse_word("a1 a1 a1 c1 c1 c1")
    q = Fraction(-1, 2)
    n = 2
    prob_plus = (1 + q) / 2
    total = Fraction(0)
    for s01 in (1, -1):
        signs = np.array([[1, s01], [s01, 1]], dtype=np.int64)
        sm = speicher.SignMatrix(n_components=n, signs=signs)
        p = prob_plus if s01 == 1 else 1 - prob_plus
        total += p * expectation_given_signs(word, sm)
    assert expected_over_signs(word, q, n) == total


def test_expected_over_signs_converges_to_quon():
    word = parse_word("a1 a2 c1 c2")
    q = Fraction(1, 2)
    target = Fraction(1, 2)  # q^1 for the single crossing diagram
    gaps = [abs(expected_over_signs(word, q, n) - target)
            for n in (2, 8, 32)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_mc_estimate_reproducible():
    word = parse_word("a1 a2 c1 c2")
    a = mc_estimate(word, 0.5, 50, 40, seed=11)
    b = mc_estimate(word, 0.5, 50, 40, seed=11)
    assert a == b
    c = mc_estimate(word, 0.5, 50, 40, seed=12)
    assert c.mean != a.mean


def test_mc_estimate_matches_closed_form():
    word = parse_word("a1 a2 c1 c2")
    q = 0.5
    n = 40
    est = mc_estimate(word, q, n, 3000, seed=2024)
    want = float(expected_over_signs(word, Fraction(1, 2), n))
    assert abs(est.mean - want) < 4 * est.stderr + 1e-12


def test_mc_estimate_requires_samples():
    with pytest.raises(ValueError):
        mc_estimate(parse_word("a1 c1"), 0.0, 4, 1, seed=0)


def test_quon_target_examples():
    assert quon_target(parse_word("a1 c1"), 0.37) == 1.0
    assert quon_target(parse_word("a1 a1 c1 c1"), 0.25) == pytest.approx(1.25)
    assert quon_target(parse_word("a1 c2"), 0.5) == 0.0


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.fractions(min_value=-1, max_value=1))
def test_fixed_sign_expectation_bounded(n, q):
    # |finite-N expectation| is at most the number of contractions
    word = parse_word("a1 a1 c1 c1")
    sm = sample_sign_matrix(n, float(q), np.random.default_rng(42))
    val = expectation_given_signs(word, sm)
    assert abs(val) <= 2

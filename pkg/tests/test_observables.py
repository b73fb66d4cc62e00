from fractions import Fraction

import pytest

from quonlib import observables as obs
from quonlib.observables import (NonzeroQError, TruncatedFockSpace,
                                 TruncationError, apply_terms_q0,
                                 transition_operator)


@pytest.fixture
def space():
    return TruncatedFockSpace(modes=(0, 1, 2), cap=3)


def test_space_basis(space):
    assert space.dim == 1 + 3 + 9 + 27
    assert () in space.basis
    assert len(space.states_below_cap()) == 1 + 3 + 9


def test_requires_q_zero():
    with pytest.raises(NonzeroQError):
        transition_operator(0, 1, 1, (0, 1), q=Fraction(1, 2))


def test_transition_operator_term_count(space):
    # depth d contributes len(modes)^d words
    terms = transition_operator(0, 1, 2, space.modes)
    assert len(terms) == 1 + 3 + 9
    word0, coeff0 = terms[0]
    assert word0 == (("c", 0), ("a", 1))
    assert coeff0 == 1


def test_depth_one_word_shape():
    (w,) = [w for w, _ in transition_operator(0, 1, 1, (2,))][1:]
    assert w == (("c", 2), ("c", 0), ("a", 1), ("a", 2))


def test_apply_terms_examples(space):
    n01 = transition_operator(0, 1, 2, space.modes)
    assert apply_terms_q0(n01, {(1,): 1}, space.cap) == {(0,): 1}
    assert apply_terms_q0(n01, {(): 1}, space.cap) == {}
    # the deep terms repair the leftmost-only annihilator action
    assert apply_terms_q0(n01, {(2, 1): 1}, space.cap) == {(2, 0): 1}


def test_annihilator_leftmost_only():
    out = obs._apply_symbol_q0(("a", 1), {(1, 1): 1}, 3)
    assert out == {(1,): 1}
    assert obs._apply_symbol_q0(("a", 1), {(2, 1): 1}, 3) == {}


def test_creator_respects_cap():
    with pytest.raises(TruncationError):
        obs._apply_symbol_q0(("c", 0), {(0, 0): 1}, 2)


def test_commutator_exact_at_sufficient_depth(space):
    for k in space.modes:
        for l in space.modes:
            for m in space.modes:
                rep = obs.check_transition_commutator(space, k, l, m,
                                                      depth=space.cap - 1)
                assert rep["exact"], (k, l, m)
                assert rep["max_residual"] == 0


def test_shallow_depth_rejected(space):
    with pytest.raises(ValueError):
        obs.check_transition_commutator(space, 0, 1, 1, depth=1)


def test_undeepened_series_fails():
    # with no correction terms the commutator misses multi-particle states
    space = TruncatedFockSpace(modes=(0, 1), cap=2)
    res = obs.commutator_residual(space, 0, 1, 1, depth=0)
    assert res  # nonzero residual on at least one state


def test_free_hamiltonian_diagonal(space):
    energies = {0: Fraction(1, 2), 1: 2, 2: Fraction(7, 3)}
    rep = obs.check_free_hamiltonian(space, energies)
    assert rep["exact"]


def test_free_hamiltonian_missing_energy(space):
    with pytest.raises(ValueError):
        obs.free_hamiltonian_terms(space, {0: 1})


def test_locality_discrete(space):
    rep = obs.locality_check_discrete(space, 0, 1, 1)
    assert rep["exact"]
    assert rep["annihilates_vacuum"]
    rep2 = obs.locality_check_discrete(space, 0, 1, 2)
    assert rep2["exact"]  # delta vanishes, commutator still zero


def test_adjoint_pairs(space):
    assert obs.adjoint_pair_check(space, 0, 1)
    assert obs.adjoint_pair_check(space, 1, 2)

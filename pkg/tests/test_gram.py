import numpy as np
import pytest

from quonlib import gram
from quonlib.qpoly import QPoly

Q = QPoly.q()
ONE = QPoly.one()


def test_gram_n1():
    g = gram.gram_matrix(1)
    assert g.entries == ((ONE,),)


def test_gram_n2():
    g = gram.gram_matrix(2)
    assert g.entries == ((ONE, Q), (Q, ONE))


def test_gram_n3_selected_entries():
    g = gram.gram_matrix(3)
    identity = g.perms.index((0, 1, 2))
    adjacent = g.perms.index((1, 0, 2))
    cycle = g.perms.index((1, 2, 0))
    assert g.entries[identity][adjacent] == Q
    assert g.entries[identity][cycle] == Q * Q


def test_gram_symmetric_unit_diagonal():
    g = gram.gram_matrix(3)
    for i in range(g.dim):
        assert g.entries[i][i] == ONE
        for j in range(g.dim):
            assert g.entries[i][j] == g.entries[j][i]


def test_entries_are_inversion_monomials():
    for n in (2, 3, 4):
        g = gram.gram_matrix(n)
        for i, s in enumerate(g.perms):
            for j, t in enumerate(g.perms):
                tinv = [0] * n
                for pos, x in enumerate(t):
                    tinv[x] = pos
                rel = tuple(tinv[x] for x in s)
                assert g.entries[i][j] == QPoly.monomial(gram.inversions(rel))


def test_zagier_formula_small():
    assert gram.zagier_determinant(1) == ONE
    assert gram.zagier_determinant(2) == ONE - Q ** 2
    assert gram.zagier_determinant(3) == (ONE - Q ** 2) ** 6 * (ONE - Q ** 6)


def test_det_exact_small_matrices():
    assert gram.det_exact([[ONE, QPoly.zero()], [QPoly.zero(), ONE]]) == ONE
    assert gram.det_exact(gram.gram_matrix(2).entries) == ONE - Q ** 2


def test_det_matches_zagier():
    for n in (2, 3, 4):
        assert gram.det_gram_exact(n) == gram.zagier_determinant(n)


def test_det_exact_interpolation_path():
    # force the evaluation-interpolation branch with a 24x24 matrix
    det = gram.det_exact(gram.gram_matrix(4).entries)
    assert det == gram.zagier_determinant(4)


def test_exact_limit_enforced():
    with pytest.raises(gram.GramLimitError):
        gram.det_gram_exact(5)
    with pytest.raises(gram.GramLimitError):
        gram.gram_matrix(9)


def test_positivity_scan_examples():
    ((_, e0),) = gram.positivity_scan(2, [0.0])
    assert e0 == pytest.approx(1.0)
    ((_, e),) = gram.positivity_scan(2, [0.5])
    assert e == pytest.approx(0.5)
    ((_, e3),) = gram.positivity_scan(3, [0.9])
    assert e3 > 0


def test_positivity_scan_rejects_endpoints():
    with pytest.raises(ValueError):
        gram.positivity_scan(2, [1.0])


def test_positivity_inside_interval():
    for n in (2, 3, 4):
        scan = gram.positivity_scan(n, list(np.linspace(-0.98, 0.98, 25)))
        assert all(e > 1e-12 for _, e in scan)


def test_rank_collapse_at_limits():
    assert gram.rank_at_limit(1, 1) == 1
    for n in (2, 3, 4):
        assert gram.rank_at_limit(n, 1) == 1
        assert gram.rank_at_limit(n, -1) == 1


def test_limit_eigenvector_is_sign_vector():
    for n in (2, 3):
        for sign in (1, -1):
            ok, eig = gram.limit_eigenvector_check(n, sign)
            assert ok
            assert eig == [1, 2, 6][n - 1]


def test_n5_float_agreement():
    g = gram.gram_matrix(5)
    for x in np.linspace(-0.9, 0.9, 7):
        dv = float(np.linalg.det(g.evaluate_float(x)))
        zv = gram.zagier_eval_float(5, x)
        assert dv == pytest.approx(zv, rel=1e-9)


def test_interpolation_helper_roundtrip():
    p = QPoly([3, -2, 0, 5])
    points = list(range(-2, 3))
    values = [p(x) for x in points]
    assert gram._interpolate_newton(points, values) == p

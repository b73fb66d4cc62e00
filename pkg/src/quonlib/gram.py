"""Gram matrices of n-quon states and the Zagier determinant identity.

The n! orderings of n distinct-mode creators applied to the vacuum span
an n!-dimensional space for |q| < 1; the matrix of their inner products
has the closed-form determinant

    det M_n(q) = prod_{k=1}^{n-1} (1 - q^{k(k+1)})^{(n-k) n!/(k(k+1))}

whose zeros all sit on the unit circle, so the norms stay positive on
-1 < q < 1.  At q = +-1 the matrix collapses to rank one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qfock import q_inner_product
from .qpoly import QPoly

# largest n for which the exact n! x n! polynomial determinant is attempted
EXACT_LIMIT = 4
# largest n the module builds at all
BUILD_LIMIT = 6


class GramLimitError(ValueError):
    """Requested size exceeds the configured resource limit."""


@dataclass(frozen=True)
class GramMatrix:
    n: int
    perms: tuple            # lexicographic one-line permutations of range(n)
    entries: tuple          # n! x n! tuple-of-tuples of QPoly

    @property
    def dim(self):
        return len(self.perms)

    def evaluate(self, x):
        """Numeric matrix at q = x (float or Fraction)."""
        return [[e(x) for e in row] for row in self.entries]

    def evaluate_float(self, x):
        return np.array(self.evaluate(float(x)), dtype=float)


def inversions(perm):
    perm = tuple(perm)
    return sum(perm[i] > perm[j]
               for i in range(len(perm)) for j in range(i + 1, len(perm)))


def gram_matrix(n, limit=BUILD_LIMIT):
    """Inner products of all orderings of n distinct-mode creators.

    Entries are computed through the free-Fock annihilator action, not
    from the inversion-count shortcut, so the matrix doubles as an oracle
    for that closed form.
    """
    if not 1 <= n <= limit:
        raise GramLimitError(f"n={n} outside supported range 1..{limit}")
    labels = tuple(range(n))
    perms = tuple(itertools.permutations(labels))
    words = [tuple(p) for p in perms]
    entries = tuple(
        tuple(q_inner_product(u, v) for v in words) for u in words)
    return GramMatrix(n=n, perms=perms, entries=entries)


def zagier_determinant(n):
    """Expand the closed-form product for det M_n(q) exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    out = QPoly.one()
    for k in range(1, n):
        e, rem = divmod((n - k) * fact, k * (k + 1))
        assert rem == 0
        base = QPoly.one() - QPoly.monomial(k * (k + 1))
        out = out * base ** e
    return out


def zagier_eval_float(n, x):
    """Float value of det M_n at q = x via the product form.

    The expanded polynomial has huge alternating coefficients (degree
    1200 already at n = 5) and is numerically useless in floats; the
    product form is accurate.
    """
    out = 1.0
    for base, e in zagier_factors(n):
        out *= float(base(float(x))) ** e
    return out


def zagier_factors(n):
    """The (base, exponent) list of the product form, without expanding."""
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return [(QPoly.one() - QPoly.monomial(k * (k + 1)),
             (n - k) * fact // (k * (k + 1)))
            for k in range(1, n)]


# -- exact determinants ----------------------------------------------------


def _det_bareiss_int(rows):
    """Fraction-free Bareiss determinant of an integer matrix (destructive)."""
    m = len(rows)
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(m - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, m):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = rows[k][k]
        for i in range(k + 1, m):
            rik = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, m):
                ri[j] = (pk * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[m - 1][m - 1]


def _det_bareiss_poly(rows):
    """Bareiss over the polynomial ring; exact_div is guaranteed to succeed."""
    m = len(rows)
    if m == 0:
        return QPoly.one()
    sign = 1
    prev = QPoly.one()
    for k in range(m - 1):
        if rows[k][k].is_zero():
            for i in range(k + 1, m):
                if not rows[i][k].is_zero():
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return QPoly.zero()
        pk = rows[k][k]
        for i in range(k + 1, m):
            rik = rows[i][k]
            for j in range(k + 1, m):
                rows[i][j] = (pk * rows[i][j] - rik * rows[k][j]).exact_div(prev)
            rows[i][k] = QPoly.zero()
        prev = pk
    det = rows[m - 1][m - 1]
    return -det if sign < 0 else det


def _interpolate_newton(points, values):
    """Exact Newton interpolation through (points[i], values[i])."""
    n = len(points)
    coeffs = [Fraction(v) for v in values]  # divided differences, in place
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (
                points[i] - points[i - level])
    # expand the Newton form into monomial coefficients
    poly = QPoly.zero()
    for i in range(n - 1, -1, -1):
        poly = poly * (QPoly.q() - QPoly.const(points[i])) + QPoly.const(coeffs[i])
    return poly


def det_exact(entries):
    """Exact determinant of a square matrix of QPoly entries.

    Small matrices go through polynomial Bareiss elimination directly.
    Larger ones are evaluated at enough integer points (integer Bareiss
    per point, still fraction-free) and interpolated back; the result is
    identical and exact.
    """
    m = len(entries)
    if any(len(row) != m for row in entries):
        raise ValueError("matrix is not square")
    if m <= 8:
        rows = [list(row) for row in entries]
        return _det_bareiss_poly(rows)
    bound = sum(max((e.degree for e in row if not e.is_zero()), default=0)
                for row in entries)
    # symmetric integer sample points keep the magnitudes down
    points = [0]
    t = 1
    while len(points) < bound + 1:
        points.append(t)
        if len(points) < bound + 1:
            points.append(-t)
        t += 1
    values = []
    for x in points:
        rows = [[int(e(x)) for e in row] for row in entries]
        values.append(_det_bareiss_int(rows))
    return _interpolate_newton(points, values)


def det_gram_exact(n, limit=EXACT_LIMIT):
    if n > limit:
        raise GramLimitError(
            f"exact determinant limited to n <= {limit}, got n={n}")
    return det_exact(gram_matrix(n).entries)


# -- numeric checks --------------------------------------------------------


def positivity_scan(n, q_samples):
    """Minimum eigenvalue of M_n(q) at each sampled q in (-1, 1).

    Not meaningful as a positivity claim at q -> +-1, where the
    determinant zeros sit on the unit circle.
    """
    for x in q_samples:
        if not -1 < float(x) < 1:
            raise ValueError(f"sample {x} not strictly inside (-1, 1)")
    g = gram_matrix(n)
    out = []
    for x in q_samples:
        eig = np.linalg.eigvalsh(g.evaluate_float(x))
        out.append((float(x), float(eig.min())))
    return out


def _rank_exact(rows):
    """Rank of a matrix of Fractions by Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in rows]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    rank = 0
    col = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, m) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, m):
            if rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def rank_at_limit(n, sign):
    """Exact rank of M_n(q) evaluated at q = +1 or q = -1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = gram_matrix(n)
    return _rank_exact(g.evaluate(sign))


def limit_eigenvector_check(n, sign):
    """At q = +-1 the surviving state is the totally (anti)symmetric one:
    the vector of signs is an eigenvector with eigenvalue n!.  Returns
    (holds exactly, n!)."""
    g = gram_matrix(n)
    mat = g.evaluate(sign)
    vec = [1 if sign == 1 else (-1) ** inversions(p) for p in g.perms]
    fact = len(g.perms)
    ok = all(sum(row[j] * vec[j] for j in range(fact)) == fact * vec[i]
             for i, row in enumerate(mat))
    return ok, fact

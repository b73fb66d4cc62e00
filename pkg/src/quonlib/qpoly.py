"""Exact univariate polynomials in the deformation parameter q.

This is the scalar ring of the whole package.  Coefficients are exact
Python integers (or Fractions where a division has occurred); evaluation
at a Fraction is exact, at a float it is ordinary IEEE arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


def _normalize(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    # collapse Fractions with denominator 1 back to int
    return tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c
                 for c in coeffs)


class QPoly:
    """Dense polynomial in q, constant term first.  Immutable and hashable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("QPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls):
        return _ZERO

    @classmethod
    def one(cls):
        return _ONE

    @classmethod
    def q(cls):
        return _Q

    @classmethod
    def monomial(cls, power, coeff=1):
        if coeff == 0:
            return _ZERO
        return cls([0] * power + [coeff])

    @classmethod
    def const(cls, c):
        return cls([c])

    # -- ring structure ------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other):
        """Divide by `other`, raising ValueError unless the division is exact."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        div = other.coeffs
        dq = len(div) - 1
        lead = Fraction(div[-1])
        if len(rem) - 1 < dq:
            if any(rem):
                raise ValueError("not exactly divisible")
            return _ZERO
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            quot[i - dq] = c
            if c:
                for j, d in enumerate(div):
                    rem[i - dq + j] -= c * d
        if any(rem):
            raise ValueError("not exactly divisible")
        return QPoly(quot)

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- evaluation / serialization ------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction x, IEEE for float x."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def coefficient(self, power):
        return self.coeffs[power] if power < len(self.coeffs) else 0

    def to_json(self):
        """JSON form: array of coefficient strings, constant term first."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, arr):
        return cls([Fraction(s) for s in arr])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "q" if i == 1 else f"q^{i}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"QPoly({list(self.coeffs)!r})"


def _coerce(x):
    if isinstance(x, QPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return QPoly([x])
    raise TypeError(f"cannot coerce {type(x).__name__} into QPoly")


_ZERO = QPoly([])
_ONE = QPoly([1])
_Q = QPoly([0, 1])

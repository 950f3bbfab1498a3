"""Laurent polynomials with real coefficients over an exact or float field."""

from fractions import Fraction

import numpy as np

from .errors import ModeMismatch, ZeroConstantTerm
from .scalars import DEFAULT_TOL, FLOAT, RATIONAL, coerce, convert, field_of, parse_scalar, to_json_scalar


class LaurentPoly:
    """Finitely supported ``sum c_k z^k`` stored densely from the lowest exponent.

    Instances are immutable and always trimmed, so two exact polynomials are
    equal iff their stored data are equal.  The zero polynomial has no
    coefficients; its ``min_exp``/``max_exp`` are ``None``.
    """

    __slots__ = ("lowest_exponent", "coefficients", "field")

    def __init__(self, coefficients=(), lowest_exponent=0, field=None):
        coefficients = list(coefficients)
        if field is None:
            field = _infer_field(coefficients)
        coeffs = [coerce(c, field) for c in coefficients]
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coefficients", tuple(coeffs[lo:hi]))
        object.__setattr__(self, "lowest_exponent", lowest_exponent + lo if hi > lo else 0)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field=RATIONAL):
        return cls((), 0, field)

    @classmethod
    def constant(cls, value, field=None):
        return cls((value,), 0, field)

    @classmethod
    def monomial(cls, value, exponent, field=None):
        return cls((value,), exponent, field)

    @classmethod
    def from_dict(cls, terms, field=None):
        """Build from ``{exponent: coefficient}``."""
        if not terms:
            return cls.zero(field or RATIONAL)
        lo, hi = min(terms), max(terms)
        if field is None:
            field = _infer_field(list(terms.values()))
        zero = coerce(0, field)
        return cls([terms.get(k, zero) for k in range(lo, hi + 1)], lo, field)

    # -- structure --------------------------------------------------------

    @property
    def min_exp(self):
        return self.lowest_exponent if self.coefficients else None

    @property
    def max_exp(self):
        if not self.coefficients:
            return None
        return self.lowest_exponent + len(self.coefficients) - 1

    def is_zero(self):
        return not self.coefficients

    def coeff(self, k):
        i = k - self.lowest_exponent
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return coerce(0, self.field)

    def terms(self):
        """Yield ``(exponent, coefficient)`` pairs for nonzero coefficients."""
        for i, c in enumerate(self.coefficients):
            if c != 0:
                yield self.lowest_exponent + i, c

    def to_dict(self):
        return dict(self.terms())

    def dense(self, lo, hi):
        """Coefficient list for exponents ``lo..hi`` inclusive."""
        return [self.coeff(k) for k in range(lo, hi + 1)]

    def in_range(self, lo, hi):
        """True when the support lies within exponents ``lo..hi``."""
        return self.is_zero() or (self.min_exp >= lo and self.max_exp <= hi)

    def to_field(self, field):
        if field == self.field:
            return self
        return LaurentPoly([convert(c, field) for c in self.coefficients], self.lowest_exponent, field)

    # -- algebra ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, field=self.field)
        if other.field != self.field:
            raise ModeMismatch(f"cannot combine {self.field} and {other.field} polynomials")
        return other

    def __add__(self, other):
        other = self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lowest_exponent, other.lowest_exponent)
        hi = max(self.max_exp, other.max_exp)
        return LaurentPoly(
            [a + b for a, b in zip(self.dense(lo, hi), other.dense(lo, hi))], lo, self.field
        )

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coefficients], self.lowest_exponent, self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero(self.field)
        lo = self.lowest_exponent + other.lowest_exponent
        if self.field == FLOAT:
            prod = np.convolve(self.coefficients, other.coefficients)
            return LaurentPoly([float(c) for c in prod], lo, FLOAT)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return LaurentPoly(out, lo, RATIONAL)

    __rmul__ = __mul__

    def scale(self, c):
        c = coerce(c, self.field)
        return LaurentPoly([c * x for x in self.coefficients], self.lowest_exponent, self.field)

    def __truediv__(self, c):
        c = coerce(c, self.field)
        return LaurentPoly([x / c for x in self.coefficients], self.lowest_exponent, self.field)

    def shift(self, k):
        """Multiply by ``z**k``."""
        return LaurentPoly(self.coefficients, self.lowest_exponent + k, self.field)

    # -- the named operations ---------------------------------------------

    def tilde(self):
        """``sum c_k z^-k`` (real coefficients, so no conjugation)."""
        if self.is_zero():
            return self
        return LaurentPoly(self.coefficients[::-1], -self.max_exp, self.field)

    def neg_part(self):
        """Terms with strictly negative exponents."""
        return self.truncate(None, -1)

    def pos_part(self):
        """Terms with nonnegative exponents (constants included)."""
        return self.truncate(0, None)

    def truncate(self, lo=None, hi=None):
        """Keep exponents in ``[lo, hi]``; ``None`` leaves that side open."""
        if self.is_zero():
            return self
        lo = self.min_exp if lo is None else max(lo, self.min_exp)
        hi = self.max_exp if hi is None else min(hi, self.max_exp)
        if lo > hi:
            return LaurentPoly.zero(self.field)
        return LaurentPoly(self.dense(lo, hi), lo, self.field)

    def evaluate(self, z):
        """Horner evaluation at a nonzero point."""
        if self.is_zero():
            return coerce(0, self.field)
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc * z**self.lowest_exponent if self.lowest_exponent else acc

    def evaluate_at_one(self):
        return sum(self.coefficients, coerce(0, self.field))

    def substitute_neg_z(self):
        """``p(-z)``: flips the sign of odd-exponent coefficients."""
        lo = self.lowest_exponent
        return LaurentPoly(
            [-c if (lo + i) % 2 else c for i, c in enumerate(self.coefficients)], lo, self.field
        )

    def max_abs_coefficient(self):
        return max((abs(c) for c in self.coefficients), default=coerce(0, self.field))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.lowest_exponent == other.lowest_exponent
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.field, self.lowest_exponent, self.coefficients))

    def allclose(self, other, tol=DEFAULT_TOL):
        """Coefficientwise ``|a_k - b_k| <= tol``; fields may differ."""
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, field=field_of(other) or self.field)
        diff = self.to_field(FLOAT) - other.to_field(FLOAT)
        return diff.max_abs_coefficient() <= tol

    def __repr__(self):
        if self.is_zero():
            return f"LaurentPoly(0, field={self.field!r})"
        return (
            f"LaurentPoly({[to_json_scalar(c) for c in self.coefficients]!r}, "
            f"lowest_exponent={self.lowest_exponent}, field={self.field!r})"
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in self.terms():
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{k}")
        return " + ".join(parts)

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "lowest_exponent": self.lowest_exponent,
            "coefficients": [to_json_scalar(c) for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        coeffs = [parse_scalar(c, field) for c in obj["coefficients"]]
        if field is None:
            field = _infer_field(coeffs)
        return cls(coeffs, int(obj.get("lowest_exponent", 0)), field)


def _infer_field(values):
    fields = {field_of(v) for v in values} - {None}
    if len(fields) > 1:
        raise ModeMismatch("coefficients mix rational and float values")
    return fields.pop() if fields else RATIONAL


# Module-level spellings of the operations, for callers that prefer functions.

def tilde(p):
    return p.tilde()


def neg_part(p):
    return p.neg_part()


def pos_part(p):
    return p.pos_part()


def add(p, q):
    return p + q


def sub(p, q):
    return p - q


def mul(p, q):
    return p * q


def scale(p, c):
    return p.scale(c)


def evaluate_at_one(p):
    return p.evaluate_at_one()


def substitute_neg_z(p):
    return p.substitute_neg_z()


def series_inverse_trunc(p, n):
    """Taylor coefficients of ``1/p`` at 0 through degree ``n``.

    ``p`` must be an ordinary polynomial with ``p(0) != 0``.  In the rational
    field the result is exact.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not p.is_zero() and p.min_exp < 0:
        raise ValueError("series_inverse_trunc needs a polynomial without negative powers")
    a0 = p.coeff(0)
    if a0 == 0:
        raise ZeroConstantTerm("p(0) == 0: 1/p has no Taylor expansion at 0")
    a = p.dense(0, n)
    inv = [coerce(1, p.field) / a0]
    for k in range(1, n + 1):
        acc = coerce(0, p.field)
        for j in range(1, k + 1):
            if a[j] != 0:
                acc += a[j] * inv[k - j]
        inv.append(-acc / a0)
    return LaurentPoly(inv, 0, p.field)

"""Exact arithmetic in Q and in a single real quadratic field Q(sqrt(k)).

Rationals are plain :class:`fractions.Fraction` values (aliased ``Rat``).
:class:`QuadNum` represents ``a + b*sqrt(k)`` with ``a, b`` rational and
``k`` a square-free positive integer, or ``k = 0`` when the value is
rational.  Arithmetic between two irrational values with different
radicands raises :class:`MixedRadicand`; the one escape hatch is
:func:`compare_mixed`, which orders numbers from different fields exactly.
"""

from __future__ import annotations

import decimal
import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from sympy import factorint

from .errors import DivisionByZero, MixedRadicand, NegativeRadicand, NotRepresentable

Rat = Fraction

__all__ = [
    "Rat",
    "QuadNum",
    "as_quad",
    "parse_rat",
    "parse_quad",
    "qn_add",
    "qn_mul",
    "qn_neg",
    "qn_inv",
    "qn_cmp",
    "qn_sqrt",
    "compare_mixed",
    "sign_with_surd",
    "squarefree_part",
    "rational_sqrt",
]


@lru_cache(maxsize=4096)
def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` square-free."""
    if n <= 0:
        raise ValueError("squarefree_part expects a positive integer")
    s, k = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    return s, k


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class QuadNum:
    """The real number ``a + b*sqrt(k)``, immutable and normalized.

    >>> QuadNum(1, 1, 5) + QuadNum(2, -1, 5)
    QuadNum(3)
    >>> QuadNum(0, 1, 8)
    QuadNum(0, 2, 2)
    """

    __slots__ = ("_a", "_b", "_k")

    def __init__(self, a=0, b=0, k: int = 0):
        a = _frac(a)
        b = _frac(b)
        k = int(k)
        if k < 0:
            raise NegativeRadicand(f"radicand {k} is negative")
        if b == 0 or k == 0:
            b, k = Fraction(0), 0
        else:
            s, k = squarefree_part(k)
            b *= s
            if k == 1:
                a, b, k = a + b, Fraction(0), 0
        self._a, self._b, self._k = a, b, k

    # -- accessors ---------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def k(self) -> int:
        return self._k

    @property
    def is_rational(self) -> bool:
        return self._k == 0

    def to_rat(self) -> Fraction:
        if self._k:
            raise NotRepresentable(f"{self} is irrational")
        return self._a

    # -- field bookkeeping -------------------------------------------------
    def _common(self, other: QuadNum) -> int:
        if self._k == 0:
            return other._k
        if other._k == 0 or other._k == self._k:
            return self._k
        raise MixedRadicand(f"sqrt({self._k}) and sqrt({other._k}) live in different fields")

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        k = self._common(other)
        return QuadNum(self._a + other._a, self._b + other._b, k)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self._a, -self._b, self._k)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        k = self._common(other)
        a = self._a * other._a + self._b * other._b * k
        b = self._a * other._b + self._b * other._a
        return QuadNum(a, b, k)

    __rmul__ = __mul__

    def conjugate(self) -> QuadNum:
        return QuadNum(self._a, -self._b, self._k)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - b^2 k``."""
        return self._a * self._a - self._b * self._b * self._k

    def inverse(self) -> QuadNum:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QuadNum(self._a / n, -self._b / n, self._k)

    def __truediv__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        self._common(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = QuadNum(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order -------------------------------------------------------------
    def sign(self) -> int:
        """Exact sign, from the signs of ``a`` and ``b`` and ``a^2`` vs ``b^2 k``."""
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins
        diff = self._a * self._a - self._b * self._b * self._k
        return sa if diff > 0 else sb

    def _cmp(self, other) -> int:
        other = as_quad(other)
        self._common(other)
        return (self - other).sign()

    def __eq__(self, other):
        other = as_quad(other, strict=False)
        if other is None:
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._k == other._k

    def __hash__(self):
        if self._k == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._k))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    # -- roots -------------------------------------------------------------
    def sqrt(self) -> QuadNum:
        """Nonnegative square root in Q or in this number's own field.

        Raises :class:`NotRepresentable` when the root needs a further
        extension.
        """
        if self.sign() < 0:
            raise NegativeRadicand(f"sqrt of negative number {self}")
        if self._k == 0:
            q = self._a
            r = rational_sqrt(q)
            if r is not None:
                return QuadNum(r)
            # sqrt(p/q) = sqrt(p*q)/q
            return QuadNum(0, Fraction(1, q.denominator), q.numerator * q.denominator)
        disc = rational_sqrt(self.norm())
        if disc is None:
            raise NotRepresentable(f"sqrt({self}) is not in Q(sqrt({self._k}))")
        # y = c + e*sqrt(k): c^2 + e^2 k = a and 2ce = b
        for c2 in ((self._a + disc) / 2, (self._a - disc) / 2):
            c = rational_sqrt(c2)
            if c is None or c == 0:
                continue
            y = QuadNum(c, self._b / (2 * c), self._k)
            if y * y == self:
                return y if y.sign() >= 0 else -y
        raise NotRepresentable(f"sqrt({self}) is not in Q(sqrt({self._k}))")

    # -- rendering ---------------------------------------------------------
    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        """Decimal approximation for display only."""
        ctx = decimal.Context(prec=digits + 10)
        a = ctx.divide(decimal.Decimal(self._a.numerator), decimal.Decimal(self._a.denominator))
        if self._k:
            b = ctx.divide(decimal.Decimal(self._b.numerator), decimal.Decimal(self._b.denominator))
            a = ctx.add(a, ctx.multiply(b, ctx.sqrt(decimal.Decimal(self._k))))
        return decimal.Context(prec=digits).plus(a)

    def __float__(self):
        return float(self.to_decimal(20))

    def __str__(self):
        if self._k == 0:
            return _rat_str(self._a)
        sign = "-" if self._b < 0 else "+"
        return f"{_rat_str(self._a)}{sign}{_rat_str(abs(self._b))}*sqrt({self._k})"

    def __repr__(self):
        if self._k == 0:
            return f"QuadNum({_rat_str(self._a)})"
        return f"QuadNum({_rat_str(self._a)}, {_rat_str(self._b)}, {self._k})"


def _rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_quad(x, strict: bool = True) -> QuadNum | None:
    """Coerce ints, Fractions and strings to QuadNum."""
    if isinstance(x, QuadNum):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QuadNum(x)
    if isinstance(x, str):
        return parse_quad(x)
    if strict:
        raise TypeError(f"cannot convert {type(x).__name__} to QuadNum")
    return None


_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_QUAD_RE = re.compile(
    r"""^\s*
    (?:(?P<a>[+-]?\d+(?:/\d+)?)(?=\s*[+-]|\s*$))?      # rational part
    \s*
    (?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?
       sqrt\(\s*(?P<k>\d+)\s*\))?                       # irrational part
    \s*$""",
    re.VERBOSE,
)


def parse_rat(s: str) -> Fraction:
    m = _RAT_RE.match(s)
    if not m:
        raise ValueError(f"not a rational number: {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DivisionByZero(f"zero denominator in {s!r}")
    return Fraction(num, den)


def parse_quad(s: str) -> QuadNum:
    """Parse ``"a+b*sqrt(k)"`` (either part optional) or a plain rational."""
    m = _QUAD_RE.match(s)
    if not m or (m.group("a") is None and m.group("k") is None):
        raise ValueError(f"not a quadratic number: {s!r}")
    a = parse_rat(m.group("a")) if m.group("a") else Fraction(0)
    if m.group("k") is None:
        return QuadNum(a)
    if m.group("a") is not None and m.group("sign") is None:
        raise ValueError(f"missing sign before sqrt in {s!r}")
    b = parse_rat(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    return QuadNum(a, b, int(m.group("k")))


# functional spellings of the operators
def qn_add(x, y) -> QuadNum:
    return as_quad(x) + as_quad(y)


def qn_mul(x, y) -> QuadNum:
    return as_quad(x) * as_quad(y)


def qn_neg(x) -> QuadNum:
    return -as_quad(x)


def qn_inv(x) -> QuadNum:
    return as_quad(x).inverse()


def qn_cmp(x, y) -> int:
    """Return -1, 0 or 1; both operands must share a field (or be rational)."""
    return as_quad(x)._cmp(as_quad(y))


def qn_sqrt(x) -> QuadNum:
    return as_quad(x).sqrt()


def compare_mixed(x, y) -> int:
    """Exact comparison of numbers that may live in different quadratic fields.

    Writes ``x - y = P - v*sqrt(m)`` with ``P`` in the field of ``x`` and
    compares ``P^2`` against ``v^2 m`` when both sides are nonnegative.
    """
    x, y = as_quad(x), as_quad(y)
    if x.k == 0 or y.k == 0 or x.k == y.k:
        return (x - y).sign()
    p = QuadNum(x.a - y.a, x.b, x.k)
    sp, sq = p.sign(), (y.b > 0) - (y.b < 0)
    if sp != sq:
        return 1 if sp > sq else -1
    # same sign: compare squares, flipping for negatives
    d = (p * p - y.b * y.b * y.k).sign()
    return d if sp > 0 else -d


def sign_with_surd(x, y, k: int) -> int:
    """Exact sign of ``x + y*sqrt(k)`` where ``x, y`` share a quadratic field.

    The result may live in a biquadratic field; only its sign is computed.
    """
    x, y = as_quad(x), as_quad(y)
    if k < 0:
        raise NegativeRadicand(f"radicand {k} is negative")
    sx, sy = x.sign(), y.sign() if k else 0
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy if sx == 0 else sx
    # opposite signs: compare x^2 with y^2 k
    d = (x * x - y * y * k).sign()
    return d if sx > 0 else -d

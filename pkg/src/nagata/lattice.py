"""Picard lattice of the plane blown up at n points.

A class ``(d; m_1, ..., m_n)`` stands for ``d L - sum m_i E_i``, so the tuple
written in exponent shorthand is stored verbatim.  The pairing has
signature (1, n): ``L.L = 1``, ``E_i.E_j = -delta_ij``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import groupby

from .errors import ClassSyntaxError, DimensionMismatch
from .exactnum import QuadNum, as_quad

__all__ = [
    "DivisorClass",
    "line",
    "exceptional",
    "canonical_class",
    "anticanonical_class",
    "pair",
    "arithmetic_genus",
    "parse_class",
    "render_class",
    "class_to_json",
    "class_from_json",
]


@dataclass(frozen=True)
class DivisorClass:
    d: QuadNum
    m: tuple[QuadNum, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", as_quad(self.d))
        object.__setattr__(self, "m", tuple(as_quad(x) for x in self.m))

    @classmethod
    def of(cls, d, *m) -> DivisorClass:
        """Convenience constructor: ``DivisorClass.of(2, 1, 1, 1, 1, 1)``."""
        return cls(d, m)

    @property
    def n(self) -> int:
        return len(self.m)

    def __add__(self, other: DivisorClass) -> DivisorClass:
        _check_n(self, other)
        return DivisorClass(self.d + other.d, tuple(x + y for x, y in zip(self.m, other.m)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.d, tuple(-x for x in self.m))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def scale(self, c) -> DivisorClass:
        c = as_quad(c)
        return DivisorClass(c * self.d, tuple(c * x for x in self.m))

    def __rmul__(self, c):
        return self.scale(c)

    def key(self) -> tuple:
        """Hashable exact encoding, used for deduplication."""
        return (self.d, *self.m)

    def __str__(self):
        return render_class(self)


def _check_n(a: DivisorClass, b: DivisorClass):
    if a.n != b.n:
        raise DimensionMismatch(f"classes live on X_{a.n} and X_{b.n}")


def line(n: int) -> DivisorClass:
    return DivisorClass(1, (0,) * n)


def exceptional(n: int, i: int) -> DivisorClass:
    """The class ``E_i`` (1-based), i.e. ``(0; 0,..,-1,..,0)``."""
    m = [0] * n
    m[i - 1] = -1
    return DivisorClass(0, tuple(m))


def canonical_class(n: int) -> DivisorClass:
    return DivisorClass(-3, (-1,) * n)


def anticanonical_class(n: int) -> DivisorClass:
    return DivisorClass(3, (1,) * n)


def pair(a: DivisorClass, b: DivisorClass) -> QuadNum:
    """Intersection number ``d d' - sum m_i m'_i``."""
    _check_n(a, b)
    total = a.d * b.d
    for x, y in zip(a.m, b.m):
        total = total - x * y
    return total


def arithmetic_genus(c: DivisorClass) -> QuadNum:
    """``(c.c + K.c)/2 + 1``; zero for every (-1)-class."""
    return (pair(c, c) + pair(canonical_class(c.n), c)) / 2 + 1


# -- text format -------------------------------------------------------------
_EXP_RE = re.compile(r"^(.*?)\^(\d+)$")


def _parse_token(tok: str, pos: int) -> QuadNum:
    try:
        return as_quad(tok.strip())
    except (ValueError, ArithmeticError) as exc:
        raise ClassSyntaxError(f"bad number {tok.strip()!r}", pos) from exc


def parse_class(s: str) -> DivisorClass:
    """Parse ``"d;m1,m2,..."`` where any entry may be written ``m^k``.

    >>> str(parse_class("6;3,2^7"))
    '6;3,2^7'
    """
    head, sep, tail = s.partition(";")
    if not head.strip():
        raise ClassSyntaxError("missing degree", 0)
    d = _parse_token(head, 0)
    m: list[QuadNum] = []
    if sep and tail.strip():
        offset = len(head) + 1
        for tok in tail.split(","):
            pos = offset
            offset += len(tok) + 1
            if not tok.strip():
                raise ClassSyntaxError("empty entry", pos)
            rep = 1
            em = _EXP_RE.match(tok.strip())
            if em:
                tok, rep = em.group(1), int(em.group(2))
                if rep == 0:
                    raise ClassSyntaxError("zero repetition count", pos)
            m.extend([_parse_token(tok, pos)] * rep)
    return DivisorClass(d, tuple(m))


def render_class(c: DivisorClass) -> str:
    """Inverse of :func:`parse_class`; runs of equal entries use ``m^k``."""
    parts = []
    for value, run in groupby(c.m):
        count = len(list(run))
        parts.append(str(value) if count == 1 else f"{value}^{count}")
    return f"{c.d};" + ",".join(parts) if parts else f"{c.d};"


def class_to_json(c: DivisorClass) -> dict:
    return {"d": str(c.d), "m": [str(x) for x in c.m]}


def class_from_json(obj) -> DivisorClass:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return DivisorClass(as_quad(obj["d"]), tuple(as_quad(x) for x in obj["m"]))

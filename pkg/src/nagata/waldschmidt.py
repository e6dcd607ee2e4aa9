"""The known values of the Waldschmidt function mu-hat(t) and related bounds.

The table is generated rather than typed in: Fibonacci rows come from the
recurrence (seeded with ``F_{-1} = 1``, ``F_0 = 0``), the two bridge rows
join the Fibonacci accumulation point ``phi^4`` to ``(8/3)^2``, eight
special pairs cover small windows above 7 and integer squares are exact.
Outside these intervals mu-hat is reported as unknown, never extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, InvalidParameter, NotRepresentable, UnknownValue
from .exactnum import QuadNum, as_quad, compare_mixed, rational_sqrt
from .valuation import (
    NewtonPolygon,
    Interval,
    PlaneSeries,
    legendre,
    poly_degree,
    quasimonomial_value,
    submaximal_interval_from_polygon,
)

__all__ = [
    "fibonacci",
    "MuRow",
    "MuTable",
    "MuValue",
    "build_mu_table",
    "mu_eval",
    "mu_value",
    "OrevkovDatum",
    "orevkov_datum",
    "orevkov_bound",
    "orevkov_interval",
    "mu_lower_bound_from_curve",
    "sqrt_lower_bound",
    "maximality_residual",
    "hr09_bound",
    "alpha_mu_duality",
    "CONJECTURE_THRESHOLD",
    "PHI",
]

PHI = QuadNum(Fraction(1, 2), Fraction(1, 2), 5)
CONJECTURE_THRESHOLD = Fraction(289, 36)  # 8 + 1/36 = (17/6)^2


def fibonacci(i: int) -> int:
    """``F_i`` for ``i >= -1`` with ``F_{-1} = 1`` and ``F_0 = 0``."""
    if i < -1:
        raise InvalidParameter(f"Fibonacci index must be >= -1, got {i}")
    a, b = 1, 0  # F_{-1}, F_0
    for _ in range(i + 1):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class MuRow:
    lo: QuadNum
    hi: QuadNum
    slope: Fraction
    intercept: Fraction
    family: str  # fibonacci, bridge, special or square
    label: str
    lo_contact: bool = False
    hi_contact: bool = False
    row_id: int = 0
    _lo_f: float = field(init=False, repr=False, compare=False)
    _hi_f: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lo_f", float(self.lo))
        object.__setattr__(self, "_hi_f", float(self.hi))

    def may_contain(self, tf: float) -> bool:
        """Cheap float prefilter; the exact test is :meth:`contains`."""
        return self._lo_f - 1e-9 <= tf <= self._hi_f + 1e-9

    def __call__(self, t) -> QuadNum:
        return as_quad(t) * self.slope + self.intercept

    def contains(self, t) -> bool:
        return compare_mixed(self.lo, t) <= 0 <= compare_mixed(self.hi, t)

    @property
    def contact_points(self) -> list[QuadNum]:
        return [e for e, flag in ((self.lo, self.lo_contact), (self.hi, self.hi_contact)) if flag]

    def describe(self) -> str:
        return f"#{self.row_id} {self.label} [{self.lo}, {self.hi}]: {self.slope}*t + {self.intercept}"


@dataclass(frozen=True)
class MuTable:
    rows: tuple[MuRow, ...]
    max_fib_index: int

    def adjacent_pairs(self) -> list[tuple[MuRow, MuRow]]:
        """Pairs of rows whose intervals share an endpoint, in order."""
        pairs = []
        for a in self.rows:
            for b in self.rows:
                if a is not b and compare_mixed(a.hi, b.lo) == 0 and compare_mixed(a.lo, b.lo) < 0:
                    pairs.append((a, b))
        return pairs

    @property
    def domain(self) -> list[tuple[QuadNum, QuadNum]]:
        """Maximal closed intervals covered by the rows."""
        out: list[list[QuadNum]] = []
        for r in self.rows:
            if out and compare_mixed(r.lo, out[-1][1]) <= 0:
                if compare_mixed(r.hi, out[-1][1]) > 0:
                    out[-1][1] = r.hi
            else:
                out.append([r.lo, r.hi])
        return [(a, b) for a, b in out]


@dataclass(frozen=True)
class MuValue:
    known: bool
    value: QuadNum | None = None
    row: MuRow | None = None
    conjectural: bool = False

    def to_json(self) -> dict:
        if not self.known:
            return {"known": False}
        out = {"known": True, "value": str(self.value), "conjectural": self.conjectural}
        if self.row is not None:
            out["row"] = self.row.row_id
            out["row_label"] = self.row.label
        return out


def _q(x) -> QuadNum:
    return as_quad(x)


def _fibonacci_rows(max_fib_index: int) -> list[MuRow]:
    rows = []
    for i in range(1, max_fib_index + 1, 2):
        fm, f, fp = fibonacci(i - 2), fibonacci(i), fibonacci(i + 2)
        mid = Fraction(fp, fm)
        rows.append(MuRow(_q(Fraction(f * f, fm * fm)), _q(mid), Fraction(fm, f), Fraction(0),
                          "fibonacci", f"F({i})a", lo_contact=True))
        rows.append(MuRow(_q(mid), _q(Fraction(fp * fp, f * f)), Fraction(0), Fraction(fp, f),
                          "fibonacci", f"F({i})b", hi_contact=True))
    return rows


def _fibonacci_rows_at(i: int) -> list[MuRow]:
    rows = _fibonacci_rows(i)[-2:]
    return [MuRow(r.lo, r.hi, r.slope, r.intercept, r.family, r.label, r.lo_contact, r.hi_contact, -1) for r in rows]


def _bridge_rows() -> list[MuRow]:
    phi4 = PHI**4
    return [
        MuRow(phi4, _q(7), Fraction(1, 3), Fraction(1, 3), "bridge", "phi^4..7", lo_contact=True),
        MuRow(_q(7), _q(Fraction(64, 9)), Fraction(0), Fraction(8, 3), "bridge", "7..64/9", hi_contact=True),
    ]


def _sq(a, b, k, den) -> QuadNum:
    """``((a + b sqrt(k)) / den)^2``."""
    u = QuadNum(Fraction(a, den), Fraction(b, den), k)
    return u * u


# (label, left end, meeting point, right end, left piece (slope, intercept), right piece)
_SPECIAL = [
    ("7+1/8", _sq(24, 1, 457, 17), Fraction(57, 8), _sq(24, -1, 455, 1),
     (Fraction(17, 48), Fraction(7, 48)), (Fraction(1, 48), Fraction(121, 48))),
    ("7+1/(7+1/2)", _sq(16, 1, 179, 11), Fraction(107, 15), _sq(32, -1, 177, 7),
     (Fraction(11, 32), Fraction(7, 32)), (Fraction(7, 64), Fraction(121, 64))),
    ("7+1/7", _sq(6, 1, 22, 4), Fraction(50, 7), _sq(12, -1, 87, 1),
     (Fraction(8, 24), Fraction(7, 24)), (Fraction(1, 24), Fraction(57, 24))),
    ("7+1/(6+1/2)", _sq(20, 1, 218, 13), Fraction(93, 13), _q(Fraction(107, 40) ** 2),
     (Fraction(13, 40), Fraction(14, 40)), (Fraction(0), Fraction(107, 40))),
    ("7+1/5", _sq(8, 1, 29, 5), Fraction(36, 5), _q(Fraction(43, 16) ** 2),
     (Fraction(5, 16), Fraction(7, 16)), (Fraction(0), Fraction(43, 16))),
    ("7+1/4", _q(Fraction(35, 13) ** 2), Fraction(29, 4), _sq(35, -1, 877, 2),
     (Fraction(13, 35), Fraction(0)), (Fraction(1, 35), Fraction(87, 35))),
    ("7+1/2", _sq(4, 1, 2, 2), Fraction(15, 2), _q(Fraction(22, 8) ** 2),
     (Fraction(2, 8), Fraction(7, 8)), (Fraction(0), Fraction(22, 8))),
    ("8", _sq(3, 1, 7, 2), Fraction(8), _q(Fraction(17, 6) ** 2),
     (Fraction(2, 6), Fraction(1, 6)), (Fraction(0), Fraction(17, 6))),
]


def _special_rows() -> list[MuRow]:
    rows = []
    for label, lo, mid, hi, left, right in _SPECIAL:
        rows.append(MuRow(lo, _q(mid), left[0], left[1], "special", f"{label} left", lo_contact=True))
        rows.append(MuRow(_q(mid), hi, right[0], right[1], "special", f"{label} right", hi_contact=True))
    return rows


def _square_rows(max_n: int) -> list[MuRow]:
    return [
        MuRow(_q(n * n), _q(n * n), Fraction(0), Fraction(n), "square", f"{n}^2", True, True)
        for n in range(1, max_n + 1)
    ]


@lru_cache(maxsize=16)
def build_mu_table(max_fib_index: int = 9, max_square: int = 10) -> MuTable:
    """All rows of the known part of mu-hat, sorted by left endpoint.

    Fibonacci rows are emitted for odd ``i <= max_fib_index``; integer
    squares ``n^2`` for ``n <= max_square`` are listed as degenerate rows
    (``mu_eval`` handles every integer square regardless).
    """
    if max_fib_index < 1 or max_fib_index % 2 == 0:
        raise InvalidParameter(f"max_fib_index must be odd and >= 1, got {max_fib_index}")
    rows = _fibonacci_rows(max_fib_index) + _bridge_rows() + _special_rows() + _square_rows(max_square)
    rows.sort(key=lambda r: (float(r.lo), float(r.hi)))
    rows = [
        MuRow(r.lo, r.hi, r.slope, r.intercept, r.family, r.label, r.lo_contact, r.hi_contact, k)
        for k, r in enumerate(rows)
    ]
    return MuTable(tuple(rows), max_fib_index)


def mu_eval(table: MuTable, t, assume_conjecture: bool = False) -> MuValue:
    """Exact mu-hat(t) where known, else ``MuValue(known=False)``.

    With ``assume_conjecture`` the value ``sqrt(t)`` is returned, flagged
    conjectural, for rational ``t >= 8 + 1/36`` not covered by the table.
    """
    t = as_quad(t)
    if compare_mixed(t, 1) < 0:
        raise InvalidParameter(f"t must be >= 1, got {t}")
    tf = float(t)
    for r in table.rows:
        if r.may_contain(tf) and r.contains(t):
            return MuValue(True, r(t), r)
    if compare_mixed(t, PHI**4) < 0:
        # the Fibonacci family is infinite and accumulates at phi^4
        i = table.max_fib_index + 2
        while True:
            for r in _fibonacci_rows_at(i):
                if r.contains(t):
                    return MuValue(True, r(t), r)
            i += 2
    if t.is_rational:
        root = rational_sqrt(t.to_rat())
        if root is not None and root.denominator == 1:
            n = int(root)
            return MuValue(True, QuadNum(n), MuRow(t, t, Fraction(0), Fraction(n), "square", f"{n}^2", True, True, -1))
        if assume_conjecture and t.to_rat() >= CONJECTURE_THRESHOLD:
            try:
                return MuValue(True, t.sqrt(), None, conjectural=True)
            except NotRepresentable:
                pass
    return MuValue(False)


def mu_value(t, assume_conjecture: bool = False) -> MuValue:
    """``mu_eval`` on the default table."""
    return mu_eval(build_mu_table(), t, assume_conjecture)


# -- bounds ----------------------------------------------------------------------
@dataclass(frozen=True)
class OrevkovDatum:
    """Newton-polygon data of the Orevkov curve ``C_i``: degree and one segment."""

    i: int
    degree: int
    polygon: NewtonPolygon = field(compare=False)

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        fm, f, fp = fibonacci(self.i - 2), fibonacci(self.i), fibonacci(self.i + 2)
        return Fraction(f * f, fm * fm), Fraction(fp * fp, f * f)


def orevkov_datum(i: int) -> OrevkovDatum:
    """Degree ``F_i`` and polygon ``(0, F_{i-2})--(F_{i+2}, 0)`` for odd ``i >= 1``."""
    if i < 1 or i % 2 == 0:
        raise InvalidParameter(f"Orevkov index must be odd and >= 1, got {i}")
    poly = NewtonPolygon(((0, fibonacci(i - 2)), (fibonacci(i + 2), 0)))
    return OrevkovDatum(i, fibonacci(i), poly)


def orevkov_bound(i: int, t) -> QuadNum:
    """Lower bound ``v(C_i) / deg C_i`` for mu-hat(t)."""
    d = orevkov_datum(i)
    return legendre(d.polygon)(t) / d.degree


def orevkov_interval(i: int) -> Interval | None:
    d = orevkov_datum(i)
    return submaximal_interval_from_polygon(d.polygon, d.degree)


def mu_lower_bound_from_curve(seed: int, f, t) -> QuadNum:
    """``v_{xi,t}(f) / deg f`` for the generic series with the given seed."""
    return quasimonomial_value(PlaneSeries.generic(seed), t, f) / poly_degree(f)


def sqrt_lower_bound(t) -> QuadNum:
    """``sqrt(t)`` when it is representable; mu-hat(t) is never smaller."""
    t = as_quad(t)
    if compare_mixed(t, 1) < 0:
        raise InvalidParameter(f"t must be >= 1, got {t}")
    return t.sqrt()


def maximality_residual(table: MuTable, t) -> QuadNum:
    """``mu-hat(t)^2 - t``; zero exactly when the valuation is maximal at t.

    Raises LookupError (UnknownValue) when mu-hat(t) is not known.
    """
    res = mu_eval(table, t)
    if not res.known:
        raise UnknownValue(f"mu-hat({t}) is not known")
    return res.value * res.value - as_quad(t)


def hr09_bound(n: int) -> tuple[QuadNum, QuadNum]:
    """Known bounds on the Waldschmidt constant of ``n`` general points.

    Returns ``sqrt(n)`` and the square of the upper bound,
    ``n (1 + 2 / (n^2 - 5 n sqrt(n) - 2))``, exactly in ``Q(sqrt(n))``.
    """
    if n < 10:
        raise InvalidParameter(f"bound stated for n >= 10, got {n}")
    denom = QuadNum(n * n - 2, -5 * n, n)
    if denom.sign() <= 0:
        raise InvalidParameter(f"n^2 - 5n sqrt(n) - 2 = {denom} is not positive for n = {n}")
    return QuadNum(0, 1, n), (1 + 2 / denom) * n


def alpha_mu_duality(x) -> QuadNum:
    """``1/x``: converts mu-hat to alpha-hat and back."""
    x = as_quad(x)
    if x.sign() == 0:
        raise DivisionByZero("alpha and mu are reciprocal; zero has no reciprocal")
    if x.sign() < 0:
        raise InvalidParameter(f"expected a positive value, got {x}")
    return x.inverse()

"""Monomial and quasimonomial valuations of plane polynomials.

``v_{xi,t}(f) = ord_x f(x, xi(x) + theta x^t)`` is computed as
``min {i + t j}`` over the support of ``f`` rewritten in ``(x, w)`` with
``w = y - xi(x)``.  The series ``xi`` is either explicit (finitely many
rational coefficients), generic (seeded random residues modulo a large
prime) or symbolic (indeterminate coefficients, small inputs only).

Polynomials are dictionaries ``{(i, j): coefficient}`` for ``x^i y^j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import sympy

from .errors import InvalidParameter, TruncationCap, ZeroPolynomial
from .exactnum import QuadNum, as_quad, compare_mixed

__all__ = [
    "Poly",
    "parse_poly",
    "poly_to_str",
    "poly_degree",
    "poly_mul",
    "PlaneSeries",
    "NewtonPolygon",
    "Piece",
    "PiecewiseLinearFn",
    "Interval",
    "monomial_value",
    "expansion_support",
    "quasimonomial_value",
    "quasimonomial_value_certified",
    "newton_polygon",
    "legendre",
    "submaximal_set",
    "submaximal_set_from_polygon",
    "submaximal_interval",
    "submaximal_interval_from_polygon",
]

Poly = dict  # {(i, j): Fraction}

DEFAULT_PRIME = 2**61 - 1
_X, _Y = sympy.symbols("x y")


# -- polynomials ---------------------------------------------------------------
def parse_poly(s: str) -> Poly:
    """``"y^2 - x^3"`` -> ``{(0, 2): 1, (3, 0): -1}``."""
    expr = sympy.sympify(s.replace("^", "**"), locals={"x": _X, "y": _Y})
    return poly_from_sympy(expr)


def poly_from_sympy(expr) -> Poly:
    p = sympy.Poly(sympy.expand(expr), _X, _Y, domain="QQ")
    out = {}
    for (i, j), c in p.terms():
        out[(int(i), int(j))] = Fraction(int(c.p), int(c.q))
    return out


def poly_to_sympy(f: Poly):
    return sum((sympy.Rational(c.numerator, c.denominator) * _X**i * _Y**j for (i, j), c in f.items()), sympy.Integer(0))


def poly_to_str(f: Poly) -> str:
    return str(poly_to_sympy(f)).replace("**", "^")


def poly_degree(f: Poly) -> int:
    if not f:
        raise ZeroPolynomial("zero polynomial has no degree")
    return max(i + j for i, j in f)


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: dict = {}
    for (i1, j1), a in f.items():
        for (i2, j2), b in g.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, Fraction(0)) + a * b
    return {k: v for k, v in out.items() if v != 0}


def _clean(f: Poly) -> Poly:
    f = {k: Fraction(v) for k, v in f.items() if v != 0}
    if not f:
        raise ZeroPolynomial("polynomial is zero")
    return f


def monomial_value(s, t, f: Poly) -> QuadNum:
    """``min {s i + t j}`` over the support of ``f``."""
    f = _clean(f)
    s, t = as_quad(s), as_quad(t)
    best = None
    for i, j in f:
        v = s * i + t * j
        if best is None or compare_mixed(v, best) < 0:
            best = v
    return best


# -- series --------------------------------------------------------------------
@dataclass(frozen=True)
class PlaneSeries:
    """The arc ``y = xi(x) = sum_{i>=1} a_i x^i``."""

    mode: str = "generic"
    seed: int = 0
    prime: int = DEFAULT_PRIME
    coefficients: tuple[Fraction, ...] = ()

    @classmethod
    def generic(cls, seed: int = 0, prime: int = DEFAULT_PRIME) -> PlaneSeries:
        return cls("generic", seed=seed, prime=prime)

    @classmethod
    def exact(cls, coefficients) -> PlaneSeries:
        """Finite series ``a_1 x + a_2 x^2 + ...`` with rational coefficients."""
        return cls("exact", coefficients=tuple(Fraction(c) for c in coefficients))

    @classmethod
    def symbolic(cls) -> PlaneSeries:
        return cls("symbolic")

    def coeffs(self, n: int) -> list:
        """``[a_1, ..., a_n]`` in this series' coefficient ring."""
        if self.mode == "generic":
            return list(_generic_coeffs(self.seed, self.prime, n))
        if self.mode == "exact":
            c = list(self.coefficients[:n])
            return c + [Fraction(0)] * (n - len(c))
        if self.mode == "symbolic":
            return list(sympy.symbols(f"a1:{n + 1}")) if n else []
        raise InvalidParameter(f"unknown series mode {self.mode!r}")


@lru_cache(maxsize=64)
def _generic_coeffs(seed: int, prime: int, n: int) -> tuple[int, ...]:
    rng = random.Random(seed)
    return tuple(rng.randrange(1, prime) for _ in range(n))


class _Ring:
    """Coefficient arithmetic for one series mode."""

    def __init__(self, xi: PlaneSeries):
        self.mode = xi.mode
        self.p = xi.prime

    def conv(self, c: Fraction):
        if self.mode == "generic":
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        if self.mode == "symbolic":
            return sympy.Rational(c.numerator, c.denominator)
        return c

    def zero(self):
        return 0 if self.mode == "generic" else (sympy.Integer(0) if self.mode == "symbolic" else Fraction(0))

    def norm(self, a):
        if self.mode == "generic":
            return a % self.p
        if self.mode == "symbolic":
            return sympy.expand(a)
        return a

    def is_zero(self, a) -> bool:
        if self.mode == "symbolic":
            return sympy.expand(a) == 0
        return a == 0


def _series_mul(ring: _Ring, a: list, b: list, n: int) -> list:
    out = [ring.zero()] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j in range(n - i):
            y = b[j]
            out[i + j] = out[i + j] + x * y
    return [ring.norm(v) for v in out]


def _freeze(f: Poly) -> tuple:
    return tuple(sorted(f.items()))


@lru_cache(maxsize=4096)
def _support(xi: PlaneSeries, frozen_f: tuple, order: int) -> frozenset:
    """Support of ``f(x, w + xi(x))`` restricted to ``x``-degrees below ``order``."""
    ring = _Ring(xi)
    f = dict(frozen_f)
    dy = max(j for _, j in f)
    xi_series = [ring.zero()] + [ring.conv(c) if isinstance(c, Fraction) else c for c in xi.coeffs(order - 1)]
    xi_series = xi_series[:order]
    powers = [[ring.conv(Fraction(1))] + [ring.zero()] * (order - 1)]
    for _ in range(dy):
        powers.append(_series_mul(ring, powers[-1], xi_series, order))
    coef = {l: [ring.zero()] * order for l in range(dy + 1)}
    for (i, j), c in f.items():
        if i >= order:
            continue
        cc = ring.conv(c)
        for l in range(j + 1):
            factor = cc * comb(j, l)
            pw = powers[j - l]
            target = coef[l]
            for e in range(order - i):
                if pw[e] != 0:
                    target[i + e] = target[i + e] + factor * pw[e]
    support = set()
    for l, series in coef.items():
        for i, v in enumerate(series):
            if not ring.is_zero(ring.norm(v)):
                support.add((i, l))
    return frozenset(support)


def _exact_order(xi: PlaneSeries, f: Poly) -> int:
    # every coefficient of f(x, w + xi) is a polynomial of degree below this
    dx = max(i for i, _ in f)
    dy = max(j for _, j in f)
    return dx + dy * max(1, len(xi.coefficients)) + 1


def _initial_order(f: Poly) -> int:
    return max(8, 2 * poly_degree(f) + 2)


_ORDER_CAP = 4096


def expansion_support(xi: PlaneSeries, f: Poly, order: int) -> frozenset:
    """Support ``{(i, j)}`` of ``f`` in the coordinates ``(x, w)``, ``i < order``."""
    return _support(xi, _freeze(_clean(f)), order)


def quasimonomial_value_certified(xi: PlaneSeries, t, f: Poly) -> tuple[QuadNum, int]:
    """Value of ``v_{xi,t}(f)`` and the truncation order that certifies it.

    A candidate ``c`` computed from terms with ``x``-degree below ``N`` is
    final once ``c <= N``: every unseen term has ``i + t j >= N``.
    """
    f = _clean(f)
    t = as_quad(t)
    if compare_mixed(t, 1) < 0:
        raise InvalidParameter(f"t must be >= 1, got {t}")
    frozen = _freeze(f)
    exact_order = _exact_order(xi, f) if xi.mode == "exact" else None
    order = exact_order if exact_order is not None else _initial_order(f)
    tr = t.to_rat() if t.is_rational else None
    while True:
        cand = None
        # the minimum of a positive linear form is attained at a hull vertex
        for i, j in _hull(xi, frozen, order):
            v = tr * j + i if tr is not None else t * j + i
            if cand is None or v < cand:
                cand = v
        if tr is not None and cand is not None:
            cand = QuadNum(cand)
        if cand is not None and (exact_order is not None or cand <= order):
            return cand, order
        order *= 2
        if order > _ORDER_CAP:
            raise TruncationCap(f"value not certified below truncation order {_ORDER_CAP}")


def quasimonomial_value(xi: PlaneSeries, t, f: Poly) -> QuadNum:
    return quasimonomial_value_certified(xi, t, f)[0]


# -- Newton polygon and Legendre transform ---------------------------------------
@dataclass(frozen=True)
class NewtonPolygon:
    """Vertices of the lower-left boundary, ``i`` increasing and ``j`` decreasing."""

    vertices: tuple[tuple[int, int], ...]
    order: int = 0

    @property
    def slopes(self) -> list[Fraction]:
        v = self.vertices
        return [Fraction(v[k + 1][1] - v[k][1], v[k + 1][0] - v[k][0]) for k in range(len(v) - 1)]

    @property
    def breakpoints(self) -> list[Fraction]:
        """Parameters ``t = -1/slope`` where the minimizing vertex changes."""
        return [-1 / g for g in self.slopes]


def _lower_hull(points) -> tuple[tuple[int, int], ...]:
    pts = sorted(set(points))
    # Pareto-minimal points
    pareto = []
    best_j = None
    for i, j in pts:
        if best_j is None or j < best_j:
            pareto.append((i, j))
            best_j = j
    hull: list[tuple[int, int]] = []
    for p in pareto:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return tuple(hull)


@lru_cache(maxsize=4096)
def _hull(xi: PlaneSeries, frozen_f: tuple, order: int) -> tuple[tuple[int, int], ...]:
    return _lower_hull(_support(xi, frozen_f, order))


def newton_polygon(xi: PlaneSeries, f: Poly) -> NewtonPolygon:
    """Newton polygon of ``f`` in ``(x, w)`` coordinates.

    For non-explicit series the truncation order doubles until the last
    vertex lies on the ``i``-axis, which certifies every vertex.
    """
    f = _clean(f)
    frozen = _freeze(f)
    if xi.mode == "exact":
        order = _exact_order(xi, f)
        return NewtonPolygon(_hull(xi, frozen, order), order)
    order = _initial_order(f)
    while order <= _ORDER_CAP:
        hull = _hull(xi, frozen, order)
        if hull and hull[-1][1] == 0:
            return NewtonPolygon(hull, order)
        order *= 2
    raise TruncationCap(f"Newton polygon not certified below order {_ORDER_CAP}")


@dataclass(frozen=True)
class Piece:
    lo: QuadNum
    hi: QuadNum | None  # None means +infinity
    slope: Fraction
    intercept: Fraction

    def __call__(self, t) -> QuadNum:
        return as_quad(t) * self.slope + self.intercept

    def contains(self, t) -> bool:
        t = as_quad(t)
        return compare_mixed(self.lo, t) <= 0 and (self.hi is None or compare_mixed(t, self.hi) <= 0)


@dataclass(frozen=True)
class PiecewiseLinearFn:
    pieces: tuple[Piece, ...] = field(default_factory=tuple)

    def __call__(self, t) -> QuadNum:
        for p in self.pieces:
            if p.contains(t):
                return p(t)
        raise InvalidParameter(f"{t} outside the domain")

    @property
    def breakpoints(self) -> list[QuadNum]:
        return [p.hi for p in self.pieces[:-1]]

    def is_continuous(self) -> bool:
        return all(a(a.hi) == b(b.lo) for a, b in zip(self.pieces, self.pieces[1:]))

    def is_concave(self) -> bool:
        return all(a.slope >= b.slope for a, b in zip(self.pieces, self.pieces[1:]))

    def scaled(self, c) -> PiecewiseLinearFn:
        c = Fraction(c)
        return PiecewiseLinearFn(tuple(Piece(p.lo, p.hi, p.slope * c, p.intercept * c) for p in self.pieces))


def legendre(np_: NewtonPolygon, t_min=1) -> PiecewiseLinearFn:
    """The tropical function ``t -> min_vertices (i + t j)`` on ``[t_min, oo)``."""
    if not np_.vertices:
        raise ZeroPolynomial("empty Newton polygon")
    t_min = as_quad(t_min)
    verts = np_.vertices
    bps = np_.breakpoints
    pieces = []
    for k, (i, j) in enumerate(verts):
        lo = t_min if k == 0 else QuadNum(bps[k - 1])
        hi = QuadNum(bps[k]) if k < len(bps) else None
        if hi is not None and hi <= t_min:
            continue
        if lo < t_min:
            lo = t_min
        pieces.append(Piece(lo, hi, Fraction(j), Fraction(i)))
    return PiecewiseLinearFn(tuple(pieces))


# -- submaximality ---------------------------------------------------------------
@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)``; ``hi = None`` means unbounded."""

    lo: QuadNum
    hi: QuadNum | None

    def contains(self, t) -> bool:
        return compare_mixed(self.lo, t) < 0 and (self.hi is None or compare_mixed(t, self.hi) < 0)

    def __str__(self):
        return f"({self.lo}, {'oo' if self.hi is None else self.hi})"


def _beats_sqrt(value: QuadNum, degree: int, t: QuadNum) -> bool:
    """``value > degree * sqrt(t)`` decided by squaring."""
    if value.sign() <= 0:
        return False
    return (value * value - t * (degree * degree)).sign() > 0


def _piece_intervals(p: Piece, d: int) -> list[tuple[QuadNum, QuadNum | None]]:
    """Open sub-intervals of ``(p.lo, p.hi)`` where ``slope t + intercept > d sqrt(t)``."""
    a, b = p.slope, p.intercept
    # in u = sqrt(t): a u^2 - d u + b > 0
    if a == 0:
        if b <= 0:
            return []
        cuts = [(None, QuadNum((b / d) ** 2))]
    else:
        disc = Fraction(d * d) - 4 * a * b
        if disc < 0:
            cuts = [(None, None)]
        else:
            # roots (d -+ sqrt(disc)) / 2a, with sqrt(p/q) = sqrt(pq)/q
            centre = Fraction(d) / (2 * a)
            half = Fraction(1, disc.denominator) / (2 * a)
            u_lo = QuadNum(centre, -half, disc.numerator * disc.denominator)
            u_hi = QuadNum(centre, half, disc.numerator * disc.denominator)
            cuts = [(None, u_lo * u_lo), (u_hi * u_hi, None)]
    out = []
    for lo_cut, hi_cut in cuts:
        lo = p.lo if lo_cut is None or compare_mixed(lo_cut, p.lo) < 0 else lo_cut
        if hi_cut is None:
            hi = p.hi
        elif p.hi is None:
            hi = hi_cut
        else:
            hi = hi_cut if compare_mixed(hi_cut, p.hi) < 0 else p.hi
        if hi is None or compare_mixed(lo, hi) < 0:
            out.append((lo, hi))
    return out


def submaximal_set(fn: PiecewiseLinearFn, degree: int) -> list[Interval]:
    """Where ``fn(t) / degree > sqrt(t)``, as a sorted list of open intervals."""
    if degree <= 0:
        raise InvalidParameter("degree must be positive")
    merged: list[list] = []
    for idx, p in enumerate(fn.pieces):
        for lo, hi in _piece_intervals(p, degree):
            if (
                merged
                and merged[-1][1] is not None
                and compare_mixed(merged[-1][1], lo) == 0
                and idx > 0
                and compare_mixed(lo, p.lo) == 0
                and _beats_sqrt(p(lo), degree, lo)
            ):
                merged[-1][1] = hi
            else:
                merged.append([lo, hi])
    return [Interval(lo, hi) for lo, hi in merged]


def submaximal_set_from_polygon(np_: NewtonPolygon, degree: int) -> list[Interval]:
    return submaximal_set(legendre(np_), degree)


def _single(intervals: list[Interval]) -> Interval | None:
    if not intervals:
        return None
    if len(intervals) > 1:
        raise InvalidParameter(
            "submaximal set is disconnected: " + ", ".join(str(i) for i in intervals)
        )
    return intervals[0]


def submaximal_interval_from_polygon(np_: NewtonPolygon, degree: int) -> Interval | None:
    return _single(submaximal_set_from_polygon(np_, degree))


def _sanity_check(f: Poly):
    expr = poly_to_sympy(f)
    _, factors = sympy.sqf_list(expr)
    if any(mult > 1 for _, mult in factors):
        raise InvalidParameter("polynomial is not squarefree")
    for var, other in ((_Y, _X), (_X, _Y)):
        if sympy.degree(expr, var) == 0:
            continue
        content = sympy.gcd_list(sympy.Poly(expr, var).coeffs())
        if sympy.degree(content, other) > 0:
            raise InvalidParameter(f"polynomial has a nontrivial content {content}")


def submaximal_interval(xi: PlaneSeries, f: Poly) -> Interval | None:
    """Open interval of ``t`` where ``v_{xi,t}(f) > deg(f) sqrt(t)``, or None.

    ``f`` should be irreducible; only squarefreeness and content are checked.
    """
    f = _clean(f)
    _sanity_check(f)
    return _single(submaximal_set_from_polygon(newton_polygon(xi, f), poly_degree(f)))

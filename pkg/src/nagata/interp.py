"""Fat-point interpolation over prime fields.

The space of plane curves of degree ``d`` with multiplicity ``m_q`` at
each point ``q`` is the kernel of a condition matrix: one row per point
and derivative order ``(a, b)`` with ``a + b < m_q``, one column per
monomial ``x^i y^j`` with ``i + j <= d``.  Ranks are computed exactly
modulo a prime; random points over a large prime field stand in for very
general complex points, so a result is certified for that characteristic
and is strong evidence (not proof) for characteristic zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np
from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import BadPrime, DegenerateConfig, InvalidParameter, ResourceGuard

__all__ = [
    "DEFAULT_PRIME",
    "ALT_PRIME",
    "PointConfig",
    "InterpProblem",
    "DimensionResult",
    "AlphaResult",
    "make_config",
    "condition_matrix",
    "rank_mod_p",
    "dimension",
    "expected_dimension",
    "alpha",
    "waldschmidt_upper",
]

DEFAULT_PRIME = 1_000_003
ALT_PRIME = 2_147_483_629  # largest prime below 2^31
MIN_PRIME = 10**6
MAX_ENTRIES = 40_000_000
_RETRIES = 1000

KINDS = ("general", "online", "onconic", "oncubic", "oncurve")


def _check_prime(p: int):
    if not (MIN_PRIME < p < 2**31) or not isprime(p):
        raise BadPrime(f"need a prime 10^6 < p < 2^31, got {p}")


@dataclass(frozen=True)
class PointConfig:
    """``n`` distinct affine points over ``GF(p)`` of a given kind.

    Kinds: ``general``; ``online`` (a random line); ``onconic`` (``y = x^2``);
    ``oncubic`` (``y^2 = x^3 + a x + b``); ``oncurve`` (``y = h(x)`` with a
    random ``h`` of degree ``delta``, a rational curve of degree ``delta``).
    """

    kind: str
    n: int
    prime: int
    seed: int
    points: tuple[tuple[int, int], ...]
    params: tuple[int, ...] = ()


def make_config(kind: str = "general", n: int = 1, prime: int = DEFAULT_PRIME, seed: int = 0,
                a: int = 0, b: int = 7, delta: int = 4) -> PointConfig:
    kind = kind.lower().replace("_", "").replace("-", "")
    if kind not in KINDS:
        raise InvalidParameter(f"unknown configuration kind {kind!r}; expected one of {KINDS}")
    _check_prime(prime)
    if n < 0:
        raise InvalidParameter("n must be nonnegative")
    p = prime
    rng = random.Random(f"{kind}:{seed}:{p}")
    params: tuple[int, ...] = ()
    if kind == "online":
        params = (rng.randrange(p), rng.randrange(p))
    elif kind == "oncubic":
        params = (a % p, b % p)
        if (4 * a**3 + 27 * b**2) % p == 0:
            raise DegenerateConfig(f"y^2 = x^3 + {a}x + {b} is singular mod {p}")
    elif kind == "oncurve":
        if delta < 1:
            raise InvalidParameter("curve degree must be >= 1")
        params = tuple(rng.randrange(p) for _ in range(delta)) + (rng.randrange(1, p),)

    def sample() -> tuple[int, int] | None:
        x = rng.randrange(p)
        if kind == "general":
            return x, rng.randrange(p)
        if kind == "online":
            return x, (params[0] * x + params[1]) % p
        if kind == "onconic":
            return x, x * x % p
        if kind == "oncubic":
            rhs = (x**3 + params[0] * x + params[1]) % p
            root = sqrt_mod(rhs, p)
            return None if root is None else (x, int(root))
        y = 0
        for c in reversed(params):
            y = (y * x + c) % p
        return x, y

    points: list[tuple[int, int]] = []
    seen = set()
    tries = 0
    while len(points) < n:
        tries += 1
        if tries > _RETRIES + 4 * n:
            raise DegenerateConfig(f"could not sample {n} distinct {kind} points mod {p}")
        q = sample()
        if q is None or q in seen:
            continue
        seen.add(q)
        points.append(q)
    return PointConfig(kind, n, p, seed, tuple(points), params)


@dataclass(frozen=True)
class InterpProblem:
    config: PointConfig
    d: int
    m: tuple[int, ...]

    def __post_init__(self):
        if self.d < 0 or any(x < 0 for x in self.m):
            raise InvalidParameter("degree and multiplicities must be nonnegative")
        if len(self.m) != self.config.n:
            raise InvalidParameter(f"{len(self.m)} multiplicities for {self.config.n} points")

    @property
    def conditions(self) -> int:
        return sum(x * (x + 1) // 2 for x in self.m)

    @property
    def unknowns(self) -> int:
        return (self.d + 1) * (self.d + 2) // 2


def _monomials(d: int) -> list[tuple[int, int]]:
    return [(i, k - i) for k in range(d + 1) for i in range(k, -1, -1)]


def condition_matrix(pr: InterpProblem) -> np.ndarray:
    """Rows ``C(i,a) C(j,b) x^(i-a) y^(j-b)``: the coefficient of ``X^a Y^b`` after translating to the point."""
    p = pr.config.prime
    mons = _monomials(pr.d)
    if pr.conditions * len(mons) > MAX_ENTRIES:
        raise ResourceGuard(f"condition matrix {pr.conditions} x {len(mons)} exceeds {MAX_ENTRIES} entries")
    mat = np.zeros((pr.conditions, len(mons)), dtype=np.int64)
    row = 0
    for (x, y), mult in zip(pr.config.points, pr.m):
        xp = [pow(x, e, p) for e in range(pr.d + 1)]
        yp = [pow(y, e, p) for e in range(pr.d + 1)]
        for order in range(mult):
            for a in range(order + 1):
                b = order - a
                for col, (i, j) in enumerate(mons):
                    if i >= a and j >= b:
                        mat[row, col] = comb(i, a) * comb(j, b) % p * xp[i - a] % p * yp[j - b] % p
                row += 1
    return mat


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank by Gaussian elimination over ``GF(p)``, ``p < 2^31``."""
    m = mat.copy() % p
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), -1, p)
        m[rank] = m[rank] * inv % p
        below = m[rank + 1:, c]
        idx = np.nonzero(below)[0] + rank + 1
        if idx.size:
            m[idx] = (m[idx] - np.outer(m[idx, c], m[rank]) % p) % p
        rank += 1
    return rank


@dataclass(frozen=True)
class DimensionResult:
    vdim: int
    projdim: int
    expected: int
    unknowns: int
    conditions: int
    rank: int

    @property
    def special(self) -> bool:
        return self.projdim != self.expected

    def to_json(self) -> dict:
        return {"vdim": self.vdim, "projdim": self.projdim, "expected": self.expected, "special": self.special}


def expected_dimension(d: int, m) -> int:
    """``max(-1, d(d+3)/2 - sum m_i(m_i+1)/2)``, projective convention."""
    if d < 0 or any(x < 0 for x in m):
        raise InvalidParameter("degree and multiplicities must be nonnegative")
    return max(-1, d * (d + 3) // 2 - sum(x * (x + 1) // 2 for x in m))


def dimension(pr: InterpProblem) -> DimensionResult:
    """Vector-space dimension of ``[I(Z)]_d`` over ``GF(p)``."""
    _check_prime(pr.config.prime)
    if len(set(pr.config.points)) != len(pr.config.points):
        raise DegenerateConfig("points are not distinct")
    if pr.conditions == 0:
        rank = 0
    else:
        rank = rank_mod_p(condition_matrix(pr), pr.config.prime)
    vdim = pr.unknowns - rank
    return DimensionResult(vdim, vdim - 1, expected_dimension(pr.d, pr.m), pr.unknowns, pr.conditions, rank)


@dataclass(frozen=True)
class AlphaResult:
    found: bool
    d: int  # alpha when found, else the search bound

    def __str__(self):
        return f"Found({self.d})" if self.found else f"NotFoundBelow({self.d})"

    def to_json(self) -> dict:
        return {"found": self.found, "alpha" if self.found else "d_max": self.d}


def alpha(config: PointConfig, m, d_max: int = 100) -> AlphaResult:
    """Least degree of a curve with the given multiplicities, searched up to ``d_max``."""
    m = tuple(m)
    # a curve with a point of multiplicity k has degree at least k
    start = max(m, default=0)
    for d in range(start, d_max + 1):
        # more unknowns than conditions forces a solution
        if (d + 1) * (d + 2) // 2 > sum(x * (x + 1) // 2 for x in m):
            return AlphaResult(True, d)
        if dimension(InterpProblem(config, d, m)).vdim > 0:
            return AlphaResult(True, d)
    return AlphaResult(False, d_max)


def waldschmidt_upper(config: PointConfig, v, m_max: int = 6, d_max: int = 400) -> list[Fraction]:
    """``alpha(I(m Z_v)) / m`` for ``m = 1..m_max``; each is an upper bound for alpha-hat."""
    v = tuple(v)
    out = []
    for m in range(1, m_max + 1):
        res = alpha(config, tuple(m * x for x in v), d_max)
        if not res.found:
            raise ResourceGuard(f"no curve found below degree {d_max} for m = {m}")
        out.append(Fraction(res.d, m))
    return out

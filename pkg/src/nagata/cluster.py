"""Weighted clusters of infinitely near points.

A cluster is a chain ``p_1 <- p_2 <- ... <- p_s`` where each ``p_i`` is
proximate to its predecessor and possibly to one earlier point (a satellite).
Indices are 0-based in code and 1-based in printed output.

Contracted divisors are stored as ``D = -sum mbar_i E_i`` in the basis of
total transforms.  The strict transforms are
``Et_j = E_j - sum_{i > j proximate} E_i`` and the excess
``rho_j = D . Et_j = mbar_j - sum_{i prox j} mbar_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import numpy as np

from ._linalg import solve
from .errors import InvalidCluster, InvalidParameter, NonIntegral, NonTermination

__all__ = [
    "UNIT_VALUE",
    "UNIT_LAST",
    "WeightedCluster",
    "ContractedDivisor",
    "UnloadResult",
    "continued_fraction",
    "cluster_from_cf",
    "chain_cluster",
    "sum_of_squares",
    "volume",
    "unload",
    "valuation_divisor",
    "relative_zariski",
    "colength",
    "compare_roundoff",
]

UNIT_VALUE = "unit-value"
UNIT_LAST = "unit-last"


def continued_fraction(t: Fraction) -> list[int]:
    """Terms ``[n_1; n_2, ..., n_r]`` of a positive rational (last term >= 2 unless r = 1)."""
    t = Fraction(t)
    p, q = t.numerator, t.denominator
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return terms


@dataclass(frozen=True)
class WeightedCluster:
    weights: tuple[Fraction, ...]
    extra_prox: tuple[int | None, ...]
    cf: tuple[int, ...] = ()
    t: Fraction | None = None

    def __post_init__(self):
        if len(self.weights) != len(self.extra_prox):
            raise InvalidCluster("weights and proximities disagree in length")
        for i, j in enumerate(self.extra_prox):
            if j is not None and not 0 <= j < i - 1:
                raise InvalidCluster(f"p_{i + 1} cannot be proximate to p_{j + 1}")
        if any(w <= 0 for w in self.weights):
            raise InvalidCluster("weights must be positive")

    @property
    def s(self) -> int:
        return len(self.weights)

    def parent(self, i: int) -> int | None:
        return i - 1 if i > 0 else None

    def proximate_to(self, i: int) -> tuple[int, ...]:
        """Indices ``j`` with ``p_i`` proximate to ``p_j``."""
        out = [] if i == 0 else [i - 1]
        if self.extra_prox[i] is not None:
            out.append(self.extra_prox[i])
        return tuple(sorted(out))

    def proximate_points(self, j: int) -> tuple[int, ...]:
        """Indices ``i`` with ``p_i`` proximate to ``p_j``."""
        return tuple(i for i in range(self.s) if j in self.proximate_to(i))

    def proximity_matrix(self) -> np.ndarray:
        """Lower unitriangular, ``-1`` at ``(i, j)`` whenever ``p_i`` is proximate to ``p_j``."""
        P = np.eye(self.s, dtype=int)
        for i in range(self.s):
            for j in self.proximate_to(i):
                P[i, j] = -1
        return P

    def strict_rows(self) -> list[list[int]]:
        """Row ``j`` holds the total-transform coordinates of ``Et_j``."""
        return self.proximity_matrix().T.tolist()

    def proximity_defects(self) -> list[Fraction]:
        """``v_j - sum_{i prox j} v_i`` for every j."""
        return [
            self.weights[j] - sum((self.weights[i] for i in self.proximate_points(j)), Fraction(0))
            for j in range(self.s)
        ]

    def satisfies_proximity_equalities(self) -> bool:
        return all(x == 0 for x in self.proximity_defects()[:-1])

    def describe(self) -> list[dict]:
        return [
            {
                "center": i + 1,
                "weight": str(self.weights[i]),
                "proximate_to": [j + 1 for j in self.proximate_to(i)],
            }
            for i in range(self.s)
        ]


def cluster_from_cf(t, normalization: str = UNIT_VALUE) -> WeightedCluster:
    """Cluster of centers of the quasimonomial valuation with rational parameter ``t > 1``.

    For ``t = [n_1; n_2, ..., n_r]`` there are ``sum n_i`` centers.  The first
    ``n_1`` are free; block ``k >= 2`` starts at ``p_{S_{k-1}+1}`` and holds
    ``n_k + 1`` points (``n_r`` for the last block) proximate to
    ``p_{S_{k-1}}``, where ``S_k = n_1 + ... + n_k``.  Weights are the
    Euclidean remainders of ``(numerator, denominator)``, each repeated
    ``n_k`` times.
    """
    t = Fraction(t)
    if t <= 1:
        raise InvalidParameter(f"t must exceed 1, got {t}")
    if normalization not in (UNIT_VALUE, UNIT_LAST):
        raise InvalidParameter(f"unknown normalization {normalization!r}")
    terms = continued_fraction(t)
    s = sum(terms)
    extra: list[int | None] = [None] * s

    starts = [0]
    for a in terms:
        starts.append(starts[-1] + a)  # S_0 = 0, S_1 = n_1, ...
    r = len(terms)
    for k in range(2, r + 1):
        anchor = starts[k - 1]  # p_{S_{k-1}}, 1-based
        size = terms[k - 1] + (1 if k < r else 0)
        for idx in range(anchor + 1, anchor + size + 1):  # 1-based point indices
            if idx - 1 > anchor:  # not the immediate successor of the anchor
                extra[idx - 1] = anchor - 1

    remainders = []
    p, q = t.numerator, t.denominator
    while q:
        remainders.append(q)
        p, q = q, p % q
    weights: list[Fraction] = []
    for a, rem in zip(terms, remainders):
        weights.extend([Fraction(rem)] * a)
    scale = weights[0] if normalization == UNIT_VALUE else weights[-1]
    weights = [w / scale for w in weights]
    return WeightedCluster(tuple(weights), tuple(extra), tuple(terms), t)


def chain_cluster(s: int, weights=None) -> WeightedCluster:
    """``s`` free points in a chain, weight 1 each unless given."""
    if weights is None:
        weights = [1] * s
    return WeightedCluster(tuple(Fraction(w) for w in weights), (None,) * s)


def sum_of_squares(c: WeightedCluster) -> Fraction:
    return sum((w * w for w in c.weights), Fraction(0))


def volume(c: WeightedCluster) -> Fraction:
    """Volume of the valuation, ``1 / sum v_i^2``."""
    return 1 / sum_of_squares(c)


@dataclass(frozen=True)
class ContractedDivisor:
    """``D = -sum mbar_i E_i`` on the blow-up of a cluster."""

    mbar: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "mbar", tuple(Fraction(x) for x in self.mbar))

    @classmethod
    def from_e_coefficients(cls, coeffs) -> ContractedDivisor:
        """Build from ``D = sum c_i E_i`` (so ``"0,0,-1"`` is ``-E_3``)."""
        return cls(tuple(-Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, s: int) -> ContractedDivisor:
        return cls((Fraction(0),) * s)

    def e_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(-x for x in self.mbar)

    def excesses(self, c: WeightedCluster) -> list[Fraction]:
        """``rho_j = D . Et_j`` for every j."""
        return [
            self.mbar[j] - sum((self.mbar[i] for i in c.proximate_points(j)), Fraction(0))
            for j in range(c.s)
        ]

    def dot_exceptional(self, j: int) -> Fraction:
        """``D . E_j = mbar_j``."""
        return self.mbar[j]

    def strict_coefficients(self, c: WeightedCluster) -> tuple[Fraction, ...]:
        """Coefficients ``c_i`` with ``D = sum c_i Et_i``."""
        # E-coefficient of E_k is c_k - sum_{j : p_k prox p_j} c_j
        out: list[Fraction] = []
        for k in range(c.s):
            out.append(-self.mbar[k] + sum((out[j] for j in c.proximate_to(k)), Fraction(0)))
        return tuple(out)

    @classmethod
    def from_strict_coefficients(cls, c: WeightedCluster, coeffs) -> ContractedDivisor:
        coeffs = [Fraction(x) for x in coeffs]
        e = [coeffs[k] - sum((coeffs[j] for j in c.proximate_to(k)), Fraction(0)) for k in range(c.s)]
        return cls.from_e_coefficients(e)

    def __add__(self, other):
        return ContractedDivisor(tuple(x + y for x, y in zip(self.mbar, other.mbar)))

    def __sub__(self, other):
        return ContractedDivisor(tuple(x - y for x, y in zip(self.mbar, other.mbar)))

    def scale(self, k) -> ContractedDivisor:
        return ContractedDivisor(tuple(Fraction(k) * x for x in self.mbar))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.mbar)


@dataclass
class UnloadResult:
    divisor: ContractedDivisor
    steps: list[int] = field(default_factory=list)  # 0-based index unloaded at each step

    @property
    def mbar(self) -> tuple[Fraction, ...]:
        return self.divisor.mbar


def unload(
    c: WeightedCluster,
    start: ContractedDivisor,
    rng: random.Random | None = None,
    max_steps: int = 1_000_000,
) -> UnloadResult:
    """Unloading: while some ``rho_j < 0`` replace ``D`` by ``D - Et_j``.

    By default the lowest violated index is unloaded as many consecutive
    times as it needs; with ``rng`` a random violated index is unloaded once
    per step.  The final divisor does not depend on the schedule.
    """
    if len(start.mbar) != c.s:
        raise InvalidCluster("divisor and cluster sizes differ")
    mbar = list(start.mbar)
    prox = [c.proximate_points(j) for j in range(c.s)]
    steps: list[int] = []

    def excess(j):
        return mbar[j] - sum((mbar[i] for i in prox[j]), Fraction(0))

    while True:
        violated = [j for j in range(c.s) if excess(j) < 0]
        if not violated:
            return UnloadResult(ContractedDivisor(tuple(mbar)), steps)
        if len(steps) >= max_steps:
            raise NonTermination(f"unloading exceeded {max_steps} steps; current {mbar}")
        if rng is not None:
            j, k = rng.choice(violated), 1
        else:
            # each step raises rho_j by 1 + #prox[j]; take all the steps it still needs
            j = violated[0]
            k = -((excess(j)) // (1 + len(prox[j])))
        mbar[j] += k
        for i in prox[j]:
            mbar[i] -= k
        steps.extend([j] * k)


def _intersection_system(c: WeightedCluster):
    rows = c.strict_rows()
    # Et_i . Et_j = -sum_k M_ik M_jk
    gram = [[-sum(a * b for a, b in zip(ri, rj)) for rj in rows] for ri in rows]
    return rows, gram


def valuation_divisor(c: WeightedCluster) -> ContractedDivisor:
    """``D_v`` with ``D_v . Et_i = 0`` for ``i < s`` and ``D_v . E_s = v_s / sum v_i^2``.

    Closed form ``-(sum v_i^2)^{-1} sum v_i E_i``; cross-checked by solving
    the defining linear system.
    """
    if not c.satisfies_proximity_equalities():
        raise InvalidCluster("proximity equalities fail; cluster does not come from a valuation")
    ss = sum_of_squares(c)
    closed = ContractedDivisor(tuple(w / ss for w in c.weights))
    # rows: rho_j for j < s, and mbar_s
    a = []
    for j in range(c.s - 1):
        row = [Fraction(0)] * c.s
        row[j] = Fraction(1)
        for i in c.proximate_points(j):
            row[i] -= 1
        a.append(row)
    last = [Fraction(0)] * c.s
    last[-1] = Fraction(1)
    a.append(last)
    b = [Fraction(0)] * (c.s - 1) + [c.weights[-1] / ss]
    solved = ContractedDivisor(tuple(solve(a, b)))
    if solved != closed:
        raise InvalidCluster("valuation divisor system disagrees with closed form")
    return closed


def relative_zariski(c: WeightedCluster, d: ContractedDivisor) -> tuple[ContractedDivisor, ContractedDivisor]:
    """Relative Zariski decomposition ``D = P + N``.

    ``N = sum a_i Et_i`` with ``a_i >= 0``; ``P . Et_i >= 0`` for all i and
    ``P . Et_i = 0`` on the support of N.  The support grows until no
    component meets ``P`` negatively; each round solves the (negative
    definite) Gram system of the strict transforms on the support.
    """
    if len(d.mbar) != c.s:
        raise InvalidCluster("divisor and cluster sizes differ")
    _, gram = _intersection_system(c)
    rho = d.excesses(c)
    support: list[int] = []
    coeffs = [Fraction(0)] * c.s
    while True:
        # P . Et_i = rho_i - sum_j a_j G_ij
        p_dot = [rho[i] - sum(coeffs[j] * gram[i][j] for j in support) for i in range(c.s)]
        new = [i for i in range(c.s) if p_dot[i] < 0 and i not in support]
        if not new:
            break
        support = sorted(support + new)
        sub = [[gram[i][j] for j in support] for i in support]
        sol = solve(sub, [rho[i] for i in support])
        coeffs = [Fraction(0)] * c.s
        for i, a in zip(support, sol):
            coeffs[i] = a
    n = ContractedDivisor.from_strict_coefficients(c, coeffs)
    return d - n, n


def colength(c: WeightedCluster, m) -> int:
    """``dim O/I_m`` for the divisorial valuation of ``c`` (last weight 1).

    Unloads ``-m E_s`` and applies ``sum mbar_i (mbar_i + 1) / 2``.
    """
    m = Fraction(m)
    if c.weights[-1] != 1:
        raise NonIntegral("colength needs the unit-last normalization (v_s = 1)")
    if m < 0 or m.denominator != 1:
        raise NonIntegral(f"m must be a nonnegative integer, got {m}")
    start = ContractedDivisor((Fraction(0),) * (c.s - 1) + (m,))
    mbar = unload(c, start).mbar
    total = sum(x * (x + 1) / 2 for x in mbar)
    return int(total)


def compare_roundoff(c: WeightedCluster, m) -> dict:
    """Side-by-side comparison of ``D_m`` (unloading) with ``m D_v`` and its round-down.

    Nothing here is asserted; the dictionary lists both bases so the
    disagreement at small m can be inspected.
    """
    m = Fraction(m)
    if c.weights[-1] != 1:
        raise NonIntegral("compare_roundoff needs the unit-last normalization")
    dm = unload(c, ContractedDivisor((Fraction(0),) * (c.s - 1) + (m,))).divisor
    exact = valuation_divisor(c).scale(m)
    strict_exact = exact.strict_coefficients(c)
    rounded = ContractedDivisor.from_strict_coefficients(c, [floor(x) for x in strict_exact])

    def fmt(v):
        return [str(x) for x in v]

    return {
        "m": str(m),
        "unloaded": {"total": fmt(dm.e_coefficients()), "strict": fmt(dm.strict_coefficients(c))},
        "m_times_Dv": {"total": fmt(exact.e_coefficients()), "strict": fmt(strict_exact)},
        "round_down": {
            "total": fmt(rounded.e_coefficients()),
            "strict": fmt(rounded.strict_coefficients(c)),
            "relatively_nef": all(x >= 0 for x in rounded.excesses(c)),
        },
        "difference_unloaded_minus_exact": {
            "total": fmt((dm - exact).e_coefficients()),
            "strict": fmt((dm - exact).strict_coefficients(c)),
        },
    }

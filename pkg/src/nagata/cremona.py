"""Arithmetic Cremona transformations, Hudson's test and (-1)-class enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import IndexOutOfRange, NumericalPrecondition, RepeatedIndex, UnsupportedN
from .exactnum import QuadNum
from .lattice import DivisorClass, canonical_class, exceptional, pair

__all__ = [
    "CremonaStep",
    "HudsonTrace",
    "cremona_transform",
    "hudson_test",
    "is_exceptional_permutation",
    "enumerate_minus_one",
    "max_degree",
]


@dataclass(frozen=True)
class CremonaStep:
    base: tuple[int, int, int]
    source: DivisorClass
    target: DivisorClass
    c: QuadNum


@dataclass
class HudsonTrace:
    start: DivisorClass
    steps: list[CremonaStep] = field(default_factory=list)
    accepted: bool = False
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "MinusOneClass" if self.accepted else f"Rejected({self.reason})"

    @property
    def degrees(self) -> list[QuadNum]:
        return [self.start.d] + [s.target.d for s in self.steps]

    @property
    def final(self) -> DivisorClass:
        return self.steps[-1].target if self.steps else self.start


def _cremona_step(c: DivisorClass, i: int, j: int, k: int) -> CremonaStep:
    n = c.n
    for idx in (i, j, k):
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"index {idx} not in 1..{n}")
    if len({i, j, k}) < 3:
        raise RepeatedIndex(f"base indices {(i, j, k)} are not distinct")
    mi, mj, mk = c.m[i - 1], c.m[j - 1], c.m[k - 1]
    defect = c.d - mi - mj - mk
    m = list(c.m)
    # m_l' = d - (sum of the other two) = m_l + defect
    for idx in (i, j, k):
        m[idx - 1] = m[idx - 1] + defect
    target = DivisorClass(c.d + defect, tuple(m))
    return CremonaStep((i, j, k), c, target, defect)


def cremona_transform(c: DivisorClass, i: int, j: int, k: int) -> DivisorClass:
    """Quadratic transformation based at points ``i, j, k`` (1-based).

    ``d' = 2d - m_i - m_j - m_k`` and ``m_i' = d - m_j - m_k`` (cyclically);
    the other multiplicities are untouched.  The map is an involution.
    """
    return _cremona_step(c, i, j, k).target


def is_exceptional_permutation(c: DivisorClass) -> bool:
    """True when ``c`` is ``(0; -1, 0, ..., 0)`` up to reordering."""
    if c.d != 0:
        return False
    nonzero = [x for x in c.m if x != 0]
    return len(nonzero) == 1 and nonzero[0] == -1


def _top_three(c: DivisorClass) -> tuple[int, int, int]:
    order = sorted(range(c.n), key=lambda idx: (-c.m[idx], idx))
    return tuple(idx + 1 for idx in order[:3])


def hudson_test(c: DivisorClass) -> HudsonTrace:
    """Decide whether ``c`` is the class of a (-1)-curve.

    Repeatedly applies the Cremona transformation based at the three largest
    multiplicities (ties to the lowest index) while the degree drops.
    """
    if c.n < 3:
        raise NumericalPrecondition(f"Hudson's test needs n >= 3, got n = {c.n}")
    if not c.d.is_rational or any(not x.is_rational for x in c.m):
        raise NumericalPrecondition("class entries must be rational integers")
    if c.d.to_rat().denominator != 1 or any(x.to_rat().denominator != 1 for x in c.m):
        raise NumericalPrecondition("class entries must be integers")
    if is_exceptional_permutation(c):
        return HudsonTrace(start=c, accepted=True)
    if c.d < 0 or any(x < 0 for x in c.m):
        raise NumericalPrecondition("degree and multiplicities must be nonnegative")
    if pair(c, c) != -1:
        raise NumericalPrecondition(f"self-intersection is {pair(c, c)}, not -1")
    if pair(canonical_class(c.n), c) != -1:
        raise NumericalPrecondition(f"canonical degree is {pair(canonical_class(c.n), c)}, not -1")

    trace = HudsonTrace(start=c)
    current = c
    while True:
        if is_exceptional_permutation(current):
            trace.accepted = True
            return trace
        step = _cremona_step(current, *_top_three(current))
        if step.target.d >= current.d:
            trace.reason = f"degree does not decrease at {current}"
            return trace
        trace.steps.append(step)
        if step.target.d < 0:
            trace.reason = "degree became negative"
            return trace
        current = step.target


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[DivisorClass, ...]:
    if n == 2:
        # no Cremona triple exists; restrict the n = 3 list to classes avoiding p_3
        found = [
            DivisorClass(c.d, c.m[:2])
            for c in _enumerate(3)
            if c.m[2] == 0
        ]
        return tuple(sorted(found, key=_sort_key))
    seen = {}
    queue = deque()
    for i in range(1, n + 1):
        e = exceptional(n, i)
        seen[e.key()] = e
        queue.append(e)
    triples = list(combinations(range(1, n + 1), 3))
    while queue:
        c = queue.popleft()
        for t in triples:
            image = cremona_transform(c, *t)
            key = image.key()
            if key not in seen:
                seen[key] = image
                queue.append(image)
    return tuple(sorted(seen.values(), key=_sort_key))


def _sort_key(c: DivisorClass):
    return (c.d.to_rat(), tuple(-x.to_rat() for x in c.m))


def enumerate_minus_one(n: int) -> list[DivisorClass]:
    """All labeled (-1)-classes on the blow-up of ``n`` general points, 2 <= n <= 8.

    Sorted by degree, then by multiplicities in decreasing lexicographic order.
    """
    if not 2 <= n <= 8:
        raise UnsupportedN(f"(-1)-classes form a finite set only for 2 <= n <= 8, got {n}")
    return list(_enumerate(n))


def max_degree(classes) -> int:
    return max(int(c.d.to_rat()) for c in classes)

"""Cones in N^1 of a blown-up plane: nonnegative cone, Nagata ray, de Fernex
half-spaces, nef tests on del Pezzo surfaces and the B_{q,p} family."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .cremona import enumerate_minus_one
from .errors import InvalidArgs, InvalidParameter, UnsupportedN
from .errors import MixedRadicand
from .exactnum import QuadNum, sign_with_surd
from .lattice import DivisorClass, canonical_class, class_to_json, line, pair

__all__ = [
    "ConeReport",
    "NefResult",
    "nagata_class",
    "de_fernex_class",
    "cone_report",
    "bqp_class",
    "nef_test_small",
    "seshadri_upper_bound",
    "homogeneous_slice_csv",
]


def _label(s: int) -> str:
    return "both" if s == 0 else ("≽" if s > 0 else "≼")


def _side(x: QuadNum) -> str:
    return _label(x.sign())


def _pairing_sign(a: DivisorClass, b: DivisorClass) -> int:
    """Sign of ``a . b`` even when the two degrees lie in different quadratic fields."""
    try:
        return pair(a, b).sign()
    except MixedRadicand:
        pass
    x, y = a.d, b.d
    m_part = sum((p * q for p, q in zip(a.m, b.m)), QuadNum(0))
    if m_part.k not in (0, x.k):
        x, y = y, x
    # x y - m = (x.a y.a - m + x y.a) + x y.b sqrt(y.k), with x y.a in Q(sqrt(x.k))
    return sign_with_surd(x * y.a - m_part, x * y.b, y.k)


@dataclass(frozen=True)
class ConeReport:
    cls: DivisorClass
    L_pairing: QuadNum
    self_pairing: QuadNum
    in_Q: bool
    on_boundary_Q: bool
    K_side: str
    deFernex_side: str

    def to_json(self) -> dict:
        return {
            "class": class_to_json(self.cls),
            "L_pairing": str(self.L_pairing),
            "self_pairing": str(self.self_pairing),
            "in_Q": self.in_Q,
            "on_boundary_Q": self.on_boundary_Q,
            "K_side": self.K_side,
            "deFernex_side": self.deFernex_side,
        }


def nagata_class(n: int) -> DivisorClass:
    """``(sqrt(n); 1^n)``, spanning the Nagata ray."""
    return DivisorClass(QuadNum(0, 1, n), (1,) * n)


def de_fernex_class(n: int) -> DivisorClass:
    """``D_n = (sqrt(n-1); 1^n)``, with ``D_n^2 = -1``."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    return DivisorClass(QuadNum(0, 1, n - 1), (1,) * n)


def cone_report(c: DivisorClass) -> ConeReport:
    """Position of ``c`` relative to Q_n, the K-hyperplane and the de Fernex hyperplane.

    Side labels: ``≽`` for a strictly positive pairing, ``≼`` for strictly
    negative, ``both`` on the hyperplane.
    """
    n = c.n
    if n < 1:
        raise InvalidParameter("cone_report needs n >= 1")
    lp = pair(c, line(n))
    sp = pair(c, c)
    in_q = lp.sign() >= 0 and sp.sign() >= 0
    return ConeReport(
        cls=c,
        L_pairing=lp,
        self_pairing=sp,
        in_Q=in_q,
        on_boundary_Q=in_q and sp.sign() == 0,
        K_side=_side(pair(c, canonical_class(n))),
        deFernex_side=_label(_pairing_sign(c, de_fernex_class(n))),
    )


def bqp_class(q: int, p: int) -> DivisorClass:
    """``B_{q,p} = (9q^2+p^2; 9q^2-p^2, (2qp)^9)`` on X_10, a ray on the boundary of Q_10."""
    if q <= 0 or p <= 0 or q > p:
        raise InvalidArgs(f"need 0 < q <= p, got q={q}, p={p}")
    return DivisorClass(9 * q * q + p * p, (9 * q * q - p * p,) + (2 * q * p,) * 9)


@dataclass(frozen=True)
class NefResult:
    nef: bool
    min_pairing: QuadNum
    witness: DivisorClass | None = None

    def __bool__(self):
        return self.nef


def nef_test_small(c: DivisorClass) -> NefResult:
    """Nefness on X_n for 2 <= n <= 8, where the Mori cone is spanned by (-1)-classes.

    The witness of a failure is the (-1)-class with the most negative pairing
    (first in enumeration order among ties).
    """
    if not 2 <= c.n <= 8:
        raise UnsupportedN(f"nef test is only sound for 2 <= n <= 8, got {c.n}")
    best, witness = None, None
    for e in enumerate_minus_one(c.n):
        value = pair(c, e)
        if best is None or value < best:
            best, witness = value, e
    if best.sign() >= 0:
        return NefResult(True, best)
    return NefResult(False, best, witness)


def seshadri_upper_bound(n: int) -> QuadNum:
    """``1/sqrt(n)``, rationalized as ``sqrt(n)/n``."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    return QuadNum(0, Fraction(1, n), n)


def homogeneous_slice_csv(n: int, classes, samples: int = 0) -> str:
    """CSV of homogeneous classes ``(d; m^n)`` projected to ``x = m/d``.

    Each row lists the slice coordinate, the self-intersection sign and the
    K-side; classes off the homogeneous slice are skipped.  ``samples`` adds
    the grid points ``x = k/samples`` for ``k = 1..samples``.
    """
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["x", "d", "m", "self_pairing", "K_side"])
    rows = list(classes)
    for k in range(1, samples + 1):
        rows.append(DivisorClass(samples, (k,) * n))
    for c in rows:
        if len(set(c.m)) > 1 or c.d.sign() <= 0:
            continue
        r = cone_report(c)
        x = c.m[0] / c.d
        w.writerow([str(x), str(c.d), str(c.m[0]), str(r.self_pairing), r.K_side])
    return out.getvalue()

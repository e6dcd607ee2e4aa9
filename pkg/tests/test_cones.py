import csv
import io
from fractions import Fraction

import pytest

from nagata.cones import (
    bqp_class,
    cone_report,
    de_fernex_class,
    homogeneous_slice_csv,
    nagata_class,
    nef_test_small,
    seshadri_upper_bound,
)
from nagata.cremona import enumerate_minus_one
from nagata.errors import InvalidArgs, UnsupportedN
from nagata.exactnum import QuadNum
from nagata.lattice import anticanonical_class, canonical_class, line, pair, parse_class


def test_nagata_ray_on_boundary():
    for n in (9, 10, 13):
        r = cone_report(nagata_class(n))
        assert r.self_pairing == 0 and r.in_Q and r.on_boundary_Q


def test_de_fernex_self_intersection():
    for n in range(10, 31):
        assert pair(de_fernex_class(n), de_fernex_class(n)) == -1
    assert de_fernex_class(10) == anticanonical_class(10)
    assert de_fernex_class(10) == -canonical_class(10)


def test_de_fernex_sides():
    r = cone_report(de_fernex_class(10))
    assert r.deFernex_side == "≼" and r.K_side == "≽"
    r = cone_report(parse_class("0;0^10"))
    assert r.deFernex_side == "both" and r.K_side == "both"


@pytest.mark.parametrize("q,p", [(1, 2), (6, 13), (37, 80), (1, 1), (50, 50)])
def test_bqp_on_boundary(q, p):
    c = bqp_class(q, p)
    assert pair(c, c) == 0 and cone_report(c).on_boundary_Q


def test_bqp_all_pairs():
    assert all(pair(bqp_class(q, p), bqp_class(q, p)) == 0 for p in range(1, 51) for q in range(1, p + 1))


def test_bqp_convergents_approach_nagata_ray():
    # p/q runs through convergents of sqrt(10) - 1, where 9q^2 - p^2 = 2qp
    gaps = []
    for q, p in [(1, 2), (6, 13), (37, 80)]:
        c = bqp_class(q, p)
        gaps.append(abs((c.m[0] - c.m[1]) / c.d))
    assert gaps[0] > gaps[1] > gaps[2]
    assert bqp_class(37, 80).m[0] - bqp_class(37, 80).m[1] == 1
    with pytest.raises(InvalidArgs):
        bqp_class(3, 2)


def test_nef_on_del_pezzo():
    for n in range(3, 9):
        res = nef_test_small(anticanonical_class(n))
        assert res.nef and res.min_pairing > 0
    # lines through p1 form a pencil: nef; the line through p1, p2 is a (-1)-curve: not nef
    assert nef_test_small(parse_class("1;1,0,0")).nef
    assert not nef_test_small(parse_class("1;1,1,0")).nef
    res = nef_test_small(parse_class("2;2,1,1,0"))
    assert not res.nef and res.witness == parse_class("1;1,1,0,0") and res.min_pairing == -1
    with pytest.raises(UnsupportedN):
        nef_test_small(anticanonical_class(9))


def test_nef_against_brute_pairings():
    # an independent recomputation of the minimum over the (-1)-classes
    c = parse_class("5;2,2,2,1,1,1")
    mins = min(pair(c, e) for e in enumerate_minus_one(6))
    assert nef_test_small(c).min_pairing == mins


def test_seshadri_bound():
    assert seshadri_upper_bound(4) == Fraction(1, 2)
    b = seshadri_upper_bound(10)
    assert b * b == Fraction(1, 10)


def test_slice_csv():
    text = homogeneous_slice_csv(10, [nagata_class(10), line(10)], samples=4)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["self_pairing"] == "0"
    assert len(rows) == 6  # both classes plus four grid points

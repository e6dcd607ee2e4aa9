"""Clusters of a quasimonomial valuation, unloading and the volume.

Run: python3 demos/clusters_and_unloading.py
"""

from fractions import Fraction

from nagata.cluster import (
    UNIT_LAST,
    ContractedDivisor,
    cluster_from_cf,
    colength,
    relative_zariski,
    unload,
    valuation_divisor,
    volume,
)

t = Fraction(7, 5)
c = cluster_from_cf(t, UNIT_LAST)
print(f"t = {t}, continued fraction {list(c.cf)}")
for row in c.describe():
    print(f"  p_{row['center']} weight {row['weight']}, proximate to {row['proximate_to']}")

dv = valuation_divisor(c)
print(f"D_v = {[str(x) for x in dv.e_coefficients()]}")
for m in (1, 4, 35):
    res = unload(c, ContractedDivisor((0,) * (c.s - 1) + (m,)))
    print(f"m = {m:3d}: D_m = sum c_i E_i with c = {[str(x) for x in res.divisor.e_coefficients()]} ({len(res.steps)} steps)")

print(f"\nvolume 1/sum v^2 = {volume(c)}")
for m in (10, 100, 400):
    print(f"  2 colength({m})/{m}^2 = {float(Fraction(2 * colength(c, m), m * m)):.5f}")

p, n = relative_zariski(c, ContractedDivisor.from_e_coefficients([0] * (c.s - 1) + [-1]))
print(f"\npositive part of -E_s equals D_v: {p == dv}")

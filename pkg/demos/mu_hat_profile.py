"""Print the known values of mu-hat next to sqrt(t) and the Orevkov bounds.

Run: python3 demos/mu_hat_profile.py
"""

from fractions import Fraction

from nagata.waldschmidt import PHI, build_mu_table, mu_value, orevkov_bound, orevkov_interval

table = build_mu_table()
print(f"{len(table.rows)} rows; the Fibonacci family accumulates at phi^4 = {PHI**4} ~ {float(PHI**4):.6f}")

for t in [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(4), Fraction(5), Fraction(13, 2),
          Fraction(7), Fraction(15, 2), Fraction(8), Fraction(17, 2), Fraction(9)]:
    res = mu_value(t)
    shown = f"{res.value} ~ {float(res.value):.5f}" if res.known else "unknown"
    print(f"t = {str(t):>5}  mu-hat = {shown:<22} sqrt(t) ~ {float(t) ** 0.5:.5f}")

print("\nOrevkov curves: equality with mu-hat exactly on the submaximal interval")
for i in (1, 3, 5, 7):
    iv = orevkov_interval(i)
    mid = (iv.lo + iv.hi) / 2
    print(f"  C_{i}: interval ({iv.lo}, {iv.hi}), bound at midpoint {orevkov_bound(i, mid)}")

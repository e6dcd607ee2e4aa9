"""Walk through the (-1)-curves of small blow-ups.

Run: python3 demos/minus_one_curves.py
"""

from nagata.cremona import enumerate_minus_one, hudson_test, max_degree
from nagata.lattice import canonical_class, pair, parse_class

for n in range(3, 9):
    classes = enumerate_minus_one(n)
    print(f"n = {n}: {len(classes):3d} classes, max degree {max_degree(classes)}")

# the largest one on eight points is reduced to an exceptional divisor by five quadratic maps
c = parse_class("6;3,2^7")
print(f"\n{c}: C^2 = {pair(c, c)}, K.C = {pair(canonical_class(8), c)}")
trace = hudson_test(c)
for step in trace.steps:
    print(f"  at {step.base}: {step.source} -> {step.target}")
print(f"verdict: {trace.verdict}")

# a numerical (-1)-class that is not a curve: it contains the line through p1 and p2
bad = parse_class("5;3,3,1^8")
print(f"\n{bad}: {hudson_test(bad).verdict}")

"""Interpolation through fat points over a large prime field.

Run: python3 demos/fat_points.py
"""

from nagata.interp import InterpProblem, alpha, dimension, make_config, waldschmidt_upper

cfg = make_config("general", 5, seed=0)
for d, m in [(2, (1,) * 5), (4, (2,) * 5)]:
    res = dimension(InterpProblem(cfg, d, m))
    print(f"degree {d}, multiplicities {m}: vdim {res.vdim}, expected {res.expected}, special {res.special}")

for kind in ("general", "oncurve"):
    cfg = make_config(kind, 16, seed=0, delta=4)
    print(f"16 {kind} points: alpha = {alpha(cfg, (1,) * 16)}")

cfg = make_config("general", 10, seed=0)
print("alpha(m Z)/m for 10 general points:", [str(q) for q in waldschmidt_upper(cfg, (1,) * 10, m_max=3)])

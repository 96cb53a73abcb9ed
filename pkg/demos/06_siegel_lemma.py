"""
Small solutions of integer systems
==================================

M homogeneous equations in L > M unknowns with coefficients at most A in
size have a nonzero integer solution of height at most
([(2 L A)^(L/(L-M))] + 1)^(M/L).
"""

import numpy as np

from dirichlet import IntLinearSystem, siegel_brute_min, siegel_solve

rng = np.random.default_rng(5)
for M, L in ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4)):
    rows = rng.integers(-5, 6, size=(M, L)).tolist()
    s = IntLinearSystem.from_rows(rows)
    r = siegel_solve(s)
    best = siegel_brute_min(s, r.height)
    print(f"{M}x{L} {rows}")
    print(f"    x={r.x} ({r.method}), height {r.height} <= {float(r.bound().hi):.2f};"
          f" smallest possible height {max(map(abs, best))}")

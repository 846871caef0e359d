"""
The embedded simplex solver, its oracle and MPS exchange
========================================================

The package ships its own bounded-variable revised simplex so that models
solve without an external solver.  Small problems can be cross-checked
against brute-force vertex enumeration, and any model can be written to MPS
for a commercial solver.
"""

import numpy as np

from mhorizon.lp import (
    SparseLP,
    check_solution,
    export_mps,
    parse_mps,
    solve_simplex,
    vertex_enumeration_oracle,
)

# minimise  x + 2 y   subject to  x + y >= 3,  0 <= y <= 4,  x >= 0
lp = SparseLP.from_dense([1.0, 2.0], [[1.0, 1.0]], "G", [3.0], [0.0, 0.0], [10.0, 4.0],
                         row_names=("demand",), col_names=("x", "y"), name="tiny")
sol = solve_simplex(lp)
print(sol.status, "objective", sol.objective, "x", sol.x, "dual", sol.duals)
print(check_solution(lp, sol).format())

# The oracle enumerates every vertex of the box-bounded polytope.
ref = vertex_enumeration_oracle(lp)
print("oracle:", ref.status, ref.objective, f"({ref.n_vertices} feasible vertices)")

# Random small LPs: both methods must agree on status and objective.
rng = np.random.default_rng(0)
agree = 0
for _ in range(50):
    n, m = rng.integers(1, 6, 2)
    A = rng.integers(-5, 6, (m, n)).astype(float)
    lb = rng.integers(-5, 1, n).astype(float)
    rand = SparseLP.from_dense(rng.integers(-5, 6, n), A, rng.choice(list("LGE"), m),
                               rng.integers(-10, 11, m), lb, lb + rng.integers(0, 8, n))
    a, b = solve_simplex(rand), vertex_enumeration_oracle(rand)
    agree += a.status == b.status and (a.status != "optimal" or abs(a.objective - b.objective) < 1e-8)
print(f"simplex and oracle agree on {agree}/50 random LPs")

# MPS export is canonical: export -> parse -> export reproduces the bytes.
text = export_mps(lp)
print(text.decode())
assert export_mps(parse_mps(text)) == text

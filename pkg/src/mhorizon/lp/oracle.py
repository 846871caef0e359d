"""Brute-force vertex enumeration for tiny box-bounded LPs (test oracle).

Every vertex of ``{x : A x (<=,>=,=) b, lb <= x <= ub}`` is the unique
solution of ``n`` linearly independent active constraints drawn from the
row hyperplanes and the bound hyperplanes. All such systems are solved,
infeasible points are discarded, and the best objective wins. Equality
rows are always active. No pivoting is involved, so the result is
independent of the simplex code it checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import TooLarge
from .sparse import SparseLP

MAX_COLS = 10
MAX_ROWS = 12


@dataclass
class OracleResult:
    status: str  # optimal | infeasible
    objective: float | None
    x: np.ndarray | None
    n_vertices: int


def vertex_enumeration_oracle(lp: SparseLP, tol: float = 1e-9) -> OracleResult:
    n, m = lp.n_cols, lp.n_rows
    if n > MAX_COLS or m > MAX_ROWS:
        raise TooLarge(f"oracle handles at most {MAX_COLS} columns and {MAX_ROWS} rows")
    if not (np.all(np.isfinite(lp.lb)) and np.all(np.isfinite(lp.ub))):
        raise TooLarge("oracle requires every column to be box-bounded")

    A = lp.dense()
    b = lp.rhs
    senses = lp.senses
    eq = [i for i in range(m) if senses[i] == "E"]
    ineq = [i for i in range(m) if senses[i] != "E"]

    # hyperplanes: (coefficient row, rhs)
    planes = [(A[i], b[i]) for i in ineq]
    eye = np.eye(n)
    for j in range(n):
        planes.append((eye[j], lp.lb[j]))
        if lp.ub[j] != lp.lb[j]:
            planes.append((eye[j], lp.ub[j]))
    fixed = [(A[i], b[i]) for i in eq]

    scale = 1.0 + max(np.abs(b).max(initial=0.0), np.abs(lp.lb).max(initial=0.0),
                      np.abs(lp.ub).max(initial=0.0))
    feas_tol = tol * scale

    lo_ok = lp.lb - feas_tol
    hi_ok = lp.ub + feas_tol
    sense = np.array(senses, dtype="<U1")

    def feasible(X: np.ndarray) -> np.ndarray:
        """Row-wise feasibility of the candidate points stacked in ``X``."""
        ok = np.all((X >= lo_ok) & (X <= hi_ok), axis=1)
        if m:
            R = X @ A.T - b
            ok &= np.all(np.where(sense == "L", R <= feas_tol, True), axis=1)
            ok &= np.all(np.where(sense == "G", R >= -feas_tol, True), axis=1)
            ok &= np.all(np.where(sense == "E", np.abs(R) <= feas_tol, True), axis=1)
        return ok

    if n == 0:
        if feasible(np.zeros((1, 0)))[0]:
            return OracleResult("optimal", 0.0, np.zeros(0), 1)
        return OracleResult("infeasible", None, None, 0)

    need = n - len(fixed)
    if need < 0:
        # more equalities than columns: still try each n-subset of them
        systems = [list(rows) for rows in itertools.combinations(fixed, n)]
    else:
        systems = [fixed + list(extra) for extra in itertools.combinations(planes, need)]
    if not systems:
        return OracleResult("infeasible", None, None, 0)

    # solve every candidate vertex system at once
    M = np.array([[r[0] for r in rows] for rows in systems]).reshape(-1, n, n)
    rhs = np.array([[r[1] for r in rows] for rows in systems]).reshape(-1, n)
    regular = np.linalg.cond(M) <= 1e12
    M, rhs = M[regular], rhs[regular]
    if not len(M):
        return OracleResult("infeasible", None, None, 0)
    X = np.linalg.solve(M, rhs[..., None])[..., 0]
    X = X[feasible(X)]
    if not len(X):
        return OracleResult("infeasible", None, None, 0)
    vals = X @ lp.objective
    # first vertex (in enumeration order) within 1e-12 of the minimum
    k = int(np.flatnonzero(vals <= vals.min() + 1e-12)[0])
    return OracleResult("optimal", float(vals[k]), X[k], len(X))

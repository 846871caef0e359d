"""Bounded-variable revised primal simplex.

Rows are turned into equalities with one slack per row; rows whose slack
cannot start feasible get an artificial column and a phase-1 pass drives the
artificials to zero. The basis is held as a sparse LU factorization
plus a product-form eta file, refactorized every ``refactor_every`` pivots;
this is adequate up to a few thousand rows. Beyond roughly 50k
columns export the model with :func:`mhorizon.lp.export_mps` and use an
external solver.

Pricing is Devex (reduced cost squared over an approximate steepest-edge
reference weight). After ``bland_after`` consecutive degenerate pivots the
solver switches to Bland's rule until it makes progress again, which rules
out cycling. No randomness or timing
enters any decision, so identical input yields identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..errors import IterationLimit, NumericalBreakdown, SolverError
from .sparse import SparseLP

FEAS_TOL = 1e-7
PIVOT_TOL = 1e-10

_AT_LOWER, _AT_UPPER, _FREE, _BASIC = 0, 1, 2, 3


@dataclass
class SimplexOptions:
    max_iters: int = 200_000
    tol: float = FEAS_TOL
    pivot_tol: float = PIVOT_TOL
    refactor_every: int = 50
    bland_after: int = 50


@dataclass
class Solution:
    status: str  # optimal | infeasible | unbounded | iteration-limit
    x: np.ndarray
    duals: np.ndarray
    reduced_costs: np.ndarray
    objective: float
    iterations: int = 0
    max_primal_residual: float = 0.0
    max_dual_residual: float = 0.0
    duality_gap: float = 0.0
    phase1_iterations: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def raise_for_status(self) -> "Solution":
        if self.status == "iteration-limit":
            raise IterationLimit(f"iteration limit reached after {self.iterations} pivots")
        if self.status != "optimal":
            raise SolverError(f"LP is {self.status}")
        return self

    def to_json(self, lp: SparseLP | None = None) -> str:
        """Deterministic JSON rendering (named when ``lp`` carries name tables)."""
        def fl(v):
            v = float(v)
            return v if math.isfinite(v) else None

        cols = lp.col_names if lp is not None and lp.col_names else [f"x{j}" for j in range(len(self.x))]
        rows = lp.row_names if lp is not None and lp.row_names else [f"r{i}" for i in range(len(self.duals))]
        doc = {
            "status": self.status,
            "objective": fl(self.objective),
            "iterations": self.iterations,
            "max_primal_residual": fl(self.max_primal_residual),
            "max_dual_residual": fl(self.max_dual_residual),
            "duality_gap": fl(self.duality_gap),
            "primal": {c: fl(v) for c, v in zip(cols, self.x)},
            "duals": {r: fl(v) for r, v in zip(rows, self.duals)},
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"


class _Simplex:
    def __init__(self, lp: SparseLP, opts: SimplexOptions):
        self.opts = opts
        m, n = lp.n_rows, lp.n_cols
        self.m, self.n = m, n
        A = lp.matrix("csc")
        b = lp.rhs.astype(float)
        self.b = b

        slack_lo = np.array([0.0 if s in "LE" else -np.inf for s in lp.senses])
        slack_hi = np.array([np.inf if s == "L" else 0.0 for s in lp.senses])

        lo = np.concatenate([lp.lb, slack_lo, np.zeros(m)])
        hi = np.concatenate([lp.ub, slack_hi, np.full(m, np.inf)])

        x = np.zeros(n + 2 * m)
        state = np.full(n + 2 * m, _AT_LOWER, dtype=np.int8)
        for j in range(n):
            if np.isfinite(lo[j]):
                x[j], state[j] = lo[j], _AT_LOWER
            elif np.isfinite(hi[j]):
                x[j], state[j] = hi[j], _AT_UPPER
            else:
                x[j], state[j] = 0.0, _FREE
        r = b - A @ x[:n]

        # crash basis: slack where it starts within its bounds, artificial otherwise
        sign = np.where(r >= 0, 1.0, -1.0)
        slack_ok = (r >= slack_lo - opts.tol) & (r <= slack_hi + opts.tol)
        basis = np.empty(m, dtype=np.int64)
        binv_diag = np.ones(m)
        for i in range(m):
            if slack_ok[i]:
                basis[i] = n + i
                x[n + i] = r[i]
            else:
                basis[i] = n + m + i
                x[n + m + i] = abs(r[i])
                binv_diag[i] = sign[i]
            state[basis[i]] = _BASIC
        for i in range(m):
            if not slack_ok[i] and lp.senses[i] == "G":
                state[n + i] = _AT_UPPER
        unused_art = [n + m + i for i in range(m) if slack_ok[i]]
        hi[unused_art] = 0.0

        art = sp.diags(sign, format="csc") if m else sp.csc_matrix((0, 0))
        self.A = sp.hstack([A, sp.identity(m, format="csc"), art], format="csc")
        self.AT = self.A.T.tocsr()
        self.lo, self.hi, self.x, self.state = lo, hi, x, state
        self.basis = basis
        self.n_art_basic = int(m - slack_ok.sum())
        self.iterations = 0
        self.since_refactor = 0
        self.lu = None
        self.etas: list[tuple[int, np.ndarray]] = []
        self.refactor()

    # -- linear algebra --------------------------------------------------------
    # B_k = B_0 E_1 ... E_k, where E_t is the identity with column r_t replaced
    # by the entering column expressed in the previous basis.
    def ftran(self, a: np.ndarray) -> np.ndarray:
        z = self.lu.solve(a)
        for r, alpha in self.etas:
            zr = z[r] / alpha[r]
            z -= alpha * zr
            z[r] = zr
        return z

    def btran(self, c: np.ndarray) -> np.ndarray:
        u = c.astype(float, copy=True)
        for r, alpha in reversed(self.etas):
            ur = u[r]
            u[r] = 0.0
            u[r] = (ur - u @ alpha) / alpha[r]
        return self.lu.solve(u, trans="T")

    def column(self, j: int) -> np.ndarray:
        a = np.zeros(self.m)
        start, end = self.A.indptr[j], self.A.indptr[j + 1]
        a[self.A.indices[start:end]] = self.A.data[start:end]
        return self.ftran(a)

    def refactor(self) -> None:
        self.etas = []
        self.since_refactor = 0
        if self.m == 0:
            return
        B = self.A[:, self.basis].tocsc()
        try:
            self.lu = spla.splu(B, permc_spec="COLAMD")
        except RuntimeError as exc:
            raise NumericalBreakdown("basis matrix became singular") from exc
        nonbasic = self.state != _BASIC
        rhs = self.b - self.A @ np.where(nonbasic, self.x, 0.0)
        xb = self.lu.solve(rhs)
        # one step of iterative refinement keeps rounding noise off degenerate basics
        self.x[self.basis] = xb + self.lu.solve(rhs - B @ xb)

    # -- main loop ---------------------------------------------------------------
    def run(self, cost: np.ndarray) -> str:
        opts = self.opts
        tol, ptol = opts.tol, opts.pivot_tol
        degenerate = 0
        bland = False
        verified = False
        fixed = self.lo == self.hi
        wts = np.ones_like(cost)  # Devex reference weights
        while True:
            if self.iterations >= opts.max_iters:
                return "iteration-limit"
            y = self.btran(cost[self.basis]) if self.m else np.zeros(0)
            d = cost - self.AT @ y if self.m else cost.copy()
            st = self.state
            eligible = np.zeros_like(d, dtype=bool)
            eligible |= (st == _AT_LOWER) & (d < -tol)
            eligible |= (st == _AT_UPPER) & (d > tol)
            eligible |= (st == _FREE) & (np.abs(d) > tol)
            eligible &= ~fixed
            cand = np.flatnonzero(eligible)
            if cand.size == 0:
                if self.since_refactor and not verified:
                    self.refactor()
                    verified = True
                    continue
                self.y, self.d = y, d
                return "optimal"
            verified = False
            if bland:
                j = int(cand[0])
            else:
                j = int(cand[np.argmax(d[cand] ** 2 / wts[cand])])
            direction = 1.0 if d[j] < 0 else -1.0

            alpha = self.column(j)
            delta = -direction * alpha  # change of x_B per unit step
            t, r, to_upper = self.ratio_test(delta, bland)
            span = self.hi[j] - self.lo[j]
            if t is None and not np.isfinite(span):
                self.y, self.d = y, d
                return "unbounded"
            flip = t is None or span <= t
            if flip:
                t = span
            t = max(t, 0.0)

            self.x[j] += direction * t
            if self.m:
                self.x[self.basis] += delta * t
            self.iterations += 1

            if t <= 1e-12:
                degenerate += 1
                if degenerate >= opts.bland_after:
                    bland = True
            else:
                degenerate = 0
                bland = False

            if flip:
                if direction > 0:
                    self.state[j], self.x[j] = _AT_UPPER, self.hi[j]
                else:
                    self.state[j], self.x[j] = _AT_LOWER, self.lo[j]
                continue

            piv = alpha[r]
            if abs(piv) < ptol:
                self.refactor()
                alpha = self.column(j)
                piv = alpha[r]
                if abs(piv) < ptol:
                    raise NumericalBreakdown(f"pivot {piv:.3e} below threshold")
            leaving = int(self.basis[r])
            e = np.zeros(self.m)
            e[r] = 1.0
            row = self.AT @ self.btran(e)
            ratio2 = (row / piv) ** 2 * wts[j]
            nb = self.state != _BASIC
            wts[nb] = np.maximum(wts[nb], ratio2[nb])
            wts[leaving] = max(wts[j] / piv ** 2, 1.0)
            if to_upper:
                self.state[leaving], self.x[leaving] = _AT_UPPER, self.hi[leaving]
            else:
                self.state[leaving], self.x[leaving] = _AT_LOWER, self.lo[leaving]
            self.basis[r] = j
            self.state[j] = _BASIC

            self.etas.append((r, alpha))
            self.since_refactor += 1
            if self.since_refactor >= opts.refactor_every:
                self.refactor()

    def ratio_test(self, delta: np.ndarray, bland: bool):
        """Two-pass (Harris) ratio test; returns (step, row, leaves_at_upper)."""
        if self.m == 0:
            return None, -1, False
        tol, ptol = self.opts.tol, self.opts.pivot_tol
        idx = np.flatnonzero(np.abs(delta) > ptol)
        dl = delta[idx]
        bi = self.basis[idx]
        xb, lo, hi = self.x[bi], self.lo[bi], self.hi[bi]
        inc = dl > 0
        room = np.where(inc, hi - xb, xb - lo)
        keep = np.isfinite(room)
        if not keep.any():
            return None, -1, False
        idx, dl, bi, inc, room = idx[keep], dl[keep], bi[keep], inc[keep], room[keep]
        adl = np.abs(dl)
        ratio = room / adl
        bound = ((room + tol) / adl).min()
        ties = np.flatnonzero(ratio <= bound)
        if ties.size == 0:
            ties = np.array([int(np.argmin(ratio))])
        if bland:
            k = int(ties[np.argmin(bi[ties])])
        else:
            k = int(ties[np.argmax(adl[ties])])
        return float(max(ratio[k], 0.0)), int(idx[k]), bool(inc[k])


def _finish(lp: SparseLP, s: _Simplex, status: str, cost: np.ndarray, phase1: int) -> Solution:
    n = lp.n_cols
    R, C, cs = s.unscale
    x = s.x[:n] * C
    y = getattr(s, "y", np.zeros(lp.n_rows)) * R * cs
    d = lp.objective - lp.matrix("csr").T @ y if lp.n_rows else lp.objective.copy()
    obj = float(lp.objective @ x)
    sol = Solution(status, x, np.asarray(y, dtype=float), np.asarray(d, dtype=float), obj,
                   s.iterations, phase1_iterations=phase1)
    if status == "optimal":
        from .check import check_solution

        rep = check_solution(lp, sol)
        sol.max_primal_residual = rep.max_primal_violation
        sol.max_dual_residual = rep.max_dual_violation
        sol.duality_gap = rep.duality_gap
    return sol


def _equilibrate(lp: SparseLP, passes: int = 4) -> tuple[SparseLP, np.ndarray, np.ndarray, float]:
    """Geometric-mean row/column scaling (powers of two, so it is exact)."""
    m, n = lp.n_rows, lp.n_cols
    R, C = np.ones(m), np.ones(n)
    vals = np.abs(lp.vals)
    if vals.size:
        for _ in range(passes):
            v = vals * R[lp.rows] * C[lp.cols]
            big = np.zeros(m)
            small = np.full(m, np.inf)
            np.maximum.at(big, lp.rows, v)
            np.minimum.at(small, lp.rows, v)
            ok = big > 0
            R[ok] /= np.sqrt(big[ok] * small[ok])
            v = vals * R[lp.rows] * C[lp.cols]
            big = np.zeros(n)
            small = np.full(n, np.inf)
            np.maximum.at(big, lp.cols, v)
            np.minimum.at(small, lp.cols, v)
            ok = big > 0
            C[ok] /= np.sqrt(big[ok] * small[ok])
        R = np.exp2(np.round(np.log2(R)))
        C = np.exp2(np.round(np.log2(C)))
    cmax = float(np.max(np.abs(lp.objective * C), initial=0.0))
    cs = float(np.exp2(np.round(np.log2(cmax)))) if cmax > 0 else 1.0
    scaled = SparseLP.from_arrays(lp.objective * C / cs, lp.rows, lp.cols, lp.vals * R[lp.rows] * C[lp.cols],
                                  lp.senses, lp.rhs * R, lp.lb / C, lp.ub / C, (), (), lp.name)
    return scaled, R, C, cs


def solve_simplex(lp: SparseLP, opts: SimplexOptions | None = None, **kw) -> Solution:
    """Solve ``lp`` to optimality, or report infeasible / unbounded / iteration-limit.

    The LP is equilibrated internally (row/column scale factors that are
    powers of two); the returned primal and dual values refer to ``lp``.
    """
    opts = opts or SimplexOptions(**kw)
    scaled, R, C, cs = _equilibrate(lp)
    s = _Simplex(scaled, opts)
    s.unscale = (R, C, cs)
    n, m = lp.n_cols, lp.n_rows
    N = n + 2 * m

    phase1 = 0
    if s.n_art_basic:
        c1 = np.zeros(N)
        c1[n + m:] = 1.0
        status = s.run(c1)
        phase1 = s.iterations
        if status == "iteration-limit":
            return _finish(lp, s, status, c1, phase1)
        s.refactor()
        infeas = float(s.x[n + m:].sum())
        scale = 1.0 + float(np.max(np.abs(lp.rhs))) if m else 1.0
        if infeas > opts.tol * scale:
            return _finish(lp, s, "infeasible", c1, phase1)
    # artificials may linger in the basis at zero; pin them there
    s.hi[n + m:] = 0.0
    s.x[n + m:] = np.clip(s.x[n + m:], 0.0, 0.0)
    s.refactor()
    c2 = np.zeros(N)
    c2[:n] = scaled.objective
    status = s.run(c2)
    return _finish(lp, s, status, c2, phase1)

"""Primal/dual residual and complementary-slackness checks for LP solutions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch
from .sparse import SparseLP


@dataclass
class ResidualReport:
    row_residual: np.ndarray  # signed violation per row, 0 when satisfied
    max_row_residual: dict  # sense -> max violation
    max_bound_violation: float
    max_dual_violation: float
    complementary_slackness: float
    primal_objective: float
    dual_objective: float
    duality_gap: float

    @property
    def max_primal_violation(self) -> float:
        return max([self.max_bound_violation, *self.max_row_residual.values()])

    def worst_rows(self, lp: SparseLP, k: int = 5) -> list[tuple[str, float]]:
        order = np.argsort(-np.abs(self.row_residual), kind="stable")[:k]
        names = lp.row_names or tuple(f"r{i}" for i in range(lp.n_rows))
        return [(names[i], float(self.row_residual[i])) for i in order if self.row_residual[i] != 0]

    def format(self) -> str:
        lines = ["residual report"]
        for sense in ("L", "G", "E"):
            lines.append(f"  max row violation [{sense}]: {self.max_row_residual.get(sense, 0.0):.3e}")
        lines += [
            f"  max bound violation:     {self.max_bound_violation:.3e}",
            f"  max dual violation:      {self.max_dual_violation:.3e}",
            f"  complementary slackness: {self.complementary_slackness:.3e}",
            f"  primal objective:        {self.primal_objective!r}",
            f"  dual objective:          {self.dual_objective!r}",
            f"  duality gap:             {self.duality_gap:.3e}",
        ]
        return "\n".join(lines) + "\n"


def row_violation(lp: SparseLP, x: np.ndarray) -> np.ndarray:
    ax = lp.activity(x)
    r = ax - lp.rhs
    senses = np.array(lp.senses, dtype="<U1")
    out = np.zeros(lp.n_rows)
    le, ge, eq = senses == "L", senses == "G", senses == "E"
    out[le] = np.maximum(r[le], 0.0)
    out[ge] = np.minimum(r[ge], 0.0)
    out[eq] = r[eq]
    return out


def check_solution(lp: SparseLP, sol) -> ResidualReport:
    """Residuals of ``sol`` (anything with ``x`` and ``duals``) against ``lp``.

    Dual sign conventions are those of a minimization: rows ``<=`` carry
    non-positive duals, rows ``>=`` non-negative ones.
    """
    x = np.asarray(sol.x, dtype=float)
    y = np.asarray(sol.duals, dtype=float)
    if x.shape != (lp.n_cols,) or y.shape != (lp.n_rows,):
        raise DimensionMismatch(
            f"solution has {x.shape[0]} columns / {y.shape[0]} rows, "
            f"LP has {lp.n_cols} / {lp.n_rows}")

    viol = row_violation(lp, x)
    senses = np.array(lp.senses, dtype="<U1")
    by_sense = {}
    for s in ("L", "G", "E"):
        mask = senses == s
        by_sense[s] = float(np.max(np.abs(viol[mask]))) if mask.any() else 0.0
    bound = np.maximum(lp.lb - x, 0.0)
    bound = np.maximum(bound, x - lp.ub)
    max_bound = float(bound.max()) if len(bound) else 0.0

    # dual feasibility: row duals must have the sign their sense allows
    dual_viol = np.zeros(lp.n_rows)
    dual_viol[senses == "L"] = np.maximum(y[senses == "L"], 0.0)
    dual_viol[senses == "G"] = np.maximum(-y[senses == "G"], 0.0)

    d = lp.objective - (lp.matrix("csr").T @ y if lp.n_rows else 0.0)
    d_pos, d_neg = np.maximum(d, 0.0), np.maximum(-d, 0.0)
    lb_fin, ub_fin = np.isfinite(lp.lb), np.isfinite(lp.ub)
    col_viol = np.where(lb_fin, 0.0, d_pos) + np.where(ub_fin, 0.0, d_neg)
    max_dual = float(max(dual_viol.max(initial=0.0), col_viol.max(initial=0.0)))

    ax = lp.activity(x)
    dual_obj = float(lp.rhs @ y + np.sum(np.where(lb_fin, d_pos * np.where(lb_fin, lp.lb, 0.0), 0.0))
                     - np.sum(np.where(ub_fin, d_neg * np.where(ub_fin, lp.ub, 0.0), 0.0)))
    primal_obj = float(lp.objective @ x)
    cs = float(np.sum(np.abs(y * (ax - lp.rhs)))
               + np.sum(np.where(lb_fin, d_pos * np.abs(x - np.where(lb_fin, lp.lb, 0.0)), 0.0))
               + np.sum(np.where(ub_fin, d_neg * np.abs(np.where(ub_fin, lp.ub, 0.0) - x), 0.0)))
    return ResidualReport(viol, by_sense, max_bound, max_dual, cs, primal_obj, dual_obj,
                          abs(primal_obj - dual_obj))

"""Sparse LP container in triplet form."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionMismatch, NonFiniteCoefficient, ValidationError

SENSES = ("L", "G", "E")


@dataclass(frozen=True, eq=False)
class SparseLP:
    """``min c.x  s.t.  A x (<=,>=,=) b,  lb <= x <= ub``.

    ``A`` is held as (row, col, value) triplets; ``senses`` holds one of
    ``"L"``, ``"G"``, ``"E"`` per row.
    """

    objective: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    senses: tuple[str, ...]
    rhs: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    row_names: tuple[str, ...] = ()
    col_names: tuple[str, ...] = ()
    name: str = "LP"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n, m = len(self.objective), len(self.rhs)
        if len(self.senses) != m:
            raise DimensionMismatch(f"{len(self.senses)} senses for {m} rows")
        if len(self.lb) != n or len(self.ub) != n:
            raise DimensionMismatch("bound vectors do not match the column count")
        if not (len(self.rows) == len(self.cols) == len(self.vals)):
            raise DimensionMismatch("triplet arrays differ in length")
        if self.row_names and len(self.row_names) != m:
            raise DimensionMismatch("row name table does not match the row count")
        if self.col_names and len(self.col_names) != n:
            raise DimensionMismatch("column name table does not match the column count")
        if len(self.rows) and (self.rows.min() < 0 or self.rows.max() >= m):
            raise DimensionMismatch("row index out of range")
        if len(self.cols) and (self.cols.min() < 0 or self.cols.max() >= n):
            raise DimensionMismatch("column index out of range")
        bad = [s for s in self.senses if s not in SENSES]
        if bad:
            raise ValidationError(f"unknown row sense {bad[0]!r}")
        if np.any(self.lb > self.ub):
            j = int(np.argmax(self.lb > self.ub))
            raise ValidationError(f"column {j}: lower bound exceeds upper bound")

    @classmethod
    def from_arrays(cls, objective, rows, cols, vals, senses, rhs, lb=None, ub=None,
                    row_names=(), col_names=(), name="LP") -> "SparseLP":
        objective = np.asarray(objective, dtype=float)
        n = len(objective)
        lb = np.zeros(n) if lb is None else np.asarray(lb, dtype=float)
        ub = np.full(n, np.inf) if ub is None else np.asarray(ub, dtype=float)
        return cls(objective, np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64),
                   np.asarray(vals, dtype=float), tuple(senses), np.asarray(rhs, dtype=float),
                   lb, ub, tuple(row_names), tuple(col_names), name)

    @classmethod
    def from_dense(cls, c, A, senses, b, lb=None, ub=None, **kw) -> "SparseLP":
        A = np.atleast_2d(np.asarray(A, dtype=float))
        if A.size == 0:
            A = A.reshape(len(b), len(c))
        r, k = np.nonzero(A)
        return cls.from_arrays(c, r, k, A[r, k], senses, b, lb, ub, **kw)

    @property
    def n_cols(self) -> int:
        return len(self.objective)

    @property
    def n_rows(self) -> int:
        return len(self.rhs)

    def matrix(self, fmt: str = "csr") -> sp.spmatrix:
        key = "A_" + fmt
        if key not in self._cache:
            A = sp.coo_matrix((self.vals, (self.rows, self.cols)), shape=(self.n_rows, self.n_cols))
            self._cache[key] = A.asformat(fmt)
        return self._cache[key]

    def dense(self) -> np.ndarray:
        return self.matrix().toarray()

    def activity(self, x: np.ndarray) -> np.ndarray:
        return self.matrix() @ np.asarray(x, dtype=float)

    def scaled_objective(self, factor: float) -> "SparseLP":
        return replace(self, objective=self.objective * factor, _cache={})

    def row_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.row_names)}

    def col_index(self) -> dict[str, int]:
        return {name: j for j, name in enumerate(self.col_names)}


def canonicalize(lp: SparseLP) -> SparseLP:
    """Sum duplicate triplets, drop exact zeros, order row-major then by column."""
    for label, arr in (("coefficient", lp.vals), ("objective", lp.objective), ("rhs", lp.rhs)):
        if not np.all(np.isfinite(arr)):
            raise NonFiniteCoefficient(f"non-finite {label} entry")
    if np.any(np.isnan(lp.lb)) or np.any(np.isnan(lp.ub)):
        raise NonFiniteCoefficient("NaN bound")
    if len(lp.vals):
        key = lp.rows * max(lp.n_cols, 1) + lp.cols
        order = np.argsort(key, kind="stable")
        key, vals = key[order], lp.vals[order]
        uniq, start = np.unique(key, return_index=True)
        summed = np.add.reduceat(vals, start)
        keep = summed != 0.0
        uniq, summed = uniq[keep], summed[keep]
        rows, cols = uniq // max(lp.n_cols, 1), uniq % max(lp.n_cols, 1)
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
        summed = np.zeros(0)
    return replace(lp, rows=rows.astype(np.int64), cols=cols.astype(np.int64),
                   vals=summed.astype(float), _cache={})


def lp_equal(a: SparseLP, b: SparseLP, rtol: float = 0.0) -> bool:
    """Field-by-field equality of two canonical LPs."""
    def close(x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if x.shape != y.shape:
            return False
        same_inf = (np.isinf(x) == np.isinf(y)) & (np.sign(x) == np.sign(y))
        fin = np.isfinite(x) & np.isfinite(y)
        return bool(np.all(same_inf) and np.all(np.abs(x[fin] - y[fin]) <= rtol * np.abs(x[fin])))

    return (a.senses == b.senses and a.row_names == b.row_names and a.col_names == b.col_names
            and np.array_equal(a.rows, b.rows) and np.array_equal(a.cols, b.cols)
            and close(a.vals, b.vals) and close(a.objective, b.objective)
            and close(a.rhs, b.rhs) and close(a.lb, b.lb) and close(a.ub, b.ub))

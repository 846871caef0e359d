"""MPS export and import.

Output follows the fixed-format section layout (NAME, ROWS, COLUMNS, RHS,
RANGES, BOUNDS, ENDATA) with fields aligned on the classic column grid.
Names longer than eight characters are allowed (up to 255) and any
whitespace inside a name is replaced by ``_``. Numbers are written with 12
significant digits, so ``export -> parse -> export`` reproduces the bytes.
"""

from __future__ import annotations

import re

import numpy as np

from ..errors import MpsParseError, NameTooLong, ValidationError
from .sparse import SparseLP, canonicalize

OBJ = "OBJ"
MAX_NAME = 255
_WS = re.compile(r"\s")


def _num(v: float) -> str:
    return "%.12g" % (float(v) + 0.0)


def _mangle(name: str) -> str:
    out = _WS.sub("_", name)
    if len(out) > MAX_NAME:
        raise NameTooLong(f"name {out[:40]!r}... has {len(out)} characters (max {MAX_NAME})")
    if not out:
        raise ValidationError("empty name")
    return out


def _field(name: str) -> str:
    return name.ljust(8)


def export_mps(lp: SparseLP) -> bytes:
    lp = canonicalize(lp)
    rows = [_mangle(r) for r in (lp.row_names or [f"R{i}" for i in range(lp.n_rows)])]
    cols = [_mangle(c) for c in (lp.col_names or [f"C{j}" for j in range(lp.n_cols)])]
    if OBJ in rows:
        raise ValidationError(f"row name {OBJ!r} is reserved for the objective")

    out = [f"NAME          {_mangle(lp.name)}", "ROWS", f" N  {OBJ}"]
    out += [f" {s}  {r}" for s, r in zip(lp.senses, rows)]

    out.append("COLUMNS")
    order = np.lexsort((lp.rows, lp.cols))
    by_col: dict[int, list[int]] = {}
    for k in order:
        by_col.setdefault(int(lp.cols[k]), []).append(int(k))
    for j, cname in enumerate(cols):
        entries = []
        if lp.objective[j] != 0.0:
            entries.append((OBJ, lp.objective[j]))
        entries += [(rows[lp.rows[k]], lp.vals[k]) for k in by_col.get(j, [])]
        if not entries:
            entries.append((OBJ, 0.0))
        for rname, v in entries:
            out.append(f"    {_field(cname)}  {_field(rname)}  {_num(v)}")

    out.append("RHS")
    for i, rname in enumerate(rows):
        if lp.rhs[i] != 0.0:
            out.append(f"    {_field('RHS')}  {_field(rname)}  {_num(lp.rhs[i])}")

    out.append("BOUNDS")
    for j, cname in enumerate(cols):
        lo, hi = lp.lb[j], lp.ub[j]
        tag = f" {{}} {_field('BND')}  {_field(cname)}"
        if lo == hi:
            out.append(tag.format("FX") + f"  {_num(lo)}")
            continue
        if np.isneginf(lo) and np.isposinf(hi):
            out.append(tag.format("FR"))
            continue
        if np.isneginf(lo):
            out.append(tag.format("MI"))
        elif lo != 0.0 or hi < 0.0:
            out.append(tag.format("LO") + f"  {_num(lo)}")
        if np.isfinite(hi):
            out.append(tag.format("UP") + f"  {_num(hi)}")
    out.append("ENDATA")
    return ("\n".join(out) + "\n").encode("ascii")


def parse_mps(data: bytes | str) -> SparseLP:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    section = None
    name = "LP"
    row_names: list[str] = []
    senses: list[str] = []
    row_idx: dict[str, int] = {}
    obj_name = None
    col_idx: dict[str, int] = {}
    col_names: list[str] = []
    objective: list[float] = []
    trip_r: list[int] = []
    trip_c: list[int] = []
    trip_v: list[float] = []
    rhs: dict[int, float] = {}
    lb: dict[int, float] = {}
    ub: dict[int, float] = {}

    def col(cname: str) -> int:
        if cname not in col_idx:
            col_idx[cname] = len(col_names)
            col_names.append(cname)
            objective.append(0.0)
        return col_idx[cname]

    def num(tok: str, lineno: int) -> float:
        try:
            return float(tok)
        except ValueError:
            raise MpsParseError(f"line {lineno}: bad number {tok!r}") from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.startswith("*"):
            continue
        if not raw[0].isspace():
            parts = raw.split()
            section = parts[0].upper()
            if section == "NAME":
                name = parts[1] if len(parts) > 1 else "LP"
            elif section == "ENDATA":
                break
            elif section not in ("ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS"):
                raise MpsParseError(f"line {lineno}: unknown section {section!r}")
            continue
        tok = raw.split()
        if section == "ROWS":
            sense, rname = tok[0].upper(), tok[1]
            if sense == "N":
                if obj_name is None:
                    obj_name = rname
                continue
            if sense not in ("L", "G", "E"):
                raise MpsParseError(f"line {lineno}: unknown row type {sense!r}")
            row_idx[rname] = len(row_names)
            row_names.append(rname)
            senses.append(sense)
        elif section == "COLUMNS":
            if "'MARKER'" in tok:
                raise MpsParseError(f"line {lineno}: integer markers are not supported")
            j = col(tok[0])
            for rname, val in zip(tok[1::2], tok[2::2]):
                v = num(val, lineno)
                if rname == obj_name:
                    objective[j] += v
                elif rname in row_idx:
                    trip_r.append(row_idx[rname])
                    trip_c.append(j)
                    trip_v.append(v)
                else:
                    raise MpsParseError(f"line {lineno}: unknown row {rname!r}")
        elif section == "RHS":
            pairs = tok[1:] if len(tok) % 2 == 1 else tok
            for rname, val in zip(pairs[0::2], pairs[1::2]):
                if rname == obj_name:
                    continue
                if rname not in row_idx:
                    raise MpsParseError(f"line {lineno}: unknown row {rname!r}")
                rhs[row_idx[rname]] = num(val, lineno)
        elif section == "RANGES":
            raise MpsParseError(f"line {lineno}: ranged rows are not supported")
        elif section == "BOUNDS":
            kind = tok[0].upper()
            if len(tok) < 3:
                raise MpsParseError(f"line {lineno}: malformed bound")
            cname = tok[2]
            if cname not in col_idx:
                raise MpsParseError(f"line {lineno}: unknown column {cname!r}")
            j = col_idx[cname]
            val = num(tok[3], lineno) if len(tok) > 3 else None
            if kind in ("UP", "LO", "FX") and val is None:
                raise MpsParseError(f"line {lineno}: bound {kind} needs a value")
            if kind == "UP":
                ub[j] = val
            elif kind == "LO":
                lb[j] = val
            elif kind == "FX":
                lb[j] = ub[j] = val
            elif kind == "FR":
                lb[j], ub[j] = -np.inf, np.inf
            elif kind == "MI":
                lb[j] = -np.inf
            elif kind == "PL":
                ub[j] = np.inf
            else:
                raise MpsParseError(f"line {lineno}: unsupported bound type {kind!r}")
        else:
            raise MpsParseError(f"line {lineno}: data outside of a section")

    n, m = len(col_names), len(row_names)
    lo = np.zeros(n)
    hi = np.full(n, np.inf)
    for j, v in lb.items():
        lo[j] = v
    for j, v in ub.items():
        hi[j] = v
    b = np.zeros(m)
    for i, v in rhs.items():
        b[i] = v
    lp = SparseLP.from_arrays(objective, trip_r, trip_c, trip_v, senses, b, lo, hi,
                              row_names, col_names, name)
    return canonicalize(lp)

"""Write small case directories from Python data for tests."""

from __future__ import annotations

import csv
from pathlib import Path

from mhorizon.case_io import SCHEMAS


def write_table(path: Path, rows: list[dict]) -> None:
    header: list[str] = []
    if not rows:  # header-only table with the required columns
        header = [c for c, (_, d) in SCHEMAS[path.stem].items() if d is ...]
    for r in rows:
        for k in r:
            if k not in header:
                header.append(k)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if r.get(k) is None else r.get(k) for k in header])


def write_case(root: Path, tables: dict[str, list[dict]], *, periods: int = 1, start_year: int = 2020,
               annual_hours: float = 8760.0, discount_rate: float = 0.0, settings: dict | None = None,
               name: str = "kit") -> Path:
    root.mkdir(parents=True, exist_ok=True)
    lines = [f'[case]\nname = "{name}"\nschema = "mhorizon-case/1"\n',
             f"[time]\nperiods = {periods}\nstart_year = {start_year}\nperiod_length = 5\n"
             f"annual_hours = {annual_hours!r}\ndiscount_rate = {discount_rate!r}\n"]
    if settings:
        body = []
        for k, v in settings.items():
            body.append(f"{k} = " + (f'"{v}"' if isinstance(v, str) else
                                      ("true" if v is True else "false" if v is False else repr(v))))
        lines.append("[settings]\n" + "\n".join(body) + "\n")
    (root / "manifest.toml").write_text("\n".join(lines), encoding="utf-8")
    for table, rows in tables.items():
        if rows is None:
            continue
        write_table(root / f"{table}.csv", rows)
    return root


def single_bus(hours: int = 2, scenarios=(("w1", 1.0),), periods: int = 1, alpha=None,
               annual_hours: float | None = None) -> tuple[dict, dict]:
    """Skeleton tables for one node ``N`` with power and gas; returns (tables, kwargs)."""
    years = [2020 + 5 * i for i in range(periods)]
    tables = {
        "nodes": [{"node": "N"}],
        "commodities": [{"commodity": "power", "balance": "hourly", "emission_factor": 0},
                        {"commodity": "gas", "balance": "hourly", "emission_factor": 0.2}],
        "seasons": [{"season": "s", "kind": "regular", "hours": hours, "alpha": alpha}],
        "scenarios": [{"scenario": w, "probability": p} for w, p in scenarios],
        "assets": [],
        "conversions": [],
        "placements": [],
        "demand": [],
        "profiles": [{"profile": "flat", "scenario": w, "season": "s", "hour": h, "value": 1}
                     for w, _ in scenarios for h in range(1, hours + 1)],
        "carbon_cap": [{"year": y, "cap": 1e12} for y in years],
        "cost_tracks": [{"track": "gas_production", "year": y, "value": 10} for y in years],
    }
    kw = {"periods": periods}
    if annual_hours is not None:
        kw["annual_hours"] = annual_hours
    return tables, kw


def asset(name: str, category: str = "generator", **kw) -> dict:
    row = {"asset": name, "category": category}
    row.update(kw)
    return row


def conv(name: str, **coeffs: float) -> list[dict]:
    return [{"asset": name, "commodity": c, "coefficient": k} for c, k in coeffs.items()]

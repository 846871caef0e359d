"""Reporting views over an optimal solution, plus table and SVG emitters.

Every view is a small table with a fixed column schema. Europe-wide rows
use the node label ``ALL``; per-node rows follow. Float cells are written
with ``repr`` so that :func:`read_tables` recovers the exact values, and the
SVG charts reuse the very same strings for their value labels.

Units: power capacity in GW, hydrogen capacity in t/h, industry production
in units/yr, sequestration in Gt (cumulative, expected over scenarios),
atmospheric emissions in tCO2/yr (expected over scenarios), costs in EUR
(discounted).
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .builder import BuiltModel, Key
from .catalog import HYDROGEN, POWER
from .errors import IoFailure, NonOptimalSolution
from .lp.simplex import Solution

ALL = "ALL"
GT = 1e9

# view name -> ordered (column, type) schema
VIEW_SCHEMAS: dict[str, tuple[tuple[str, type], ...]] = {
    "capacity_mix": (("group", str), ("node", str), ("year", int), ("gw", float)),
    "hydrogen_capacity": (("group", str), ("node", str), ("year", int), ("t_per_h", float)),
    "industry_shares": (("sector", str), ("route", str), ("node", str), ("year", int),
                        ("production", float), ("share", float)),
    "sequestration": (("site", str), ("year", int), ("cumulative_gt", float)),
    "emissions": (("sector", str), ("year", int), ("t_per_year", float)),
    "objective": (("component", str), ("eur", float)),
    "transport": (("arc", str), ("commodity", str), ("source", str), ("target", str),
                  ("year", int), ("capacity", float)),
}
VIEWS = tuple(VIEW_SCHEMAS)


@dataclass
class ReportBundle:
    """All reporting views; each maps to a tuple of row tuples."""

    capacity_mix: tuple = ()
    hydrogen_capacity: tuple = ()
    industry_shares: tuple = ()
    sequestration: tuple = ()
    emissions: tuple = ()
    objective: tuple = ()
    transport: tuple = ()
    meta: dict = field(default_factory=dict, compare=False)

    def view(self, name: str) -> tuple:
        return getattr(self, name)

    def header(self, name: str) -> tuple[str, ...]:
        return tuple(c for c, _ in VIEW_SCHEMAS[name])


def _group(model: BuiltModel, asset: str) -> str:
    return model.case.groups.get(asset, asset)


def _sum_rows(acc: dict, key: tuple, value: float) -> None:
    acc[key] = acc.get(key, 0.0) + value


def _with_totals(per_node: dict[tuple, float], label_pos: int) -> list[tuple]:
    """Europe-wide rows (node = ALL) followed by per-node rows, both sorted."""
    total: dict[tuple, list[float]] = {}
    for key, v in per_node.items():
        k = key[:label_pos] + (ALL,) + key[label_pos + 1:]
        total.setdefault(k, []).append(v)
    rows = [k + (math.fsum(vs),) for k, vs in sorted(total.items())]
    rows += [k + (v,) for k, v in sorted(per_node.items())]
    return rows


def extract_reports(model: BuiltModel, sol: Solution) -> ReportBundle:
    """Build every view from an optimal solution of ``model``."""
    if sol.status != "optimal":
        raise NonOptimalSolution(f"cannot report on a {sol.status} solution")
    case, reg, x = model.case, model.registry, np.asarray(sol.x, dtype=float)
    ts = case.time
    cat = case.catalog
    years = ts.years
    L = float(ts.period_length_years)
    alpha = ts.season_scale
    prob = ts.probabilities

    # capacity views
    power: dict[tuple, float] = {}
    hydrogen: dict[tuple, float] = {}
    for (a, n) in case.placements:
        spec = cat.assets[a]
        out = spec.commodity if spec.is_storage else spec.primary
        for p in ts.period_indices:
            v = float(x[reg[Key("v", a, n, p)]])
            if out == POWER:
                _sum_rows(power, (_group(model, a), n, years[p]), v / 1000.0)
            elif out == HYDROGEN and not spec.is_storage:
                _sum_rows(hydrogen, (_group(model, a), n, years[p]), v)
    capacity_mix = _with_totals(power, 1)
    hydrogen_capacity = _with_totals(hydrogen, 1)

    # industry production (expected annual output per route)
    prod: dict[tuple, float] = {}
    for sec, n, p in sorted(case.sector_demand):
        for r in cat.routes(sec):
            if (r.id, n) not in case.placements:
                continue
            total = math.fsum(prob[w] * alpha[s] * float(x[reg[Key("y", r.id, n, p, s, h, w)]])
                              for w in ts.scenario_names for s, h in ts.season_hours())
            _sum_rows(prod, (sec, r.id, n, years[p]), total)
    industry_shares = []
    for node_label in (ALL, None):
        agg: dict[tuple, float] = {}
        for (sec, route, n, y), v in prod.items():
            _sum_rows(agg, (sec, route, node_label or n, y), v)
        groups: dict[tuple, list[float]] = {}
        for (sec, route, n, y), v in agg.items():
            groups.setdefault((sec, n, y), []).append(v)
        sums = {k: math.fsum(vs) for k, vs in groups.items()}
        for (sec, route, n, y), v in sorted(agg.items()):
            t = sums[(sec, n, y)]
            industry_shares.append((sec, route, n, y, v, v / t if t > 0 else 0.0))

    # cumulative expected sequestration per site
    sequestration = []
    for site in sorted(cat.sites.values(), key=lambda s: s.id):
        running = 0.0
        for p in ts.period_indices:
            running += math.fsum(
                prob[w] * L * alpha[s] * float(x[reg[Key("sq", site.id, site.node, p, s, h, w)]])
                for w in ts.scenario_names for s, h in ts.season_hours())
            sequestration.append((site.id, years[p], running / GT))

    # expected annual atmospheric emissions per sector (same terms as the cap rows)
    em: dict[tuple, list[float]] = {}
    for t in model.emission_terms:
        if t.atmospheric_per_unit <= 0:
            continue
        val = prob[t.scenario] * (t.weight / L) * t.atmospheric_per_unit * float(x[t.column])
        em.setdefault((t.sector, years[t.period]), []).append(val)
        em.setdefault(("total", years[t.period]), []).append(val)
    for p in ts.period_indices:
        em.setdefault(("total", years[p]), [])
    emissions = [k + (math.fsum(v),) for k, v in sorted(em.items())]

    # objective breakdown
    cost = model.lp.objective
    inv, fom, ops = [], [], []
    per_scen: dict[str, list[float]] = {w: [] for w in ts.scenario_names}
    for j, key in enumerate(reg.keys):
        c = float(cost[j]) * float(x[j])
        if key.tag in ("x", "xa"):
            inv.append(c)
        elif key.tag in ("v", "va"):
            fom.append(c)
        else:
            ops.append(c)
            per_scen[key.scenario].append(c / prob[key.scenario])
    objective = [("investment", math.fsum(inv)), ("fixed_om", math.fsum(fom)),
                 ("operational_expected", math.fsum(ops))]
    objective += [(f"operational:{w}", math.fsum(v)) for w, v in per_scen.items()]
    objective.append(("total", math.fsum(inv + fom + ops)))

    transport = []
    for r in sorted(cat.arcs.values(), key=lambda r: r.id):
        for p in ts.period_indices:
            transport.append((r.id, r.commodity, r.source, r.target, years[p],
                              float(x[reg[Key("va", r.id, "*", p)]])))

    return ReportBundle(tuple(capacity_mix), tuple(hydrogen_capacity), tuple(industry_shares),
                        tuple(sequestration), tuple(emissions), tuple(objective), tuple(transport),
                        meta={"case": case.name})


# -- tables ------------------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v + 0.0)
    return str(v)


def render_table(bundle: ReportBundle, name: str) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(bundle.header(name))
    for row in bundle.view(name):
        w.writerow([_cell(v) for v in row])
    return buf.getvalue().encode("utf-8")


def _write(path: Path, data: bytes) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def emit_tables(bundle: ReportBundle, directory: str | os.PathLike) -> list[Path]:
    """Write one CSV per view; identical bundles give identical bytes."""
    out = []
    for name in VIEWS:
        path = Path(directory) / f"{name}.csv"
        _write(path, render_table(bundle, name))
        out.append(path)
    return out


def read_tables(directory: str | os.PathLike) -> ReportBundle:
    """Parse tables written by :func:`emit_tables` back into a bundle."""
    views = {}
    for name, schema in VIEW_SCHEMAS.items():
        path = Path(directory) / f"{name}.csv"
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc}") from exc
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or tuple(rows[0]) != tuple(c for c, _ in schema):
            raise IoFailure(f"{path} has an unexpected header")
        views[name] = tuple(tuple(t(v) for (_, t), v in zip(schema, r)) for r in rows[1:])
    return ReportBundle(**views)


# -- plots -------------------------------------------------------------------------------

# (view, category column, x column(s), value column, node filter column)
PLOT_SPECS = {
    "capacity_mix": ("group", ("year",), "gw", "node"),
    "hydrogen_capacity": ("group", ("year",), "t_per_h", "node"),
    "industry_shares": ("route", ("sector", "year"), "share", "node"),
    "sequestration": ("site", ("year",), "cumulative_gt", None),
    "emissions": ("sector", ("year",), "t_per_year", None),
    "objective": ("component", (), "eur", None),
    "transport": ("arc", ("year",), "capacity", None),
}
PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1",
           "#ff9da7", "#9c755f", "#bab0ac")
W, H, PAD = 640, 400, 60


def plot_series(bundle: ReportBundle, name: str) -> tuple[list[str], list[str], dict]:
    """(x labels, stack categories, {(x, category): (value, label text)}) for a view."""
    cat_col, x_cols, val_col, node_col = PLOT_SPECS[name]
    header = bundle.header(name)
    idx = {c: i for i, c in enumerate(header)}
    data: dict[tuple[str, str], tuple[float, str]] = {}
    xs: list[str] = []
    cats: list[str] = []
    for row in bundle.view(name):
        if node_col is not None and row[idx[node_col]] != ALL:
            continue
        cat = str(row[idx[cat_col]])
        if name == "emissions" and cat == "total":
            continue
        if name == "objective" and (cat == "total" or cat.startswith("operational:")):
            continue
        xl = " ".join(str(row[idx[c]]) for c in x_cols) or "total"
        v = row[idx[val_col]]
        if xl not in xs:
            xs.append(xl)
        if cat not in cats:
            cats.append(cat)
        data[(xl, cat)] = (float(v), _cell(v))
    return xs, cats, data


def render_svg(bundle: ReportBundle, name: str) -> bytes:
    xs, cats, data = plot_series(bundle, name)
    _, _, val_col, _ = PLOT_SPECS[name]
    totals = [math.fsum(max(data.get((x, c), (0.0, ""))[0], 0.0) for c in cats) for x in xs]
    top = max(totals, default=0.0)
    scale = (H - 2 * PAD) / top if top > 0 else 0.0
    bw = (W - 2 * PAD) / max(len(xs), 1)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
           f'viewBox="0 0 {W} {H}">',
           f'<title>{escape(name)}</title>',
           f'<text x="{PAD}" y="{PAD // 2}" font-size="14">{escape(name)} [{escape(val_col)}]</text>',
           f'<line x1="{PAD}" y1="{H - PAD}" x2="{W - PAD}" y2="{H - PAD}" stroke="black"/>',
           f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{H - PAD}" stroke="black"/>']
    for k, c in enumerate(cats):
        colour = PALETTE[k % len(PALETTE)]
        out.append(f'<rect class="legend" x="{W - PAD + 5}" y="{PAD + 14 * k}" width="10" '
                   f'height="10" fill="{colour}"/>')
        out.append(f'<text class="legend" x="{W - PAD + 18}" y="{PAD + 14 * k + 9}" '
                   f'font-size="9">{escape(c)}</text>')
    for i, xl in enumerate(xs):
        x0 = PAD + i * bw + 0.1 * bw
        base = H - PAD
        out.append(f'<text class="xlabel" x="{x0:.2f}" y="{H - PAD + 14}" font-size="10">'
                   f'{escape(xl)}</text>')
        for k, c in enumerate(cats):
            if (xl, c) not in data:
                continue
            v, label = data[(xl, c)]
            if not v > 0:
                continue
            h = v * scale
            base -= h
            out.append(f'<rect class="bar" x="{x0:.2f}" y="{base:.2f}" width="{0.8 * bw:.2f}" '
                       f'height="{h:.2f}" fill="{PALETTE[k % len(PALETTE)]}"/>')
            out.append(f'<text class="value" data-series="{escape(c)}" data-x="{escape(xl)}" '
                       f'x="{x0 + 2:.2f}" y="{base + 10:.2f}" font-size="8">{escape(label)}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def emit_plots(bundle: ReportBundle, directory: str | os.PathLike) -> list[Path]:
    """One standalone stacked-bar SVG per view (Europe-wide rows)."""
    out = []
    for name in VIEWS:
        path = Path(directory) / f"{name}.svg"
        _write(path, render_svg(bundle, name))
        out.append(path)
    return out


# -- headline indicators ----------------------------------------------------------------

def electrolysis_share(model: BuiltModel, x, period: int | None = None) -> float:
    """Share of installed hydrogen production capacity that is emission free.

    Emission-free producers are hydrogen routes with no direct, fuel or
    process emissions (electrolysis in the bundled cases). ``period``
    defaults to the final period; returns 0 when no capacity is installed.
    """
    from .catalog import total_emission_factor

    case = model.case
    p = case.time.period_indices[-1] if period is None else period
    green, total = [], []
    for (a, n) in case.placements:
        spec = case.catalog.assets[a]
        if spec.is_storage or spec.primary != HYDROGEN:
            continue
        v = float(x[model.registry[Key("v", a, n, p)]])
        total.append(v)
        if total_emission_factor(spec, case.commodities) == 0.0:
            green.append(v)
    t = math.fsum(total)
    return math.fsum(green) / t if t > 0 else 0.0

from __future__ import annotations

import math
import re

import numpy as np
import pytest

from casekit import asset, conv, single_bus, write_case
from mhorizon.builder import Key, build_model
from mhorizon.case_io import load_case
from mhorizon.errors import NonOptimalSolution
from mhorizon.lp import solve_simplex
from mhorizon.report import (
    ALL,
    VIEWS,
    ReportBundle,
    electrolysis_share,
    emit_plots,
    emit_tables,
    extract_reports,
    plot_series,
    read_tables,
    render_svg,
)


def ccs_model(tmp_path, capture_rate=1.0, periods=1):
    """1 MW of demand met by a gas plant emitting 1 t/MWh; 8736 h/yr in one season."""
    tables, kw = single_bus(hours=1, periods=periods, annual_hours=8736.0)
    tables["commodities"].append({"commodity": "co2", "balance": "hourly", "unit": "t"})
    tables["assets"] = [asset("ccs", capture_rate=capture_rate, invest_cost=1)]
    tables["conversions"] = conv("ccs", power=1, gas=-5)
    tables["placements"] = [{"asset": "ccs", "node": "N"}]
    tables["gas_supply"] = [{"supply": "field", "node": "N", "kind": "pipeline-field",
                             "production_capacity": 100}]
    tables["sequestration"] = [{"node": "N", "max_cumulative_gt": 1}]
    tables["demand"] = [{"commodity": "power", "node": "N", "year": 2020 + 5 * p, "profile": "flat",
                         "scale": 1} for p in range(periods)]
    return build_model(load_case(write_case(tmp_path, tables, **kw)))


def test_sequestration_accumulates(tmp_path):
    model = ccs_model(tmp_path, periods=2)
    sol = solve_simplex(model.lp).raise_for_status()
    bundle = extract_reports(model, sol)
    # 1 t/h captured * 8736 h/yr * 5 yr = 43,680 t per period
    assert bundle.sequestration == (("seq-N", 2020, 43_680 / 1e9), ("seq-N", 2025, 2 * 43_680 / 1e9))
    assert all(t[2] == 0.0 for t in bundle.emissions)


def test_zero_capture_sequesters_nothing(tmp_path):
    model = ccs_model(tmp_path, capture_rate=0.0)
    bundle = extract_reports(model, solve_simplex(model.lp).raise_for_status())
    assert bundle.sequestration == (("seq-N", 2020, 0.0),)
    assert dict(((s, y), v) for s, y, v in bundle.emissions)[("total", 2020)] == pytest.approx(8736.0)


def test_non_optimal_solution_is_refused(tmp_path, solved1):
    sol = solve_simplex(solved1.lp, max_iters=1)
    assert sol.status == "iteration-limit"
    with pytest.raises(NonOptimalSolution):
        extract_reports(solved1.model, sol)


def test_table_round_trip_and_bytes(tmp_path, solved3):
    bundle = extract_reports(solved3.model, solved3.sol)
    emit_tables(bundle, tmp_path / "a")
    back = read_tables(tmp_path / "a")
    assert back == bundle
    emit_tables(back, tmp_path / "b")
    for name in VIEWS:
        assert (tmp_path / "a" / f"{name}.csv").read_bytes() == (tmp_path / "b" / f"{name}.csv").read_bytes()


def test_empty_bundle_writes_headers_only(tmp_path):
    emit_tables(ReportBundle(), tmp_path)
    assert (tmp_path / "capacity_mix.csv").read_text() == "group,node,year,gw\n"
    assert read_tables(tmp_path) == ReportBundle()
    svg = render_svg(ReportBundle(), "capacity_mix").decode()
    assert 'class="bar"' not in svg and svg.startswith("<svg")


def test_svg_labels_equal_table_cells(tmp_path, solved3):
    bundle = extract_reports(solved3.model, solved3.sol)
    emit_tables(bundle, tmp_path)
    emit_plots(bundle, tmp_path)
    for name in ("capacity_mix", "hydrogen_capacity", "emissions"):
        svg = (tmp_path / f"{name}.svg").read_text()
        labels = re.findall(r'<text class="value"[^>]*>([^<]*)</text>', svg)
        table = (tmp_path / f"{name}.csv").read_text().splitlines()[1:]
        cells = {line.rsplit(",", 1)[1] for line in table}
        assert labels and set(labels) <= cells
        _, _, data = plot_series(bundle, name)
        assert sorted(labels) == sorted(lbl for v, lbl in data.values() if v > 0)


def test_single_period_chart_has_one_bar_group(tmp_path):
    model = ccs_model(tmp_path, capture_rate=0.0)
    bundle = extract_reports(model, solve_simplex(model.lp).raise_for_status())
    xs, cats, _ = plot_series(bundle, "capacity_mix")
    assert xs == ["2020"] and cats == ["ccs"]
    assert render_svg(bundle, "capacity_mix").decode().count('class="bar"') == 1


def test_emissions_match_cap_rows(solved3):
    model, sol = solved3.model, solved3.sol
    bundle = extract_reports(model, sol)
    ts = model.case.time
    L = ts.period_length_years
    act = model.lp.activity(sol.x)
    idx = model.lp.row_index()
    for p in ts.period_indices:
        expected = math.fsum(ts.probabilities[w] * act[idx[Key("emis", "co2", "*", p, None, None, w).name()]]
                             for w in ts.scenario_names) / L
        got = dict(((s, y), v) for s, y, v in bundle.emissions)[("total", ts.years[p])]
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-6)
        assert got <= model.case.carbon_cap[p] * (1 + 1e-9)


def test_view_invariants(solved3):
    bundle = extract_reports(solved3.model, solved3.sol)
    for name in ("capacity_mix", "hydrogen_capacity"):
        rows = bundle.view(name)
        nodes = [r[1] for r in rows]
        first_node = nodes.index(next(n for n in nodes if n != ALL)) if any(n != ALL for n in nodes) else len(nodes)
        assert all(n == ALL for n in nodes[:first_node]) and ALL not in nodes[first_node:]
        totals = {(g, y): v for g, n, y, v in rows if n == ALL}
        per = {}
        for g, n, y, v in rows:
            if n != ALL:
                per[(g, y)] = per.get((g, y), 0.0) + v
        assert totals.keys() == per.keys()
        for k in totals:
            assert totals[k] == pytest.approx(per[k], rel=1e-12, abs=1e-12)
    obj = dict(bundle.objective)
    assert obj["total"] == pytest.approx(solved3.sol.objective, rel=1e-12)
    seq = [r for r in bundle.sequestration]
    for a, b in zip(seq, seq[1:]):
        if a[0] == b[0]:
            assert b[2] >= a[2]


def test_industry_shares_sum_to_one():
    case = load_case("northsea-mini")
    model = build_model(case)
    sol = solve_simplex(model.lp).raise_for_status()
    bundle = extract_reports(model, sol)
    sums = {}
    for sec, route, n, y, prod, share in bundle.industry_shares:
        sums[(sec, n, y)] = sums.get((sec, n, y), 0.0) + share
    assert sums and all(v == pytest.approx(1.0, abs=1e-12) for v in sums.values())
    share = electrolysis_share(model, sol.x)
    assert 0.0 <= share <= 1.0
    assert electrolysis_share(model, np.zeros(model.lp.n_cols)) == 0.0

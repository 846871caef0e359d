from __future__ import annotations

import shutil

import pytest

from casekit import asset, conv, single_bus, write_case
from mhorizon.builder import build_model
from mhorizon.case_io import (
    BUNDLED,
    apply_scenario_flags,
    expand_deterministic_equivalent,
    load_case,
)
from mhorizon.errors import (
    MissingTable,
    NegativeQuantity,
    ProfileGap,
    SchemaMismatch,
    UncoveredPeriod,
    UntaggedRussianSupply,
    ValidationError,
)


def copy_case(tmp_path, name="3node"):
    dst = tmp_path / name
    shutil.copytree(BUNDLED / name, dst)
    return dst


def test_three_node_shape(case3):
    assert case3.nodes == ("FIELD", "PORT", "CITY")
    assert len(case3.time.periods) == 2 and case3.time.scenario_names == ["calm", "windy"]
    assert set(case3.catalog.supplies) == {"field", "lng", "russia"}
    assert case3.file_hashes["manifest.toml"]


def test_lng_price_table_values():
    case = load_case("northsea-mini")
    assert case.cost_tracks["lng.affordable"][2045] == 27.66
    assert case.cost_tracks["lng.costly"][2045] == 67.57
    assert case.cost_tracks["lng.affordable"][2050] == 28.08
    assert case.cost_tracks["lng.costly"][2050] == 68.62
    three = load_case("3node")
    lng = three.catalog.supplies["lng"]
    assert three.supply_price(lng, 1) == 20.86
    assert apply_scenario_flags(three, gas_cost="costly").supply_price(lng, 1) == 50.98


def test_sequestration_caps_in_tonnes():
    sites = load_case("northsea-mini").catalog.sites
    assert {s.node: s.max_cumulative for s in sites.values()} == {
        "NO2": 29.5e9, "GB": 78.0e9, "NL": 4.0e9, "DK": 0.3e9}


def test_missing_table(tmp_path):
    root = copy_case(tmp_path)
    (root / "carbon_cap.csv").unlink()
    with pytest.raises(MissingTable) as info:
        load_case(root)
    assert str(info.value) == "MissingTable('carbon_cap')"


def test_schema_mismatch_names_the_cell(tmp_path):
    root = copy_case(tmp_path)
    text = (root / "seasons.csv").read_text().splitlines()
    text[2] = text[2].replace(",3,", ",three,")
    (root / "seasons.csv").write_text("\n".join(text) + "\n")
    with pytest.raises(SchemaMismatch) as info:
        load_case(root)
    err = info.value
    assert (err.table, err.row, err.column) == ("seasons", 3, "hours")
    assert "[seasons, row 3, column 'hours']" in str(err)


def test_negative_quantity(tmp_path):
    root = copy_case(tmp_path)
    path = root / "gas_supply.csv"
    path.write_text(path.read_text().replace("field,FIELD,pipeline-field,800", "field,FIELD,pipeline-field,-800"))
    with pytest.raises(NegativeQuantity) as info:
        load_case(root)
    assert info.value.column == "production_capacity"


def test_unknown_column_and_setting(tmp_path):
    root = copy_case(tmp_path)
    path = root / "nodes.csv"
    path.write_text("node,colour\nFIELD,red\n")
    with pytest.raises(SchemaMismatch):
        load_case(root)
    root = copy_case(tmp_path / "b")
    with open(root / "manifest.toml", "a") as fh:
        fh.write("bogus = 1\n")
    with pytest.raises(SchemaMismatch):
        load_case(root)


def test_gaps_are_rejected(tmp_path):
    tables, kw = single_bus(hours=2, periods=2)
    tables["carbon_cap"] = tables["carbon_cap"][:1]
    with pytest.raises(UncoveredPeriod):
        load_case(write_case(tmp_path / "a", tables, **kw))
    tables, kw = single_bus(hours=2)
    tables["profiles"] = tables["profiles"][:1]
    with pytest.raises(ProfileGap):
        load_case(write_case(tmp_path / "b", tables, **kw))


def test_case_from_environment(tmp_path, monkeypatch):
    root = copy_case(tmp_path)
    monkeypatch.setenv("MHORIZON_CASE_DIR", str(root))
    assert load_case().nodes == ("FIELD", "PORT", "CITY")
    monkeypatch.delenv("MHORIZON_CASE_DIR")
    with pytest.raises(ValidationError):
        load_case()


def test_scenario_flags(case3):
    off = apply_scenario_flags(case3, russian_gas=False, gas_cost="costly")
    assert off.catalog.supplies["russia"].production_capacity == 0.0
    assert case3.catalog.supplies["russia"].production_capacity == 500.0  # input untouched
    assert apply_scenario_flags(off, russian_gas=False, gas_cost="costly") == off
    # only gas data changes
    assert off.catalog.assets == case3.catalog.assets
    assert off.demand == case3.demand and off.carbon_cap == case3.carbon_cap
    assert {k: v for k, v in off.catalog.arcs.items() if v.tag != "russian"} == \
        {k: v for k, v in case3.catalog.arcs.items() if v.tag != "russian"}
    with pytest.raises(UntaggedRussianSupply):
        apply_scenario_flags(load_case("1node"), russian_gas=False)
    with pytest.raises(ValidationError):
        apply_scenario_flags(case3, gas_cost="cheap")


def small_case(tmp_path, scenarios):
    tables, kw = single_bus(hours=2, scenarios=scenarios)
    tables["assets"] = [asset("gen", var_cost=1)]
    tables["conversions"] = conv("gen", power=1)
    tables["placements"] = [{"asset": "gen", "node": "N"}]
    tables["demand"] = [{"commodity": "power", "node": "N", "year": 2020, "profile": "flat", "scale": 1}]
    return load_case(write_case(tmp_path, tables, **kw))


def test_dimension_report_small_example(tmp_path):
    rep = expand_deterministic_equivalent(small_case(tmp_path / "one", (("w1", 1.0),)))
    # one generator, one period, one scenario, two hours: y and loss of load per hour
    assert rep.columns["y"] == 2 and rep.columns["ll"] == 2
    assert rep.columns["x"] == rep.columns["v"] == 1
    assert rep.n_columns == 2 + 2 + 1 + 1
    assert rep.rows["bal"] == 2 and rep.rows["cap"] == 2 and rep.rows["life"] == 1

    two = expand_deterministic_equivalent(small_case(tmp_path / "two", (("w1", 0.5), ("w2", 0.5))))
    for k in ("y", "ll"):
        assert two.columns[k] == 2 * rep.columns[k]
    for k in ("x", "v"):
        assert two.columns[k] == rep.columns[k]
    assert "columns: 6" in rep.format()


@pytest.mark.parametrize("name", ["1node", "3node", "northsea-mini"])
def test_dimension_report_matches_builder(name):
    case = load_case(name)
    model = build_model(case)
    rep = expand_deterministic_equivalent(case)
    assert {k: v for k, v in rep.columns.items() if v} == model.registry.counts()
    rows: dict[str, int] = {}
    for k in model.row_keys:
        rows[k.tag] = rows.get(k.tag, 0) + 1
    assert {k: v for k, v in rep.rows.items() if v} == rows
    assert rep.n_rows == model.lp.n_rows and rep.n_columns == model.lp.n_cols

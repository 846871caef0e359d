"""Regenerate the bundled desk cases under src/mhorizon/cases/.

All technology numbers here are synthetic desk values. The only published
inputs are the LNG price tracks, the 10/20 EUR/MWh gas production cost and
the North Sea sequestration caps, which are typed in verbatim.

    python tools/make_fixtures.py
"""

from __future__ import annotations

import csv
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "mhorizon" / "cases"

LNG = {  # year: (affordable, costly), EUR/MWh
    2020: ("20.86", "50.98"), 2025: ("22.57", "55.15"), 2030: ("24.55", "59.98"),
    2035: ("26.22", "64.06"), 2040: ("27.10", "66.22"), 2045: ("27.66", "67.57"),
    2050: ("28.08", "68.62"), 2055: ("28.08", "68.62"),
}
SEQUESTRATION_GT = {"NO2": "29.5", "NO3": "30.7", "NO5": "0.2", "DK": "0.3", "NL": "4.0", "GB": "78.0"}

ASSET_COLUMNS = ["asset", "category", "sector", "invest_cost", "fixed_om", "var_cost", "lifetime",
                 "investable_from", "max_built", "emission_factor", "capture_rate",
                 "process_emission", "feedstock_cap", "availability_profile", "cop_profile",
                 "commodity", "eff_charge", "eff_discharge", "power_ratio"]


def write(path: Path, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if v is None else v for v in r])


def asset(name, category, sector="power", **kw):
    row = {c: None for c in ASSET_COLUMNS}
    row.update(asset=name, category=category, sector=sector, **kw)
    return [row[c] for c in ASSET_COLUMNS]


def tracks(years):
    rows = []
    for y in years:
        rows.append(["lng.affordable", y, LNG[y][0]])
        rows.append(["lng.costly", y, LNG[y][1]])
    for y in years:
        rows.append(["gas_production.affordable", y, "10"])
        rows.append(["gas_production.costly", y, "20"])
    return rows


def manifest(name, periods, start, extra=""):
    return (f'[case]\nname = "{name}"\nschema = "mhorizon-case/1"\n\n'
            f"[time]\nperiods = {periods}\nstart_year = {start}\nperiod_length = 5\n"
            f"annual_hours = 8760\ndiscount_rate = 0.05\n\n[settings]\n"
            f"loss_of_load_penalty = 3000.0\n{extra}")


def profile_rows(name, scenarios, seasons, values):
    """values[scenario][season] -> list per hour."""
    rows = []
    for w in scenarios:
        for s, hours in seasons:
            for h in range(1, hours + 1):
                rows.append([name, w, s, h, values[w][s][h - 1]])
    return rows


# ------------------------------------------------------------------------------------
def one_node():
    d = OUT / "1node"
    scen = ["low", "high"]
    seasons = [("winter", 3), ("summer", 3)]
    (d / "manifest.toml").parent.mkdir(parents=True, exist_ok=True)
    (d / "manifest.toml").write_text(manifest("1node", 2, 2020))
    write(d / "nodes.csv", ["node"], [["BUS"]])
    write(d / "commodities.csv", ["commodity", "balance", "emission_factor", "unit"],
          [["power", "hourly", 0, "MWh"], ["gas", "hourly", 0.2, "MWh"]])
    write(d / "seasons.csv", ["season", "kind", "hours", "alpha"], [[s, "regular", h, ""] for s, h in seasons])
    write(d / "scenarios.csv", ["scenario", "probability"], [["low", 0.5], ["high", 0.5]])
    write(d / "assets.csv", ASSET_COLUMNS, [
        asset("ccgt", "generator", invest_cost=800000, fixed_om=20000, var_cost=2, lifetime=6),
        asset("solar", "generator", invest_cost=450000, fixed_om=10000, lifetime=5,
              availability_profile="solar"),
        asset("battery", "storage", invest_cost=150000, lifetime=3, commodity="power",
              eff_charge=0.95, eff_discharge=0.95, power_ratio=0.5),
    ])
    write(d / "conversions.csv", ["asset", "commodity", "coefficient"],
          [["ccgt", "power", 1], ["ccgt", "gas", -1.8], ["solar", "power", 1]])
    write(d / "placements.csv", ["asset", "node", "max_built"],
          [["ccgt", "BUS", ""], ["solar", "BUS", ""], ["battery", "BUS", ""]])
    write(d / "initial_capacity.csv", ["asset", "node", "year", "capacity"],
          [["ccgt", "BUS", 2020, 600], ["ccgt", "BUS", 2025, 300]])
    write(d / "gas_supply.csv", ["supply", "node", "kind", "production_capacity", "reserves",
                                 "cost_track", "tag"],
          [["field", "BUS", "pipeline-field", 2000, "", "gas_production", ""]])
    write(d / "demand.csv", ["commodity", "node", "year", "profile", "scale"],
          [["power", "BUS", 2020, "load", 800], ["power", "BUS", 2025, "load", 900]])
    load = {w: {"winter": [0.8, 1.0, 0.9], "summer": [0.6, 0.8, 0.7]} for w in scen}
    load["high"] = {"winter": [0.9, 1.1, 1.0], "summer": [0.7, 0.9, 0.8]}
    solar = {w: {"winter": [0.0, 0.3, 0.1], "summer": [0.1, 0.7, 0.4]} for w in scen}
    solar["high"] = {"winter": [0.0, 0.4, 0.15], "summer": [0.15, 0.8, 0.5]}
    write(d / "profiles.csv", ["profile", "scenario", "season", "hour", "value"],
          profile_rows("load", scen, seasons, load) + profile_rows("solar", scen, seasons, solar))
    write(d / "carbon_cap.csv", ["year", "cap"], [[2020, 1.5e6], [2025, 0.6e6]])
    write(d / "cost_tracks.csv", ["track", "year", "value"], tracks([2020, 2025]))
    write(d / "tech_groups.csv", ["asset", "group"],
          [["ccgt", "Gas"], ["solar", "Solar"], ["battery", "Storage"]])


# ------------------------------------------------------------------------------------
def three_node():
    d = OUT / "3node"
    scen = ["calm", "windy"]
    seasons = [("winter", 3), ("summer", 3), ("peak", 1)]
    d.mkdir(parents=True, exist_ok=True)
    (d / "manifest.toml").write_text(manifest("3node", 2, 2020))
    write(d / "nodes.csv", ["node"], [["FIELD"], ["PORT"], ["CITY"]])
    write(d / "commodities.csv", ["commodity", "balance", "emission_factor", "unit"],
          [["power", "hourly", 0, "MWh"], ["gas", "hourly", 0.2, "MWh"], ["hydrogen", "hourly", 0, "t"]])
    write(d / "seasons.csv", ["season", "kind", "hours", "alpha"],
          [["winter", "regular", 3, ""], ["summer", "regular", 3, ""], ["peak", "peak", 1, 1]])
    write(d / "scenarios.csv", ["scenario", "probability"], [["calm", 0.5], ["windy", 0.5]])
    write(d / "assets.csv", ASSET_COLUMNS, [
        asset("ccgt", "generator", invest_cost=800000, fixed_om=20000, var_cost=2, lifetime=6),
        asset("ocgt", "generator", invest_cost=400000, fixed_om=8000, var_cost=5, lifetime=6),
        asset("solar", "generator", invest_cost=450000, fixed_om=10000, lifetime=5,
              availability_profile="solar"),
        asset("wind", "generator", invest_cost=1100000, fixed_om=30000, lifetime=5,
              availability_profile="wind"),
        asset("battery", "storage", invest_cost=150000, lifetime=3, commodity="power",
              eff_charge=0.95, eff_discharge=0.95, power_ratio=0.5),
        asset("smr", "converter", "hydrogen", invest_cost=25e6, fixed_om=1e6, var_cost=5, lifetime=5),
        asset("electrolyzer", "converter", "hydrogen", invest_cost=30e6, fixed_om=0.8e6, lifetime=4),
        asset("h2tank", "storage", "hydrogen", invest_cost=20000, lifetime=5, commodity="hydrogen",
              eff_charge=0.98, eff_discharge=1.0, power_ratio=0.5),
    ])
    write(d / "conversions.csv", ["asset", "commodity", "coefficient"], [
        ["ccgt", "power", 1], ["ccgt", "gas", -1.8],
        ["ocgt", "power", 1], ["ocgt", "gas", -2.6],
        ["solar", "power", 1], ["wind", "power", 1],
        ["smr", "hydrogen", 1], ["smr", "gas", -45], ["smr", "power", -0.3],
        ["electrolyzer", "hydrogen", 1], ["electrolyzer", "power", -52],
    ])
    write(d / "placements.csv", ["asset", "node", "max_built"], [
        ["ccgt", "CITY", ""], ["ocgt", "CITY", ""], ["solar", "CITY", 800], ["wind", "PORT", ""],
        ["battery", "CITY", ""], ["smr", "CITY", ""], ["electrolyzer", "CITY", ""], ["h2tank", "CITY", ""],
    ])
    write(d / "initial_capacity.csv", ["asset", "node", "year", "capacity"], [
        ["ccgt", "CITY", 2020, 700], ["ccgt", "CITY", 2025, 400],
        ["smr", "CITY", 2020, 3], ["smr", "CITY", 2025, 3],
    ])
    write(d / "arcs.csv", ["arc", "commodity", "from", "to", "capacity", "investable", "invest_cost",
                           "fixed_om", "lifetime", "loss", "max_built", "var_cost", "tag"], [
        ["gas-field-city", "gas", "FIELD", "CITY", 900, 0, "", "", 8, 0, "", "", ""],
        ["gas-port-city", "gas", "PORT", "CITY", 700, 0, "", "", 8, 0, "", "", ""],
        ["power-port-city", "power", "PORT", "CITY", 100, 1, 400000, 5000, 8, 0.02, "", "", ""],
    ])
    write(d / "gas_supply.csv", ["supply", "node", "kind", "production_capacity", "reserves",
                                 "cost_track", "tag"], [
        ["field", "FIELD", "pipeline-field", 800, 3.5e7, "gas_production", ""],
        ["lng", "PORT", "LNG-terminal", 700, "inf", "lng", ""],
        ["russia", "CITY", "pipeline-field", 500, "inf", "gas_production", "russian"],
    ])
    write(d / "demand.csv", ["commodity", "node", "year", "profile", "scale"], [
        ["power", "CITY", 2020, "load", 900], ["power", "CITY", 2025, "load", 1000],
    ])
    write(d / "transport_demand.csv", ["commodity", "node", "year", "annual"], [
        ["hydrogen", "CITY", 2020, 20000], ["hydrogen", "CITY", 2025, 30000],
    ])
    load = {"calm": {"winter": [0.8, 1.0, 0.9], "summer": [0.6, 0.8, 0.7], "peak": [1.25]},
            "windy": {"winter": [0.85, 1.05, 0.95], "summer": [0.6, 0.75, 0.7], "peak": [1.3]}}
    solar = {"calm": {"winter": [0.0, 0.3, 0.1], "summer": [0.1, 0.7, 0.4], "peak": [0.0]},
             "windy": {"winter": [0.0, 0.2, 0.1], "summer": [0.1, 0.6, 0.3], "peak": [0.0]}}
    wind = {"calm": {"winter": [0.4, 0.3, 0.35], "summer": [0.2, 0.15, 0.25], "peak": [0.1]},
            "windy": {"winter": [0.8, 0.7, 0.9], "summer": [0.5, 0.4, 0.6], "peak": [0.3]}}
    write(d / "profiles.csv", ["profile", "scenario", "season", "hour", "value"],
          profile_rows("load", scen, seasons, load) + profile_rows("solar", scen, seasons, solar)
          + profile_rows("wind", scen, seasons, wind))
    write(d / "carbon_cap.csv", ["year", "cap"], [[2020, 2.5e6], [2025, 1.2e6]])
    write(d / "cost_tracks.csv", ["track", "year", "value"], tracks([2020, 2025]))
    write(d / "tech_groups.csv", ["asset", "group"], [
        ["ccgt", "Gas"], ["ocgt", "Gas"], ["solar", "Solar"], ["wind", "Wind"], ["battery", "Storage"],
        ["smr", "SMR"], ["electrolyzer", "Electrolysis"], ["h2tank", "Storage"],
    ])


# ------------------------------------------------------------------------------------
def north_sea():
    d = OUT / "northsea-mini"
    scen = ["calm", "windy"]
    seasons = [("winter", 2), ("summer", 2)]
    years = [2045, 2050]
    d.mkdir(parents=True, exist_ok=True)
    (d / "manifest.toml").write_text(manifest("northsea-mini", 2, 2045,
                                              "flexibility = 0.2\nindustry_mode = \"flexible\"\n"))
    nodes = ["NO2", "GB", "NL", "DK", "DE", "PL"]
    write(d / "nodes.csv", ["node"], [[n] for n in nodes])
    write(d / "commodities.csv", ["commodity", "balance", "emission_factor", "unit"], [
        ["power", "hourly", 0, "MWh"], ["heat", "hourly", 0, "MWh"], ["gas", "hourly", 0.2, "MWh"],
        ["hydrogen", "hourly", 0, "t"], ["co2", "hourly", 0, "t"],
        ["steel", "annual", 0, "t"], ["cement", "annual", 0, "t"], ["ammonia", "annual", 0, "t"],
        ["refinery", "annual", 0, "t"],
    ])
    write(d / "seasons.csv", ["season", "kind", "hours", "alpha"], [[s, "regular", h, ""] for s, h in seasons])
    write(d / "scenarios.csv", ["scenario", "probability"], [["calm", 0.5], ["windy", 0.5]])
    A = asset
    write(d / "assets.csv", ASSET_COLUMNS, [
        A("ccgt", "generator", invest_cost=800000, fixed_om=20000, var_cost=2, lifetime=6),
        A("ccgt-ccs", "generator", invest_cost=1500000, fixed_om=40000, var_cost=4, lifetime=6,
          capture_rate=0.9),
        A("coal-ccs", "generator", invest_cost=2400000, fixed_om=60000, var_cost=22, lifetime=6,
          emission_factor=0.85, capture_rate=0.9),
        A("wind-off", "generator", invest_cost=2000000, fixed_om=50000, lifetime=5,
          availability_profile="wind_off"),
        A("wind-on", "generator", invest_cost=1200000, fixed_om=30000, lifetime=5,
          availability_profile="wind_on"),
        A("solar", "generator", invest_cost=450000, fixed_om=10000, lifetime=5,
          availability_profile="solar"),
        A("battery", "storage", invest_cost=150000, lifetime=3, commodity="power", eff_charge=0.95,
          eff_discharge=0.95, power_ratio=0.5),
        A("heatpump", "heater", "heat", invest_cost=600000, fixed_om=10000, lifetime=4, cop_profile="cop"),
        A("gas-boiler", "heater", "heat", invest_cost=100000, fixed_om=2000, lifetime=4),
        A("smr", "converter", "hydrogen", invest_cost=25e6, fixed_om=1.0e6, var_cost=5, lifetime=5),
        A("smr-ccs", "converter", "hydrogen", invest_cost=38e6, fixed_om=1.5e6, var_cost=8, lifetime=5,
          capture_rate=0.9),
        A("atr-ghr-ccs", "converter", "hydrogen", invest_cost=40e6, fixed_om=1.6e6, var_cost=8,
          lifetime=5, capture_rate=0.95),
        A("electrolysis", "converter", "hydrogen", invest_cost=30e6, fixed_om=0.8e6, lifetime=4),
        A("bf-bof", "process-route", "steel", invest_cost=4e6, fixed_om=100000, var_cost=150,
          lifetime=6, emission_factor=1.9),
        A("bf-bof-ccs", "process-route", "steel", invest_cost=5e6, fixed_om=150000, var_cost=165,
          lifetime=6, emission_factor=1.9, capture_rate=0.6),
        A("h2-dri", "process-route", "steel", invest_cost=6e6, fixed_om=150000, var_cost=110, lifetime=6),
        A("scrap-eaf", "process-route", "steel", invest_cost=2e6, fixed_om=60000, var_cost=200,
          lifetime=6, feedstock_cap=0.45),
        A("kiln-gas", "process-route", "cement", invest_cost=1.5e6, fixed_om=40000, var_cost=20,
          lifetime=6, process_emission=0.78),
        A("kiln-gas-ccs", "process-route", "cement", invest_cost=3e6, fixed_om=80000, var_cost=30,
          lifetime=6, process_emission=0.78, capture_rate=0.9),
        A("kiln-h2", "process-route", "cement", invest_cost=2e6, fixed_om=50000, var_cost=20,
          lifetime=6, process_emission=0.78),
        A("ammonia-smr", "process-route", "ammonia", invest_cost=5e6, fixed_om=100000, var_cost=10,
          lifetime=6),
        A("ammonia-h2", "process-route", "ammonia", invest_cost=3e6, fixed_om=60000, var_cost=10,
          lifetime=6),
        A("refinery", "process-route", "refinery", invest_cost=2e6, fixed_om=50000, var_cost=5,
          lifetime=6),
    ])
    write(d / "conversions.csv", ["asset", "commodity", "coefficient"], [
        ["ccgt", "power", 1], ["ccgt", "gas", -1.8],
        ["ccgt-ccs", "power", 1], ["ccgt-ccs", "gas", -2.1],
        ["coal-ccs", "power", 1],
        ["wind-off", "power", 1], ["wind-on", "power", 1], ["solar", "power", 1],
        ["heatpump", "heat", 1], ["heatpump", "power", -1],
        ["gas-boiler", "heat", 1], ["gas-boiler", "gas", -1.1],
        ["smr", "hydrogen", 1], ["smr", "gas", -45], ["smr", "power", -0.3],
        ["smr-ccs", "hydrogen", 1], ["smr-ccs", "gas", -48], ["smr-ccs", "power", -1.0],
        ["atr-ghr-ccs", "hydrogen", 1], ["atr-ghr-ccs", "gas", -44], ["atr-ghr-ccs", "power", -1.5],
        ["electrolysis", "hydrogen", 1], ["electrolysis", "power", -52],
        ["bf-bof", "steel", 1],
        ["bf-bof-ccs", "steel", 1], ["bf-bof-ccs", "power", -0.1],
        ["h2-dri", "steel", 1], ["h2-dri", "hydrogen", -0.055], ["h2-dri", "power", -0.7],
        ["scrap-eaf", "steel", 1], ["scrap-eaf", "power", -0.5],
        ["kiln-gas", "cement", 1], ["kiln-gas", "gas", -0.9],
        ["kiln-gas-ccs", "cement", 1], ["kiln-gas-ccs", "gas", -0.9], ["kiln-gas-ccs", "power", -0.1],
        ["kiln-h2", "cement", 1], ["kiln-h2", "hydrogen", -0.027],
        ["ammonia-smr", "ammonia", 1], ["ammonia-smr", "gas", -9], ["ammonia-smr", "power", -0.3],
        ["ammonia-h2", "ammonia", 1], ["ammonia-h2", "hydrogen", -0.18], ["ammonia-h2", "power", -0.6],
        ["refinery", "refinery", 1], ["refinery", "hydrogen", -0.01], ["refinery", "power", -0.05],
        ["refinery", "gas", -0.5],
    ])
    placements = {
        "NO2": ["wind-off", "ccgt"],
        "GB": ["wind-off", "ccgt", "ccgt-ccs", "smr", "smr-ccs", "electrolysis", "refinery"],
        "NL": ["wind-off", "ccgt", "ccgt-ccs", "smr", "smr-ccs", "atr-ghr-ccs", "electrolysis",
               "ammonia-smr", "ammonia-h2"],
        "DK": ["wind-on", "wind-off"],
        "DE": ["solar", "wind-on", "ccgt", "ccgt-ccs", "coal-ccs", "battery", "heatpump", "gas-boiler",
               "smr", "smr-ccs", "electrolysis", "bf-bof", "bf-bof-ccs", "h2-dri", "scrap-eaf"],
        "PL": ["solar", "wind-on", "ccgt", "coal-ccs", "smr", "kiln-gas", "kiln-gas-ccs", "kiln-h2"],
    }
    write(d / "placements.csv", ["asset", "node", "max_built"],
          [[a, n, ""] for n in nodes for a in placements.get(n, [])])
    initial = [
        ("ccgt", "NO2", 500, 500), ("ccgt", "GB", 4000, 2000), ("ccgt", "NL", 3000, 1500),
        ("ccgt", "DE", 6000, 3000), ("ccgt", "PL", 2000, 1000),
        ("wind-off", "GB", 3000, 3000), ("wind-on", "DE", 4000, 2000),
        ("smr", "NL", 40, 20), ("smr", "DE", 40, 20),
        ("bf-bof", "DE", 3500, 0), ("kiln-gas", "PL", 2400, 1200), ("ammonia-smr", "NL", 400, 0),
        ("refinery", "GB", 5000, 5000), ("gas-boiler", "DE", 3500, 1500),
    ]
    write(d / "initial_capacity.csv", ["asset", "node", "year", "capacity"],
          [[a, n, y, c] for a, n, c45, c50 in initial for y, c in ((2045, c45), (2050, c50))])
    arcs = [
        ("p-no2-de", "power", "NO2", "DE", 1400, 1, 600000), ("p-no2-gb", "power", "NO2", "GB", 1400, 1, 700000),
        ("p-gb-nl", "power", "GB", "NL", 1000, 1, 600000), ("p-nl-de", "power", "NL", "DE", 3000, 1, 400000),
        ("p-dk-de", "power", "DK", "DE", 1500, 1, 400000), ("p-de-pl", "power", "DE", "PL", 2000, 1, 400000),
        ("g-no2-de", "gas", "NO2", "DE", 9000, 0, 0), ("g-no2-gb", "gas", "NO2", "GB", 6000, 0, 0),
        ("g-gb-nl", "gas", "GB", "NL", 3000, 0, 0), ("g-nl-de", "gas", "NL", "DE", 6000, 0, 0),
        ("g-de-pl", "gas", "DE", "PL", 3000, 0, 0),
        ("h-nl-de", "hydrogen", "NL", "DE", 0, 1, 1.5e6), ("h-de-pl", "hydrogen", "DE", "PL", 0, 1, 1.5e6),
        ("c-de-nl", "co2", "DE", "NL", 0, 1, 5000), ("c-nl-gb", "co2", "NL", "GB", 0, 1, 6000),
        ("c-de-no2", "co2", "DE", "NO2", 0, 1, 8000), ("c-pl-de", "co2", "PL", "DE", 0, 1, 5000),
    ]
    write(d / "arcs.csv", ["arc", "commodity", "from", "to", "capacity", "investable", "invest_cost",
                           "fixed_om", "lifetime", "loss", "max_built", "var_cost", "tag"],
          [[a, c, f, t, cap, inv, ic, "", 8, 0.02 if c == "power" else 0, "", "", ""]
           for a, c, f, t, cap, inv, ic in arcs])
    write(d / "gas_supply.csv", ["supply", "node", "kind", "production_capacity", "reserves",
                                 "cost_track", "tag"], [
        ["troll", "NO2", "pipeline-field", 12000, 4.0e8, "gas_production", ""],
        ["uk-shelf", "GB", "pipeline-field", 4000, 1.0e8, "gas_production", ""],
        ["gate", "NL", "LNG-terminal", 8000, "inf", "lng", ""],
        ["swinoujscie", "PL", "LNG-terminal", 3000, "inf", "lng", ""],
        ["yamal", "PL", "pipeline-field", 9000, "inf", "gas_production", "russian"],
    ])
    write(d / "sequestration.csv", ["node", "max_cumulative_gt"],
          [[n, SEQUESTRATION_GT[n]] for n in ("NO2", "GB", "NL", "DK")])
    demand = [("power", "NO2", 1000), ("power", "GB", 5000), ("power", "NL", 3000), ("power", "DK", 500),
              ("power", "DE", 8000), ("power", "PL", 3000), ("heat", "DE", 3000)]
    write(d / "demand.csv", ["commodity", "node", "year", "profile", "scale"],
          [[c, n, y, "heat_load" if c == "heat" else "load", v * (1.1 if y == 2050 else 1.0)]
           for c, n, v in demand for y in years])
    write(d / "transport_demand.csv", ["commodity", "node", "year", "annual"],
          [["hydrogen", "DE", 2045, 40000], ["hydrogen", "DE", 2050, 80000]])
    write(d / "sector_demand.csv", ["sector", "node", "year", "annual"], [
        ["steel", "DE", 2045, 30e6], ["steel", "DE", 2050, 30e6],
        ["cement", "PL", 2045, 20e6], ["cement", "PL", 2050, 19e6],
        ["ammonia", "NL", 2045, 3e6], ["ammonia", "NL", 2050, 3e6],
        ["refinery", "GB", 2045, 40e6], ["refinery", "GB", 2050, 35e6],
    ])
    load = {w: {"winter": [1.0, 1.1], "summer": [0.8, 0.9]} for w in scen}
    heat = {w: {"winter": [1.0, 1.2], "summer": [0.3, 0.4]} for w in scen}
    cop = {w: {"winter": [2.0, 1.83], "summer": [3.33, 3.0]} for w in scen}
    wind_off = {"calm": {"winter": [0.5, 0.3], "summer": [0.3, 0.2]},
                "windy": {"winter": [0.9, 0.7], "summer": [0.6, 0.5]}}
    wind_on = {w: {s: [round(0.7 * v, 4) for v in vals] for s, vals in ss.items()} for w, ss in wind_off.items()}
    solar = {"calm": {"winter": [0.05, 0.3], "summer": [0.25, 0.7]},
             "windy": {"winter": [0.03, 0.2], "summer": [0.2, 0.6]}}
    write(d / "profiles.csv", ["profile", "scenario", "season", "hour", "value"],
          profile_rows("load", scen, seasons, load) + profile_rows("heat_load", scen, seasons, heat)
          + profile_rows("cop", scen, seasons, cop) + profile_rows("wind_off", scen, seasons, wind_off)
          + profile_rows("wind_on", scen, seasons, wind_on) + profile_rows("solar", scen, seasons, solar))
    write(d / "carbon_cap.csv", ["year", "cap"], [[2045, 60e6], [2050, 25e6]])
    write(d / "cost_tracks.csv", ["track", "year", "value"], tracks(years))
    groups = {"ccgt": "Gas", "ccgt-ccs": "Gas CCS", "coal-ccs": "Coal CCS", "wind-off": "Wind offshore",
              "wind-on": "Wind onshore", "solar": "Solar", "battery": "Storage", "heatpump": "Heat pump",
              "gas-boiler": "Gas boiler", "smr": "SMR", "smr-ccs": "SMR CCS", "atr-ghr-ccs": "ATR-GHR CCS",
              "electrolysis": "Electrolysis", "bf-bof": "BF-BOF", "bf-bof-ccs": "BF-BOF CCS",
              "h2-dri": "H2-DRI", "scrap-eaf": "Scrap EAF", "kiln-gas": "Kiln gas",
              "kiln-gas-ccs": "Kiln gas CCS", "kiln-h2": "Kiln H2", "ammonia-smr": "Ammonia local SMR",
              "ammonia-h2": "Ammonia H2", "refinery": "Refinery"}
    write(d / "tech_groups.csv", ["asset", "group"], [[a, g] for a, g in groups.items()])


if __name__ == "__main__":
    one_node()
    three_node()
    north_sea()

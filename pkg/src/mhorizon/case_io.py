"""Case directories: a key/value manifest plus one CSV table per entity kind.

Layout (schema ``mhorizon-case/1``)::

    manifest.toml        [case] [time] [settings] sections
    nodes.csv            node
    commodities.csv      commodity, balance, emission_factor, unit
    seasons.csv          season, kind, hours, alpha
    scenarios.csv        scenario, probability
    assets.csv           asset, category, sector, ... (see ASSET_COLUMNS)
    conversions.csv      asset, commodity, coefficient
    placements.csv       asset, node, max_built
    initial_capacity.csv asset, node, year, capacity                (optional)
    arcs.csv             arc, commodity, from, to, capacity, ...     (optional)
    gas_supply.csv       supply, node, kind, production_capacity, reserves, cost_track, tag (optional)
    sequestration.csv    node, max_cumulative_gt                     (optional)
    demand.csv           commodity, node, year, profile, scale
    transport_demand.csv commodity, node, year, annual               (optional)
    sector_demand.csv    sector, node, year, annual                  (optional)
    profiles.csv         profile, scenario, season, hour, value
    carbon_cap.csv       year, cap
    cost_tracks.csv      track, year, value
    tech_groups.csv      asset, group                                (optional)

Blank cells take the column default. Years refer to the start year of a
strategic period. Sequestration caps are typed in Gt and stored in t.
"""

from __future__ import annotations

import csv
import hashlib
import math
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Mapping

from .catalog import (
    CO2,
    GAS,
    HYDROGEN,
    POWER,
    SECTORS,
    ArcSpec,
    AssetSpec,
    Commodity,
    GasSupplySpec,
    ProcessRoute,
    SequestrationSiteSpec,
    Topology,
    ValidatedCatalog,
    check_id,
    validate_catalog,
)
from .errors import (
    MissingTable,
    NegativeQuantity,
    ProfileGap,
    SchemaMismatch,
    UncoveredPeriod,
    UntaggedRussianSupply,
    ValidationError,
)
from .timescale import SeasonConfig, TimeConfig, TimeStructure, build_time_structure

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCHEMA_ID = "mhorizon-case/1"
CASE_ENV = "MHORIZON_CASE_DIR"
GT = 1e9
RUSSIAN = "russian"
BUNDLED = Path(__file__).parent / "cases"


@dataclass(frozen=True)
class Settings:
    loss_of_load_penalty: float = 3000.0
    flexibility: float = 0.2
    industry_mode: str = "flexible"  # flexible | inflexible
    gas_cost: str = "affordable"  # affordable | costly
    russian_gas: bool = True
    industry_hydrogen: bool = True


@dataclass(frozen=True)
class CaseData:
    name: str
    time: TimeStructure
    settings: Settings
    catalog: ValidatedCatalog
    placements: Mapping[tuple[str, str], float | None]
    initial_capacity: Mapping[tuple[str, str, int], float]
    demand: Mapping[tuple[str, str, int], tuple[str, float]]  # (c, node, period) -> (profile, scale)
    flat_demand: Mapping[tuple[str, str, int], float]  # transport: (c, node, period) -> MWh/h
    sector_demand: Mapping[tuple[str, str, int], float]  # (sector, node, period) -> units/yr
    carbon_cap: Mapping[int, float]  # period -> tCO2/yr
    cost_tracks: Mapping[str, Mapping[int, float]]  # track -> year -> value
    profiles: Mapping[str, Mapping[tuple[str, str, int], float]]
    groups: Mapping[str, str] = field(default_factory=dict)
    source: str = ""
    file_hashes: Mapping[str, str] = field(default_factory=dict)

    # -- convenience -------------------------------------------------------------
    @property
    def nodes(self) -> tuple[str, ...]:
        return self.catalog.topology.nodes

    @property
    def commodities(self) -> Mapping[str, Commodity]:
        return self.catalog.topology.commodities

    def track(self, name: str, variant: str | None = None) -> Mapping[int, float]:
        key = f"{name}.{variant}" if variant else name
        if key in self.cost_tracks:
            return self.cost_tracks[key]
        return self.cost_tracks[name]

    def supply_price(self, supply: GasSupplySpec, period: int) -> float:
        """Gas price for ``supply`` in ``period`` under the active gas-cost flag."""
        from .errors import MissingCostTrack

        year = self.time.years[period]
        for key in (f"{supply.cost_track}.{self.settings.gas_cost}", supply.cost_track):
            if key in self.cost_tracks:
                track = self.cost_tracks[key]
                if year not in track:
                    raise MissingCostTrack(f"cost track {key!r} has no value for {year}")
                return track[year]
        raise MissingCostTrack(f"no cost track {supply.cost_track!r} for supply {supply.id!r}")

    def profile_value(self, name: str | None, scenario: str, season: str, hour: int) -> float:
        if name is None:
            return 1.0
        return self.profiles[name][(scenario, season, hour)]

    def hourly_demand(self, commodity: str, node: str, period: int,
                      scenario: str, season: str, hour: int) -> float:
        d = 0.0
        spec = self.demand.get((commodity, node, period))
        if spec is not None:
            prof, scale = spec
            d += scale * self.profile_value(prof, scenario, season, hour)
        d += self.flat_demand.get((commodity, node, period), 0.0)
        return d

    def has_demand(self, commodity: str, node: str) -> bool:
        for (c, n, p), (prof, scale) in self.demand.items():
            if c == commodity and n == node and scale > 0:
                return True
        return any(c == commodity and n == node and v > 0
                   for (c, n, p), v in self.flat_demand.items())

    def asset_nodes(self, asset: str) -> list[str]:
        return [n for n in self.nodes if (asset, n) in self.placements]

    def initial(self, asset: str, node: str, period: int) -> float:
        return self.initial_capacity.get((asset, node, period), 0.0)


# --------------------------------------------------------------------------------
# table reading

def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "y"):
        return True
    if t in ("0", "false", "no", "n"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _float(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf", "unbounded"):
        return math.inf
    v = float(t)
    if math.isnan(v):
        raise ValueError("NaN")
    return v


def _nonneg(text: str) -> float:
    v = _float(text)
    if v < 0:
        raise _Negative(v)
    return v


class _Negative(ValueError):
    pass


_str = str.strip

# column -> (parser, default); a default of ... marks a required cell
Schema = Mapping[str, tuple[Callable[[str], Any], Any]]

SCHEMAS: dict[str, Schema] = {
    "nodes": {"node": (_str, ...)},
    "commodities": {"commodity": (_str, ...), "balance": (_str, "hourly"),
                    "emission_factor": (_nonneg, 0.0), "unit": (_str, "MWh")},
    "seasons": {"season": (_str, ...), "kind": (_str, "regular"), "hours": (int, ...),
                "alpha": (_float, None)},
    "scenarios": {"scenario": (_str, ...), "probability": (_float, ...)},
    "assets": {
        "asset": (_str, ...), "category": (_str, ...), "sector": (_str, POWER),
        "invest_cost": (_nonneg, 0.0), "fixed_om": (_nonneg, 0.0), "var_cost": (_float, 0.0),
        "lifetime": (int, 1), "investable_from": (int, 1), "max_built": (_nonneg, None),
        "emission_factor": (_nonneg, 0.0), "capture_rate": (_float, 0.0),
        "process_emission": (_nonneg, 0.0), "feedstock_cap": (_float, None),
        "availability_profile": (_str, None), "cop_profile": (_str, None),
        "commodity": (_str, None), "eff_charge": (_float, 1.0), "eff_discharge": (_float, 1.0),
        "power_ratio": (_float, 1.0),
    },
    "conversions": {"asset": (_str, ...), "commodity": (_str, ...), "coefficient": (_float, ...)},
    "placements": {"asset": (_str, ...), "node": (_str, ...), "max_built": (_nonneg, None)},
    "initial_capacity": {"asset": (_str, ...), "node": (_str, ...), "year": (int, ...),
                         "capacity": (_nonneg, ...)},
    "arcs": {"arc": (_str, ...), "commodity": (_str, ...), "from": (_str, ...), "to": (_str, ...),
             "capacity": (_nonneg, 0.0), "investable": (_bool, False), "invest_cost": (_nonneg, 0.0),
             "fixed_om": (_nonneg, 0.0), "lifetime": (int, 8), "loss": (_float, 0.0),
             "max_built": (_nonneg, None), "var_cost": (_nonneg, 0.0), "tag": (_str, "")},
    "gas_supply": {"supply": (_str, ...), "node": (_str, ...), "kind": (_str, ...),
                   "production_capacity": (_nonneg, ...), "reserves": (_nonneg, math.inf),
                   "cost_track": (_str, "gas_production"), "tag": (_str, "")},
    "sequestration": {"node": (_str, ...), "max_cumulative_gt": (_nonneg, ...)},
    "demand": {"commodity": (_str, ...), "node": (_str, ...), "year": (int, ...),
               "profile": (_str, None), "scale": (_nonneg, ...)},
    "transport_demand": {"commodity": (_str, ...), "node": (_str, ...), "year": (int, ...),
                         "annual": (_nonneg, ...)},
    "sector_demand": {"sector": (_str, ...), "node": (_str, ...), "year": (int, ...),
                      "annual": (_nonneg, ...)},
    "profiles": {"profile": (_str, ...), "scenario": (_str, ...), "season": (_str, ...),
                 "hour": (int, ...), "value": (_nonneg, ...)},
    "carbon_cap": {"year": (int, ...), "cap": (_nonneg, ...)},
    "cost_tracks": {"track": (_str, ...), "year": (int, ...), "value": (_float, ...)},
    "tech_groups": {"asset": (_str, ...), "group": (_str, ...)},
}

REQUIRED = ("nodes", "commodities", "seasons", "scenarios", "assets", "conversions",
            "placements", "demand", "profiles", "carbon_cap", "cost_tracks")


def read_table(path: Path, table: str) -> list[dict[str, Any]]:
    schema = SCHEMAS[table]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SchemaMismatch("empty file, header row expected", table) from None
        unknown = [h for h in header if h not in schema]
        if unknown:
            raise SchemaMismatch(f"unknown column {unknown[0]!r}", table, 1, unknown[0])
        missing = [c for c, (_, d) in schema.items() if d is ... and c not in header]
        if missing:
            raise SchemaMismatch(f"missing column {missing[0]!r}", table, 1, missing[0])
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if not any(cell.strip() for cell in raw):
                continue
            if len(raw) != len(header):
                raise SchemaMismatch(f"expected {len(header)} cells, found {len(raw)}", table, lineno)
            cells = dict(zip(header, raw))
            rec = {}
            for col, (parse, default) in schema.items():
                text = cells.get(col, "")
                if text.strip() == "":
                    if default is ...:
                        raise SchemaMismatch("required cell is empty", table, lineno, col)
                    rec[col] = default
                    continue
                try:
                    rec[col] = parse(text)
                except _Negative:
                    raise NegativeQuantity("negative quantity", table, lineno, col) from None
                except ValueError as exc:
                    raise SchemaMismatch(f"cannot parse {text!r}: {exc}", table, lineno, col) from None
            rec["_line"] = lineno
            rows.append(rec)
    return rows


def _period_of(year: int, time: TimeStructure, table: str, line: int) -> int:
    for p in time.periods:
        if p.start_year == year:
            return p.index
    raise SchemaMismatch(f"year {year} is not the start of a strategic period", table, line, "year")


def resolve_case_path(path: str | os.PathLike | None) -> Path:
    """Accept a directory, a bundled fixture name, or fall back to ``$MHORIZON_CASE_DIR``."""
    if path is None:
        env = os.environ.get(CASE_ENV)
        if not env:
            raise ValidationError(f"no case given and ${CASE_ENV} is not set")
        path = env
    p = Path(path)
    if p.is_dir():
        return p
    if (BUNDLED / str(path)).is_dir():
        return BUNDLED / str(path)
    raise MissingTable(f"{path} (case directory not found)")


def load_case(path: str | os.PathLike | None = None) -> CaseData:
    """Read, validate and cross-reference a case directory."""
    root = resolve_case_path(path)
    manifest_path = root / "manifest.toml"
    if not manifest_path.exists():
        raise MissingTable("manifest")
    hashes = {}
    raw_bytes = manifest_path.read_bytes()
    hashes["manifest.toml"] = hashlib.sha256(raw_bytes).hexdigest()
    try:
        manifest = tomllib.loads(raw_bytes.decode("utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise SchemaMismatch(f"manifest is not valid: {exc}", "manifest") from None

    meta = manifest.get("case", {})
    schema = meta.get("schema", SCHEMA_ID)
    if schema != SCHEMA_ID:
        raise SchemaMismatch(f"unsupported schema {schema!r}", "manifest", column="schema")

    tables: dict[str, list[dict]] = {}
    for table in SCHEMAS:
        f = root / f"{table}.csv"
        if not f.exists():
            if table in REQUIRED:
                raise MissingTable(table)
            tables[table] = []
            continue
        hashes[f.name] = hashlib.sha256(f.read_bytes()).hexdigest()
        tables[table] = read_table(f, table)

    tm = manifest.get("time", {})
    settings_raw = manifest.get("settings", {})
    known = set(Settings.__dataclass_fields__)
    bad = [k for k in settings_raw if k not in known]
    if bad:
        raise SchemaMismatch(f"unknown setting {bad[0]!r}", "manifest", column=bad[0])
    settings = Settings(**settings_raw)
    if settings.gas_cost not in ("affordable", "costly"):
        raise SchemaMismatch(f"gas_cost must be affordable or costly", "manifest", column="gas_cost")
    if settings.industry_mode not in ("flexible", "inflexible"):
        raise SchemaMismatch("industry_mode must be flexible or inflexible", "manifest",
                             column="industry_mode")

    for rec in tables["seasons"] + tables["scenarios"]:
        check_id("season/scenario", rec.get("season", rec.get("scenario")))
    config = TimeConfig(
        n_periods=int(tm.get("periods", 1)),
        start_year=int(tm.get("start_year", 2020)),
        period_length=int(tm.get("period_length", 5)),
        seasons=tuple(SeasonConfig(r["season"], r["kind"], r["hours"], r["alpha"])
                      for r in tables["seasons"]),
        scenarios=tuple((r["scenario"], r["probability"]) for r in tables["scenarios"]),
        annual_hours=float(tm.get("annual_hours", 8760.0)),
        discount_rate=float(tm.get("discount_rate", 0.05)),
    )
    time = build_time_structure(config)

    def period(rec, table):
        return _period_of(rec["year"], time, table, rec["_line"])

    nodes = tuple(check_id("node", r["node"]) for r in tables["nodes"])
    if len(set(nodes)) != len(nodes):
        raise SchemaMismatch("duplicate node", "nodes")
    commodities = {}
    for r in tables["commodities"]:
        check_id("commodity", r["commodity"])
        if r["balance"] not in ("hourly", "annual", "none"):
            raise SchemaMismatch(f"unknown balance kind {r['balance']!r}", "commodities",
                                 r["_line"], "balance")
        commodities[r["commodity"]] = Commodity(r["commodity"], r["balance"],
                                                r["emission_factor"], r["unit"])
    topology = Topology(nodes, commodities)

    conv: dict[str, list[tuple[str, float]]] = {}
    asset_ids = {r["asset"] for r in tables["assets"]}
    for r in tables["conversions"]:
        if r["asset"] not in asset_ids:
            raise SchemaMismatch(f"conversion for unknown asset {r['asset']!r}", "conversions",
                                 r["_line"], "asset")
        conv.setdefault(r["asset"], []).append((r["commodity"], r["coefficient"]))

    assets = []
    for r in tables["assets"]:
        common = dict(
            id=r["asset"], invest_cost=r["invest_cost"], fixed_om=r["fixed_om"],
            var_cost=r["var_cost"], lifetime_periods=r["lifetime"],
            investable_from=r["investable_from"], max_built=r["max_built"],
            conversion=tuple(conv.get(r["asset"], ())), emission_factor=r["emission_factor"],
            capture_rate=r["capture_rate"], availability_profile=r["availability_profile"],
            cop_profile=r["cop_profile"], sector=r["sector"],
        )
        if r["category"] == "process-route":
            assets.append(ProcessRoute(**common, feedstock_cap=r["feedstock_cap"],
                                       process_emission_factor=r["process_emission"]))
        elif r["category"] == "storage":
            assets.append(AssetSpec(**common, category="storage", commodity=r["commodity"],
                                    eff_charge=r["eff_charge"], eff_discharge=r["eff_discharge"],
                                    power_ratio=r["power_ratio"]))
        else:
            if r["process_emission"]:
                raise SchemaMismatch("process emissions are only valid for process routes",
                                     "assets", r["_line"], "process_emission")
            assets.append(AssetSpec(**common, category=r["category"]))

    arcs = [ArcSpec(r["arc"], r["commodity"], r["from"], r["to"], r["capacity"], r["investable"],
                    r["invest_cost"], r["fixed_om"], r["lifetime"], r["loss"], r["max_built"],
                    r["var_cost"], r["tag"]) for r in tables["arcs"]]
    supplies = [GasSupplySpec(r["supply"], r["node"], r["kind"], r["production_capacity"],
                              r["reserves"], r["cost_track"], r["tag"]) for r in tables["gas_supply"]]
    sites = [SequestrationSiteSpec(r["node"], r["max_cumulative_gt"] * GT)
             for r in tables["sequestration"]]
    catalog = validate_catalog(assets, topology, arcs, supplies, sites)

    placements: dict[tuple[str, str], float | None] = {}
    for r in tables["placements"]:
        _known(r, "placements", asset_ids, nodes)
        a = catalog.assets[r["asset"]]
        placements[(r["asset"], r["node"])] = r["max_built"] if r["max_built"] is not None else a.max_built
    initial: dict[tuple[str, str, int], float] = {}
    for r in tables["initial_capacity"]:
        _known(r, "initial_capacity", asset_ids, nodes)
        placements.setdefault((r["asset"], r["node"]), catalog.assets[r["asset"]].max_built)
        initial[(r["asset"], r["node"], period(r, "initial_capacity"))] = r["capacity"]

    profiles: dict[str, dict[tuple[str, str, int], float]] = {}
    for r in tables["profiles"]:
        profiles.setdefault(r["profile"], {})[(r["scenario"], r["season"], r["hour"])] = r["value"]
    for name, values in profiles.items():
        for w in time.scenario_names:
            for s, h in time.season_hours():
                if (w, s, h) not in values:
                    raise ProfileGap(f"profile {name!r} has no value for ({w}, {s}, hour {h})")

    def need_profile(name, table, line, col):
        if name is not None and name not in profiles:
            raise SchemaMismatch(f"unknown profile {name!r}", table, line, col)

    for r in tables["assets"]:
        need_profile(r["availability_profile"], "assets", r["_line"], "availability_profile")
        need_profile(r["cop_profile"], "assets", r["_line"], "cop_profile")
        if r["availability_profile"] is not None:
            vals = profiles[r["availability_profile"]].values()
            if any(v > 1.0 for v in vals):
                raise SchemaMismatch(f"availability profile {r['availability_profile']!r} exceeds 1",
                                     "profiles")
        if r["cop_profile"] is not None:
            if any(v <= 0 for v in profiles[r["cop_profile"]].values()):
                raise SchemaMismatch(f"COP profile {r['cop_profile']!r} must be positive", "profiles")

    demand = {}
    for r in tables["demand"]:
        _commodity_node(r, "demand", commodities, nodes)
        need_profile(r["profile"], "demand", r["_line"], "profile")
        demand[(r["commodity"], r["node"], period(r, "demand"))] = (r["profile"], r["scale"])
    flat = {}
    for r in tables["transport_demand"]:
        _commodity_node(r, "transport_demand", commodities, nodes)
        key = (r["commodity"], r["node"], period(r, "transport_demand"))
        flat[key] = flat.get(key, 0.0) + r["annual"] / time.annual_weight
    sector_demand = {}
    for r in tables["sector_demand"]:
        if r["sector"] not in SECTORS:
            raise SchemaMismatch(f"unknown sector {r['sector']!r}", "sector_demand", r["_line"], "sector")
        if r["node"] not in nodes:
            raise SchemaMismatch(f"unknown node {r['node']!r}", "sector_demand", r["_line"], "node")
        sector_demand[(r["sector"], r["node"], period(r, "sector_demand"))] = r["annual"]

    carbon_cap = {period(r, "carbon_cap"): r["cap"] for r in tables["carbon_cap"]}
    for p in time.period_indices:
        if p not in carbon_cap:
            raise UncoveredPeriod(f"carbon_cap has no value for {time.years[p]}")

    tracks: dict[str, dict[int, float]] = {}
    for r in tables["cost_tracks"]:
        tracks.setdefault(r["track"], {})[r["year"]] = r["value"]
    for g in supplies:
        keys = [k for k in (f"{g.cost_track}.affordable", f"{g.cost_track}.costly", g.cost_track)
                if k in tracks]
        if not keys:
            raise UncoveredPeriod(f"gas supply {g.id!r} references missing track {g.cost_track!r}")
        for k in keys:
            for p in time.periods:
                if p.start_year not in tracks[k]:
                    raise UncoveredPeriod(f"cost track {k!r} has no value for {p.start_year}")

    groups = {}
    for r in tables["tech_groups"]:
        if r["asset"] not in asset_ids and r["asset"] not in catalog.supplies:
            raise SchemaMismatch(f"unknown asset {r['asset']!r}", "tech_groups", r["_line"], "asset")
        groups[r["asset"]] = r["group"]

    case = CaseData(
        name=str(meta.get("name", root.name)), time=time, settings=settings, catalog=catalog,
        placements=placements, initial_capacity=initial, demand=demand, flat_demand=flat,
        sector_demand=sector_demand, carbon_cap=carbon_cap, cost_tracks=tracks,
        profiles=profiles, groups=groups, source=str(root), file_hashes=hashes,
    )
    _check_industry(case)
    return case


def _known(r, table, assets, nodes):
    if r["asset"] not in assets:
        raise SchemaMismatch(f"unknown asset {r['asset']!r}", table, r["_line"], "asset")
    if r["node"] not in nodes:
        raise SchemaMismatch(f"unknown node {r['node']!r}", table, r["_line"], "node")


def _commodity_node(r, table, commodities, nodes):
    if r["commodity"] not in commodities:
        raise SchemaMismatch(f"unknown commodity {r['commodity']!r}", table, r["_line"], "commodity")
    if r["node"] not in nodes:
        raise SchemaMismatch(f"unknown node {r['node']!r}", table, r["_line"], "node")


def _check_industry(case: CaseData) -> None:
    from .errors import DanglingConversion

    cat = case.catalog
    for c, com in case.commodities.items():
        if com.balance == "annual":
            if c not in SECTORS:
                raise SchemaMismatch(f"annual commodity {c!r} must be an industry sector", "commodities")
            used = cat.sources.get(c) or cat.sinks.get(c)
            if used and not any(s == c for s, _, _ in case.sector_demand):
                raise DanglingConversion(f"commodity {c!r} is produced but has no sector demand")
    for route in (a for a in cat.assets.values() if isinstance(a, ProcessRoute)):
        if route.primary != route.sector:
            raise SchemaMismatch(f"route {route.id!r} must produce its sector commodity "
                                 f"{route.sector!r}", "conversions")
    for sector in ("steel", "cement", "ammonia"):
        routes = cat.routes(sector)
        if not routes:
            continue
        h2 = [r for r in routes if r.coefficient(HYDROGEN) < 0]
        if case.settings.industry_hydrogen and not h2:
            raise SchemaMismatch(f"{sector} has no hydrogen-consuming route although "
                                 "industry_hydrogen is enabled", "assets")
        if not case.settings.industry_hydrogen and h2:
            raise SchemaMismatch(f"{sector} route {h2[0].id!r} consumes hydrogen although "
                                 "industry_hydrogen is disabled", "assets")


# --------------------------------------------------------------------------------
# scenario flags

def apply_scenario_flags(case: CaseData, russian_gas: bool = True,
                         gas_cost: str = "affordable") -> CaseData:
    """Switch Russian pipeline gas off/on and pick the affordable or costly gas track.

    Without Russian gas every arc and supply tagged ``russian`` loses its
    capacity. Only gas data changes.
    """
    if gas_cost not in ("affordable", "costly"):
        raise ValidationError(f"gas cost flag must be affordable or costly, not {gas_cost!r}")
    cat = case.catalog
    tagged_arcs = [r for r in cat.arcs.values() if r.tag == RUSSIAN]
    tagged_supply = [g for g in cat.supplies.values() if g.tag == RUSSIAN]
    if not russian_gas and not (tagged_arcs or tagged_supply):
        raise UntaggedRussianSupply("case has no arc or supply tagged 'russian'")
    arcs, supplies = dict(cat.arcs), dict(cat.supplies)
    if not russian_gas:
        for r in tagged_arcs:
            arcs[r.id] = replace(r, capacity=0.0, investable=False)
        for g in tagged_supply:
            supplies[g.id] = replace(g, production_capacity=0.0)
    catalog = replace(cat, arcs=arcs, supplies=supplies)
    settings = replace(case.settings, russian_gas=russian_gas, gas_cost=gas_cost)
    return replace(case, catalog=catalog, settings=settings)


# --------------------------------------------------------------------------------
# dimension report

@dataclass(frozen=True)
class DimensionReport:
    columns: Mapping[str, int]
    rows: Mapping[str, int]

    @property
    def n_columns(self) -> int:
        return sum(self.columns.values())

    @property
    def n_rows(self) -> int:
        return sum(self.rows.values())

    def format(self) -> str:
        lines = [f"columns: {self.n_columns}"]
        lines += [f"  {k:<10} {v}" for k, v in sorted(self.columns.items())]
        lines.append(f"rows: {self.n_rows}")
        lines += [f"  {k:<10} {v}" for k, v in sorted(self.rows.items())]
        return "\n".join(lines) + "\n"


def balance_nodes(case: CaseData, commodity: str) -> list[str]:
    """Nodes where ``commodity`` gets an hourly flow-balance row."""
    cat = case.catalog
    out = []
    for n in case.nodes:
        touched = case.has_demand(commodity, n)
        for (a, node) in case.placements:
            if node != n:
                continue
            spec = cat.assets[a]
            if spec.is_storage and spec.commodity == commodity:
                touched = True
            elif not spec.is_storage and (spec.coefficient(commodity) != 0 or (
                    commodity == CO2 and spec.capture_rate > 0
                    and cat.emission_per_unit(spec) > 0)):
                touched = True
        if commodity == GAS and any(g.node == n for g in cat.supplies.values()):
            touched = True
        if commodity == CO2 and n in cat.sites:
            touched = True
        if any(r.commodity == commodity and n in (r.source, r.target) for r in cat.arcs.values()):
            touched = True
        if touched:
            out.append(n)
    return out


def expand_deterministic_equivalent(case: CaseData) -> DimensionReport:
    """Closed-form variable and row counts of the deterministic-equivalent LP."""
    ts = case.time
    cat = case.catalog
    I, W, H = len(ts.periods), len(ts.scenarios), ts.n_hours
    T = I * W * H
    S = len(ts.seasons)
    placed = list(case.placements)
    p_sto = sum(1 for a, _ in placed if cat.assets[a].is_storage)
    p_op = len(placed) - p_sto
    R = len(cat.arcs)
    G = len(cat.supplies)
    G_fin = sum(1 for g in cat.supplies.values() if not g.unbounded)
    n_sites = len(cat.sites)
    hourly = [c for c, com in case.commodities.items() if com.balance == "hourly"]
    bal = sum(len(balance_nodes(case, c)) for c in hourly)
    power_nodes = len(balance_nodes(case, POWER)) if POWER in case.commodities else 0

    emitters = any(cat.emission_per_unit(cat.assets[a]) > 0 and cat.assets[a].capture_rate < 1
                   for a, _ in placed if not cat.assets[a].is_storage)

    ind_pairs = sorted({(s, n) for (s, n, p), v in case.sector_demand.items()})
    ind_annual = ind_cap = ind_hourly = 0
    for s, n in ind_pairs:
        periods = [p for p in ts.period_indices if case.sector_demand.get((s, n, p), 0.0) > 0]
        routes = [r for r in cat.routes(s) if (r.id, n) in case.placements]
        capped = [r for r in routes if r.feedstock_cap is not None]
        ind_annual += len(periods) * W
        ind_cap += len(capped) * len(periods) * W
        ind_hourly += len(periods) * W * H
    flexible = case.settings.industry_mode == "flexible"
    starts = p_sto * I * W * S  # first hour of every season

    # keys are the builder's column / row tags
    columns = {
        "x": (p_op + p_sto) * I, "v": (p_op + p_sto) * I, "y": p_op * T,
        "ch": p_sto * T, "dis": p_sto * T, "w": p_sto * T,
        "xa": R * I, "va": R * I, "f": 2 * R * T,
        "g": G * T, "sq": n_sites * T, "ll": power_nodes * T,
    }
    rows = {
        "bal": bal * T, "life": (p_op + p_sto + R) * I, "cap": p_op * T,
        "chcap": p_sto * T, "discap": p_sto * T, "wcap": p_sto * T,
        "sto0": starts, "sto": p_sto * T - starts, "stoend": starts,
        "arccap": 2 * R * T, "cum": (G_fin + n_sites) * W, "emis": I * W if emitters else 0,
        "ind": ind_annual, "feed": ind_cap,
        "flexlo": ind_hourly if flexible else 0, "flexhi": ind_hourly if flexible else 0,
        "infl": 0 if flexible else ind_hourly,
    }
    return DimensionReport(columns, rows)

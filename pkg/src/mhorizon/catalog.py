"""Technology catalog: assets, industry routes, gas supply, sequestration sites.

Conversion coefficients are expressed per unit of the asset's primary
output. A positive coefficient makes the asset a source of that commodity,
a negative one a sink. Emissions are tracked outside the conversion vector:
an asset's total CO2 per unit output is split by its capture rate into a
captured stream (a source in the ``co2`` balance) and an atmospheric stream
(counted against the shared emission cap).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DanglingConversion,
    DuplicateAssetId,
    InvalidAsset,
    NegativeEmission,
    NegativeOutput,
    NonPositiveCOP,
    RateOutOfRange,
    UnknownCommodity,
    UnknownNode,
)

CATEGORIES = ("generator", "heater", "converter", "storage", "transport-arc", "process-route")
SECTORS = ("steel", "cement", "ammonia", "refinery")
CO2 = "co2"
POWER = "power"
HYDROGEN = "hydrogen"
GAS = "gas"

_ID = re.compile(r"^[A-Za-z0-9_\-]+$")


def check_id(kind: str, value: str) -> str:
    # ids end up inside dotted row/column names
    if not isinstance(value, str) or not _ID.match(value):
        raise InvalidAsset(f"{kind} id {value!r} must match [A-Za-z0-9_-]+")
    return value


@dataclass(frozen=True)
class Commodity:
    name: str
    balance: str = "hourly"  # hourly | annual | none
    emission_factor: float = 0.0  # tCO2 per unit burned
    unit: str = "MWh"


@dataclass(frozen=True)
class Topology:
    nodes: tuple[str, ...]
    commodities: Mapping[str, Commodity]


@dataclass(frozen=True)
class AssetSpec:
    id: str
    category: str
    invest_cost: float = 0.0
    fixed_om: float = 0.0
    var_cost: float = 0.0
    lifetime_periods: int = 1
    investable_from: int = 1
    max_built: float | None = None
    conversion: tuple[tuple[str, float], ...] = ()
    emission_factor: float = 0.0
    capture_rate: float = 0.0
    availability_profile: str | None = None
    cop_profile: str | None = None
    sector: str = POWER
    # storage only
    commodity: str | None = None
    eff_charge: float = 1.0
    eff_discharge: float = 1.0
    power_ratio: float = 1.0

    @property
    def is_storage(self) -> bool:
        return self.category == "storage"

    @property
    def process_emission(self) -> float:
        return 0.0

    @property
    def primary(self) -> str:
        if self.is_storage:
            return self.commodity
        outs = [c for c, k in self.conversion if k > 0]
        return outs[0] if len(outs) == 1 else None

    def coefficient(self, commodity: str) -> float:
        return math.fsum(k for c, k in self.conversion if c == commodity)

    def inputs(self) -> list[tuple[str, float]]:
        return [(c, -k) for c, k in self.conversion if k < 0]


@dataclass(frozen=True)
class ProcessRoute(AssetSpec):
    category: str = "process-route"
    sector: str = "steel"
    feedstock_cap: float | None = None
    process_emission_factor: float = 0.0

    @property
    def route(self) -> str:
        return self.id

    @property
    def process_emission(self) -> float:
        return self.process_emission_factor


@dataclass(frozen=True)
class ArcSpec:
    id: str
    commodity: str
    source: str
    target: str
    capacity: float = 0.0
    investable: bool = False
    invest_cost: float = 0.0
    fixed_om: float = 0.0
    lifetime_periods: int = 8
    loss: float = 0.0
    max_built: float | None = None
    var_cost: float = 0.0
    tag: str = ""
    category: str = "transport-arc"


@dataclass(frozen=True)
class GasSupplySpec:
    id: str
    node: str
    kind: str  # pipeline-field | LNG-terminal
    production_capacity: float
    reserves: float = math.inf  # inf marks an unbounded source
    cost_track: str = "gas_production"
    tag: str = ""

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.reserves)


@dataclass(frozen=True)
class SequestrationSiteSpec:
    node: str
    max_cumulative: float  # tCO2 (stored in t, typed in Gt)

    @property
    def id(self) -> str:
        return f"seq-{self.node}"


@dataclass(frozen=True)
class ValidatedCatalog:
    topology: Topology
    assets: Mapping[str, AssetSpec]
    arcs: Mapping[str, ArcSpec] = field(default_factory=dict)
    supplies: Mapping[str, GasSupplySpec] = field(default_factory=dict)
    sites: Mapping[str, SequestrationSiteSpec] = field(default_factory=dict)
    sources: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    sinks: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def routes(self, sector: str) -> list[ProcessRoute]:
        return [a for a in self.assets.values()
                if isinstance(a, ProcessRoute) and a.sector == sector]

    def emission_per_unit(self, asset: AssetSpec) -> float:
        """Total CO2 generated per unit of primary output, before capture."""
        return total_emission_factor(asset, self.topology.commodities)


def total_emission_factor(asset: AssetSpec, commodities: Mapping[str, Commodity]) -> float:
    fuel = asset.emission_factor + math.fsum(
        q * commodities[c].emission_factor for c, q in asset.inputs() if c in commodities)
    return fuel + asset.process_emission


def _check_asset(a: AssetSpec, commodities: Mapping[str, Commodity]) -> None:
    check_id("asset", a.id)
    if a.category not in CATEGORIES or a.category == "transport-arc":
        raise InvalidAsset(f"asset {a.id!r}: unknown category {a.category!r}")
    if a.lifetime_periods < 1:
        raise InvalidAsset(f"asset {a.id!r}: lifetime must be >= 1 period")
    if not 0.0 <= a.capture_rate <= 1.0:
        raise RateOutOfRange(f"asset {a.id!r}: capture rate {a.capture_rate} outside [0, 1]")
    if a.emission_factor < 0:
        raise NegativeEmission(f"asset {a.id!r}: negative emission factor")
    for c, k in a.conversion:
        if c not in commodities:
            raise UnknownCommodity(f"asset {a.id!r} converts unknown commodity {c!r}")
        if not math.isfinite(k):
            raise InvalidAsset(f"asset {a.id!r}: non-finite coefficient for {c!r}")
    if a.is_storage:
        if a.commodity not in commodities:
            raise UnknownCommodity(f"storage {a.id!r} stores unknown commodity {a.commodity!r}")
        if a.conversion:
            raise InvalidAsset(f"storage {a.id!r} must not carry a conversion vector")
        for eff in (a.eff_charge, a.eff_discharge):
            if not 0.0 < eff <= 1.0:
                raise RateOutOfRange(f"storage {a.id!r}: efficiency {eff} outside (0, 1]")
        if not a.power_ratio > 0:
            raise InvalidAsset(f"storage {a.id!r}: power ratio must be positive")
        return
    outs = [c for c, k in a.conversion if k > 0]
    if len(outs) != 1:
        raise InvalidAsset(f"asset {a.id!r} must have exactly one primary output, got {outs}")
    if a.coefficient(outs[0]) != 1.0:
        raise InvalidAsset(f"asset {a.id!r}: primary output coefficient must be 1")
    if isinstance(a, ProcessRoute):
        if a.process_emission_factor < 0:
            raise NegativeEmission(f"route {a.id!r}: negative process emission")
        if a.feedstock_cap is not None and not 0.0 <= a.feedstock_cap <= 1.0:
            raise RateOutOfRange(f"route {a.id!r}: feedstock cap outside [0, 1]")
        if a.sector not in SECTORS:
            raise InvalidAsset(f"route {a.id!r}: unknown sector {a.sector!r}")


def validate_catalog(
    assets: Sequence[AssetSpec],
    topology: Topology,
    arcs: Iterable[ArcSpec] = (),
    supplies: Iterable[GasSupplySpec] = (),
    sites: Iterable[SequestrationSiteSpec] = (),
) -> ValidatedCatalog:
    """Check cross references and build the per-commodity source/sink registries."""
    commodities = topology.commodities
    nodes = set(topology.nodes)
    arcs, supplies, sites = list(arcs), list(supplies), list(sites)

    seen: set[str] = set()
    for ident in [a.id for a in assets] + [r.id for r in arcs] + [g.id for g in supplies]:
        if ident in seen:
            raise DuplicateAssetId(f"duplicate id {ident!r}")
        seen.add(ident)

    sources: dict[str, list[str]] = {c: [] for c in commodities}
    sinks: dict[str, list[str]] = {c: [] for c in commodities}

    def need_balance(c: str, who: str) -> None:
        if c not in commodities:
            raise DanglingConversion(f"{who} references {c!r}, which has no flow balance")
        if commodities[c].balance == "none":
            raise DanglingConversion(f"{who} references {c!r}, which has no flow balance")

    for a in assets:
        _check_asset(a, commodities)
        if a.is_storage:
            need_balance(a.commodity, a.id)
            sources[a.commodity].append(a.id)
            sinks[a.commodity].append(a.id)
            continue
        for c, k in a.conversion:
            need_balance(c, a.id)
            (sources if k > 0 else sinks)[c].append(a.id)
        if a.capture_rate > 0 and total_emission_factor(a, commodities) > 0:
            need_balance(CO2, a.id)
            sources[CO2].append(a.id)

    for r in arcs:
        check_id("arc", r.id)
        if r.commodity not in commodities:
            raise UnknownCommodity(f"arc {r.id!r} carries unknown commodity {r.commodity!r}")
        need_balance(r.commodity, r.id)
        for n in (r.source, r.target):
            if n not in nodes:
                raise UnknownNode(f"arc {r.id!r} touches unknown node {n!r}")
        if r.source == r.target:
            raise InvalidAsset(f"arc {r.id!r} is a self loop")
        if not 0.0 <= r.loss < 1.0:
            raise RateOutOfRange(f"arc {r.id!r}: loss {r.loss} outside [0, 1)")
        if r.lifetime_periods < 1:
            raise InvalidAsset(f"arc {r.id!r}: lifetime must be >= 1 period")

    for g in supplies:
        check_id("supply", g.id)
        if g.node not in nodes:
            raise UnknownNode(f"gas supply {g.id!r} at unknown node {g.node!r}")
        if g.kind not in ("pipeline-field", "LNG-terminal"):
            raise InvalidAsset(f"gas supply {g.id!r}: unknown kind {g.kind!r}")
        if not g.reserves > 0:
            raise InvalidAsset(f"gas supply {g.id!r}: reserves must be positive or unbounded")
        need_balance(GAS, g.id)
        sources[GAS].append(g.id)

    site_map: dict[str, SequestrationSiteSpec] = {}
    for s in sites:
        if s.node not in nodes:
            raise UnknownNode(f"sequestration site at unknown node {s.node!r}")
        if not s.max_cumulative > 0:
            raise InvalidAsset(f"sequestration site {s.node!r}: cap must be positive")
        if s.node in site_map:
            raise DuplicateAssetId(f"two sequestration sites at {s.node!r}")
        need_balance(CO2, s.id)
        sinks[CO2].append(s.id)
        site_map[s.node] = s

    return ValidatedCatalog(
        topology=topology,
        assets={a.id: a for a in assets},
        arcs={r.id: r for r in arcs},
        supplies={g.id: g for g in supplies},
        sites=site_map,
        sources={c: tuple(v) for c, v in sources.items()},
        sinks={c: tuple(v) for c, v in sinks.items()},
    )


def capture_split(emitted: float, capture_rate: float) -> tuple[float, float]:
    """Split emitted CO2 into (captured, atmospheric); the parts add back exactly."""
    if emitted < 0:
        raise NegativeEmission(f"emitted amount {emitted} < 0")
    if not 0.0 <= capture_rate <= 1.0:
        raise RateOutOfRange(f"capture rate {capture_rate} outside [0, 1]")
    captured = capture_rate * emitted
    atmospheric = emitted - captured
    # a second subtraction is exact (Sterbenz), so captured + atmospheric == emitted
    captured = emitted - atmospheric
    return captured, atmospheric


def process_emissions(route: AssetSpec, output: float,
                      commodities: Mapping[str, Commodity] | None = None) -> tuple[float, float]:
    """Return (fuel_emissions, process_emissions) for ``output`` units of product.

    Process emissions (e.g. limestone calcination) do not depend on the fuel.
    """
    if output < 0:
        raise NegativeOutput(f"output {output} < 0")
    commodities = commodities or {}
    fuel_factor = route.emission_factor + math.fsum(
        q * commodities[c].emission_factor for c, q in route.inputs() if c in commodities)
    return fuel_factor * output, route.process_emission * output


def heatpump_output(electric_input: float, cop: float) -> float:
    if not cop > 0:
        raise NonPositiveCOP(f"coefficient of performance {cop} must be positive")
    if electric_input < 0:
        raise NegativeOutput(f"electric input {electric_input} < 0")
    return cop * electric_input

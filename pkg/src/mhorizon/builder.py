"""Assemble the deterministic-equivalent LP of a case.

Investment (``x``) and capacity (``v``) columns are indexed by
``(asset, node, period)`` only; every operational column additionally
carries ``(season, hour, scenario)``. Row and column names have seven
dot-separated fields ``tag.entity.node.period.season.hour.scenario`` with
``*`` in unused positions, so they parse back losslessly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .case_io import CaseData
from .catalog import CO2, GAS, POWER, AssetSpec, capture_split
from .errors import InfeasibleDemand, MissingCapTrajectory, NoSupplyPath
from .lp.sparse import SparseLP, canonicalize

WILD = "*"

# row tag -> constraint family
ROW_FAMILIES = {
    "bal": "flow balance",
    "life": "lifetime coupling",
    "cap": "capacity bound",
    "chcap": "capacity bound (storage charge)",
    "discap": "capacity bound (storage discharge)",
    "wcap": "capacity bound (storage level)",
    "arccap": "capacity bound (transport)",
    "sto": "storage balance",
    "sto0": "storage balance, season start at half capacity",
    "stoend": "season-neutral storage",
    "cum": "cumulative resource limit",
    "emis": "shared emission cap",
    "ind": "industry annual demand",
    "feed": "industry feedstock cap",
    "flexlo": "industry hourly flexibility (lower)",
    "flexhi": "industry hourly flexibility (upper)",
    "infl": "industry fixed hourly output",
}

# column kind -> description
COLUMN_KINDS = {
    "x": "investment", "v": "installed capacity", "y": "operation",
    "ch": "storage charge", "dis": "storage discharge", "w": "storage level",
    "xa": "transport investment", "va": "transport capacity", "f": "transport flow",
    "g": "gas supply", "sq": "CO2 sequestration", "ll": "loss of load",
}


class Key(NamedTuple):
    tag: str
    entity: str
    node: str = WILD
    period: int | None = None
    season: str | None = None
    hour: int | None = None
    scenario: str | None = None

    def name(self) -> str:
        def f(v):
            return WILD if v is None else str(v)
        return ".".join((self.tag, self.entity, self.node, f(self.period), f(self.season),
                         f(self.hour), f(self.scenario)))


def parse_name(name: str) -> Key:
    parts = name.split(".")
    if len(parts) != 7:
        raise ValueError(f"malformed name {name!r}")
    tag, entity, node, p, s, h, w = parts

    def opt(v, conv=str):
        return None if v == WILD else conv(v)

    return Key(tag, entity, node, opt(p, int), opt(s), opt(h, int), opt(w))


class VariableRegistry:
    """Bijection between structured column keys and contiguous column indices."""

    def __init__(self):
        self.keys: list[Key] = []
        self.index: dict[Key, int] = {}
        self.lb: list[float] = []
        self.ub: list[float] = []
        self.cost: list[float] = []

    def add(self, key: Key, lb: float = 0.0, ub: float = math.inf, cost: float = 0.0) -> int:
        if key in self.index:
            raise KeyError(f"duplicate column {key.name()}")
        j = len(self.keys)
        self.keys.append(key)
        self.index[key] = j
        self.lb.append(lb)
        self.ub.append(ub)
        self.cost.append(cost)
        return j

    def __getitem__(self, key: Key) -> int:
        return self.index[key]

    def get(self, key: Key) -> int | None:
        return self.index.get(key)

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, key) -> bool:
        return key in self.index

    def of_kind(self, tag: str) -> list[tuple[Key, int]]:
        return [(k, j) for j, k in enumerate(self.keys) if k.tag == tag]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for k in self.keys:
            out[k.tag] = out.get(k.tag, 0) + 1
        return out


@dataclass
class RowStore:
    names: list[str] = field(default_factory=list)
    keys: list[Key] = field(default_factory=list)
    senses: list[str] = field(default_factory=list)
    rhs: list[float] = field(default_factory=list)
    r: list[int] = field(default_factory=list)
    c: list[int] = field(default_factory=list)
    v: list[float] = field(default_factory=list)

    def add(self, key: Key, terms: Iterable[tuple[int, float]], sense: str, rhs: float) -> int:
        i = len(self.names)
        merged: dict[int, float] = {}
        for col, coef in terms:
            merged[col] = merged.get(col, 0.0) + coef
        for col, coef in merged.items():
            self.r.append(i)
            self.c.append(col)
            self.v.append(coef)
        if not math.isfinite(rhs):
            raise ValueError(f"row {key.name()} has non-finite rhs")
        self.names.append(key.name())
        self.keys.append(key)
        self.senses.append(sense)
        self.rhs.append(float(rhs))
        return i

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for k in self.keys:
            out[k.tag] = out.get(k.tag, 0) + 1
        return out


@dataclass
class EmissionTerm:
    column: int
    asset: str
    sector: str
    node: str
    period: int
    scenario: str
    weight: float  # L * alpha
    emitted_per_unit: float
    captured_per_unit: float
    atmospheric_per_unit: float


@dataclass
class BuiltModel:
    case: CaseData
    lp: SparseLP
    registry: VariableRegistry
    row_keys: list[Key]
    emission_terms: list[EmissionTerm]

    def audit(self) -> str:
        """Row-name listing mapped to constraint families."""
        lines = [f"{name}\t{ROW_FAMILIES[key.tag]}" for name, key in zip(self.lp.row_names, self.row_keys)]
        return "\n".join(lines) + "\n"

    def column(self, key: Key) -> int:
        return self.registry[key]

    def value(self, x: np.ndarray, key: Key) -> float:
        j = self.registry.get(key)
        return 0.0 if j is None else float(x[j])


class ModelBuilder:
    """Stateful assembler; call :meth:`build` or the ``add_*`` methods in order."""

    def __init__(self, case: CaseData):
        self.case = case
        self.ts = case.time
        self.cat = case.catalog
        self.reg = VariableRegistry()
        self.rows = RowStore()
        self.emission_terms: list[EmissionTerm] = []
        self.L = float(self.ts.period_length_years)
        self.alpha = self.ts.season_scale
        self.prob = self.ts.probabilities
        self.delta = {p.index: p.discount_factor for p in self.ts.periods}
        self.slices = [(p.index, w.name, s, h) for p in self.ts.periods for w in self.ts.scenarios
                       for s, h in self.ts.season_hours()]
        self.placed = list(case.placements)
        self._ops: dict[tuple[str, str], list[int]] = {}

    # -- weights ---------------------------------------------------------------------
    def op_weight(self, p: int, w: str, s: str) -> float:
        """Objective weight of one operational hour: discount * prob * L * alpha."""
        return self.delta[p] * self.prob[w] * self.L * self.alpha[s]

    def coefficient(self, a: AssetSpec, commodity: str, w: str, s: str, h: int) -> float:
        k = a.coefficient(commodity)
        if k and commodity == POWER and a.cop_profile is not None:
            k = k / self.case.profile_value(a.cop_profile, w, s, h)
        return k

    def emitted_per_unit(self, a: AssetSpec, w: str, s: str, h: int) -> float:
        com = self.case.commodities
        fuel = a.emission_factor + math.fsum(
            -self.coefficient(a, c, w, s, h) * com[c].emission_factor
            for c, k in a.conversion if k < 0 and c in com)
        return fuel + a.process_emission

    # -- columns -----------------------------------------------------------------------
    def add_capacity_columns(self) -> None:
        """x and v columns for every placement and arc (scenario independent)."""
        for a, n in self.placed:
            spec = self.cat.assets[a]
            max_built = self.case.placements[(a, n)]
            for p in self.ts.period_indices:
                ub = 0.0
                if p >= spec.investable_from:
                    ub = math.inf if max_built is None else max_built
                self.reg.add(Key("x", a, n, p), 0.0, ub, self.delta[p] * spec.invest_cost)
                self.reg.add(Key("v", a, n, p), 0.0, math.inf,
                             self.delta[p] * self.L * spec.fixed_om)
        for r in self.cat.arcs.values():
            for p in self.ts.period_indices:
                ub = (math.inf if r.max_built is None else r.max_built) if r.investable else 0.0
                self.reg.add(Key("xa", r.id, WILD, p), 0.0, ub, self.delta[p] * r.invest_cost)
                self.reg.add(Key("va", r.id, WILD, p), 0.0, math.inf,
                             self.delta[p] * self.L * r.fixed_om)

    def add_operational_columns(self) -> None:
        case = self.case
        penalty = case.settings.loss_of_load_penalty
        for a, n in self.placed:
            spec = self.cat.assets[a]
            for p, w, s, h in self.slices:
                wt = self.op_weight(p, w, s)
                if spec.is_storage:
                    self.reg.add(Key("ch", a, n, p, s, h, w))
                    self.reg.add(Key("dis", a, n, p, s, h, w), cost=wt * spec.var_cost)
                    self.reg.add(Key("w", a, n, p, s, h, w))
                else:
                    self.reg.add(Key("y", a, n, p, s, h, w), cost=wt * spec.var_cost)
        for r in self.cat.arcs.values():
            for p, w, s, h in self.slices:
                wt = self.op_weight(p, w, s)
                self.reg.add(Key("f", r.id, r.source, p, s, h, w), cost=wt * r.var_cost)
                self.reg.add(Key("f", r.id, r.target, p, s, h, w), cost=wt * r.var_cost)
        for g in self.cat.supplies.values():
            for p, w, s, h in self.slices:
                price = case.supply_price(g, p)
                self.reg.add(Key("g", g.id, g.node, p, s, h, w), 0.0, g.production_capacity,
                             self.op_weight(p, w, s) * price)
        for site in self.cat.sites.values():
            for p, w, s, h in self.slices:
                self.reg.add(Key("sq", site.id, site.node, p, s, h, w))
        if POWER in case.commodities:
            from .case_io import balance_nodes

            for n in balance_nodes(case, POWER):
                for p, w, s, h in self.slices:
                    self.reg.add(Key("ll", POWER, n, p, s, h, w), cost=self.op_weight(p, w, s) * penalty)

    # -- constraint families ------------------------------------------------------------
    def add_lifetime_coupling(self) -> None:
        """Capacity = investments still within their lifetime + remaining initial capacity."""
        for a, n in self.placed:
            life = self.cat.assets[a].lifetime_periods
            for i in self.ts.period_indices:
                terms = [(self.reg[Key("v", a, n, i)], 1.0)]
                for j in range(max(1, i - life + 1), i + 1):
                    terms.append((self.reg[Key("x", a, n, j)], -1.0))
                self.rows.add(Key("life", a, n, i), terms, "E", self.case.initial(a, n, i))
        for r in self.cat.arcs.values():
            for i in self.ts.period_indices:
                terms = [(self.reg[Key("va", r.id, WILD, i)], 1.0)]
                for j in range(max(1, i - r.lifetime_periods + 1), i + 1):
                    terms.append((self.reg[Key("xa", r.id, WILD, j)], -1.0))
                self.rows.add(Key("life", r.id, WILD, i), terms, "E", r.capacity)

    def add_operation_bounds(self) -> None:
        """Operation at most availability * capacity, per hour."""
        for a, n in self.placed:
            spec = self.cat.assets[a]
            if spec.is_storage:
                continue
            for p, w, s, h in self.slices:
                avail = self.case.profile_value(spec.availability_profile, w, s, h)
                self.rows.add(Key("cap", a, n, p, s, h, w),
                              [(self.reg[Key("y", a, n, p, s, h, w)], 1.0),
                               (self.reg[Key("v", a, n, p)], -avail)], "L", 0.0)
        for r in self.cat.arcs.values():
            for p, w, s, h in self.slices:
                for end in (r.source, r.target):
                    self.rows.add(Key("arccap", r.id, end, p, s, h, w),
                                  [(self.reg[Key("f", r.id, end, p, s, h, w)], 1.0),
                                   (self.reg[Key("va", r.id, WILD, p)], -1.0)], "L", 0.0)

    def add_storage_dynamics(self) -> None:
        """Hourly storage balance; each season starts and ends half full."""
        ts = self.ts
        last = ts.hours_per_season
        for a, n in self.placed:
            spec = self.cat.assets[a]
            if not spec.is_storage:
                continue
            for p, w, s, h in self.slices:
                v = self.reg[Key("v", a, n, p)]
                ch = self.reg[Key("ch", a, n, p, s, h, w)]
                dis = self.reg[Key("dis", a, n, p, s, h, w)]
                lvl = self.reg[Key("w", a, n, p, s, h, w)]
                self.rows.add(Key("chcap", a, n, p, s, h, w), [(ch, 1.0), (v, -spec.power_ratio)], "L", 0.0)
                self.rows.add(Key("discap", a, n, p, s, h, w), [(dis, 1.0), (v, -spec.power_ratio)], "L", 0.0)
                self.rows.add(Key("wcap", a, n, p, s, h, w), [(lvl, 1.0), (v, -1.0)], "L", 0.0)
                # level - prev - eff_c*charge + discharge/eff_d = 0
                terms = [(lvl, 1.0), (ch, -spec.eff_charge), (dis, 1.0 / spec.eff_discharge)]
                if h == 1:
                    self.rows.add(Key("sto0", a, n, p, s, h, w), terms + [(v, -0.5)], "E", 0.0)
                else:
                    prev = self.reg[Key("w", a, n, p, s, h - 1, w)]
                    self.rows.add(Key("sto", a, n, p, s, h, w), terms + [(prev, -1.0)], "E", 0.0)
                if h == last[s]:
                    self.rows.add(Key("stoend", a, n, p, s, h, w), [(lvl, 1.0), (v, -0.5)], "E", 0.0)

    def add_flow_balance(self, commodity: str) -> None:
        """sources - sinks - exports + (1 - loss) * imports (+ loss of load) = demand."""
        case, cat, reg = self.case, self.cat, self.reg
        for n in case.nodes:
            placed = [(cat.assets[a]) for a, node in self.placed if node == n]
            arcs_out = [r for r in cat.arcs.values() if r.commodity == commodity and r.source == n]
            arcs_in = [r for r in cat.arcs.values() if r.commodity == commodity and r.target == n]
            supplies = [g for g in cat.supplies.values() if g.node == n] if commodity == GAS else []
            site = cat.sites.get(n) if commodity == CO2 else None
            for p, w, s, h in self.slices:
                terms: list[tuple[int, float]] = []
                for spec in placed:
                    if spec.is_storage:
                        if spec.commodity == commodity:
                            terms.append((reg[Key("dis", spec.id, n, p, s, h, w)], 1.0))
                            terms.append((reg[Key("ch", spec.id, n, p, s, h, w)], -1.0))
                        continue
                    y = reg[Key("y", spec.id, n, p, s, h, w)]
                    k = self.coefficient(spec, commodity, w, s, h)
                    if commodity == CO2 and spec.capture_rate > 0:
                        captured, _ = capture_split(self.emitted_per_unit(spec, w, s, h), spec.capture_rate)
                        k += captured
                    if k:
                        terms.append((y, k))
                for g in supplies:
                    terms.append((reg[Key("g", g.id, n, p, s, h, w)], 1.0))
                if site is not None:
                    terms.append((reg[Key("sq", site.id, n, p, s, h, w)], -1.0))
                for r in arcs_out:
                    terms.append((reg[Key("f", r.id, r.source, p, s, h, w)], -1.0))
                    terms.append((reg[Key("f", r.id, r.target, p, s, h, w)], 1.0 - r.loss))
                for r in arcs_in:
                    terms.append((reg[Key("f", r.id, r.target, p, s, h, w)], -1.0))
                    terms.append((reg[Key("f", r.id, r.source, p, s, h, w)], 1.0 - r.loss))
                ll = reg.get(Key("ll", POWER, n, p, s, h, w)) if commodity == POWER else None
                if ll is not None:
                    terms.append((ll, 1.0))
                demand = case.hourly_demand(commodity, n, p, w, s, h)
                touched = bool(terms) or any(
                    spec.is_storage and spec.commodity == commodity for spec in placed)
                if not touched:
                    if demand > 0:
                        raise NoSupplyPath(f"{commodity} demand at {n} has no source, storage or import")
                    continue
                if demand > 0 and not any(k > 0 for _, k in terms):
                    raise NoSupplyPath(f"{commodity} demand at {n} has no source, storage or import")
                self.rows.add(Key("bal", commodity, n, p, s, h, w), terms, "E", demand)

    def add_cumulative_limits(self) -> None:
        """Horizon-wide gas reserves and sequestration caps, one row per scenario."""
        L = self.L
        for g in self.cat.supplies.values():
            if g.unbounded:
                continue
            for w in self.ts.scenario_names:
                terms = [(self.reg[Key("g", g.id, g.node, p, s, h, w)], L * self.alpha[s])
                         for p in self.ts.period_indices for s, h in self.ts.season_hours()]
                self.rows.add(Key("cum", g.id, g.node, None, None, None, w), terms, "L", g.reserves)
        for site in self.cat.sites.values():
            for w in self.ts.scenario_names:
                terms = [(self.reg[Key("sq", site.id, site.node, p, s, h, w)], L * self.alpha[s])
                         for p in self.ts.period_indices for s, h in self.ts.season_hours()]
                self.rows.add(Key("cum", site.id, site.node, None, None, None, w), terms, "L",
                              site.max_cumulative)

    def add_emission_cap(self) -> None:
        """Shared cap on atmospheric CO2 across all sectors, per period and scenario."""
        case = self.case
        L = self.L
        per_slice: dict[tuple[int, str], list[tuple[int, float]]] = {}
        for a, n in self.placed:
            spec = self.cat.assets[a]
            if spec.is_storage:
                continue
            for p, w, s, h in self.slices:
                emitted = self.emitted_per_unit(spec, w, s, h)
                if emitted <= 0:
                    continue
                captured, atmospheric = capture_split(emitted, spec.capture_rate)
                j = self.reg[Key("y", a, n, p, s, h, w)]
                self.emission_terms.append(EmissionTerm(j, a, spec.sector, n, p, w, L * self.alpha[s],
                                                        emitted, captured, atmospheric))
                if atmospheric > 0:
                    per_slice.setdefault((p, w), []).append((j, L * self.alpha[s] * atmospheric))
        for p in self.ts.period_indices:
            if p not in case.carbon_cap:
                raise MissingCapTrajectory(f"no emission cap for period {p}")
        for p in self.ts.period_indices:
            for w in self.ts.scenario_names:
                terms = per_slice.get((p, w))
                if terms:
                    self.rows.add(Key("emis", "co2", WILD, p, None, None, w), terms, "L",
                                  L * case.carbon_cap[p])

    def add_industry_demand(self) -> None:
        """Annual production targets, feedstock caps and hourly flexibility bands."""
        case, ts = self.case, self.ts
        f = case.settings.flexibility
        flexible = case.settings.industry_mode == "flexible"
        annual = ts.annual_weight
        pairs = sorted({(sec, n) for sec, n, _ in case.sector_demand})
        for sec, n in pairs:
            routes = [r for r in self.cat.routes(sec) if (r.id, n) in case.placements]
            for p in ts.period_indices:
                demand = case.sector_demand.get((sec, n, p), 0.0)
                if demand <= 0:
                    continue
                self._check_capacity(sec, n, p, routes, demand)
                nominal = demand / annual
                for w in ts.scenario_names:
                    terms = [(self.reg[Key("y", r.id, n, p, s, h, w)], self.alpha[s])
                             for r in routes for s, h in ts.season_hours()]
                    self.rows.add(Key("ind", sec, n, p, None, None, w), terms, "G", demand)
                    for r in routes:
                        if r.feedstock_cap is None:
                            continue
                        terms = [(self.reg[Key("y", r.id, n, p, s, h, w)], self.alpha[s])
                                 for s, h in ts.season_hours()]
                        self.rows.add(Key("feed", r.id, n, p, None, None, w), terms, "L",
                                      r.feedstock_cap * demand)
                    for s, h in ts.season_hours():
                        terms = [(self.reg[Key("y", r.id, n, p, s, h, w)], 1.0) for r in routes]
                        if flexible:
                            self.rows.add(Key("flexlo", sec, n, p, s, h, w), terms, "G", (1 - f) * nominal)
                            self.rows.add(Key("flexhi", sec, n, p, s, h, w), terms, "L", (1 + f) * nominal)
                        else:
                            self.rows.add(Key("infl", sec, n, p, s, h, w), terms, "E", nominal)

    def _check_capacity(self, sec, n, p, routes, demand) -> None:
        total = 0.0
        for r in routes:
            cap = self.case.initial(r.id, n, p)
            window = [j for j in range(max(1, p - r.lifetime_periods + 1), p + 1)
                      if j >= r.investable_from]
            if window:
                mb = self.case.placements[(r.id, n)]
                if mb is None:
                    return
                cap += mb * len(window)
            total += cap
        if total * self.ts.annual_weight < demand * (1 - 1e-12):
            raise InfeasibleDemand(
                f"{sec} demand {demand} at {n} exceeds route capacity {total} in period {p}")

    # -- assembly ------------------------------------------------------------------------
    def build(self) -> BuiltModel:
        self.add_capacity_columns()
        self.add_operational_columns()
        self.add_lifetime_coupling()
        self.add_operation_bounds()
        self.add_storage_dynamics()
        for c, com in self.case.commodities.items():
            if com.balance == "hourly":
                self.add_flow_balance(c)
        self.add_cumulative_limits()
        self.add_emission_cap()
        self.add_industry_demand()
        return self.finish()

    def finish(self) -> BuiltModel:
        reg, rows = self.reg, self.rows
        lp = SparseLP.from_arrays(
            reg.cost, rows.r, rows.c, rows.v, rows.senses, rows.rhs, reg.lb, reg.ub,
            rows.names, [k.name() for k in reg.keys], name=self.case.name)
        return BuiltModel(self.case, canonicalize(lp), reg, list(rows.keys), self.emission_terms)


def build_model(case: CaseData) -> BuiltModel:
    return ModelBuilder(case).build()

"""Strategic periods, representative seasons and operational scenarios.

The operational index space of the model is the product
``period x season x hour-in-season x scenario``. Investments live on
periods only; everything hourly lives on the full product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    EmptyDimension,
    NegativeRate,
    NonPositiveProbability,
    ProbabilitySumMismatch,
    SeasonWeightMismatch,
    UnknownHour,
)

PROBABILITY_TOL = 1e-9
SEASON_WEIGHT_TOL = 1e-6


class HourIndex(NamedTuple):
    period: int
    season: str
    hour: int
    scenario: str


@dataclass(frozen=True)
class StrategicPeriod:
    index: int
    start_year: int
    discount_factor: float = 1.0


@dataclass(frozen=True)
class Season:
    name: str
    kind: str  # "regular" or "peak"
    hours: int
    alpha: float

    @property
    def is_peak(self) -> bool:
        return self.kind == "peak"


@dataclass(frozen=True)
class Scenario:
    name: str
    probability: float


@dataclass(frozen=True)
class SeasonConfig:
    name: str
    kind: str = "regular"
    hours: int = 168
    alpha: float | None = None


def _default_seasons() -> tuple[SeasonConfig, ...]:
    regular = tuple(SeasonConfig(s, "regular", 168) for s in ("winter", "spring", "summer", "fall"))
    peak = tuple(SeasonConfig(s, "peak", 24, 1.0) for s in ("peak1", "peak2"))
    return regular + peak


@dataclass(frozen=True)
class TimeConfig:
    n_periods: int = 8
    start_year: int = 2020
    period_length: int = 5
    seasons: tuple[SeasonConfig, ...] = field(default_factory=_default_seasons)
    scenarios: tuple[tuple[str, float], ...] = (
        ("scen1", 1 / 3), ("scen2", 1 / 3), ("scen3", 1 / 3))
    annual_hours: float = 8760.0
    discount_rate: float = 0.05


@dataclass(frozen=True)
class TimeStructure:
    periods: tuple[StrategicPeriod, ...]
    seasons: tuple[Season, ...]
    scenarios: tuple[Scenario, ...]
    period_length_years: int
    annual_hours: float
    discount_rate: float = 0.05

    # -- lookups -----------------------------------------------------------
    @property
    def season_scale(self) -> dict[str, float]:
        return {s.name: s.alpha for s in self.seasons}

    @property
    def hours_per_season(self) -> dict[str, int]:
        return {s.name: s.hours for s in self.seasons}

    @property
    def period_indices(self) -> list[int]:
        return [p.index for p in self.periods]

    @property
    def scenario_names(self) -> list[str]:
        return [w.name for w in self.scenarios]

    @property
    def probabilities(self) -> dict[str, float]:
        return {w.name: w.probability for w in self.scenarios}

    @property
    def years(self) -> dict[int, int]:
        return {p.index: p.start_year for p in self.periods}

    def season(self, name: str) -> Season:
        for s in self.seasons:
            if s.name == name:
                return s
        raise UnknownHour(f"unknown season {name!r}")

    @property
    def annual_weight(self) -> float:
        """Sum of alpha * hours over every season, peaks included."""
        return math.fsum(s.alpha * s.hours for s in self.seasons)

    @property
    def regular_weight(self) -> float:
        return math.fsum(s.alpha * s.hours for s in self.seasons if not s.is_peak)

    # -- iteration -----------------------------------------------------------
    def season_hours(self) -> Iterator[tuple[str, int]]:
        """(season, hour) pairs in canonical order."""
        for s in self.seasons:
            for h in range(1, s.hours + 1):
                yield s.name, h

    def hour_slices(self) -> Iterator[HourIndex]:
        for p in self.periods:
            for w in self.scenarios:
                for s, h in self.season_hours():
                    yield HourIndex(p.index, s, h, w.name)

    @property
    def n_hours(self) -> int:
        return sum(s.hours for s in self.seasons)

    @property
    def n_hour_slices(self) -> int:
        return len(self.periods) * len(self.scenarios) * self.n_hours

    def first_hours(self) -> list[HourIndex]:
        return [HourIndex(p.index, s.name, 1, w.name)
                for p in self.periods for w in self.scenarios for s in self.seasons]

    def last_hours(self) -> list[HourIndex]:
        return [HourIndex(p.index, s.name, s.hours, w.name)
                for p in self.periods for w in self.scenarios for s in self.seasons]

    def contains(self, h: HourIndex) -> bool:
        if h.period not in self.period_indices or h.scenario not in self.scenario_names:
            return False
        hours = self.hours_per_season.get(h.season)
        return hours is not None and 1 <= h.hour <= hours


def _check_probabilities(scenarios: Sequence[tuple[str, float]]) -> tuple[Scenario, ...]:
    if not scenarios:
        raise EmptyDimension("at least one scenario is required")
    for name, p in scenarios:
        if not p > 0:
            raise NonPositiveProbability(f"scenario {name!r} has probability {p}")
    total = math.fsum(p for _, p in scenarios)
    if abs(total - 1.0) > PROBABILITY_TOL:
        raise ProbabilitySumMismatch(f"scenario probabilities sum to {total!r}, not 1")
    return tuple(Scenario(name, p / total) for name, p in scenarios)


def _resolve_seasons(seasons: Sequence[SeasonConfig], annual_hours: float) -> tuple[Season, ...]:
    if not seasons:
        raise EmptyDimension("at least one season is required")
    names = [s.name for s in seasons]
    if len(set(names)) != len(names):
        raise EmptyDimension(f"duplicate season names in {names}")
    for s in seasons:
        if s.hours < 1:
            raise EmptyDimension(f"season {s.name!r} has no hours")
        if s.kind not in ("regular", "peak"):
            raise SeasonWeightMismatch(f"season {s.name!r} has unknown kind {s.kind!r}")
        if s.alpha is not None and not s.alpha > 0:
            raise SeasonWeightMismatch(f"season {s.name!r} has non-positive scale {s.alpha}")

    regular = [s for s in seasons if s.kind == "regular"]
    given = [s for s in regular if s.alpha is not None]
    if regular and not given:
        # spread one representative year evenly over the sampled regular hours
        alpha = annual_hours / sum(s.hours for s in regular)
        fill = {s.name: alpha for s in regular}
    elif regular and len(given) != len(regular):
        raise SeasonWeightMismatch("either all or none of the regular seasons must set a scale")
    else:
        fill = {}
        total = math.fsum(s.alpha * s.hours for s in regular)
        if regular and abs(total - annual_hours) > SEASON_WEIGHT_TOL:
            raise SeasonWeightMismatch(
                f"regular seasons weigh {total} hours, expected {annual_hours}")

    out = []
    for s in seasons:
        if s.alpha is not None:
            alpha = s.alpha
        elif s.kind == "peak":
            alpha = 1.0
        else:
            alpha = fill[s.name]
        out.append(Season(s.name, s.kind, s.hours, float(alpha)))
    return tuple(out)


def discount_factors(rate: float, ts: TimeStructure | int, period_length: int | None = None) -> list[float]:
    """Present-value weight of each strategic period.

    ``factor_i = (1 + rate) ** (-period_length * (i - 1))``; accepts either a
    :class:`TimeStructure` or a bare period count plus ``period_length``.
    """
    if rate < 0:
        raise NegativeRate(f"discount rate {rate} < 0")
    if isinstance(ts, TimeStructure):
        n, length = len(ts.periods), ts.period_length_years
    else:
        n, length = int(ts), int(period_length if period_length is not None else 5)
    return [(1.0 + rate) ** (-length * i) for i in range(n)]


def build_time_structure(config: TimeConfig | None = None) -> TimeStructure:
    """Validate a :class:`TimeConfig` and expand it into a :class:`TimeStructure`."""
    config = config or TimeConfig()
    if config.n_periods < 1:
        raise EmptyDimension("at least one strategic period is required")
    if config.period_length < 1:
        raise EmptyDimension("period length must be at least one year")
    scenarios = _check_probabilities(config.scenarios)
    if len({w.name for w in scenarios}) != len(scenarios):
        raise EmptyDimension("duplicate scenario names")
    seasons = _resolve_seasons(config.seasons, config.annual_hours)
    factors = discount_factors(config.discount_rate, config.n_periods, config.period_length)
    periods = tuple(
        StrategicPeriod(i + 1, config.start_year + i * config.period_length, factors[i])
        for i in range(config.n_periods))
    return TimeStructure(periods, seasons, scenarios, config.period_length,
                         float(config.annual_hours), config.discount_rate)


def annualization_weight(h: HourIndex, ts: TimeStructure) -> float:
    """Scale factor turning one sampled hour into its share of a year."""
    if not ts.contains(h):
        raise UnknownHour(f"{h} is not part of the time structure")
    return ts.season(h.season).alpha

"""
Strategic periods, seasons and representative hours
===================================================

A multi-horizon model separates *strategic* decisions (what to build in each
five-year period) from *operational* decisions (how to run the system in a
handful of representative hours).  This script builds the default time
structure and shows how representative hours are weighted up to a year.
"""

from mhorizon.timescale import (
    HourIndex,
    SeasonConfig,
    TimeConfig,
    annualization_weight,
    build_time_structure,
    discount_factors,
)

# The default layout: eight five-year periods from 2020, three scenarios,
# four regular 168-hour seasons and two 24-hour peak seasons.
ts = build_time_structure(TimeConfig())
print("periods:", [p.start_year for p in ts.periods])
print("hour slices in the operational tree:", ts.n_hour_slices)

# Regular seasons are scaled so that together they represent a full year;
# peak seasons keep weight one (they model a few extreme days, not a season).
for season in ts.seasons:
    print(f"  {season.name:<7} hours={season.hours:<4} alpha={season.alpha:.4f}")

# Explicit weights must add up to the stated number of annual hours.
quarterly = TimeConfig(
    seasons=tuple(SeasonConfig(s, "regular", 168, 13.0) for s in ("winter", "spring", "summer", "fall"))
    + (SeasonConfig("peak1", "peak", 24, 1.0), SeasonConfig("peak2", "peak", 24, 1.0)),
    annual_hours=8736.0,
)
q = build_time_structure(quarterly)
print("weight of a winter hour:", annualization_weight(HourIndex(1, "winter", 12, "scen1"), q))

# Costs incurred in later periods are discounted to the first period.
for year, factor in zip([p.start_year for p in ts.periods], discount_factors(0.05, ts)):
    print(f"  {year}: {factor:.5f}")

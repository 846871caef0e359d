from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhorizon.catalog import (
    ArcSpec,
    AssetSpec,
    Commodity,
    GasSupplySpec,
    ProcessRoute,
    SequestrationSiteSpec,
    Topology,
    capture_split,
    heatpump_output,
    process_emissions,
    total_emission_factor,
    validate_catalog,
)
from mhorizon.errors import (
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

COMMODITIES = {
    "power": Commodity("power"),
    "gas": Commodity("gas", emission_factor=0.2),
    "hydrogen": Commodity("hydrogen", unit="t"),
    "co2": Commodity("co2", unit="t"),
    "steel": Commodity("steel", "annual", unit="t"),
    "cement": Commodity("cement", "annual", unit="t"),
}
TOPO = Topology(("A", "B"), COMMODITIES)

ELECTROLYZER = AssetSpec("electrolyzer", "converter", conversion=(("hydrogen", 1.0), ("power", -52.0)),
                         sector="hydrogen")
BF_BOF_CCS = ProcessRoute("bf-bof-ccs", conversion=(("steel", 1.0),), emission_factor=1.9,
                          capture_rate=0.6)
KILN_H2 = ProcessRoute("kiln-h2", sector="cement", conversion=(("cement", 1.0), ("hydrogen", -0.027)),
                       process_emission_factor=0.78)
KILN_GAS = ProcessRoute("kiln-gas", sector="cement", conversion=(("cement", 1.0), ("gas", -0.9)),
                        process_emission_factor=0.78)


def test_source_and_sink_registries():
    cat = validate_catalog([ELECTROLYZER, BF_BOF_CCS], TOPO)
    assert "electrolyzer" in cat.sinks["power"]
    assert "electrolyzer" in cat.sources["hydrogen"]
    # captured stream of the 60 % capture steel route is a CO2 source
    assert "bf-bof-ccs" in cat.sources["co2"]
    assert "bf-bof-ccs" in cat.sources["steel"]


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateAssetId):
        validate_catalog([ELECTROLYZER, ELECTROLYZER], TOPO)
    arc = ArcSpec("electrolyzer", "power", "A", "B")
    with pytest.raises(DuplicateAssetId):
        validate_catalog([ELECTROLYZER], TOPO, arcs=[arc])


def test_reference_errors():
    with pytest.raises(UnknownCommodity):
        validate_catalog([AssetSpec("x", "generator", conversion=(("power", 1), ("coal", -1)))], TOPO)
    inert = Topology(("A",), {**COMMODITIES, "slag": Commodity("slag", "none")})
    with pytest.raises(DanglingConversion):
        validate_catalog([AssetSpec("x", "generator", conversion=(("power", 1), ("slag", -1)))], inert)
    with pytest.raises(UnknownCommodity):
        validate_catalog([], TOPO, arcs=[ArcSpec("a", "ammonia", "A", "B")])
    with pytest.raises(UnknownNode):
        validate_catalog([], TOPO, arcs=[ArcSpec("a", "power", "A", "Z")])
    with pytest.raises(UnknownNode):
        validate_catalog([], TOPO, supplies=[GasSupplySpec("g", "Z", "LNG-terminal", 1.0)])
    with pytest.raises(UnknownNode):
        validate_catalog([], TOPO, sites=[SequestrationSiteSpec("Z", 1e9)])


def test_asset_invariants():
    with pytest.raises(InvalidAsset):  # two primary outputs
        validate_catalog([AssetSpec("chp", "generator", conversion=(("power", 1), ("hydrogen", 1)))], TOPO)
    with pytest.raises(InvalidAsset):
        validate_catalog([AssetSpec("g", "generator", lifetime_periods=0, conversion=(("power", 1),))], TOPO)
    with pytest.raises(RateOutOfRange):
        validate_catalog([AssetSpec("g", "generator", capture_rate=1.2, conversion=(("power", 1),))], TOPO)
    with pytest.raises((InvalidAsset, RateOutOfRange)):
        validate_catalog([AssetSpec("b", "storage", commodity="power", eff_charge=0.0)], TOPO)
    with pytest.raises(InvalidAsset):
        validate_catalog([AssetSpec("bad id", "generator", conversion=(("power", 1),))], TOPO)


def test_capture_split_examples():
    assert capture_split(100.0, 0.6) == (60.0, 40.0)
    assert capture_split(100.0, 0.0) == (0.0, 100.0)
    assert capture_split(0.0, 0.9) == (0.0, 0.0)
    captured, atmospheric = capture_split(0.4, 0.9)
    assert math.isclose(atmospheric, 0.4 * (1 - 0.9), rel_tol=1e-12)
    with pytest.raises(NegativeEmission):
        capture_split(-1.0, 0.5)
    with pytest.raises(RateOutOfRange):
        capture_split(1.0, 1.5)


@settings(max_examples=1000)
@given(st.floats(0.0, 1e12, allow_nan=False), st.floats(0.0, 1.0))
def test_capture_split_conserves_mass_exactly(emitted, rate):
    captured, atmospheric = capture_split(emitted, rate)
    assert captured + atmospheric == emitted
    assert captured >= 0.0 and atmospheric >= 0.0


def test_process_emissions():
    fuel, process = process_emissions(KILN_H2, 1e6, COMMODITIES)
    assert (fuel, process) == (0.0, 0.78e6)
    assert process_emissions(KILN_H2, 0.0, COMMODITIES) == (0.0, 0.0)
    fuel, process = process_emissions(KILN_GAS, 1e6, COMMODITIES)
    f, g = COMMODITIES["gas"].emission_factor, -KILN_GAS.coefficient("gas")
    assert math.isclose(fuel, f * g * 1e6, rel_tol=1e-15)
    assert process == 0.78e6
    assert math.isclose(total_emission_factor(KILN_GAS, COMMODITIES), 0.2 * 0.9 + 0.78, rel_tol=1e-15)
    with pytest.raises(NegativeOutput):
        process_emissions(KILN_H2, -1.0)


def test_heatpump_output():
    assert heatpump_output(1.0, 1.83) == 1.83
    assert heatpump_output(1.0, 3.33) == 3.33
    assert heatpump_output(0.0, 2.5) == 0.0
    with pytest.raises(NonPositiveCOP):
        heatpump_output(1.0, 0.0)

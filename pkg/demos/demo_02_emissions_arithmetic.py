"""
Emission accounting for capture routes and process emissions
============================================================

Fossil assets emit CO2 from the fuel they burn; cement kilns additionally
release CO2 from calcination regardless of fuel.  Capture splits the
generated stream into a captured part, which must be transported and
stored, and an atmospheric part, which counts against the carbon cap.
"""

from mhorizon.catalog import (
    AssetSpec,
    Commodity,
    ProcessRoute,
    Topology,
    capture_split,
    heatpump_output,
    process_emissions,
    total_emission_factor,
    validate_catalog,
)

commodities = {
    "power": Commodity("power"),
    "gas": Commodity("gas", emission_factor=0.2),  # tCO2 per MWh of gas burnt
    "hydrogen": Commodity("hydrogen", unit="t"),
    "co2": Commodity("co2", unit="t"),
    "steel": Commodity("steel", "annual", unit="t"),
    "cement": Commodity("cement", "annual", unit="t"),
}

# A blast furnace with 60 % capture and two cement kilns.
bof = ProcessRoute("bf-bof-ccs", conversion=(("steel", 1.0),), emission_factor=1.9, capture_rate=0.6)
kiln_gas = ProcessRoute("kiln-gas", sector="cement", conversion=(("cement", 1.0), ("gas", -0.9)),
                        process_emission_factor=0.78)
kiln_h2 = ProcessRoute("kiln-h2", sector="cement", conversion=(("cement", 1.0), ("hydrogen", -0.03)),
                       process_emission_factor=0.78)
electrolyzer = AssetSpec("electrolyzer", "converter", sector="hydrogen",
                         conversion=(("hydrogen", 1.0), ("power", -52.0)))

catalog = validate_catalog([bof, kiln_gas, kiln_h2, electrolyzer], Topology(("DE",), commodities))
print("CO2 sources:", catalog.sources["co2"])
print("power sinks:", catalog.sinks["power"])

# One million tonnes of steel through the capture route.
emitted = 1.9e6
captured, atmospheric = capture_split(emitted, bof.capture_rate)
print(f"steel: captured {captured:.4g} t, atmospheric {atmospheric:.4g} t")
assert captured + atmospheric == emitted

# Switching the kiln fuel to hydrogen removes the fuel emissions only.
for kiln in (kiln_gas, kiln_h2):
    fuel, process = process_emissions(kiln, 1e6, commodities)
    print(f"{kiln.id}: fuel {fuel:.4g} t, process {process:.4g} t, "
          f"factor {total_emission_factor(kiln, commodities):.3f} t/t")

# Heat pumps convert one unit of electricity into COP units of heat.
for cop in (1.83, 3.33):
    print(f"COP {cop}: 1 MWh electricity -> {heatpump_output(1.0, cop)} MWh heat")

"""Writes data/synthetic_panel.csv: a deterministic 5-country panel for
1990-2020 exercising every deduction source.

  USA          RDM from delta x GNI, EPCL/EPDL from the default bridges
  CHN          RDM, EPCL, EPDL from secondary-indicator rollups
  IND/ESP/DEU  RDM from delta x GNI, measured EPCL and EPDL

Values are invented; they only need plausible shapes and magnitudes.
"""
import csv
import math
import pathlib
import random

YEARS = range(1990, 2021)
BN = "current US$ billions"

rng = random.Random(2023)


def path(start, growth, wobble):
    out, v = [], start
    for _ in YEARS:
        out.append(v)
        v *= 1 + growth + rng.uniform(-wobble, wobble)
    return out


def rows_for(country, indicator, unit, values, digits):
    return [(country, indicator, unit, y, f"{v:.{digits}f}") for y, v in zip(YEARS, values)]


profiles = {
    "CHN": dict(gdp=(3600.0, 0.085), delta=(4.2, -0.01), cpi=(45.0, 0.035), co2=(2400.0, 0.055), temp=8.9),
    "USA": dict(gdp=(5963.1, 0.042), delta=(0.9, 0.005), cpi=(60.0, 0.024), co2=(5100.0, 0.002), temp=11.6),
    "IND": dict(gdp=(2900.0, 0.07), delta=(3.1, -0.005), cpi=(25.0, 0.065), co2=(600.0, 0.05), temp=24.1),
    "ESP": dict(gdp=(2520.0, 0.03), delta=(0.2, 0.0), cpi=(55.0, 0.025), co2=(230.0, 0.004), temp=14.2),
    "DEU": dict(gdp=(2770.0, 0.028), delta=(0.3, -0.01), cpi=(65.0, 0.017), co2=(1050.0, -0.01), temp=9.3),
}

CHN_RDM = ["cultivated_land_depletion", "energy_consumption_reduction", "water_consumption_reduction",
           "freshwater_fishing_depletion", "live_wood_accumulation", "additional_forest_land_value"]
CHN_RDM_SHARE = [0.004, 0.018, 0.003, 0.001, 0.002, 0.002]
CHN_EPCL = ["actual_governance", "virtual_governance"]
CHN_EPCL_SHARE = [0.006, 0.003]
CHN_EPDL = ["accelerated_depreciation", "human_health_loss", "natural_disaster_loss"]
CHN_EPDL_SHARE = [0.003, 0.009, 0.002]

rows = []
for country, p in profiles.items():
    gdp = path(p["gdp"][0], p["gdp"][1], 0.02)
    gni = [g * (0.985 + rng.uniform(-0.005, 0.005)) for g in gdp]
    delta = path(p["delta"][0], p["delta"][1], 0.04)
    cpi = path(p["cpi"][0], p["cpi"][1], 0.01)
    co2 = path(p["co2"][0], p["co2"][1], 0.02)
    temp = [p["temp"] + 0.02 * k + 0.15 * math.sin(k * 1.3) + rng.uniform(-0.05, 0.05)
            for k, _ in enumerate(YEARS)]

    rows += rows_for(country, "GDP", BN, gdp, 1)
    rows += rows_for(country, "GNI", BN, gni, 1)
    rows += rows_for(country, "NRD_PCT_GNI", "percent of GNI", delta, 3)
    rows += rows_for(country, "CPI", "index 2010=100", cpi, 2)
    rows += rows_for(country, "CO2_EMISSIONS", "Mt CO2", co2, 1)
    rows += rows_for(country, "SURFACE_TEMP", "degrees C", temp, 3)

    if country == "CHN":
        for names, shares, cat in ((CHN_RDM, CHN_RDM_SHARE, "RDM"), (CHN_EPCL, CHN_EPCL_SHARE, "EPCL"),
                                   (CHN_EPDL, CHN_EPDL_SHARE, "EPDL")):
            for name, share in zip(names, shares):
                vals = [g * share * (1 + rng.uniform(-0.15, 0.15)) for g in gdp]
                rows += rows_for(country, f"{cat}.{name}", BN, vals, 3)
    elif country != "USA":
        epcl = [g * 0.012 * (1 + rng.uniform(-0.1, 0.1)) for g in gdp]
        epdl = [g * 0.018 * (1 + rng.uniform(-0.1, 0.1)) for g in gdp]
        rows += rows_for(country, "EPCL", BN, epcl, 2)
        rows += rows_for(country, "EPDL", BN, epdl, 2)

out = pathlib.Path(__file__).resolve().parent.parent / "data" / "synthetic_panel.csv"
with out.open("w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["country", "indicator", "unit", "year", "value"])
    w.writerows(rows)
print(f"wrote {len(rows)} rows to {out}")

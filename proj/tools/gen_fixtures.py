#!/usr/bin/env python3
"""Regenerates the bundled example dataset under data/.

Everything here is synthetic but shaped like the real inputs: plausible value
ranges, the documented CSV schemas, and full coverage of all 254 countries so
the resolution cascade succeeds out of the box.  The generator is
deterministic; rerunning it reproduces the files byte for byte.
"""

import json
import math
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")
FIX = os.path.join(DATA, "fixtures")

# ---------------------------------------------------------------- countries

def read_countries():
    rows = []
    with open(os.path.join(DATA, "countries.csv"), encoding="utf-8") as f:
        header = f.readline().strip().split(",")
        assert header == ["iso3", "alpha2", "name"]
        for line in f:
            iso3 = line.strip().split(",")[0]
            if iso3:
                rows.append(iso3)
    return sorted(rows)

# ------------------------------------------------------------------ regions

REGION_OF = {}

def bucket(region, codes):
    for c in codes.split():
        assert c not in REGION_OF, c
        REGION_OF[c] = region

bucket("Africa", """AGO ATF BDI BEN BFA BWA CAF CIV CMR COD COG COM CPV DJI DZA
    EGY ERI ESH ETH GAB GHA GIN GMB GNB GNQ KEN LBR LBY LSO MAR MDG MLI MOZ
    MRT MUS MWI MYT NAM NER NGA REU RWA SDN SEN SHN SLE SOM SSD STP SWZ SYC
    TCD TGO TUN TZA UGA XSO ZAF ZMB ZWE""")
bucket("Asia Pacific", """AFG ASM AUS BGD BRN BTN CCK COK CXR FJI FSM GUM HMD
    IDN IOT KHM KIR KOR LAO LKA MDV MHL MMR MNG MNP MYS NCL NFK NIU NPL NRU
    NZL PAK PCN PGA PHL PLW PNG PRK PYF SGP SLB THA TKL TLS TON TUV TWN UMI
    VNM VUT WLF WSM""")
bucket("Central and South America", """ABW AIA ARG ATG BES BHS BLM BLZ BOL BRA
    BRB CHL COL CPT CRI CUB CUW CYM DMA DOM ECU FLK GLP GRD GTM GUF GUY HND
    HTI JAM KNA LCA MAF MSR MTQ NIC PAN PER PRI PRY SGS SLV SUR SXM TCA TTO
    URY VCT VEN VGB VIR""")
bucket("Eurasia", "ARM AZE BLR GEO KAZ KGZ RUS TJK TKM UKR UZB")
bucket("Europe", """ALA ALB AND AUT BEL BGR BIH BVT CHE CYP CZE DEU DNK ESP EST
    FIN FRA FRO GBR GGY GIB GRC HRV HUN IMN IRL ISL ITA JEY LIE LTU LUX LVA
    MCO MDA MKD MLT MNE NLD NOR POL PRT ROU SJM SMR SRB SVK SVN SWE TUR VAT
    XAD XKX XNC""")
bucket("Middle East", "ARE BHR IRN IRQ ISR JOR KWT LBN OMN PSE QAT SAU SYR YEM")
bucket("North America", "BMU CAN GRL MEX SPM USA")
bucket("China", "CHN HKG MAC")
bucket("India", "IND")
bucket("Japan", "JPN")

# ------------------------------------------------------------ source splits

WIKI = set("""ALA AND ASM BES BLM BMU BRN CUW CYM DMA FRO FSM GLP GRD GRL GUF
    GUM IMN JEY KIR KNA LIE MAF MCO MHL MNP MTQ MYT NCL NRU PLW PYF REU SMR
    SXM TCA TUV VGB VIR XKX""".split())
CRED = set("""AFG BDI BTN CAF COM CPV DJI ERI GNB HTI LAO LBR LSO MDV MMR SLB
    SSD STP SWZ SYC TCD TKM TLS VUT YEM""".split())
# Territories with no published economic rating at all: resolved through the
# overrides file by copying a nearby country's records.
ECON_DONOR = {
    "AIA": "GBR", "ATF": "FRA", "BVT": "NOR", "CCK": "AUS", "COK": "NZL",
    "CPT": "FRA", "CXR": "AUS", "FLK": "GBR", "GGY": "GBR", "GIB": "GBR",
    "HMD": "AUS", "IOT": "GBR", "MSR": "GBR", "NFK": "AUS", "NIU": "NZL",
    "PCN": "GBR", "PGA": "VNM", "SGS": "GBR", "SHN": "GBR", "SJM": "NOR",
    "SPM": "FRA", "TKL": "NZL", "UMI": "USA", "VAT": "ITA", "WLF": "FRA",
    "XAD": "CYP", "XNC": "CYP", "XSO": "SOM",
}
# Countries rated economically but absent from the hazard report; the
# overrides file names the neighbour whose hazard score they inherit.
HAZARD_DONOR = {
    "ALA": "FIN", "AND": "ESP", "ASM": "WSM", "BES": "NLD", "BLM": "FRA",
    "BMU": "USA", "BRN": "MYS", "CUW": "NLD", "CYM": "JAM", "DMA": "LCA",
    "FRO": "DNK", "FSM": "FJI", "GLP": "FRA", "GRD": "LCA", "GRL": "DNK",
    "GUF": "FRA", "GUM": "JPN", "IMN": "GBR", "JEY": "GBR", "KNA": "ATG",
    "LIE": "CHE", "MAF": "FRA", "MCO": "FRA", "MHL": "FJI", "MNP": "JPN",
    "MTQ": "FRA", "MYT": "FRA", "NCL": "AUS", "NRU": "AUS", "PLW": "JPN",
    "PYF": "FRA", "REU": "FRA", "SMR": "ITA", "SXM": "NLD",
}
LITERAL_OVERRIDE = {"PRK": 0.28}  # no rating source covers it; worst notch

GRADE_TABLE = [
    ("Aaa", 0.0046), ("Aa1", 0.0057), ("Aa2", 0.0069), ("Aa3", 0.0080),
    ("A1", 0.0092), ("A2", 0.0110), ("A3", 0.0126), ("Baa1", 0.0155),
    ("Baa2", 0.0184), ("Baa3", 0.0211), ("Ba1", 0.0259), ("Ba2", 0.0311),
    ("Ba3", 0.0374), ("B1", 0.0466), ("B2", 0.0570), ("B3", 0.0673),
    ("Caa1", 0.0776), ("Caa2", 0.0932), ("Caa3", 0.1030), ("Ca", 0.1553),
    ("C", 0.2800),
]

# Hand-pinned economic anchors (flat base rate); everything else is hashed.
PINNED_BASE = {
    "PHL": 0.072, "QAT": 0.033, "SAU": 0.046, "KGZ": 0.220, "SOM": 0.250,
    "BLR": 0.280, "VEN": 0.280, "LBN": 0.280, "JPN": 0.012, "DEU": 0.0046,
    "CHE": 0.0046, "USA": 0.0057, "CHL": 0.028, "IND": 0.055, "AUS": 0.0069,
    "GBR": 0.011, "FRA": 0.0092, "NOR": 0.0046, "NZL": 0.0069, "ITA": 0.026,
    "CYP": 0.031, "ESP": 0.018, "DNK": 0.0046, "FIN": 0.0057, "NLD": 0.0046,
    "MYS": 0.024, "JAM": 0.085, "LCA": 0.062, "ATG": 0.070, "WSM": 0.095,
    "FJI": 0.078, "SOM": 0.250, "TUR": 0.120, "ARG": 0.165, "CUB": 0.240,
    "SYR": 0.270, "SDN": 0.260, "UKR": 0.190, "RUS": 0.110, "CHN": 0.019,
    "IDN": 0.165, "BGD": 0.165, "VNM": 0.165,
}
# Argentina's published series is pinned exactly so tests can quote it.
ARG_SERIES = {
    2015: 0.155, 2016: 0.148, 2017: 0.132, 2018: 0.151, 2019: 0.172,
    2020: 0.181, 2021: 0.169, 2022: 0.175, 2023: 0.162, 2024: 0.158,
}

WRI_PINNED = {
    "PHL": 46.86, "SOM": 38.0, "KGZ": 8.0, "QAT": 2.2, "SAU": 6.5,
    "JPN": 20.5, "DEU": 12.0, "USA": 18.2, "IND": 32.0, "IDN": 39.1,
    "BGD": 36.5, "VNM": 35.8, "LBN": 21.0, "BLR": 11.0, "VEN": 28.0,
}


def unit_hash(code, salt):
    """Deterministic pseudo-uniform in [0, 1) from a country code."""
    h = 1469598103934665603
    for ch in f"{salt}:{code}":
        h = ((h ^ ord(ch)) * 1099511628211) % (1 << 64)
    return (h >> 11) / float(1 << 53)


def annuity(i, n):
    return 1.0 / n if i == 0 else i / (1.0 - (1.0 + i) ** -n)


# Each technology's annual cost is capex * (annuity + opex fraction), so the
# cost ratio between two discount rates is bracketed per country by the
# per-lifetime annuity ratios.  Lifetimes and opex bands mirror the cost
# tables below: electrolysis (10y, 3%), wind/pv (20y, 2.5-3.7%), storage
# (30y, 2%).
RATIO_CLASSES = [(10, 0.03, 0.03), (20, 0.025, 0.037), (30, 0.02, 0.02)]


def ratio_max(i_low, i_high):
    return max((annuity(i_high, n) + lo) / (annuity(i_low, n) + lo)
               for n, lo, _ in RATIO_CLASSES)


def ratio_min(i_low, i_high):
    return min((annuity(i_high, n) + hi) / (annuity(i_low, n) + hi)
               for n, _, hi in RATIO_CLASSES)


def base_rate(iso3):
    if iso3 in PINNED_BASE:
        return PINNED_BASE[iso3]
    u = unit_hash(iso3, "econ")
    return round(0.0046 + 0.24 * u * u, 4)  # skewed toward the low end


def wri_score(iso3, base):
    if iso3 in WRI_PINNED:
        return WRI_PINNED[iso3]
    u = unit_hash(iso3, "wri")
    # Moderate-risk countries span the full sub-maximum band; the safest
    # economies also score low on hazard exposure.
    hi = 40.0 if base >= 0.10 else 22.0
    return round(3.0 + (hi - 3.0) * u, 2)


def fmt(x, nd=6):
    return f"{x:.{nd}f}"


def write_csv(path, header, rows):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(str(v) for v in row) + "\n")
    print(f"wrote {os.path.relpath(path, DATA)} ({len(rows)} rows)")


def main():
    countries = read_countries()
    assert len(countries) == 254, len(countries)
    missing = [c for c in countries if c not in REGION_OF]
    assert not missing, missing
    extra = [c for c in REGION_OF if c not in countries]
    assert not extra, extra

    econ_sourced = set(countries) - set(ECON_DONOR) - set(LITERAL_OVERRIDE)
    dam = sorted(econ_sourced - WIKI - CRED)
    assert WIKI < econ_sourced and CRED < econ_sourced
    wri_absent = set(ECON_DONOR) | set(HAZARD_DONOR)
    wri_present = sorted(set(countries) - wri_absent)
    assert len(wri_present) == 192, len(wri_present)
    for donor in list(ECON_DONOR.values()) + list(HAZARD_DONOR.values()):
        assert donor in dam and donor in wri_present, donor

    # grade_table.csv -------------------------------------------------------
    write_csv(os.path.join(DATA, "grade_table.csv"), ["grade", "rate"],
              [(g, fmt(r, 4)) for g, r in GRADE_TABLE])

    # regions.csv: two published rows for Europe, averaged by the loader ----
    regions = [
        ("Africa", 1630, 510, 0.026, 0.037),
        ("Asia Pacific", 1728, 479, 0.026, 0.032),
        ("Central and South America", 910, 312, 0.026, 0.033),
        ("China", 999, 291, 0.025, 0.036),
        ("Eurasia", 1426, 635, 0.026, 0.036),
        ("Europe", 1600, 426, 0.025, 0.028),
        ("Europe", 1628, 428, 0.027, 0.030),
        ("India", 999, 250, 0.027, 0.033),
        ("Japan", 3185, 895, 0.026, 0.026),
        ("Middle East", 1666, 229, 0.026, 0.036),
        ("North America", 1114, 458, 0.028, 0.036),
    ]
    write_csv(os.path.join(DATA, "regions.csv"),
              ["region", "wind_capex", "pv_capex", "wind_opex", "pv_opex"],
              [(r, fmt(wc, 2), fmt(pc, 2), fmt(wo, 4), fmt(po, 4))
               for r, wc, pc, wo, po in regions])

    write_csv(os.path.join(DATA, "country_regions.csv"), ["iso3", "region"],
              [(c, REGION_OF[c]) for c in countries])

    # technologies.csv ------------------------------------------------------
    techs = [
        ("wind", "", "", "", "20", "", "", ""),
        ("pv", "", "", "", "20", "", "", ""),
        ("electrolysis", "", "470", "0.03", "10", "0.7", "", ""),
        ("electrolysis", "CHN", "330", "0.03", "10", "0.7", "", ""),
        ("storage", "", "20", "0.02", "30", "", "0.98", "0.998"),
    ]
    write_csv(os.path.join(DATA, "technologies.csv"),
              ["tech", "iso3", "capex", "opex_frac", "lifetime", "efficiency",
               "charge_eff", "discharge_eff"], techs)

    # inflation.csv ---------------------------------------------------------
    inflation = [(2015, 0.001), (2016, 0.013), (2017, 0.021), (2018, 0.024),
                 (2019, 0.018), (2020, 0.012), (2021, 0.047), (2022, 0.080),
                 (2023, 0.041), (2024, 0.029)]
    write_csv(os.path.join(DATA, "inflation.csv"), ["year", "rate"],
              [(y, fmt(r, 4)) for y, r in inflation])

    # damodaran.csv: most countries carry the full 2015-2024 history --------
    short_history = set(dam[::9])  # a spread of countries with only 2020+

    def spread_series(seed):
        rng = random.Random(seed)
        series = {}
        for iso3 in dam:
            if iso3 == "ARG":
                series[iso3] = dict(ARG_SERIES)
                continue
            base = base_rate(iso3)
            years = range(2020, 2025) if iso3 in short_history else range(2015, 2025)
            flat = iso3 in ("BLR", "VEN", "LBN")  # pinned at the scale maximum
            amp = 0.0 if flat else min(0.06, 0.8 * base)
            if iso3 == "PHL":
                amp = 0.005  # steady spread: the hazard-vs-economy showcase
            series[iso3] = {
                y: round(min(max(base + rng.uniform(-amp, amp), 0.0046), 0.28), 4)
                for y in years
            }
        return series

    def averaging_narrows(series):
        # The decade averages must spread less across countries than every
        # single year does; generated with margin so the data documents the
        # tendency rather than squeaking past it.
        full = [v for v in series.values()
                if all(y in v for y in range(2015, 2025))]

        def variance(xs):
            m = sum(xs) / len(xs)
            return sum((x - m) ** 2 for x in xs) / (len(xs) - 1)

        var_mean = variance([sum(v.values()) / len(v) for v in full])
        return all(var_mean <= 0.95 * variance([v[y] for v in full])
                   for y in range(2015, 2025))

    seed = 20230816
    while not averaging_narrows(spread_series(seed)):
        seed += 1
    dam_series = spread_series(seed)
    dam_rows = [(iso3, y, fmt(dam_series[iso3][y], 4))
                for iso3 in dam for y in sorted(dam_series[iso3])]
    write_csv(os.path.join(FIX, "damodaran.csv"), ["iso3", "year", "rate"],
              dam_rows)
    print(f"  spread noise seed {seed}")

    # wikirating.csv: single-vintage letter grades --------------------------
    wiki_rows = []
    for iso3 in sorted(WIKI):
        base = base_rate(iso3)
        idx = min(range(len(GRADE_TABLE)),
                  key=lambda k: abs(GRADE_TABLE[k][1] - base))
        wiki_rows.append((iso3, GRADE_TABLE[idx][0]))
    write_csv(os.path.join(FIX, "wikirating.csv"), ["iso3", "grade"], wiki_rows)

    # credendo.csv: single-vintage 1..7 scores ------------------------------
    cred_rows = []
    for iso3 in sorted(CRED):
        score = 1 + int(unit_hash(iso3, "credendo") * 7)
        cred_rows.append((iso3, min(score, 7)))
    write_csv(os.path.join(FIX, "credendo.csv"), ["iso3", "score"], cred_rows)

    # wri.csv ----------------------------------------------------------------
    # The showcase property of the dataset: the PHL hazard/economy contrast
    # dominates every other country's, so a hazard-aware discounting scheme
    # moves PHL's cost more than anyone's.  The cost ratio between two rates
    # lies between the per-lifetime annuity ratios, so it is enough to keep
    # every other country's best-case ratio 5% under PHL's worst-case one.
    # Every country's effective economic average and hazard score (donor
    # copies included) is checked; scores are clamped down where needed.
    grade_rate = dict(GRADE_TABLE)
    realized = {iso3: sum(v.values()) / len(v) for iso3, v in dam_series.items()}
    for iso3, grade in wiki_rows:
        realized[iso3] = grade_rate[grade]
    for iso3, score in cred_rows:
        realized[iso3] = GRADE_TABLE[int((score - 1) * 20 / 6 + 0.5)][1]
    for iso3, rate in LITERAL_OVERRIDE.items():
        realized[iso3] = rate
    for iso3, donor in ECON_DONOR.items():
        realized[iso3] = realized[donor]
    assert set(realized) == set(countries)

    max_econ = max(realized.values())
    top_wri = WRI_PINNED["PHL"]
    assert "PHL" not in set(ECON_DONOR.values()) | set(HAZARD_DONOR.values())
    phl_bar = ratio_min(realized["PHL"], max_econ) / 1.05

    def max_wri_for(econ_avg):
        lo, hi = 0.0, top_wri
        for _ in range(48):
            mid = (lo + hi) / 2.0
            if ratio_max(econ_avg, mid / top_wri * max_econ) <= phl_bar:
                lo = mid
            else:
                hi = mid
        return math.floor(lo * 100) / 100.0

    recipients = {}
    for r, donor in list(HAZARD_DONOR.items()) + list(ECON_DONOR.items()):
        recipients.setdefault(donor, []).append(r)

    wri_val = {}
    for iso3 in wri_present:
        raw = wri_score(iso3, base_rate(iso3))
        if iso3 == "PHL":
            wri_val[iso3] = raw
            continue
        bound = min(max_wri_for(realized[r])
                    for r in [iso3] + recipients.get(iso3, []))
        wri_val[iso3] = min(raw, bound)

    for iso3 in countries:
        if iso3 == "PHL":
            continue
        if iso3 in wri_val:
            score = wri_val[iso3]
        else:
            score = wri_val[HAZARD_DONOR.get(iso3) or ECON_DONOR[iso3]]
        assert score < top_wri
        assert ratio_max(realized[iso3], score / top_wri * max_econ) <= phl_bar, iso3

    wri_rows = [(iso3, 2023, fmt(wri_val[iso3], 2)) for iso3 in wri_present]
    write_csv(os.path.join(FIX, "wri.csv"), ["iso3", "year", "score"], wri_rows)

    # overrides.csv ----------------------------------------------------------
    ov = {}
    ov.update(ECON_DONOR)
    ov.update(HAZARD_DONOR)
    ov.update({k: fmt(v, 4) for k, v in LITERAL_OVERRIDE.items()})
    write_csv(os.path.join(FIX, "overrides.csv"),
              ["iso3", "donor_iso3_or_rate"],
              [(k, ov[k]) for k in sorted(ov)])

    # potentials.csv ---------------------------------------------------------
    pot_rows = []
    for iso3 in countries:
        u = unit_hash(iso3, "potential")
        potential = 2.0e8 * math.exp(4.6 * u)  # 2e8 .. ~2e10 kg
        pot_rows.append((iso3, fmt(potential, 0)))
    write_csv(os.path.join(FIX, "potentials.csv"),
              ["iso3", "total_potential_kg"], pot_rows)

    # capacity-factor profiles ------------------------------------------------
    def profile_rows(pv_peak, wind_lo, wind_hi, phase):
        rows = []
        for t in range(48):
            hour = t % 24
            sun = max(0.0, math.sin((hour - 6) / 12.0 * math.pi))
            day_factor = 1.0 if t < 24 else 0.92
            pv = pv_peak * sun * day_factor
            wind = wind_lo + (wind_hi - wind_lo) * 0.5 * (
                1.0 + math.sin((t + phase) / 48.0 * 4.0 * math.pi))
            rows.append((t, fmt(min(wind, 1.0), 4), fmt(min(pv, 1.0), 4)))
        return rows

    profiles = {
        "default": profile_rows(0.75, 0.12, 0.55, 3),
        "QAT": profile_rows(0.95, 0.08, 0.42, 9),
        "SAU": profile_rows(0.93, 0.15, 0.60, 6),
        "JPN": profile_rows(0.55, 0.10, 0.48, 0),
        "PHL": profile_rows(0.70, 0.14, 0.52, 12),
        "KGZ": profile_rows(0.62, 0.22, 0.68, 18),
        "SOM": profile_rows(0.88, 0.18, 0.62, 15),
    }
    for name, rows in profiles.items():
        write_csv(os.path.join(FIX, "profiles", f"{name}.csv"),
                  ["step", "cf_wind", "cf_pv"], rows)

    # boundaries.geojson: a miniature world map for the join ----------------
    def square(lon, lat):
        return [[[lon, lat], [lon + 2, lat], [lon + 2, lat + 2], [lon, lat + 2],
                 [lon, lat]]]

    features = []
    for iso3, lon, lat in [("PHL", 121, 13), ("QAT", 51, 25), ("SOM", 46, 5),
                           ("DEU", 10, 51), ("KGZ", 74, 41)]:
        features.append({
            "type": "Feature",
            "properties": {"iso_a3": iso3, "name": iso3},
            "geometry": {"type": "Polygon", "coordinates": square(lon, lat)},
        })
    features.append({
        "type": "Feature",
        "properties": {"name": "unclaimed reef"},
        "geometry": {"type": "Polygon", "coordinates": square(-150, -40)},
    })
    with open(os.path.join(FIX, "boundaries.geojson"), "w",
              encoding="utf-8", newline="\n") as f:
        json.dump({"type": "FeatureCollection", "features": features}, f,
                  indent=1)
        f.write("\n")
    print("wrote fixtures/boundaries.geojson (6 features)")


if __name__ == "__main__":
    main()

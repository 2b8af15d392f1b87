#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hazardrate/energymodel.hpp"

// Shared system cases for the sizing-model tests.  Cost and lifetime figures
// follow data/technologies.csv; profiles are small hand-made day shapes.
namespace fixtures {

using hazardrate::energy::SystemCase;
using hazardrate::energy::TechnologyParams;

inline TechnologyParams wind_tech(double capex = 1630.0) {
    TechnologyParams t;
    t.name = "wind";
    t.capex = capex;
    t.opex_frac = 0.027;
    t.lifetime = 20;
    return t;
}

inline TechnologyParams pv_tech(double capex = 510.0) {
    TechnologyParams t;
    t.name = "pv";
    t.capex = capex;
    t.opex_frac = 0.030;
    t.lifetime = 20;
    return t;
}

inline TechnologyParams ely_tech(double capex = 470.0) {
    TechnologyParams t;
    t.name = "electrolysis";
    t.capex = capex;
    t.opex_frac = 0.030;
    t.lifetime = 10;
    t.efficiency = 0.7;
    return t;
}

inline TechnologyParams storage_tech(double capex = 20.0) {
    TechnologyParams t;
    t.name = "storage";
    t.capex = capex;
    t.opex_frac = 0.020;
    t.lifetime = 30;
    t.charge_eff = 0.98;
    t.discharge_eff = 0.998;
    return t;
}

// A 24-step day: PV bell around noon, wind picking up towards the night.
inline SystemCase toy24() {
    SystemCase c;
    c.iso3 = "TOY";
    c.discount_rate = 0.08;
    c.wind.technology = "wind";
    c.wind.values = {0.55, 0.50, 0.45, 0.40, 0.35, 0.30, 0.25, 0.20,
                     0.18, 0.15, 0.12, 0.10, 0.10, 0.12, 0.15, 0.20,
                     0.25, 0.30, 0.38, 0.45, 0.50, 0.55, 0.60, 0.58};
    c.pv.technology = "pv";
    c.pv.values = {0.00, 0.00, 0.00, 0.00, 0.00, 0.05, 0.15, 0.30,
                   0.45, 0.60, 0.70, 0.78, 0.80, 0.78, 0.70, 0.60,
                   0.45, 0.30, 0.15, 0.05, 0.00, 0.00, 0.00, 0.00};
    c.annual_demand_kg = 100000.0;
    c.wind_tech = wind_tech();
    c.pv_tech = pv_tech();
    c.ely_tech = ely_tech();
    c.storage_tech = storage_tech();
    return c;
}

// Randomized case: noisy PV bell plus autocorrelated wind, length `steps`.
inline SystemCase random_case(std::uint32_t seed, std::size_t steps) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> noise(0.0, 1.0);

    SystemCase c = toy24();
    c.iso3 = "RND";
    c.wind.values.assign(steps, 0.0);
    c.pv.values.assign(steps, 0.0);
    double wind = 0.3 + 0.3 * noise(rng);
    for (std::size_t t = 0; t < steps; ++t) {
        wind = 0.82 * wind + 0.18 * (0.15 + 0.7 * noise(rng));
        if (wind < 0.0) wind = 0.0;
        if (wind > 1.0) wind = 1.0;
        c.wind.values[t] = wind;
        double day = static_cast<double>(t % 24) - 12.0;
        double bell = day * day < 36.0 ? (1.0 - day * day / 36.0) : 0.0;
        c.pv.values[t] = bell * (0.55 + 0.35 * noise(rng));
    }
    c.annual_demand_kg = 50000.0 + 100000.0 * noise(rng);
    return c;
}

}  // namespace fixtures

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hazardrate/simplex.hpp"

namespace hazardrate::energy {

struct TechnologyParams {
    std::string name;
    double capex = 0.0;          // USD per kW (per kWh for storage)
    double opex_frac = 0.0;      // fraction of capex per year
    int lifetime = 1;            // years
    double efficiency = 1.0;     // electrolyzer: kWh H2 out per kWh_el in
    double charge_eff = 1.0;     // storage only
    double discharge_eff = 1.0;  // storage only
};

struct CapacityFactorProfile {
    std::string technology;
    std::vector<double> values;  // one factor in [0,1] per step
};

// One country's sizing problem: wind + PV feed an electrolyzer whose hydrogen
// either serves a flat demand or cycles through storage.
struct SystemCase {
    std::string iso3;
    double discount_rate = 0.08;
    CapacityFactorProfile wind;
    CapacityFactorProfile pv;
    double annual_demand_kg = 0.0;
    TechnologyParams wind_tech;
    TechnologyParams pv_tech;
    TechnologyParams ely_tech;
    TechnologyParams storage_tech;
    double lhv = 33.33;  // kWh per kg H2
};

struct DispatchSolution {
    double cap_wind = 0.0;     // kW
    double cap_pv = 0.0;       // kW
    double cap_ely = 0.0;      // kW electrical input
    double cap_storage = 0.0;  // kWh H2
    std::vector<double> electricity_kwh;  // into the electrolyzer, per step
    std::vector<double> h2_kwh;           // produced, per step
    std::vector<double> charge_kwh;       // H2 sent to storage, per step
    std::vector<double> discharge_kwh;    // H2 delivered from storage, per step
    std::vector<double> soc_kwh;          // state of charge at end of step
    double objective_usd_yr = 0.0;
};

struct CostItem {
    std::string name;
    double annual_usd = 0.0;  // annualized capex + fixed opex
};

struct LCOHResult {
    std::string iso3;
    double lcoh_usd_per_kg = 0.0;
    std::vector<CostItem> breakdown;
    DispatchSolution solution;
};

// The sizing problem in demand-normalized units: demand is exactly 1 per step,
// capacities are expressed as producible hydrogen per step.  The electrolyzer
// efficiency and the step width fold into the cost vector and the
// denormalization factors, so the constraint data is just the profiles and the
// storage round-trip efficiencies.
struct Problem {
    std::size_t steps = 0;
    std::vector<double> wind_cf;
    std::vector<double> pv_cf;
    double charge_eff = 1.0;
    double discharge_eff = 1.0;
    std::array<double, 4> cost{};  // USD/yr per normalized unit of wind, pv, ely, storage
    double demand_step_kwh = 0.0;  // kWh H2 per step
    double step_hours = 0.0;       // 8760 / steps
    SystemCase source;             // retained for denormalization, audit, LCOH
};

enum class SolveMethod {
    window_cuts,  // cutting planes on the storage feasibility conditions
    dense_lp,     // full per-step LP through the dense simplex (reference)
};

// Validates the case and assembles the normalized problem.
// Throws INFEASIBLE_INPUT when demand is positive but no step has any
// generation potential.
Problem build_problem(const SystemCase& c);

// The full per-step formulation with explicit dispatch variables, in
// normalized units.  Variable layout: [wind, pv, ely, storage,
// e_0..e_{T-1}, charge_0.., discharge_0.., soc_0..].
lp::LinearProgram dense_formulation(const Problem& p);

// Exact optimum plus a constructed dispatch, in physical units.
// Throws INFEASIBLE / UNBOUNDED / SOLVER_STALL.
DispatchSolution solve(const Problem& p, SolveMethod method = SolveMethod::window_cuts);

// LCOH per kg and the per-technology annual cost breakdown.
LCOHResult compute_lcoh(const SystemCase& c, const DispatchSolution& s);

// Sized demand is a fixed 25% share of the technical potential.
double demand_from_potential(double total_potential_kg);

// Re-checks every model constraint from the raw case data, in normalized
// units.  `max_violation` is the worst absolute residual.
struct AuditReport {
    bool ok = true;
    double max_violation = 0.0;
    std::string worst_constraint;
};
AuditReport audit_solution(const SystemCase& c, const DispatchSolution& s, double tol = 1e-6);

}  // namespace hazardrate::energy

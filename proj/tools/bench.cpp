// Timing harness for the two performance-critical seams: the OpenMP batch
// runner against its serial reference, and the cutting-plane solver against
// the dense simplex formulation.  Prints wall times and speedups; correctness
// of the pairs is covered by the test suite, so this only measures.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hazardrate/energymodel.hpp"
#include "hazardrate/portfolio.hpp"

using namespace hazardrate;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Synthetic but realistically shaped cases: day/night PV, anticorrelated
// wind, costs in the range the regional tables produce.
energy::SystemCase make_case(std::uint32_t seed, std::size_t steps) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    energy::SystemCase c;
    c.iso3 = "C" + std::to_string(seed % 1000);
    c.discount_rate = 0.02 + 0.18 * unit(rng);
    c.annual_demand_kg = 1e5 + 9e5 * unit(rng);

    const double day_share = 0.35 + 0.2 * unit(rng);
    const double wind_floor = 0.05 + 0.2 * unit(rng);
    const double phase = unit(rng) * 2.0 * 3.14159265358979;
    c.wind.technology = "wind";
    c.pv.technology = "pv";
    for (std::size_t t = 0; t < steps; ++t) {
        double angle = 2.0 * 3.14159265358979 * static_cast<double>(t) /
                           static_cast<double>(steps) +
                       phase;
        double sun = std::max(0.0, std::sin(angle));
        c.pv.values.push_back(day_share * sun);
        c.wind.values.push_back(wind_floor + (0.85 - wind_floor) * 0.5 *
                                                 (1.0 + std::cos(angle + 1.3)) *
                                                 (0.7 + 0.3 * unit(rng)));
    }

    c.wind_tech = {"wind", 1400.0 + 600.0 * unit(rng), 0.026, 20, 1.0, 1.0, 1.0};
    c.pv_tech = {"pv", 300.0 + 400.0 * unit(rng), 0.030, 20, 1.0, 1.0, 1.0};
    c.ely_tech = {"electrolysis", 470.0, 0.03, 10, 0.7, 1.0, 1.0};
    c.storage_tech = {"storage", 20.0, 0.02, 30, 1.0, 0.98, 0.998};
    return c;
}

std::vector<energy::SystemCase> make_batch(std::size_t count, std::size_t steps) {
    std::vector<energy::SystemCase> cases;
    cases.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        cases.push_back(make_case(static_cast<std::uint32_t>(1000 + i), steps));
    }
    return cases;
}

void bench_runner(std::size_t count, std::size_t steps, const std::vector<int>& job_counts) {
    auto cases = make_batch(count, steps);

    auto start = clock_type::now();
    auto reference = portfolio::run_cases_serial(cases);
    double serial = seconds_since(start);

    std::size_t solved = 0;
    for (const auto& run : reference) solved += run.ok ? 1 : 0;
    std::cout << "batch runner: " << count << " cases x " << steps << " steps, " << solved
              << " solved\n";
    std::cout << "  serial reference   " << serial << " s\n";
    for (int jobs : job_counts) {
        start = clock_type::now();
        auto parallel = portfolio::run_cases(cases, jobs);
        double elapsed = seconds_since(start);
        std::cout << "  parallel jobs=" << jobs << "     " << elapsed << " s  (speedup "
                  << serial / elapsed << "x)\n";
        (void)parallel;
    }
}

void bench_solver(std::size_t count, std::size_t steps) {
    auto cases = make_batch(count, steps);
    std::cout << "solver: " << count << " cases x " << steps << " steps\n";

    auto start = clock_type::now();
    for (const auto& c : cases) {
        energy::solve(energy::build_problem(c), energy::SolveMethod::window_cuts);
    }
    double cuts = seconds_since(start);
    std::cout << "  window cuts        " << cuts << " s\n";

    start = clock_type::now();
    for (const auto& c : cases) {
        energy::solve(energy::build_problem(c), energy::SolveMethod::dense_lp);
    }
    double dense = seconds_since(start);
    std::cout << "  dense simplex      " << dense << " s  (cuts speedup " << dense / cuts
              << "x)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timing comparison: batch runner and solver back ends"};
    std::size_t cases = 254;
    std::size_t steps = 168;
    std::size_t lp_cases = 8;
    std::size_t lp_steps = 48;
    std::vector<int> jobs{1, 2, 4, 8};
    app.add_option("--cases", cases, "batch size for the runner comparison");
    app.add_option("--steps", steps, "profile steps for the runner comparison");
    app.add_option("--lp-cases", lp_cases, "batch size for the solver comparison");
    app.add_option("--lp-steps", lp_steps, "profile steps for the solver comparison");
    app.add_option("--jobs", jobs, "worker counts to time");
    CLI11_PARSE(app, argc, argv);

    bench_runner(cases, steps, jobs);
    bench_solver(lp_cases, lp_steps);
    return 0;
}

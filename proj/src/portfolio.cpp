#include "hazardrate/portfolio.hpp"

#include <algorithm>

#include "hazardrate/errors.hpp"

namespace hazardrate::portfolio {

namespace {

CountryRun run_one(const energy::SystemCase& c, energy::SolveMethod method) {
    CountryRun run;
    run.iso3 = c.iso3;
    try {
        energy::Problem p = energy::build_problem(c);
        energy::DispatchSolution s = energy::solve(p, method);
        run.result = energy::compute_lcoh(c, s);
        run.ok = true;
        run.status = "ok";
    } catch (const Error& e) {
        run.status = errc_name(e.code());
    } catch (const std::exception& e) {
        run.status = e.what();
    }
    return run;
}

}  // namespace

std::vector<CountryRun> run_cases(const std::vector<energy::SystemCase>& cases, int jobs,
                                  energy::SolveMethod method) {
    std::vector<CountryRun> out(cases.size());
    const int n = static_cast<int>(cases.size());
    jobs = std::max(1, jobs);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int i = 0; i < n; ++i) {
        out[i] = run_one(cases[i], method);
    }
    return out;
}

std::vector<CountryRun> run_cases_serial(const std::vector<energy::SystemCase>& cases,
                                         energy::SolveMethod method) {
    std::vector<CountryRun> out;
    out.reserve(cases.size());
    for (const auto& c : cases) out.push_back(run_one(c, method));
    return out;
}

}  // namespace hazardrate::portfolio

#pragma once

#include <string>
#include <vector>

#include "hazardrate/energymodel.hpp"

namespace hazardrate::portfolio {

// Outcome of one country's solve. A failed country carries the error-code
// name in `status` and leaves `result` empty; the batch as a whole never
// aborts.
struct CountryRun {
    std::string iso3;
    bool ok = false;
    std::string status;  // "ok" or an error-code name
    energy::LCOHResult result;
};

// Solves every case and returns results in input order. `jobs` bounds the
// worker count; each country is an independent task, so the output is
// identical for any job count.
std::vector<CountryRun> run_cases(const std::vector<energy::SystemCase>& cases, int jobs,
                                  energy::SolveMethod method = energy::SolveMethod::window_cuts);

// Single-threaded reference runner with the same contract, kept for
// equivalence tests and benchmarking.
std::vector<CountryRun> run_cases_serial(const std::vector<energy::SystemCase>& cases,
                                         energy::SolveMethod method =
                                             energy::SolveMethod::window_cuts);

}  // namespace hazardrate::portfolio

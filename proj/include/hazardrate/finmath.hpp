#pragma once

#include <cmath>

#include "hazardrate/errors.hpp"

namespace hazardrate::finmath {

// Capital-recovery factor: the constant annual payment per unit of overnight
// cost that repays it over n years at discount rate i.  The i = 0 limit is
// exactly 1/n.  Evaluated via expm1/log1p so that tiny rates do not lose the
// ((1+i)^n - 1) denominator to cancellation.
inline double annuity_factor(double i, int n) {
    if (n < 1) throw Error(Errc::zero_lifetime, "lifetime must be >= 1 year");
    if (i < 0.0) throw Error(Errc::negative_rate, "discount rate must be >= 0");
    if (i == 0.0) return 1.0 / static_cast<double>(n);
    // growth = (1+i)^n - 1, computed without forming (1+i)^n first
    double growth = std::expm1(static_cast<double>(n) * std::log1p(i));
    return i * (growth + 1.0) / growth;
}

// Annualized cost of an overnight investment I over n years at rate i.
inline double annualize(double investment, double i, int n) {
    return investment * annuity_factor(i, n);
}

}  // namespace hazardrate::finmath

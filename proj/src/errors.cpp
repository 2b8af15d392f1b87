#include "hazardrate/errors.hpp"

namespace hazardrate {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::malformed_row: return "MALFORMED_ROW";
        case Errc::unknown_country: return "UNKNOWN_COUNTRY";
        case Errc::unknown_grade: return "UNKNOWN_GRADE";
        case Errc::out_of_range: return "OUT_OF_RANGE";
        case Errc::missing_year: return "MISSING_YEAR";
        case Errc::unresolved_country: return "UNRESOLVED_COUNTRY";
        case Errc::no_data_in_window: return "NO_DATA_IN_WINDOW";
        case Errc::empty_input: return "EMPTY_INPUT";
        case Errc::degenerate_variance: return "DEGENERATE_VARIANCE";
        case Errc::weight_out_of_range: return "WEIGHT_OUT_OF_RANGE";
        case Errc::negative_rate: return "NEGATIVE_RATE";
        case Errc::zero_lifetime: return "ZERO_LIFETIME";
        case Errc::infeasible_input: return "INFEASIBLE_INPUT";
        case Errc::infeasible: return "INFEASIBLE";
        case Errc::unbounded: return "UNBOUNDED";
        case Errc::solver_stall: return "SOLVER_STALL";
        case Errc::zero_demand: return "ZERO_DEMAND";
        case Errc::negative_input: return "NEGATIVE_INPUT";
        case Errc::insufficient_data: return "INSUFFICIENT_DATA";
        case Errc::country_mismatch: return "COUNTRY_MISMATCH";
        case Errc::zero_baseline: return "ZERO_BASELINE";
        case Errc::io_error: return "IO_ERROR";
        case Errc::bad_config: return "BAD_CONFIG";
    }
    return "UNKNOWN";
}

}  // namespace hazardrate

#pragma once

#include <cstddef>
#include <vector>

namespace hazardrate::lp {

enum class RowSense { le, eq, ge };
enum class Status { optimal, infeasible, unbounded };

// minimize c·x  subject to  rows[k]·x (sense[k]) rhs[k],  x >= 0
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<double> c;
    std::vector<std::vector<double>> rows;
    std::vector<RowSense> sense;
    std::vector<double> rhs;

    explicit LinearProgram(std::size_t n) : num_vars(n), c(n, 0.0) {}
    void add_row(std::vector<double> a, RowSense s, double b) {
        rows.push_back(std::move(a));
        sense.push_back(s);
        rhs.push_back(b);
    }
};

struct Solution {
    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<double> x;
};

// Dense two-phase primal simplex.  Dantzig pricing, with a switch to Bland's
// rule after a long run of degenerate pivots so cycling cannot occur.
// Throws Error(Errc::solver_stall) if the iteration cap is hit.
Solution solve(const LinearProgram& lp);

}  // namespace hazardrate::lp

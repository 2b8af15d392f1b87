#include "hazardrate/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "hazardrate/errors.hpp"

namespace hazardrate::lp {

namespace {

constexpr double kPivotTol = 1e-9;    // smallest usable pivot element
constexpr double kCostTol = 1e-9;     // reduced-cost optimality threshold
constexpr double kPhase1Tol = 1e-7;   // residual artificial mass => infeasible

struct Tableau {
    std::size_t m = 0;       // constraint rows
    std::size_t cols = 0;    // columns excluding rhs
    std::vector<std::vector<double>> a;  // m rows of [cols] coefficients
    std::vector<double> b;               // rhs, kept >= 0 by the ratio test
    std::vector<std::size_t> basis;      // basis[i] = column basic in row i
    std::vector<double> obj;             // reduced costs
    double obj_rhs = 0.0;                // minus the current objective value

    void pivot(std::size_t row, std::size_t col) {
        double inv = 1.0 / a[row][col];
        for (auto& v : a[row]) v *= inv;
        b[row] *= inv;
        a[row][col] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = a[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
            a[i][col] = 0.0;
            b[i] -= f * b[row];
            if (b[i] < 0.0 && b[i] > -kPivotTol) b[i] = 0.0;
        }
        double f = obj[col];
        if (f != 0.0) {
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * a[row][j];
            obj[col] = 0.0;
            obj_rhs -= f * b[row];
        }
        basis[row] = col;
    }

    // Optimize over columns [0, usable).  Returns false on unboundedness.
    bool optimize(std::size_t usable, std::size_t max_iter) {
        std::size_t degenerate_run = 0;
        bool bland = false;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            // entering column
            std::size_t enter = usable;
            if (bland) {
                for (std::size_t j = 0; j < usable; ++j) {
                    if (obj[j] < -kCostTol) { enter = j; break; }
                }
            } else {
                double best = -kCostTol;
                for (std::size_t j = 0; j < usable; ++j) {
                    if (obj[j] < best) { best = obj[j]; enter = j; }
                }
            }
            if (enter == usable) return true;  // optimal

            // ratio test; ties go to the smallest basis index (anti-cycling)
            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (a[i][enter] <= kPivotTol) continue;
                double ratio = b[i] / a[i][enter];
                if (ratio < best_ratio - kPivotTol ||
                    (ratio < best_ratio + kPivotTol &&
                     (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == m) return false;  // unbounded direction

            double before = obj_rhs;
            pivot(leave, enter);
            if (std::fabs(obj_rhs - before) <= kCostTol) {
                if (++degenerate_run > 2 * (m + usable)) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }
        }
        throw Error(Errc::solver_stall, "simplex iteration cap exceeded");
    }
};

}  // namespace

Solution solve(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.rows.size();
    for (const auto& row : lp.rows) {
        if (row.size() != n) {
            throw std::invalid_argument("LP row width does not match num_vars");
        }
    }

    // Normalize to rhs >= 0, then count slack and artificial columns.
    std::vector<double> sign(m, 1.0);
    std::vector<RowSense> sense = lp.sense;
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rhs[i] < 0.0) {
            sign[i] = -1.0;
            if (sense[i] == RowSense::le) sense[i] = RowSense::ge;
            else if (sense[i] == RowSense::ge) sense[i] = RowSense::le;
        }
    }
    std::size_t n_slack = 0, n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (sense[i] != RowSense::eq) ++n_slack;
        if (sense[i] != RowSense::le) ++n_art;
    }

    Tableau t;
    t.m = m;
    t.cols = n + n_slack + n_art;
    t.a.assign(m, std::vector<double>(t.cols, 0.0));
    t.b.assign(m, 0.0);
    t.basis.assign(m, 0);

    const std::size_t slack0 = n;
    const std::size_t art0 = n + n_slack;
    std::size_t slack_at = slack0, art_at = art0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign[i] * lp.rows[i][j];
        t.b[i] = sign[i] * lp.rhs[i];
        if (sense[i] == RowSense::le) {
            t.a[i][slack_at] = 1.0;
            t.basis[i] = slack_at++;
        } else if (sense[i] == RowSense::ge) {
            t.a[i][slack_at] = -1.0;
            ++slack_at;
            t.a[i][art_at] = 1.0;
            t.basis[i] = art_at++;
        } else {
            t.a[i][art_at] = 1.0;
            t.basis[i] = art_at++;
        }
    }

    const std::size_t max_iter = 20000 + 100 * (m + t.cols);

    // Phase 1: minimize the sum of artificials (skip if none were needed).
    if (n_art > 0) {
        t.obj.assign(t.cols, 0.0);
        t.obj_rhs = 0.0;
        for (std::size_t j = art0; j < t.cols; ++j) t.obj[j] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < art0) continue;
            for (std::size_t j = 0; j < t.cols; ++j) t.obj[j] -= t.a[i][j];
            t.obj[t.basis[i]] = 0.0;
            t.obj_rhs -= t.b[i];
        }
        t.optimize(t.cols, max_iter);
        if (-t.obj_rhs > kPhase1Tol) return {Status::infeasible, 0.0, {}};
        // Drive leftover zero-valued artificials out of the basis where a
        // structural or slack pivot exists; rows without one are redundant.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < art0) continue;
            for (std::size_t j = 0; j < art0; ++j) {
                if (std::fabs(t.a[i][j]) > kPivotTol) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
    }

    // Phase 2: original costs, artificial columns frozen out.
    t.obj.assign(t.cols, 0.0);
    t.obj_rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.obj[j] = lp.c[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] >= n || lp.c[t.basis[i]] == 0.0) continue;
        double f = lp.c[t.basis[i]];
        for (std::size_t j = 0; j < t.cols; ++j) t.obj[j] -= f * t.a[i][j];
        t.obj[t.basis[i]] = 0.0;
        t.obj_rhs -= f * t.b[i];
    }
    if (!t.optimize(art0, max_iter)) return {Status::unbounded, 0.0, {}};

    Solution sol;
    sol.status = Status::optimal;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.b[i];
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];
    return sol;
}

}  // namespace hazardrate::lp

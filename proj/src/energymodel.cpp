#include "hazardrate/energymodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "hazardrate/errors.hpp"
#include "hazardrate/finmath.hpp"

namespace hazardrate::energy {

namespace {

constexpr double kViolationTol = 1e-9;   // normalized feasibility threshold
constexpr std::size_t kMaxOuterIter = 5000;
constexpr std::size_t kMaxWindowCutsPerIter = 8;

void check_unit(double v, const char* what) {
    if (!(v > 0.0) || v > 1.0) {
        throw Error(Errc::out_of_range, std::string(what) + " must be in (0, 1]");
    }
}

void validate_case(const SystemCase& c) {
    const std::size_t T = c.wind.values.size();
    if (T == 0 || c.pv.values.size() != T) {
        throw Error(Errc::out_of_range, "wind and pv profiles must have equal nonzero length");
    }
    for (std::size_t t = 0; t < T; ++t) {
        if (c.wind.values[t] < 0.0 || c.wind.values[t] > 1.0 ||
            c.pv.values[t] < 0.0 || c.pv.values[t] > 1.0) {
            throw Error(Errc::out_of_range,
                        "capacity factor outside [0,1] at step " + std::to_string(t));
        }
    }
    if (!(c.annual_demand_kg > 0.0)) {
        throw Error(Errc::zero_demand, "annual demand must be positive");
    }
    if (!(c.lhv > 0.0)) {
        throw Error(Errc::out_of_range, "lower heating value must be positive");
    }
    check_unit(c.ely_tech.efficiency, "electrolyzer efficiency");
    check_unit(c.storage_tech.charge_eff, "storage charge efficiency");
    check_unit(c.storage_tech.discharge_eff, "storage discharge efficiency");
    for (const auto* tp : {&c.wind_tech, &c.pv_tech, &c.ely_tech, &c.storage_tech}) {
        if (tp->opex_frac < 0.0 || tp->opex_frac >= 1.0) {
            throw Error(Errc::out_of_range, tp->name + ": opex fraction must be in [0,1)");
        }
    }
    bool any_generation = false;
    for (std::size_t t = 0; t < T && !any_generation; ++t) {
        any_generation = c.wind.values[t] > 0.0 || c.pv.values[t] > 0.0;
    }
    if (!any_generation) {
        throw Error(Errc::infeasible_input,
                    "demand is positive but every step has zero generation potential");
    }
}

// Normalized dispatch: demand is 1 per step, hydrogen quantities are in
// demand units, capacities are producible hydrogen per step.
struct NormDispatch {
    std::array<double, 4> cap{};           // wind, pv, ely, storage
    std::vector<double> h, sp, sm, soc;    // production, charge, discharge, soc
};

DispatchSolution denormalize(const Problem& p, const NormDispatch& nd) {
    const double D = p.demand_step_kwh;
    const double eta = p.source.ely_tech.efficiency;
    const double to_kw = D / (eta * p.step_hours);

    DispatchSolution s;
    s.cap_wind = nd.cap[0] * to_kw;
    s.cap_pv = nd.cap[1] * to_kw;
    s.cap_ely = nd.cap[2] * to_kw;
    s.cap_storage = nd.cap[3] * D;
    const std::size_t T = p.steps;
    s.electricity_kwh.resize(T);
    s.h2_kwh.resize(T);
    s.charge_kwh.resize(T);
    s.discharge_kwh.resize(T);
    s.soc_kwh.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        s.h2_kwh[t] = nd.h[t] * D;
        s.electricity_kwh[t] = s.h2_kwh[t] / eta;
        s.charge_kwh[t] = nd.sp[t] * D;
        s.discharge_kwh[t] = nd.sm[t] * D;
        s.soc_kwh[t] = nd.soc[t] * D;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < 4; ++j) obj += p.cost[j] * nd.cap[j];
    s.objective_usd_yr = obj * D;
    return s;
}

// --- storage feasibility machinery (normalized units) ----------------------
//
// With capacities K = (W, P, E, S), the most hydrogen the storage balance can
// gain in step t is
//     g_t(K) = min(alpha * (H_t - 1), (H_t - 1) / beta),
//     H_t(K) = min(w_t W + p_t P, E),
// the concave minimum of four linear functions of K.  A dispatch serving the
// flat demand exists if and only if the g_t sum to >= 0 around the cycle and
// every cyclic window of fewer than T steps satisfies S + sum g_t >= 0.
// Those two families are the cutting planes of the outer loop below.

struct GValues {
    std::vector<double> g;    // g_t at the evaluation point
    std::vector<int> piece;   // index of the attaining linear piece, 0..3
};

GValues eval_g(const Problem& p, const std::array<double, 4>& K) {
    const double alpha = p.charge_eff;
    const double inv_beta = 1.0 / p.discharge_eff;
    const std::size_t T = p.steps;
    GValues out;
    out.g.resize(T);
    out.piece.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        const double gen = p.wind_cf[t] * K[0] + p.pv_cf[t] * K[1];
        const double v0 = alpha * (gen - 1.0);
        const double v1 = alpha * (K[2] - 1.0);
        const double v2 = (gen - 1.0) * inv_beta;
        const double v3 = (K[2] - 1.0) * inv_beta;
        double best = v0;
        int arg = 0;
        if (v1 < best) { best = v1; arg = 1; }
        if (v2 < best) { best = v2; arg = 2; }
        if (v3 < best) { best = v3; arg = 3; }
        out.g[t] = best;
        out.piece[t] = arg;
    }
    return out;
}

// mins[i] = argmin over j in [i+lo, i+hi] of G[j], for i = 0..T-1; ties keep
// the smallest j.  G must extend to index T-1+hi.
std::vector<std::size_t> sliding_argmin(const std::vector<double>& G, std::size_t T,
                                        std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> deque(G.size());
    std::size_t head = 0, tail = 0;  // [head, tail)
    std::vector<std::size_t> out(T);
    std::size_t next = lo;  // first index not yet pushed
    for (std::size_t i = 0; i < T; ++i) {
        for (; next <= i + hi; ++next) {
            while (tail > head && G[deque[tail - 1]] > G[next]) --tail;
            deque[tail++] = next;
        }
        while (deque[head] < i + lo) ++head;
        out[i] = deque[head];
    }
    return out;
}

// One linear piece of g_t as a row fragment: coefficients on (W, P, E) plus a
// constant.  The storage coordinate never appears in g itself.
void add_piece(const Problem& p, std::size_t t, int piece, std::array<double, 3>& coef,
               double& constant) {
    const double alpha = p.charge_eff;
    const double inv_beta = 1.0 / p.discharge_eff;
    switch (piece) {
        case 0:
            coef[0] += alpha * p.wind_cf[t];
            coef[1] += alpha * p.pv_cf[t];
            constant -= alpha;
            break;
        case 1:
            coef[2] += alpha;
            constant -= alpha;
            break;
        case 2:
            coef[0] += inv_beta * p.wind_cf[t];
            coef[1] += inv_beta * p.pv_cf[t];
            constant -= inv_beta;
            break;
        default:
            coef[2] += inv_beta;
            constant -= inv_beta;
            break;
    }
}

NormDispatch construct_dispatch(const Problem& p, const std::array<double, 4>& K) {
    const std::size_t T = p.steps;
    const double alpha = p.charge_eff;
    const double beta = p.discharge_eff;
    GValues gv = eval_g(p, K);

    NormDispatch nd;
    nd.cap = K;
    nd.h.assign(T, 0.0);
    nd.sp.assign(T, 0.0);
    nd.sm.assign(T, 0.0);
    nd.soc.assign(T, 0.0);

    // Lazily minimal state of charge: after step t the store holds exactly
    // what the worst upcoming deficit run (of fewer than T steps) requires.
    std::vector<double> f(T, 0.0);
    if (T > 1) {
        std::vector<double> G(2 * T + 1, 0.0);
        for (std::size_t k = 1; k <= 2 * T; ++k) G[k] = G[k - 1] + gv.g[(k - 1) % T];
        auto am = sliding_argmin(G, T, 2, T);
        for (std::size_t t = 0; t < T; ++t) {
            nd.soc[t] = std::max(0.0, G[t + 1] - G[am[t]]);
        }
        for (std::size_t t = 0; t < T; ++t) {
            double prev = nd.soc[(t + T - 1) % T];
            f[t] = nd.soc[t] - prev;
            f[t] = std::min(f[t], gv.g[t]);       // numerical slop guard
            f[t] = std::max(f[t], -1.0 / beta);   // cannot drain faster
        }
    }
    for (std::size_t t = 0; t < T; ++t) {
        if (f[t] >= 0.0) {
            nd.sp[t] = f[t] / alpha;
            nd.h[t] = 1.0 + nd.sp[t];
        } else {
            nd.sm[t] = -beta * f[t];
            nd.h[t] = 1.0 - nd.sm[t];
            if (nd.h[t] < 0.0) nd.h[t] = 0.0;
        }
    }
    return nd;
}

NormDispatch solve_window_cuts(const Problem& p) {
    const std::size_t T = p.steps;
    double scale = 0.0;
    for (double cj : p.cost) scale = std::max(scale, std::fabs(cj));
    if (scale == 0.0) scale = 1.0;

    lp::LinearProgram master(4);
    for (std::size_t j = 0; j < 4; ++j) master.c[j] = p.cost[j] / scale;

    std::array<double, 4> K{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> last_K{-1.0, -1.0, -1.0, -1.0};
    std::vector<char> covered(T, 0);

    for (std::size_t iter = 0; iter < kMaxOuterIter; ++iter) {
        GValues gv = eval_g(p, K);
        double cycle_sum = std::accumulate(gv.g.begin(), gv.g.end(), 0.0);

        // Most violated deficit windows, via prefix sums over the doubled g.
        double worst_violation = std::max(0.0, -cycle_sum);
        std::vector<std::pair<double, std::size_t>> violated;  // (window sum, start)
        std::vector<std::size_t> am;
        std::vector<double> G;
        if (T > 1) {
            G.assign(2 * T + 1, 0.0);
            for (std::size_t k = 1; k <= 2 * T; ++k) G[k] = G[k - 1] + gv.g[(k - 1) % T];
            am = sliding_argmin(G, T, 1, T - 1);
            for (std::size_t s = 0; s < T; ++s) {
                double wsum = G[am[s]] - G[s];
                if (K[3] + wsum < -kViolationTol) {
                    violated.emplace_back(wsum, s);
                    worst_violation = std::max(worst_violation, -(K[3] + wsum));
                }
            }
        }

        if (worst_violation <= kViolationTol) break;  // feasible, hence optimal

        bool master_moved = false;
        for (std::size_t j = 0; j < 4; ++j) {
            if (std::fabs(K[j] - last_K[j]) > 1e-14) master_moved = true;
        }
        if (!master_moved && iter > 0) {
            if (worst_violation < 1e-7) break;  // numerically converged
            throw Error(Errc::solver_stall, "cut generation stopped making progress");
        }
        last_K = K;

        if (cycle_sum < -kViolationTol) {
            std::array<double, 3> coef{};
            double constant = 0.0;
            for (std::size_t t = 0; t < T; ++t) add_piece(p, t, gv.piece[t], coef, constant);
            master.add_row({coef[0], coef[1], coef[2], 0.0}, lp::RowSense::ge, -constant);
        }
        if (!violated.empty()) {
            std::sort(violated.begin(), violated.end());
            std::fill(covered.begin(), covered.end(), 0);
            std::size_t added = 0, examined = 0;
            for (const auto& [wsum, s] : violated) {
                if (added >= kMaxWindowCutsPerIter || ++examined > 64) break;
                const std::size_t e = am[s];
                bool overlap = false;
                for (std::size_t u = s; u < e && !overlap; ++u) overlap = covered[u % T];
                if (overlap) continue;
                std::array<double, 3> coef{};
                double constant = 0.0;
                for (std::size_t u = s; u < e; ++u) {
                    covered[u % T] = 1;
                    add_piece(p, u % T, gv.piece[u % T], coef, constant);
                }
                master.add_row({coef[0], coef[1], coef[2], 1.0}, lp::RowSense::ge, -constant);
                ++added;
            }
        }
        if (master.rows.size() > 4000) {
            throw Error(Errc::solver_stall, "cut count exceeded its cap");
        }

        lp::Solution sol = lp::solve(master);
        if (sol.status == lp::Status::infeasible) {
            throw Error(Errc::infeasible, "no capacity mix can serve the demand");
        }
        if (sol.status == lp::Status::unbounded) {
            throw Error(Errc::unbounded, "cost coefficients admit unbounded improvement");
        }
        for (std::size_t j = 0; j < 4; ++j) K[j] = std::max(0.0, sol.x[j]);
    }
    return construct_dispatch(p, K);
}

NormDispatch solve_dense(const Problem& p) {
    lp::LinearProgram prog = dense_formulation(p);
    lp::Solution sol = lp::solve(prog);
    if (sol.status == lp::Status::infeasible) {
        throw Error(Errc::infeasible, "no capacity mix can serve the demand");
    }
    if (sol.status == lp::Status::unbounded) {
        throw Error(Errc::unbounded, "cost coefficients admit unbounded improvement");
    }
    const std::size_t T = p.steps;
    NormDispatch nd;
    for (std::size_t j = 0; j < 4; ++j) nd.cap[j] = sol.x[j];
    nd.h.assign(sol.x.begin() + 4, sol.x.begin() + 4 + T);
    nd.sp.assign(sol.x.begin() + 4 + T, sol.x.begin() + 4 + 2 * T);
    nd.sm.assign(sol.x.begin() + 4 + 2 * T, sol.x.begin() + 4 + 3 * T);
    nd.soc.assign(sol.x.begin() + 4 + 3 * T, sol.x.begin() + 4 + 4 * T);
    return nd;
}

}  // namespace

Problem build_problem(const SystemCase& c) {
    validate_case(c);
    Problem p;
    p.steps = c.wind.values.size();
    p.wind_cf = c.wind.values;
    p.pv_cf = c.pv.values;
    p.charge_eff = c.storage_tech.charge_eff;
    p.discharge_eff = c.storage_tech.discharge_eff;
    p.step_hours = 8760.0 / static_cast<double>(p.steps);
    p.demand_step_kwh = c.annual_demand_kg * c.lhv / static_cast<double>(p.steps);

    const double eta = c.ely_tech.efficiency;
    auto annual_unit_cost = [&](const TechnologyParams& tp) {
        return tp.capex * (finmath::annuity_factor(c.discount_rate, tp.lifetime) + tp.opex_frac);
    };
    const double per_kw = 1.0 / (eta * p.step_hours);
    p.cost[0] = annual_unit_cost(c.wind_tech) * per_kw;
    p.cost[1] = annual_unit_cost(c.pv_tech) * per_kw;
    p.cost[2] = annual_unit_cost(c.ely_tech) * per_kw;
    p.cost[3] = annual_unit_cost(c.storage_tech);
    p.source = c;
    return p;
}

lp::LinearProgram dense_formulation(const Problem& p) {
    const std::size_t T = p.steps;
    const double alpha = p.charge_eff;
    const double inv_beta = 1.0 / p.discharge_eff;
    double scale = 0.0;
    for (double cj : p.cost) scale = std::max(scale, std::fabs(cj));
    if (scale == 0.0) scale = 1.0;

    // x = [W, P, E, S, e_t..., charge_t..., discharge_t..., soc_t...]
    lp::LinearProgram prog(4 + 4 * T);
    for (std::size_t j = 0; j < 4; ++j) prog.c[j] = p.cost[j] / scale;
    const std::size_t e0 = 4, sp0 = 4 + T, sm0 = 4 + 2 * T, soc0 = 4 + 3 * T;
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<double> row(prog.num_vars, 0.0);
        row[e0 + t] = 1.0;
        row[0] = -p.wind_cf[t];
        row[1] = -p.pv_cf[t];
        prog.add_row(std::move(row), lp::RowSense::le, 0.0);

        row.assign(prog.num_vars, 0.0);
        row[e0 + t] = 1.0;
        row[2] = -1.0;
        prog.add_row(std::move(row), lp::RowSense::le, 0.0);

        row.assign(prog.num_vars, 0.0);
        row[e0 + t] = 1.0;
        row[sp0 + t] = -1.0;
        row[sm0 + t] = 1.0;
        prog.add_row(std::move(row), lp::RowSense::eq, 1.0);

        row.assign(prog.num_vars, 0.0);
        row[soc0 + t] += 1.0;
        row[soc0 + (t + T - 1) % T] -= 1.0;
        row[sp0 + t] -= alpha;
        row[sm0 + t] += inv_beta;
        prog.add_row(std::move(row), lp::RowSense::eq, 0.0);

        row.assign(prog.num_vars, 0.0);
        row[soc0 + t] = 1.0;
        row[3] = -1.0;
        prog.add_row(std::move(row), lp::RowSense::le, 0.0);
    }
    return prog;
}

DispatchSolution solve(const Problem& p, SolveMethod method) {
    NormDispatch nd =
        method == SolveMethod::window_cuts ? solve_window_cuts(p) : solve_dense(p);
    return denormalize(p, nd);
}

LCOHResult compute_lcoh(const SystemCase& c, const DispatchSolution& s) {
    if (!(c.annual_demand_kg > 0.0)) {
        throw Error(Errc::zero_demand, "annual demand must be positive");
    }
    auto annual = [&](const TechnologyParams& tp, double cap) {
        return cap * tp.capex *
               (finmath::annuity_factor(c.discount_rate, tp.lifetime) + tp.opex_frac);
    };
    LCOHResult r;
    r.iso3 = c.iso3;
    r.breakdown = {
        {c.wind_tech.name, annual(c.wind_tech, s.cap_wind)},
        {c.pv_tech.name, annual(c.pv_tech, s.cap_pv)},
        {c.ely_tech.name, annual(c.ely_tech, s.cap_ely)},
        {c.storage_tech.name, annual(c.storage_tech, s.cap_storage)},
    };
    r.lcoh_usd_per_kg = s.objective_usd_yr / c.annual_demand_kg;
    r.solution = s;
    return r;
}

double demand_from_potential(double total_potential_kg) {
    if (total_potential_kg < 0.0) {
        throw Error(Errc::negative_input, "hydrogen potential must be >= 0");
    }
    return 0.25 * total_potential_kg;
}

AuditReport audit_solution(const SystemCase& c, const DispatchSolution& s, double tol) {
    const std::size_t T = c.wind.values.size();
    const double D = c.annual_demand_kg * c.lhv / static_cast<double>(T);
    const double wbar = 8760.0 / static_cast<double>(T);
    const double eta = c.ely_tech.efficiency;
    const double alpha = c.storage_tech.charge_eff;
    const double beta = c.storage_tech.discharge_eff;

    AuditReport rep;
    auto check = [&](double violation, const std::string& what) {
        if (violation > rep.max_violation) {
            rep.max_violation = violation;
            rep.worst_constraint = what;
        }
    };
    auto at_step = [](const char* what, std::size_t t) {
        return std::string(what) + " @ step " + std::to_string(t);
    };

    if (s.electricity_kwh.size() != T || s.h2_kwh.size() != T || s.charge_kwh.size() != T ||
        s.discharge_kwh.size() != T || s.soc_kwh.size() != T) {
        return {false, 1.0, "per-step vector length mismatch"};
    }
    const double cap_w = eta * wbar * s.cap_wind / D;
    const double cap_p = eta * wbar * s.cap_pv / D;
    const double cap_e = eta * wbar * s.cap_ely / D;
    const double cap_s = s.cap_storage / D;
    check(std::max({-cap_w, -cap_p, -cap_e, -cap_s}), "capacity >= 0");
    for (std::size_t t = 0; t < T; ++t) {
        const double h = s.h2_kwh[t] / D;
        const double e = s.electricity_kwh[t] / D;
        const double sp = s.charge_kwh[t] / D;
        const double sm = s.discharge_kwh[t] / D;
        const double soc = s.soc_kwh[t] / D;
        const double soc_prev = s.soc_kwh[(t + T - 1) % T] / D;
        check(std::max({-h, -e, -sp, -sm, -soc}), at_step("flow >= 0", t));
        check(std::fabs(h - eta * e), at_step("h2 = eta * electricity", t));
        check(h - (c.wind.values[t] * cap_w + c.pv.values[t] * cap_p),
              at_step("generation limit", t));
        check(h - cap_e, at_step("electrolyzer limit", t));
        check(std::fabs(h - sp + sm - 1.0), at_step("demand balance", t));
        check(std::fabs(soc - soc_prev - alpha * sp + sm / beta), at_step("soc transition", t));
        check(soc - cap_s, at_step("soc within storage", t));
    }
    rep.ok = rep.max_violation <= tol;
    return rep;
}

}  // namespace hazardrate::energy

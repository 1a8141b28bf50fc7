#include "singflow/prandtl/diagnostics.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace singflow::prandtl {

numerics::Vector wall_shear(const BLState& state) {
    numerics::Vector tau(state.nx);
    for (std::size_t i = 0; i < state.nx; ++i) {
        tau[i] = (-3.0 * state.at(i, 0) + 4.0 * state.at(i, 1) - state.at(i, 2)) / (2.0 * state.dy);
    }
    return tau;
}

double displacement_thickness(const BLState& state, std::size_t i) {
    const double U = state.at(i, state.ny - 1);
    if (!(U > 0.0)) {
        throw DomainError("displacement thickness needs a positive outer velocity");
    }
    double acc = 0.0;
    for (std::size_t j = 1; j < state.ny; ++j) {
        acc += 0.5 * ((1.0 - state.at(i, j - 1) / U) + (1.0 - state.at(i, j) / U)) * state.dy;
    }
    return acc;
}

std::vector<LipschitzSample> lipschitz_diagnostics(const std::vector<BLState>& history) {
    std::vector<LipschitzSample> out;
    out.reserve(history.size());
    LipschitzSample run;
    for (std::size_t k = 0; k < history.size(); ++k) {
        const BLState& s = history[k];
        LipschitzSample cur;
        cur.t = s.t;
        for (std::size_t i = 0; i < s.nx; ++i) {
            for (std::size_t j = 0; j < s.ny; ++j) {
                if (i + 1 < s.nx) {
                    cur.dx_sup = std::max(cur.dx_sup, std::abs(s.at(i + 1, j) - s.at(i, j)) / s.dx);
                }
                if (j + 1 < s.ny) {
                    cur.dy_sup = std::max(cur.dy_sup, std::abs(s.at(i, j + 1) - s.at(i, j)) / s.dy);
                }
            }
        }
        if (k > 0) {
            const BLState& p = history[k - 1];
            if (p.u.size() != s.u.size()) {
                throw ShapeError("state history mixes grids");
            }
            const double dt = s.t - p.t;
            if (dt > 0.0) {
                for (std::size_t n = 0; n < s.u.size(); ++n) {
                    cur.dt_sup = std::max(cur.dt_sup, std::abs(s.u[n] - p.u[n]) / dt);
                }
            }
        }
        run.dx_run = std::max(run.dx_run, cur.dx_sup);
        run.dy_run = std::max(run.dy_run, cur.dy_sup);
        run.dt_run = std::max(run.dt_run, cur.dt_sup);
        cur.dx_run = run.dx_run;
        cur.dy_run = run.dy_run;
        cur.dt_run = run.dt_run;
        out.push_back(cur);
    }
    return out;
}

} // namespace singflow::prandtl

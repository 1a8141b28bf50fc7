#pragma once

#include "singflow/prandtl/boundary_layer.hpp"

#include <vector>

namespace singflow::prandtl {

// Second-order one-sided du/dy at the wall for every x node.
numerics::Vector wall_shear(const BLState& state);

// int_0^y_max (1 - u / U) dy at x node i, U taken from the top row.
double displacement_thickness(const BLState& state, std::size_t i);

struct LipschitzSample {
    double t = 0.0;
    double dx_sup = 0.0;  // sup |u_x| at this time
    double dy_sup = 0.0;  // sup |u_y|
    double dt_sup = 0.0;  // sup |u(t) - u(t_prev)| / (t - t_prev); 0 for the first
    double dx_run = 0.0;  // running maxima
    double dy_run = 0.0;
    double dt_run = 0.0;
};

// Difference quotients of a stored state history (>= 2 states, same grid).
std::vector<LipschitzSample> lipschitz_diagnostics(const std::vector<BLState>& history);

} // namespace singflow::prandtl

#pragma once

// Unsteady two-dimensional boundary layer
//
//     u_t + u u_x + v u_y + p_x = nu u_yy,    u_x + v_y = 0,
//
// on [0, L] x [0, y_max], advanced by Lie splitting: explicit first-order
// upwind transport, then backward-Euler diffusion in y per column.
// Boundary data: u = 0 at the wall, u = U(x, t) at y_max, u = u1(y, t) on
// the inflow column x = 0 and v = v0(x, t) at the wall.

#include "singflow/numerics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace singflow::prandtl {

using Field2 = std::function<double(double, double)>;

struct BLConfig {
    double nu = 0.01;
    double L = 1.0;
    double T = 1.0;
    double y_max = 1.0;
    std::size_t nx = 101;
    std::size_t ny = 161;
    double dt = 0.005;
    Field2 U;   // U(x, t)
    Field2 u0;  // u0(x, y)
    Field2 u1;  // u1(y, t)
    Field2 v0;  // v0(x, t)

    // DomainError on non-positive sizes or missing data.
    void validate() const;
    numerics::Grid1D x_grid() const;
    numerics::Grid1D y_grid() const;
};

// u and v are stored column by column: index i * ny + j for (x_i, y_j).
struct BLState {
    double t = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    numerics::Vector u;
    numerics::Vector v;
    numerics::Vector px;  // per x node

    double& at(std::size_t i, std::size_t j) { return u[i * ny + j]; }
    double at(std::size_t i, std::size_t j) const { return u[i * ny + j]; }
    double v_at(std::size_t i, std::size_t j) const { return v[i * ny + j]; }
};

// px = -(U_t + U U_x) at time t on the x nodes, by centered differences of
// U with step h (relative to L for x).
numerics::Vector pressure_gradient(const Field2& U, const numerics::Grid1D& x, double t,
                                   double h = 1e-5);

struct DataCheck {
    std::string name;
    bool passed = true;
    std::vector<std::pair<double, double>> offending;  // at most 32 sample locations
};

struct DataReport {
    std::vector<DataCheck> checks;
    bool all_passed() const;
    const DataCheck& check(const std::string& name) const;
};

// Itemized checks on the grid at times 0, T/4, ..., T:
// U>0, u0>0, u1>0, v0<=0, dy_u0>0, dy_u1>0, px<=0.
DataReport validate_data(const BLConfig& cfg);

// Samples u0 on the grid and sets v, px at t = 0.
BLState initial_state(const BLConfig& cfg);

// v = v0 - int_0^y u_x dy', with u_x centered in x (second-order one-sided
// at the ends) and the trapezoid rule in y.
numerics::Vector reconstruct_v(const BLState& state, const BLConfig& cfg);

// max over interior cells of |(v_j - v_{j-1}) / dy + (ux_j + ux_{j-1}) / 2|.
double continuity_residual(const BLState& state);

// Inviscid half step. Boundary rows take their values at t + dt; state.t is
// not changed. StepTooLarge on CFL violation, UpwindBreakdown if u <= 0 at an
// interior node.
BLState transport_substep(const BLState& state, const BLConfig& cfg, double dt);

// Viscous half step, backward Euler per column; the inflow column is left
// as is. state.t is not changed.
BLState diffusion_substep(const BLState& state, const BLConfig& cfg, double dt);

// Transport, diffusion, t += dt, then px and v at the new time.
BLState advance(const BLState& state, const BLConfig& cfg, double dt);

// Minimum over the grid of du/dy (one-sided at the wall and top, centered
// inside).
double min_shear(const BLState& state);

} // namespace singflow::prandtl

#pragma once

#include "singflow/numerics.hpp"

namespace singflow::prandtl {

// Flat-plate similarity profile f(eta) of f''' + f f'' / 2 = 0 with
// f(0) = f'(0) = 0 and f'(eta_max) = 1.
struct BlasiusProfile {
    numerics::Vector eta;
    numerics::Vector f;
    numerics::Vector fp;
    numerics::Vector fpp;
    double wall_slope = 0.0;    // f''(0)
    double displacement = 0.0;  // eta_max - f(eta_max), the limit of eta - f

    // f'(eta); 1 beyond the integration range.
    double velocity(double eta_query) const;
};

// Shooting on f''(0) with RK4 over ny uniform steps. ny >= 100.
BlasiusProfile blasius_profile(std::size_t ny, double eta_max = 10.0);

// delta* = displacement * sqrt(nu x / U).
double blasius_displacement_thickness(const BlasiusProfile& prof, double nu, double x, double U);

// u(y) = U f'(y / sqrt(nu x / U)) of the layer grown over length x.
double blasius_velocity(const BlasiusProfile& prof, double nu, double x, double U, double y);

} // namespace singflow::prandtl

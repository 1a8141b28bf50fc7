#pragma once

// Reference solutions built independently of the solver modules: separate
// formulations, integrators and root finders.

#include "singflow/vortex/rings.hpp"

namespace singflow::harness::oracles {

enum class ShockModel {
    Potential,  // mass flux and tangential velocity continuous, Bernoulli on both sides
    Euler,      // classical Rankine-Hugoniot jump
};

// Conical shock angle (radians) from the Taylor-Maccoll equation in the
// polar angle, shooting on the shock angle. Freestream sound speed 1.
double taylor_maccoll_shock_angle(double mach, double gamma, double cone_half_angle,
                                  ShockModel model = ShockModel::Potential);

// Direct midpoint quadrature of the regularized Biot-Savart line integral
// of a ring of radius a at height z0.
vortex::RingVelocity ring_line_integral(double a, double z0, double gamma, double delta,
                                        vortex::RZ target, std::size_t n = 20000);

} // namespace singflow::harness::oracles

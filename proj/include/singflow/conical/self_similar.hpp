#pragma once

// Conical (self-similar) background flow past the circular cone r = b0 z.
//
// With phi = z g(s), s = r/z, the potential equation reduces to
//
//     g'' [ (W s - V)^2 - c^2 (1 + s^2) ] = c^2 V / s,
//
// where V = g' is the radial velocity, W = q0 + g - s g' the axial one and
// c^2 = (gamma - 1)(H0 - (V^2 + W^2)/2). The front sits at s = tan(sigma),
// where g = 0 and (V, W) come from rh_downstream; the body sits at s = b0,
// where V = b0 W.

#include "singflow/conical/gas.hpp"
#include "singflow/numerics.hpp"

#include <cstddef>

namespace singflow::conical {

struct SimilarityPoint {
    double dr_phi = 0.0;  // V
    double dz_phi = 0.0;  // W - q0
};

struct SelfSimilarSolution {
    GasModel gas;
    Freestream fs;
    double b0 = 0.0;
    double sigma = 0.0;        // shock angle [rad]
    double shock_slope = 0.0;  // tan(sigma)

    // Profiles on s ascending from b0 to shock_slope.
    numerics::Vector s;
    numerics::Vector g;
    numerics::Vector dr_phi;
    numerics::Vector dz_phi;
    numerics::Vector g2;  // g''
    numerics::Vector density;

    // Cubic Hermite interpolation using the ODE derivatives; s is clamped
    // to [b0, shock_slope].
    SimilarityPoint at(double s_query) const;
    double g_at(double s_query) const;
};

struct SimilarityOptions {
    std::size_t steps = 400;       // RK4 steps between front and body
    std::size_t scan_points = 240; // sigma samples used to bracket the weak root
    double sigma_max_deg = 80.0;
};

// g'' from the reduced equation. Throws SolverFailure where the coefficient
// (W s - V)^2 - c^2 (1 + s^2) vanishes or changes sign to non-negative.
double similarity_g2(double s, double g, double gp, const Freestream& fs, const GasModel& gas);

// Shoots over the shock angle and bisects it (tolerance tol, in radians)
// until the body tangency V = b0 W holds at s = b0. DetachedShock when no
// angle between the Mach angle and sigma_max achieves tangency.
SelfSimilarSolution solve_self_similar(const Freestream& fs, const GasModel& gas, double b0,
                                       double tol, const SimilarityOptions& opts = {});

// Integrates inward from the front for a given shock angle and returns the
// profiles (no shooting). Used by solve_self_similar and by tests.
SelfSimilarSolution integrate_from_shock(const Freestream& fs, const GasModel& gas, double b0,
                                         double sigma, std::size_t steps);

// Max over interior nodes of |g''_fd - c^2 V / (s D)|, with g''_fd the
// centred difference of the stored V profile.
double similarity_residual(const SelfSimilarSolution& sol);

} // namespace singflow::conical

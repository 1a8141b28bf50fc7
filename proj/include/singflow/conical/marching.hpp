#pragma once

// Space marching in z of the perturbed-cone free-boundary problem.
//
// The unknowns are a = dr_phi and w = dz_phi on the normalized coordinate
// xi = (r - b(z)) / (S(z) - b(z)). They obey
//
//     a_z = w_r,
//     (W^2 - c^2) w_z + (a^2 - c^2) a_r + 2 a W w_r - c^2 a / r = 0,
//
// W = q0 + w, which is hyperbolic in z while W > c. Interior nodes use
// characteristic upwinding with second-order one-sided differences and a
// two-stage Heun update in z. The body node keeps the incoming
// characteristic and imposes a = b' W; the shock node keeps the incoming
// characteristic and solves the jump conditions for S'(z).

#include "singflow/conical/geometry.hpp"
#include "singflow/conical/self_similar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace singflow::conical {

struct MarchState {
    double z = 0.0;
    double S = 0.0;   // shock radius
    double Sp = 0.0;  // shock slope S'(z)
    numerics::Vector xi;
    numerics::Vector dr_phi;
    numerics::Vector dz_phi;
    numerics::Vector phi;

    std::size_t nodes() const noexcept { return xi.size(); }
};

struct MarchParams {
    std::size_t intervals = 100;  // xi intervals
    double safety = 0.5;          // CFL safety factor (hard limit)
    double cfl = 0.4;             // step actually taken by run_marching
};

// Background restricted to station z on the given geometry: fields taken
// at the same xi of the self-similar layer, S = z tan(sigma).
MarchState initial_state(const SelfSimilarSolution& bg, const ConeGeometry& geom, double z,
                         std::size_t intervals);

// Largest dz allowed by the CFL-type bound with safety factor 1.
double max_stable_dz(const MarchState& st, const SelfSimilarSolution& bg,
                     const ConeGeometry& geom);

// Advances z -> z + dz. Errors: HyperbolicityLost, GeometryCollapse,
// StepTooLarge (dz above safety * max_stable_dz), VacuumReached.
MarchState march_step(const MarchState& st, const SelfSimilarSolution& bg,
                      const ConeGeometry& geom, double dz, double safety = 0.5);

// max_xi (|a - a_bg| + |w - w_bg|) + |S/z - tan(sigma)|.
double deviation_norm(const MarchState& st, const SelfSimilarSolution& bg);

// z times the largest semi-discrete interior rate of change on the exact
// background: the deviation the scheme generates per e-folding of z before
// it settles. Used as the reference discretization error of a resolution.
double discretization_error_estimate(const SelfSimilarSolution& bg, const ConeGeometry& geom,
                                     double z, std::size_t intervals);

// Mass-flux jump rho_d (W S' - a) - rho0 q0 S' at the shock node.
double shock_flux_residual(const MarchState& st, const SelfSimilarSolution& bg);
// Normal mass flux rho (a - b' W) at the body node.
double body_flux_residual(const MarchState& st, const SelfSimilarSolution& bg,
                          const ConeGeometry& geom);

struct DeviationSample {
    double z = 0.0;
    double deviation = 0.0;      // see RunParams::discrete_reference
    double raw_deviation = 0.0;  // deviation_norm against the self-similar solution
    double shock_ratio = 0.0;    // S / z
};

struct DiagnosticSeries {
    std::vector<DeviationSample> samples;
    std::optional<double> slope;  // fitted over [fit_z_min, fit_z_max]
    std::optional<double> failure_z;
    std::string failure;
    MarchState final_state;
    std::size_t steps = 0;
};

struct RunParams {
    MarchParams march;
    double z_start = 1.0;
    double z_end = 100.0;
    std::size_t samples_per_decade = 10;
    double fit_z_min = 10.0;
    double fit_z_max = 0.0;  // 0 -> z_end
    double shooting_tol = 1e-12;
    SimilarityOptions similarity;
    // For a perturbed body, measure the deviation against the exact cone
    // marched in lockstep on the same grid. This removes the scheme's own
    // O(h^2) error on the background, which otherwise floors the decay.
    bool discrete_reference = true;
};

// State difference max_xi (|da| + |dw|) + |dS| / z of two runs on one grid.
double state_distance(const MarchState& a, const MarchState& b);

// March from z_start to z_end, recording the deviation at logarithmically
// spaced stations. Numerical failures inside the march are recorded in
// failure / failure_z and end the series early.
DiagnosticSeries run_marching(const Freestream& fs, const GasModel& gas,
                              const ConeGeometry& geom, const RunParams& params);

// Same, with a precomputed background.
DiagnosticSeries run_marching(const SelfSimilarSolution& bg, const ConeGeometry& geom,
                              const RunParams& params);

} // namespace singflow::conical

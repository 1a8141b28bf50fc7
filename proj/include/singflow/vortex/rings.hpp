#pragma once

// Axisymmetric vortex rings without swirl, regularized by adding delta^2 to
// the squared source-target distance in the Biot-Savart integral.

#include "singflow/numerics.hpp"

#include <vector>

namespace singflow::vortex {

struct RZ {
    double r = 0.0;
    double z = 0.0;

    friend bool operator==(const RZ&, const RZ&) = default;
};

struct RingCloudAxi {
    std::vector<RZ> positions;
    std::vector<double> circulations;
    double delta = 0.05;

    std::size_t size() const noexcept { return positions.size(); }
    // DomainError unless delta > 0, r_i > 0 and sizes agree.
    void validate() const;
};

struct RingVelocity {
    double ur = 0.0;
    double uz = 0.0;
};

// Velocity induced at target (r >= 0, z) by a single ring of radius a at
// height z0, circulation gamma.
RingVelocity single_ring_velocity(double a, double z0, double gamma, double delta, RZ target);

// Sum over rings in index order; ur = 0 exactly on the axis.
RingVelocity ring_velocity(const RingCloudAxi& cloud, RZ target);

// RK4 advection with (ur, uz). AxisCollision if a ring reaches r <= 0.
RingCloudAxi step_axisym(const RingCloudAxi& cloud, double dt);

struct AxisymInvariants {
    double circulation = 0.0;
    double impulse = 0.0;  // pi sum Gamma_i r_i^2
};

AxisymInvariants axisym_invariants(const RingCloudAxi& cloud);

struct AxisProbeOptions {
    double r_max = 3.0;         // window radius
    double z_half_width = 3.0;  // window centred on the circulation-weighted mean z
    std::size_t nr = 120;
    std::size_t nz = 240;
};

struct AxisEnergyRow {
    double t = 0.0;
    double total = 0.0;             // windowed energy int |u|^2 2 pi r dr dz
    std::vector<double> energy;     // restricted to r < rho, per radius
};

struct AxisEnergyTable {
    std::vector<double> radii;
    std::vector<AxisEnergyRow> rows;
    std::vector<double> max_fraction;  // max over rows of energy / total, per radius
};

// history holds (t, cloud) snapshots; radii must be positive and decreasing.
AxisEnergyTable axis_energy_probe(const std::vector<std::pair<double, RingCloudAxi>>& history,
                                  const std::vector<double>& radii,
                                  const AxisProbeOptions& opts = {});

} // namespace singflow::vortex

#pragma once

#include "singflow/vortex/blobs.hpp"

namespace singflow::vortex {

struct ConcentrationReport {
    double ball_radius = 0.0;
    double sup_mass = 0.0;
    Vec2 arg_center;
};

// max over candidate centers of sum_{|x_i - c| <= r} |Gamma_i|. Candidates
// are a square grid of the given spacing over the bounding box (grown by r)
// plus every atom position. DomainError unless r > 0 and
// 0 < spacing <= r / 2.
ConcentrationReport concentration_sup(const BlobCloud2D& cloud, double ball_radius,
                                      double sweep_spacing);

// int_{|x| <= R} |u|^2 dx with the midpoint rule on a res x res grid over
// [-R, R]^2, keeping cells whose centers lie in the disk.
double local_energy(const BlobCloud2D& cloud, double R, std::size_t resolution);

struct InvariantRecord {
    double circulation = 0.0;
    Vec2 impulse;                // sum Gamma_i x_i
    double angular_impulse = 0.0;  // sum Gamma_i |x_i|^2
    double hamiltonian = 0.0;    // -(1/4pi) sum_{i<j} G_i G_j ln(|x_i - x_j|^2 + delta^2)
};

InvariantRecord invariants2d(const BlobCloud2D& cloud);

} // namespace singflow::vortex

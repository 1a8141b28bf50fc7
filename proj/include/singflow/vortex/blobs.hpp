#pragma once

// Regularized point-vortex (blob) dynamics in the plane.

#include "singflow/numerics.hpp"

#include <span>
#include <vector>

namespace singflow::vortex {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

// When mirror_paired is set the first half of the atoms lie in x1 > 0 and
// atom k + n/2 is the reflection (-x1, x2) of atom k with circulation -Gamma.
// Velocities are then summed pair by pair, which keeps the reflection
// symmetry exact in floating point.
struct BlobCloud2D {
    std::vector<Vec2> positions;
    std::vector<double> circulations;
    double delta = 0.1;
    bool mirror_paired = false;

    std::size_t size() const noexcept { return positions.size(); }
    // Pairwise for mirror-paired clouds, so an exactly odd cloud sums to 0.
    double total_circulation() const;
    double total_abs_circulation() const;
    // DomainError unless delta > 0, sizes agree and values are finite.
    void validate() const;
};

// K_delta(x) = (-x2, x1) / (2 pi (|x|^2 + delta^2)); K(0) = 0.
Vec2 kernel2d(Vec2 x, double delta);

// u(p) = sum_i Gamma_i K_delta(p - x_i), summed in index order (pair order
// for mirror-paired clouds).
std::vector<Vec2> velocity_field(const BlobCloud2D& cloud, std::span<const Vec2> targets);

// One RK4 step of dx_i/dt = u(x_i); circulations are unchanged.
BlobCloud2D step(const BlobCloud2D& cloud, double dt);

} // namespace singflow::vortex

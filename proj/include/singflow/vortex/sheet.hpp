#pragma once

#include "singflow/vortex/blobs.hpp"

#include <functional>

namespace singflow::vortex {

enum class SignPattern { OneSign, NMSPair };

// Sheet on the curve c(s), s in [0, 1], with circulation density gamma(s)
// per unit arclength. For NMSPair the curve describes the x1 > 0 half only.
struct SheetSpec {
    std::function<Vec2(double)> curve;
    std::function<double(double)> strength;
    SignPattern pattern = SignPattern::OneSign;
};

// n atoms at the parameter midpoints (k + 1/2) / n with Gamma_k = gamma times
// the chord length of the k-th parameter cell. NMSPair specs return 2n
// atoms via mirror_symmetrize. DegenerateSpec for a zero-length curve.
BlobCloud2D build_sheet(const SheetSpec& spec, std::size_t n, double delta);

// Appends the images (-x1, x2, -Gamma). NotNMS if an input atom has x1 <= 0
// or Gamma < 0.
BlobCloud2D mirror_symmetrize(const BlobCloud2D& half);

// True iff the atoms pair up as (x1, x2, G) <-> (-x1, x2, -G) within tol.
bool check_mirror_symmetry(const BlobCloud2D& cloud, double tol);

// Largest pairing defect max |x1 + x1'|, |x2 - x2'|, |G + G'| of a
// mirror-paired cloud.
double mirror_symmetry_error(const BlobCloud2D& cloud);

} // namespace singflow::vortex

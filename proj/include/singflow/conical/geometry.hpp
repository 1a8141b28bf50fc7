#pragma once

#include "singflow/numerics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace singflow::conical {

// Body r = b(z) = b0 z + p(z), with the perturbation p sampled at (z_k, p_k)
// and interpolated by a natural cubic spline. Outside the sampled range p is
// held at its end value.
class ConeGeometry {
public:
    ConeGeometry() = default;
    ConeGeometry(double b0, numerics::Vector z, numerics::Vector perturbation, double eps0,
                 int k1, int k2);

    // Unperturbed cone r = b0 z.
    static ConeGeometry exact(double b0);

    double b0() const noexcept { return b0_; }
    double eps0() const noexcept { return eps0_; }
    int k1() const noexcept { return k1_; }
    int k2() const noexcept { return k2_; }
    const numerics::Vector& sample_z() const noexcept { return z_; }
    const numerics::Vector& sample_perturbation() const noexcept { return p_; }
    bool is_exact_cone() const noexcept { return z_.empty(); }

    double radius(double z) const;
    double slope(double z) const;
    double perturbation(double z) const;

private:
    double b0_ = 0.0;
    double eps0_ = 0.0;
    int k1_ = 2;
    int k2_ = 2;
    numerics::Vector z_;
    numerics::Vector p_;
    numerics::CubicSpline spline_;
};

struct AdmissibilityReport {
    // bound[k] = max over samples of |z^k d^k p / dz^k|, k = 0..k2.
    std::vector<double> bound;
    std::vector<bool> order_ok;
    bool tip_checked = false;  // true when the samples reach z = 0
    bool tip_ok = true;        // p(0) = 0 and p^(k)(0) = 0 for 2 <= k <= k1
    bool passed = true;
};

// Finite-difference check of the smallness bound on the sampled range.
// ResolutionError when there are too few samples for k2 derivatives.
AdmissibilityReport check_cone_admissibility(const ConeGeometry& geom);

// Reads "z,perturbation" rows (a header line is allowed).
ConeGeometry read_perturbation_csv(const std::filesystem::path& path, double b0, double eps0,
                                   int k1, int k2);

void write_perturbation_csv(const std::filesystem::path& path, const ConeGeometry& geom);

} // namespace singflow::conical

#include "singflow/vortex/rings.hpp"

#include "singflow/errors.hpp"

#include <cmath>
#include <numbers>

namespace singflow::vortex {

namespace {

constexpr double kPi = std::numbers::pi;

// I0 = int_0^{2pi} dth / (A - B cos th)^{3/2}, I1 = same with cos th in the
// numerator. For small B/A, I1 comes from its binomial series, since the
// elliptic form cancels catastrophically.
struct Moments {
    double i0 = 0.0;
    double i1 = 0.0;
};

Moments ring_moments(double A, double B) {
    const double x = B / A;
    Moments m;
    if (x < 0.1) {
        // (1 - y)^{-3/2} = sum c_n y^n with c_n = prod_{k<=n} (2k + 1) / (2k).
        // Even powers of cos integrate to 2 pi (2m)! / (4^m (m!)^2).
        double c = 1.0;
        double cos_even = 2.0 * kPi;  // int cos^0
        double xn = 1.0;
        double s0 = 0.0;
        double s1 = 0.0;
        for (int n = 0; n <= 24; ++n) {
            if (n > 0) {
                c *= (2.0 * n + 1.0) / (2.0 * n);
                xn *= x;
            }
            if (n % 2 == 0) {
                if (n > 0) {
                    cos_even *= (n - 1.0) / static_cast<double>(n);
                }
                s0 += c * xn * cos_even;
            } else {
                s1 += c * xn * cos_even * static_cast<double>(n) / (n + 1.0);
            }
        }
        const double scale = std::pow(A, -1.5);
        m.i0 = scale * s0;
        m.i1 = scale * s1;
        return m;
    }
    const double k = std::sqrt(2.0 * B / (A + B));
    const double root = std::sqrt(A + B);
    const double E = std::comp_ellint_2(k);
    const double K = std::comp_ellint_1(k);
    m.i0 = 4.0 * E / ((A - B) * root);
    m.i1 = (A * m.i0 - 4.0 * K / root) / B;
    return m;
}

numerics::Vector flatten(const std::vector<RZ>& pts) {
    numerics::Vector y(2 * pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        y[2 * i] = pts[i].r;
        y[2 * i + 1] = pts[i].z;
    }
    return y;
}

std::vector<RZ> unflatten(const numerics::Vector& y) {
    std::vector<RZ> pts(y.size() / 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = RZ{y[2 * i], y[2 * i + 1]};
    }
    return pts;
}

} // namespace

void RingCloudAxi::validate() const {
    if (!(delta > 0.0)) {
        throw DomainError("ring core width delta must be positive");
    }
    if (positions.size() != circulations.size()) {
        throw ShapeError("positions and circulations differ in length");
    }
    for (const RZ& p : positions) {
        if (!std::isfinite(p.r) || !std::isfinite(p.z)) {
            throw NonFiniteState("ring cloud holds a non-finite position");
        }
        if (!(p.r > 0.0)) {
            throw DomainError("rings must lie off the axis (r > 0)");
        }
    }
}

RingVelocity single_ring_velocity(double a, double z0, double gamma, double delta, RZ target) {
    const double dz = target.z - z0;
    const double r = target.r;
    const double A = r * r + a * a + dz * dz + delta * delta;
    if (r == 0.0) {
        return {0.0, gamma * a * a / (2.0 * A * std::sqrt(A))};
    }
    const double B = 2.0 * a * r;
    const Moments m = ring_moments(A, B);
    const double pre = gamma * a / (4.0 * kPi);
    return {pre * dz * m.i1, pre * (a * m.i0 - r * m.i1)};
}

RingVelocity ring_velocity(const RingCloudAxi& cloud, RZ target) {
    if (target.r < 0.0) {
        throw DomainError("target radius must be non-negative");
    }
    RingVelocity u;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const RingVelocity v = single_ring_velocity(cloud.positions[i].r, cloud.positions[i].z,
                                                    cloud.circulations[i], cloud.delta, target);
        u.ur += v.ur;
        u.uz += v.uz;
    }
    if (target.r == 0.0) {
        u.ur = 0.0;
    }
    return u;
}

RingCloudAxi step_axisym(const RingCloudAxi& cloud, double dt) {
    cloud.validate();
    RingCloudAxi frozen = cloud;
    const numerics::VectorField field = [&frozen](double, const numerics::Vector& y) {
        frozen.positions = unflatten(y);
        numerics::Vector d(y.size());
        for (std::size_t i = 0; i < frozen.size(); ++i) {
            const RZ p = frozen.positions[i];
            if (!(p.r > 0.0)) {
                throw AxisCollision("ring " + std::to_string(i) + " reached the axis");
            }
            const RingVelocity u = ring_velocity(frozen, p);
            d[2 * i] = u.ur;
            d[2 * i + 1] = u.uz;
        }
        return d;
    };
    RingCloudAxi out = cloud;
    out.positions = unflatten(numerics::rk4_step(field, flatten(cloud.positions), 0.0, dt));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out.positions[i].r > 0.0)) {
            throw AxisCollision("ring " + std::to_string(i) + " reached the axis");
        }
    }
    return out;
}

AxisymInvariants axisym_invariants(const RingCloudAxi& cloud) {
    AxisymInvariants inv;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        inv.circulation += cloud.circulations[i];
        inv.impulse += cloud.circulations[i] * cloud.positions[i].r * cloud.positions[i].r;
    }
    inv.impulse *= kPi;
    return inv;
}

AxisEnergyTable axis_energy_probe(const std::vector<std::pair<double, RingCloudAxi>>& history,
                                  const std::vector<double>& radii,
                                  const AxisProbeOptions& opts) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] < radii[k - 1]))) {
            throw DomainError("probe radii must be positive and decreasing");
        }
    }
    if (opts.nr == 0 || opts.nz == 0 || !(opts.r_max > 0.0) || !(opts.z_half_width > 0.0)) {
        throw DomainError("probe window must be non-empty");
    }
    AxisEnergyTable table;
    table.radii = radii;
    table.max_fraction.assign(radii.size(), 0.0);
    const double hr = opts.r_max / static_cast<double>(opts.nr);
    const double hz = 2.0 * opts.z_half_width / static_cast<double>(opts.nz);
    for (const auto& [t, cloud] : history) {
        AxisEnergyRow row;
        row.t = t;
        row.energy.assign(radii.size(), 0.0);
        double zc = 0.0;
        double gsum = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            zc += std::abs(cloud.circulations[i]) * cloud.positions[i].z;
            gsum += std::abs(cloud.circulations[i]);
        }
        zc = gsum > 0.0 ? zc / gsum : 0.0;
        for (std::size_t a = 0; a < opts.nr; ++a) {
            const double r = (static_cast<double>(a) + 0.5) * hr;
            double band = 0.0;
            for (std::size_t b = 0; b < opts.nz; ++b) {
                const double z = zc - opts.z_half_width + (static_cast<double>(b) + 0.5) * hz;
                const RingVelocity u = ring_velocity(cloud, {r, z});
                band += (u.ur * u.ur + u.uz * u.uz) * 2.0 * kPi * r * hr * hz;
            }
            row.total += band;
            for (std::size_t k = 0; k < radii.size(); ++k) {
                if (r < radii[k]) {
                    row.energy[k] += band;
                }
            }
        }
        for (std::size_t k = 0; k < radii.size(); ++k) {
            const double frac = row.total > 0.0 ? row.energy[k] / row.total : 0.0;
            table.max_fraction[k] = std::max(table.max_fraction[k], frac);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace singflow::vortex

#include "singflow/vortex/diagnostics.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace singflow::vortex {

namespace {

double ball_mass(const BlobCloud2D& cloud, Vec2 c, double r2) {
    double m = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double d1 = cloud.positions[i].x1 - c.x1;
        const double d2 = cloud.positions[i].x2 - c.x2;
        if (d1 * d1 + d2 * d2 <= r2) {
            m += std::abs(cloud.circulations[i]);
        }
    }
    return m;
}

} // namespace

ConcentrationReport concentration_sup(const BlobCloud2D& cloud, double ball_radius,
                                      double sweep_spacing) {
    if (!(ball_radius > 0.0) || !(sweep_spacing > 0.0) || sweep_spacing > 0.5 * ball_radius) {
        throw DomainError("concentration sweep needs r > 0 and 0 < spacing <= r / 2");
    }
    ConcentrationReport rep;
    rep.ball_radius = ball_radius;
    if (cloud.size() == 0) {
        return rep;
    }
    const double r2 = ball_radius * ball_radius;
    const auto consider = [&](Vec2 c) {
        const double m = ball_mass(cloud, c, r2);
        if (m > rep.sup_mass) {
            rep.sup_mass = m;
            rep.arg_center = c;
        }
    };

    for (const Vec2& p : cloud.positions) {
        consider(p);
    }
    double lo1 = cloud.positions[0].x1;
    double hi1 = lo1;
    double lo2 = cloud.positions[0].x2;
    double hi2 = lo2;
    for (const Vec2& p : cloud.positions) {
        lo1 = std::min(lo1, p.x1);
        hi1 = std::max(hi1, p.x1);
        lo2 = std::min(lo2, p.x2);
        hi2 = std::max(hi2, p.x2);
    }
    lo1 -= ball_radius;
    lo2 -= ball_radius;
    hi1 += ball_radius;
    hi2 += ball_radius;
    const auto n1 = static_cast<std::size_t>(std::ceil((hi1 - lo1) / sweep_spacing));
    const auto n2 = static_cast<std::size_t>(std::ceil((hi2 - lo2) / sweep_spacing));
    for (std::size_t a = 0; a <= n1; ++a) {
        for (std::size_t b = 0; b <= n2; ++b) {
            consider({lo1 + static_cast<double>(a) * sweep_spacing,
                      lo2 + static_cast<double>(b) * sweep_spacing});
        }
    }
    return rep;
}

double local_energy(const BlobCloud2D& cloud, double R, std::size_t resolution) {
    if (!(R > 0.0) || resolution == 0) {
        throw DomainError("local energy needs R > 0 and a positive resolution");
    }
    const double h = 2.0 * R / static_cast<double>(resolution);
    std::vector<Vec2> targets;
    for (std::size_t a = 0; a < resolution; ++a) {
        for (std::size_t b = 0; b < resolution; ++b) {
            const Vec2 c{-R + (static_cast<double>(a) + 0.5) * h, -R + (static_cast<double>(b) + 0.5) * h};
            if (c.x1 * c.x1 + c.x2 * c.x2 <= R * R) {
                targets.push_back(c);
            }
        }
    }
    const std::vector<Vec2> u = velocity_field(cloud, targets);
    double e = 0.0;
    for (const Vec2& v : u) {
        e += (v.x1 * v.x1 + v.x2 * v.x2) * h * h;
    }
    return e;
}

InvariantRecord invariants2d(const BlobCloud2D& cloud) {
    InvariantRecord rec;
    const double d2 = cloud.delta * cloud.delta;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double g = cloud.circulations[i];
        const Vec2 x = cloud.positions[i];
        rec.impulse.x1 += g * x.x1;
        rec.impulse.x2 += g * x.x2;
        rec.angular_impulse += g * (x.x1 * x.x1 + x.x2 * x.x2);
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            const double a = x.x1 - cloud.positions[j].x1;
            const double b = x.x2 - cloud.positions[j].x2;
            rec.hamiltonian += g * cloud.circulations[j] * std::log(a * a + b * b + d2);
        }
    }
    rec.circulation = cloud.total_circulation();
    rec.hamiltonian *= -1.0 / (4.0 * std::numbers::pi);
    return rec;
}

} // namespace singflow::vortex

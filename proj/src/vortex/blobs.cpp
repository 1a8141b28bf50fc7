#include "singflow/vortex/blobs.hpp"

#include "singflow/errors.hpp"

#include <cmath>
#include <numbers>

namespace singflow::vortex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

numerics::Vector flatten(const std::vector<Vec2>& pts) {
    numerics::Vector y(2 * pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        y[2 * i] = pts[i].x1;
        y[2 * i + 1] = pts[i].x2;
    }
    return y;
}

std::vector<Vec2> unflatten(const numerics::Vector& y) {
    std::vector<Vec2> pts(y.size() / 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = Vec2{y[2 * i], y[2 * i + 1]};
    }
    return pts;
}

} // namespace

double BlobCloud2D::total_circulation() const {
    double s = 0.0;
    if (mirror_paired) {
        const std::size_t half = circulations.size() / 2;
        for (std::size_t k = 0; k < half; ++k) {
            s += circulations[k] + circulations[k + half];
        }
        return s;
    }
    for (const double g : circulations) {
        s += g;
    }
    return s;
}

double BlobCloud2D::total_abs_circulation() const {
    double s = 0.0;
    for (const double g : circulations) {
        s += std::abs(g);
    }
    return s;
}

void BlobCloud2D::validate() const {
    if (!(delta > 0.0)) {
        throw DomainError("blob width delta must be positive");
    }
    if (positions.size() != circulations.size()) {
        throw ShapeError("positions and circulations differ in length");
    }
    if (mirror_paired && positions.size() % 2 != 0) {
        throw ShapeError("mirror-paired cloud needs an even atom count");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (!std::isfinite(positions[i].x1) || !std::isfinite(positions[i].x2) ||
            !std::isfinite(circulations[i])) {
            throw NonFiniteState("blob cloud holds a non-finite value");
        }
    }
}

Vec2 kernel2d(Vec2 x, double delta) {
    const double r2 = x.x1 * x.x1 + x.x2 * x.x2;
    if (r2 == 0.0) {
        return {};
    }
    const double w = 1.0 / (kTwoPi * (r2 + delta * delta));
    return {-x.x2 * w, x.x1 * w};
}

std::vector<Vec2> velocity_field(const BlobCloud2D& cloud, std::span<const Vec2> targets) {
    std::vector<Vec2> out(targets.size());
    const double delta = cloud.delta;
    const std::size_t n = cloud.size();
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const Vec2 p = targets[t];
        double u1 = 0.0;
        double u2 = 0.0;
        if (cloud.mirror_paired) {
            const std::size_t half = n / 2;
            for (std::size_t k = 0; k < half; ++k) {
                const Vec2 a = cloud.positions[k];
                const Vec2 b = cloud.positions[k + half];
                const Vec2 ka = kernel2d({p.x1 - a.x1, p.x2 - a.x2}, delta);
                const Vec2 kb = kernel2d({p.x1 - b.x1, p.x2 - b.x2}, delta);
                const double g = cloud.circulations[k];
                u1 += g * (ka.x1 - kb.x1);
                u2 += g * (ka.x2 - kb.x2);
            }
        } else {
            for (std::size_t k = 0; k < n; ++k) {
                const Vec2 a = cloud.positions[k];
                const Vec2 ka = kernel2d({p.x1 - a.x1, p.x2 - a.x2}, delta);
                u1 += cloud.circulations[k] * ka.x1;
                u2 += cloud.circulations[k] * ka.x2;
            }
        }
        out[t] = {u1, u2};
    }
    return out;
}

BlobCloud2D step(const BlobCloud2D& cloud, double dt) {
    cloud.validate();
    BlobCloud2D frozen = cloud;
    const numerics::VectorField field = [&frozen](double, const numerics::Vector& y) {
        frozen.positions = unflatten(y);
        const std::vector<Vec2> u = velocity_field(frozen, frozen.positions);
        return flatten(u);
    };
    BlobCloud2D out = cloud;
    out.positions = unflatten(numerics::rk4_step(field, flatten(cloud.positions), 0.0, dt));
    return out;
}

} // namespace singflow::vortex

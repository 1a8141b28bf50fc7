#include "singflow/vortex/sheet.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace singflow::vortex {

BlobCloud2D build_sheet(const SheetSpec& spec, std::size_t n, double delta) {
    if (n < 2) {
        throw DomainError("a sheet needs at least 2 atoms");
    }
    if (!spec.curve || !spec.strength) {
        throw DegenerateSpec("sheet spec is missing its curve or strength");
    }
    BlobCloud2D cloud;
    cloud.delta = delta;
    cloud.positions.reserve(n);
    cloud.circulations.reserve(n);
    const double dn = static_cast<double>(n);
    double length = 0.0;
    Vec2 prev = spec.curve(0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 next = spec.curve(static_cast<double>(k + 1) / dn);
        const double chord = std::hypot(next.x1 - prev.x1, next.x2 - prev.x2);
        const double s = (static_cast<double>(k) + 0.5) / dn;
        cloud.positions.push_back(spec.curve(s));
        cloud.circulations.push_back(spec.strength(s) * chord);
        length += chord;
        prev = next;
    }
    if (!(length > 0.0)) {
        throw DegenerateSpec("sheet curve has zero length");
    }
    cloud.validate();
    return spec.pattern == SignPattern::NMSPair ? mirror_symmetrize(cloud) : cloud;
}

BlobCloud2D mirror_symmetrize(const BlobCloud2D& half) {
    if (half.mirror_paired) {
        throw NotNMS("cloud is already mirror-paired");
    }
    const std::size_t n = half.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (!(half.positions[k].x1 > 0.0) || half.circulations[k] < 0.0) {
            throw NotNMS("atom " + std::to_string(k) + " is not in x1 > 0 with Gamma >= 0");
        }
    }
    BlobCloud2D out = half;
    out.positions.reserve(2 * n);
    out.circulations.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.positions.push_back({-half.positions[k].x1, half.positions[k].x2});
        out.circulations.push_back(-half.circulations[k]);
    }
    out.mirror_paired = true;
    return out;
}

namespace {

double pair_defect(const BlobCloud2D& c, std::size_t i, std::size_t j) {
    return std::max({std::abs(c.positions[i].x1 + c.positions[j].x1),
                     std::abs(c.positions[i].x2 - c.positions[j].x2),
                     std::abs(c.circulations[i] + c.circulations[j])});
}

} // namespace

double mirror_symmetry_error(const BlobCloud2D& cloud) {
    if (!cloud.mirror_paired || cloud.size() % 2 != 0) {
        throw ShapeError("mirror_symmetry_error needs a mirror-paired cloud");
    }
    const std::size_t half = cloud.size() / 2;
    double worst = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        worst = std::max(worst, pair_defect(cloud, k, k + half));
    }
    return worst;
}

bool check_mirror_symmetry(const BlobCloud2D& cloud, double tol) {
    const std::size_t n = cloud.size();
    if (n % 2 != 0) {
        return false;
    }
    if (cloud.mirror_paired && mirror_symmetry_error(cloud) <= tol) {
        return true;
    }
    // General layout: greedy matching in index order.
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) {
            continue;
        }
        bool found = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!used[j] && pair_defect(cloud, i, j) <= tol) {
                used[i] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

} // namespace singflow::vortex

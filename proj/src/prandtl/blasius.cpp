#include "singflow/prandtl/blasius.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace singflow::prandtl {

namespace {

numerics::Vector blasius_rhs(double /*eta*/, const numerics::Vector& y) {
    return {y[1], y[2], -0.5 * y[0] * y[2]};
}

} // namespace

BlasiusProfile blasius_profile(std::size_t ny, double eta_max) {
    if (ny < 100) {
        throw DomainError("Blasius profile needs ny >= 100");
    }
    if (!(eta_max > 0.0)) {
        throw DomainError("eta_max must be positive");
    }
    const double h = eta_max / static_cast<double>(ny);
    const auto shoot = [&](double wall_slope, BlasiusProfile* keep) {
        numerics::Vector y{0.0, 0.0, wall_slope};
        if (keep) {
            keep->eta.assign(1, 0.0);
            keep->f.assign(1, 0.0);
            keep->fp.assign(1, 0.0);
            keep->fpp.assign(1, wall_slope);
        }
        for (std::size_t k = 0; k < ny; ++k) {
            y = numerics::rk4_step(blasius_rhs, y, h * static_cast<double>(k), h);
            if (keep) {
                keep->eta.push_back(h * static_cast<double>(k + 1));
                keep->f.push_back(y[0]);
                keep->fp.push_back(y[1]);
                keep->fpp.push_back(y[2]);
            }
        }
        return y[1] - 1.0;
    };

    const double slope = numerics::bisect_root([&](double s) { return shoot(s, nullptr); }, 0.1,
                                               1.0, 1e-15);
    BlasiusProfile prof;
    shoot(slope, &prof);
    prof.wall_slope = slope;
    prof.displacement = prof.eta.back() - prof.f.back();
    return prof;
}

double BlasiusProfile::velocity(double eta_query) const {
    if (eta_query <= 0.0) {
        return 0.0;
    }
    if (eta_query >= eta.back()) {
        return 1.0;
    }
    const double h = eta[1] - eta[0];
    const auto i = std::min(static_cast<std::size_t>(eta_query / h), eta.size() - 2);
    const double t = (eta_query - eta[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * fp[i] + h10 * h * fpp[i] + h01 * fp[i + 1] + h11 * h * fpp[i + 1];
}

double blasius_displacement_thickness(const BlasiusProfile& prof, double nu, double x, double U) {
    return prof.displacement * std::sqrt(nu * x / U);
}

double blasius_velocity(const BlasiusProfile& prof, double nu, double x, double U, double y) {
    return U * prof.velocity(y / std::sqrt(nu * x / U));
}

} // namespace singflow::prandtl

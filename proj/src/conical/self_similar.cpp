#include "singflow/conical/self_similar.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace singflow::conical {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// y = (g, g'), integrated in t in [0, 1] with s = s_shock - span t^2. The
// quadratic map clusters nodes at the front, where weak shocks leave a
// square-root layer of width ~ (sigma - mu).
double mapped_s(double s_shock, double span, double t) {
    return s_shock - span * t * t;
}

numerics::VectorField inward_field(double s_shock, double span, const Freestream& fs,
                                   const GasModel& gas) {
    return [=](double t, const numerics::Vector& y) {
        const double s = mapped_s(s_shock, span, t);
        const double ds_dt = -2.0 * span * t;
        return numerics::Vector{ds_dt * y[1], ds_dt * similarity_g2(s, y[0], y[1], fs, gas)};
    };
}

numerics::Vector shock_state(const Freestream& fs, const GasModel& gas, double sigma) {
    const double slope = std::tan(sigma);
    const ConicalVelocity vel = post_shock_velocity(rh_downstream(fs, gas, slope), slope);
    return {0.0, vel.radial};
}

// Sign of the body-tangency miss for a trial shock angle: negative while
// the flow at s = b0 still points inside the ray (V < b0 W), positive once
// tangency was crossed at some s >= b0. nullopt when the integration breaks
// down before deciding.
std::optional<double> tangency_miss(const Freestream& fs, const GasModel& gas, double b0,
                                    double sigma, std::size_t steps) {
    const double s_shock = std::tan(sigma);
    if (!(s_shock > b0)) {
        return std::nullopt;
    }
    const double span = s_shock - b0;
    const double h = 1.0 / static_cast<double>(steps);
    const auto field = inward_field(s_shock, span, fs, gas);
    numerics::Vector y;
    try {
        y = shock_state(fs, gas, sigma);
    } catch (const NumericalError&) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = h * static_cast<double>(i);
        try {
            y = numerics::rk4_step(field, y, t, h);
        } catch (const NumericalError&) {
            return std::nullopt;
        }
        const double s = i + 1 == steps ? b0 : mapped_s(s_shock, span, h * static_cast<double>(i + 1));
        const double axial = fs.q0 + y[0] - s * y[1];
        const double miss = y[1] - s * axial;
        if (miss >= 0.0) {
            return i + 1 == steps ? miss : 1.0;
        }
        if (i + 1 == steps) {
            return miss;
        }
    }
    return std::nullopt;
}

} // namespace

double similarity_g2(double s, double g, double gp, const Freestream& fs, const GasModel& gas) {
    const double v = gp;
    const double w = fs.q0 + g - s * gp;
    const double c2 = sound_speed_sq_from_speed(v * v + w * w, fs, gas);
    const double cross = w * s - v;
    const double coeff = cross * cross - c2 * (1.0 + s * s);
    if (!(coeff < 0.0)) {
        throw SolverFailure("conical equation reached its sonic singularity");
    }
    return c2 * v / (s * coeff);
}

SelfSimilarSolution integrate_from_shock(const Freestream& fs, const GasModel& gas, double b0,
                                         double sigma, std::size_t steps) {
    if (steps < 2) {
        throw DomainError("similarity integration needs at least 2 steps");
    }
    SelfSimilarSolution sol;
    sol.gas = gas;
    sol.fs = fs;
    sol.b0 = b0;
    sol.sigma = sigma;
    sol.shock_slope = std::tan(sigma);

    const std::size_t n = steps + 1;
    sol.s.resize(n);
    sol.g.resize(n);
    sol.dr_phi.resize(n);
    sol.dz_phi.resize(n);
    sol.g2.resize(n);
    sol.density.resize(n);

    const double span = sol.shock_slope - b0;
    const double h = 1.0 / static_cast<double>(steps);
    const auto field = inward_field(sol.shock_slope, span, fs, gas);
    numerics::Vector y = shock_state(fs, gas, sigma);

    // Fill from the front (index n-1) down to the body (index 0).
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = n - 1 - k;
        const double s = k + 1 == n ? b0 : mapped_s(sol.shock_slope, span, h * static_cast<double>(k));
        sol.s[idx] = s;
        sol.g[idx] = y[0];
        sol.dr_phi[idx] = y[1];
        sol.dz_phi[idx] = y[0] - s * y[1];
        sol.g2[idx] = similarity_g2(s, y[0], y[1], fs, gas);
        const double w = fs.q0 + sol.dz_phi[idx];
        sol.density[idx] = bernoulli_density(y[1] * y[1] + w * w, fs, gas);
        if (k + 1 < n) {
            y = numerics::rk4_step(field, y, h * static_cast<double>(k), h);
        }
    }
    return sol;
}

SelfSimilarSolution solve_self_similar(const Freestream& fs, const GasModel& gas, double b0,
                                       double tol, const SimilarityOptions& opts) {
    gas.validate();
    if (!(fs.mach(gas) > 1.0)) {
        throw NotSupersonic("freestream Mach number must exceed 1");
    }
    fs.validate(gas);
    if (!(b0 > 0.0)) {
        throw DomainError("cone slope b0 must be positive");
    }
    if (!(tol > 0.0)) {
        throw DomainError("shooting tolerance must be positive");
    }

    const double mu = std::asin(1.0 / fs.mach(gas));
    const double sigma_max = opts.sigma_max_deg * kDeg;
    if (!(sigma_max > mu) || !(std::atan(b0) < sigma_max)) {
        throw DetachedShock("cone wider than the admissible shock-angle range");
    }

    // The Mach angle itself carries no disturbance, so V = 0 < b0 W there.
    // Quadratic spacing resolves the thin-cone roots sitting close to mu.
    double lo = mu;
    std::optional<double> hi;
    for (std::size_t k = 1; k <= opts.scan_points; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(opts.scan_points);
        const double sigma = mu + (sigma_max - mu) * frac * frac;
        if (std::tan(sigma) <= b0) {
            lo = sigma;
            continue;
        }
        const auto miss = tangency_miss(fs, gas, b0, sigma, opts.steps);
        if (!miss) {
            continue;
        }
        if (*miss >= 0.0) {
            hi = sigma;
            break;
        }
        lo = sigma;
    }
    if (!hi) {
        throw DetachedShock("no shock angle achieves body tangency; shock detaches");
    }

    const auto sign_of_miss = [&](double sigma) {
        if (sigma <= mu) {
            return -1.0;
        }
        const auto miss = tangency_miss(fs, gas, b0, sigma, opts.steps);
        if (!miss) {
            throw SolverFailure("similarity integration failed inside the shooting bracket");
        }
        return *miss;
    };
    const double sigma = numerics::bisect_root(sign_of_miss, lo, *hi, tol);
    return integrate_from_shock(fs, gas, b0, sigma, opts.steps);
}

SimilarityPoint SelfSimilarSolution::at(double s_query) const {
    const double sq = std::clamp(s_query, s.front(), s.back());
    const auto it = std::upper_bound(s.begin(), s.end(), sq);
    std::size_t i = static_cast<std::size_t>(it - s.begin());
    i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, s.size() - 2);

    const double h = s[i + 1] - s[i];
    const double t = (sq - s[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);

    // dV/ds = g'', d(dz_phi)/ds = -s g''.
    const double v = h00 * dr_phi[i] + h10 * h * g2[i] + h01 * dr_phi[i + 1] + h11 * h * g2[i + 1];
    const double w = h00 * dz_phi[i] - h10 * h * s[i] * g2[i] + h01 * dz_phi[i + 1] -
                     h11 * h * s[i + 1] * g2[i + 1];
    return SimilarityPoint{v, w};
}

double SelfSimilarSolution::g_at(double s_query) const {
    const double sq = std::clamp(s_query, s.front(), s.back());
    const auto it = std::upper_bound(s.begin(), s.end(), sq);
    std::size_t i = static_cast<std::size_t>(it - s.begin());
    i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, s.size() - 2);
    const double h = s[i + 1] - s[i];
    const double t = (sq - s[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * g[i] + h10 * h * dr_phi[i] + h01 * g[i + 1] + h11 * h * dr_phi[i + 1];
}

double similarity_residual(const SelfSimilarSolution& sol) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < sol.s.size(); ++i) {
        const double fd = (sol.dr_phi[i + 1] - sol.dr_phi[i - 1]) / (sol.s[i + 1] - sol.s[i - 1]);
        const double exact = similarity_g2(sol.s[i], sol.g[i], sol.dr_phi[i], sol.fs, sol.gas);
        worst = std::max(worst, std::abs(fd - exact));
    }
    return worst;
}

} // namespace singflow::conical

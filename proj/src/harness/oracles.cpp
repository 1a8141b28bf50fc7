#include "singflow/harness/oracles.hpp"

#include "singflow/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

namespace singflow::harness::oracles {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;  // (V_r, V_theta)

struct Flow {
    double gamma;
    double q0;
    double total_enthalpy;  // q0^2 / 2 + 1 / (gamma - 1)

    double c2(double speed_sq) const { return (gamma - 1.0) * (total_enthalpy - 0.5 * speed_sq); }
};

// Normal velocity behind a shock of angle sigma.
double downstream_normal(const Flow& f, double sigma, ShockModel model) {
    const double un0 = f.q0 * std::sin(sigma);
    const double ut = f.q0 * std::cos(sigma);
    if (model == ShockModel::Euler) {
        const double m2 = un0 * un0;
        return un0 * ((f.gamma - 1.0) * m2 + 2.0) / ((f.gamma + 1.0) * m2);
    }
    const double expo = 1.0 / (f.gamma - 1.0);
    const auto flux = [&](double un) {
        const double c2 = f.c2(ut * ut + un * un);
        return c2 > 0.0 ? std::pow(c2, expo) * un : 0.0;
    };
    // Mass flux peaks at the sonic normal speed; the compressive root lies below it.
    const auto peak = boost::math::tools::brent_find_minima(
        [&](double un) { return -flux(un); }, 0.0, un0, 50);
    const double u_sonic = peak.first;
    const double target = flux(un0);
    if (!(u_sonic < un0)) {
        return un0;
    }
    boost::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(
        [&](double un) { return flux(un) - target; }, 1e-14 * un0, u_sonic,
        boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (root.first + root.second);
}

// Polar angle where V_theta first vanishes when integrating inward from the
// shock; nullopt if the flow turns sonic or reaches the axis first.
std::optional<double> zero_angle(const Flow& f, double sigma, ShockModel model) {
    const double un = downstream_normal(f, sigma, model);
    State y{f.q0 * std::cos(sigma), -un};
    // tau = sigma - theta runs forward.
    const auto rhs = [&](const State& s, State& d, double tau) {
        const double th = sigma - tau;
        const double vr = s[0];
        const double vt = s[1];
        const double c2 = f.c2(vr * vr + vt * vt);
        const double dvt = (vt * vt * vr - c2 * (2.0 * vr + vt / std::tan(th))) / (c2 - vt * vt);
        d[0] = -vt;
        d[1] = -dvt;
    };
    auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(y, 0.0, 1e-6 * sigma);
    const double tau_end = sigma * (1.0 - 1e-6);
    while (stepper.current_time() < tau_end) {
        const State before = stepper.current_state();
        const double t_before = stepper.current_time();
        stepper.do_step(rhs);
        const State after = stepper.current_state();
        const double c2 = f.c2(after[0] * after[0] + after[1] * after[1]);
        if (!std::isfinite(after[1]) || c2 <= after[1] * after[1]) {
            return std::nullopt;
        }
        if (before[1] < 0.0 && after[1] >= 0.0) {
            State tmp;
            const auto vt_at = [&](double tau) {
                stepper.calc_state(tau, tmp);
                return tmp[1];
            };
            boost::uintmax_t iters = 200;
            const auto r = boost::math::tools::toms748_solve(
                vt_at, t_before, stepper.current_time(), boost::math::tools::eps_tolerance<double>(52),
                iters);
            return sigma - 0.5 * (r.first + r.second);
        }
    }
    return std::nullopt;
}

} // namespace

double taylor_maccoll_shock_angle(double mach, double gamma, double cone_half_angle,
                                  ShockModel model) {
    if (!(mach > 1.0) || !(gamma > 1.0) || !(cone_half_angle > 0.0)) {
        throw DomainError("oracle needs mach > 1, gamma > 1 and a positive cone angle");
    }
    const Flow f{gamma, mach, 0.5 * mach * mach + 1.0 / (gamma - 1.0)};
    const double mu = std::asin(1.0 / mach);
    const double top = 80.0 * std::numbers::pi / 180.0;
    const auto miss = [&](double sigma) {
        const auto th = zero_angle(f, sigma, model);
        return th ? *th - cone_half_angle : -cone_half_angle;
    };
    const int n = 2000;
    double lo = mu * (1.0 + 1e-9);
    for (int k = 1; k <= n; ++k) {
        const double sigma = mu + (top - mu) * k / n;
        const auto th = zero_angle(f, sigma, model);
        if (th && *th >= cone_half_angle) {
            boost::uintmax_t iters = 200;
            const auto r = boost::math::tools::toms748_solve(
                miss, lo, sigma, boost::math::tools::eps_tolerance<double>(48), iters);
            return 0.5 * (r.first + r.second);
        }
        if (th) {
            lo = sigma;
        }
    }
    throw DetachedShock("oracle found no attached conical shock");
}

vortex::RingVelocity ring_line_integral(double a, double z0, double gamma, double delta,
                                        vortex::RZ target, std::size_t n) {
    double ur = 0.0;
    double uz = 0.0;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double th = (static_cast<double>(k) + 0.5) * h;
        const double c = std::cos(th);
        const double s = std::sin(th);
        // Source at (a c, a s, z0), tangent a(-s, c, 0); target (r, 0, z).
        const double R1 = target.r - a * c;
        const double R2 = -a * s;
        const double R3 = target.z - z0;
        const double d2 = R1 * R1 + R2 * R2 + R3 * R3 + delta * delta;
        const double inv = 1.0 / (d2 * std::sqrt(d2));
        // (tangent x R) projected on e_x and e_z.
        ur += a * c * R3 * inv;
        uz += a * (-s * R2 - c * R1) * inv;
    }
    const double pre = gamma * h / (4.0 * std::numbers::pi);
    return {pre * ur, pre * uz};
}

} // namespace singflow::harness::oracles

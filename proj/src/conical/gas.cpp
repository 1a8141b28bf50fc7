#include "singflow/conical/gas.hpp"

#include "singflow/errors.hpp"
#include "singflow/numerics.hpp"

#include <cmath>

namespace singflow::conical {

void GasModel::validate() const {
    if (!(gamma > 1.0 && gamma < 3.0)) {
        throw DomainError("adiabatic exponent must satisfy 1 < gamma < 3");
    }
    if (!(A > 0.0)) {
        throw DomainError("gas constant A must be positive");
    }
}

double Freestream::sound_speed(const GasModel& gas) const {
    return conical::sound_speed(rho0, gas);
}

double Freestream::total_enthalpy(const GasModel& gas) const {
    return 0.5 * q0 * q0 + enthalpy(rho0, gas);
}

void Freestream::validate(const GasModel& gas) const {
    gas.validate();
    if (!(rho0 > 0.0)) {
        throw NonPhysicalDensity("freestream density must be positive");
    }
    if (!(mach(gas) > 1.0)) {
        throw NotSupersonic("freestream Mach number must exceed 1");
    }
}

Freestream Freestream::unit_sound_speed(double mach, GasModel& gas) {
    gas.A = 1.0 / gas.gamma;
    return Freestream{mach, 1.0};
}

double sound_speed(double rho, const GasModel& gas) {
    if (!(rho > 0.0)) {
        throw NonPhysicalDensity("density must be positive");
    }
    return std::sqrt(gas.A * gas.gamma * std::pow(rho, gas.gamma - 1.0));
}

double enthalpy(double rho, const GasModel& gas) {
    if (!(rho > 0.0)) {
        throw NonPhysicalDensity("density must be positive");
    }
    return gas.A * gas.gamma / (gas.gamma - 1.0) * std::pow(rho, gas.gamma - 1.0);
}

double bernoulli_density(double speed_sq, const Freestream& fs, const GasModel& gas) {
    const double h = fs.total_enthalpy(gas) - 0.5 * speed_sq;
    if (!(h > 0.0)) {
        throw VacuumReached("speed exceeds the cavitation bound");
    }
    return std::pow(h * (gas.gamma - 1.0) / (gas.A * gas.gamma), 1.0 / (gas.gamma - 1.0));
}

double sound_speed_sq_from_speed(double speed_sq, const Freestream& fs, const GasModel& gas) {
    const double h = fs.total_enthalpy(gas) - 0.5 * speed_sq;
    if (!(h > 0.0)) {
        throw VacuumReached("speed exceeds the cavitation bound");
    }
    return (gas.gamma - 1.0) * h;
}

PostShockState rh_downstream(const Freestream& fs, const GasModel& gas, double shock_slope) {
    const double sigma = std::atan(shock_slope);
    const double ut = fs.q0 * std::cos(sigma);
    const double un0 = fs.q0 * std::sin(sigma);
    const double c0 = fs.sound_speed(gas);
    const double normal_mach = un0 / c0;

    // Round-off slack so that the Mach angle itself yields the zero jump.
    if (normal_mach < 1.0 - 1e-12) {
        throw NoShockSolution("upstream normal Mach number below 1");
    }

    // Normal-sonic speed u* solves u^2 = (gamma-1)(H0 - (ut^2 + u^2)/2).
    const double h0 = fs.total_enthalpy(gas);
    const double u_star =
        std::sqrt(2.0 * (gas.gamma - 1.0) * (h0 - 0.5 * ut * ut) / (gas.gamma + 1.0));
    if (u_star >= un0) {
        return PostShockState{un0, ut, fs.rho0};
    }

    const double flux0 = fs.rho0 * un0;
    const auto residual = [&](double un) {
        return bernoulli_density(ut * ut + un * un, fs, gas) * un - flux0;
    };
    // The mass flux rises from 0 to its maximum at u*, so the compressive
    // root is the unique one in (0, u*].
    const double at_sonic = residual(u_star);
    if (at_sonic <= 0.0) {
        return PostShockState{u_star, ut, bernoulli_density(ut * ut + u_star * u_star, fs, gas)};
    }
    double un = 0.0;
    try {
        un = numerics::bisect_root(residual, 0.0, u_star, 1e-15 * fs.q0);
    } catch (const NoBracket& e) {
        throw SolverFailure(e.what());
    }
    return PostShockState{un, ut, bernoulli_density(ut * ut + un * un, fs, gas)};
}

ConicalVelocity post_shock_velocity(const PostShockState& st, double shock_slope) {
    const double sigma = std::atan(shock_slope);
    const double s = std::sin(sigma);
    const double c = std::cos(sigma);
    return ConicalVelocity{st.tangential * s - st.normal * c, st.tangential * c + st.normal * s};
}

} // namespace singflow::conical

#pragma once

// Polytropic gas p = A rho^gamma, uniform supersonic freestream along +z,
// Bernoulli density map and the potential-flow shock jump.

namespace singflow::conical {

struct GasModel {
    double gamma = 1.4;
    double A = 1.0;

    // Throws DomainError unless 1 < gamma < 3 and A > 0.
    void validate() const;
};

struct Freestream {
    double q0 = 3.0;
    double rho0 = 1.0;

    double sound_speed(const GasModel& gas) const;
    double mach(const GasModel& gas) const { return q0 / sound_speed(gas); }
    // 1/2 q0^2 + h(rho0), the Bernoulli constant.
    double total_enthalpy(const GasModel& gas) const;
    void validate(const GasModel& gas) const;

    // Freestream with density rho0 = 1 and A chosen so that c0 = 1, speed = mach.
    static Freestream unit_sound_speed(double mach, GasModel& gas);
};

// c = sqrt(A gamma rho^(gamma-1)). NonPhysicalDensity for rho <= 0.
double sound_speed(double rho, const GasModel& gas);

// h = A gamma / (gamma - 1) rho^(gamma-1), so that h' = p'/rho.
double enthalpy(double rho, const GasModel& gas);

// Inverse enthalpy evaluated at the Bernoulli constant minus 1/2 speed_sq.
// VacuumReached when the remaining enthalpy is not positive.
double bernoulli_density(double speed_sq, const Freestream& fs, const GasModel& gas);

// Squared sound speed from the local squared speed, c^2 = (gamma - 1) h.
double sound_speed_sq_from_speed(double speed_sq, const Freestream& fs, const GasModel& gas);

struct PostShockState {
    double normal = 0.0;      // velocity component through the front
    double tangential = 0.0;  // continuous across the front
    double density = 0.0;
};

// Jump across the straight front r = z tan(sigma) hit by the freestream.
// Keeps the tangential velocity and solves rho(u_n) u_n = rho0 q0 sin(sigma)
// for the compressive (normal-subsonic) root. NoShockSolution when the
// upstream normal Mach number is below one.
PostShockState rh_downstream(const Freestream& fs, const GasModel& gas, double shock_slope);

// Cylindrical velocity behind the front: radial component dr_phi and total
// axial component q0 + dz_phi.
struct ConicalVelocity {
    double radial = 0.0;
    double axial = 0.0;
};
ConicalVelocity post_shock_velocity(const PostShockState& st, double shock_slope);

} // namespace singflow::conical

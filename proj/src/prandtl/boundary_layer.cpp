#include "singflow/prandtl/boundary_layer.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace singflow::prandtl {

namespace {

constexpr std::size_t kMaxOffending = 32;

void record(DataCheck& c, double a, double b) {
    c.passed = false;
    if (c.offending.size() < kMaxOffending) {
        c.offending.emplace_back(a, b);
    }
}

// du/dx at (i, j): centered inside, second-order one-sided at the ends.
double ddx(const BLState& s, std::size_t i, std::size_t j) {
    const std::size_t n = s.nx;
    if (i == 0) {
        return (-3.0 * s.at(0, j) + 4.0 * s.at(1, j) - s.at(2, j)) / (2.0 * s.dx);
    }
    if (i == n - 1) {
        return (3.0 * s.at(n - 1, j) - 4.0 * s.at(n - 2, j) + s.at(n - 3, j)) / (2.0 * s.dx);
    }
    return (s.at(i + 1, j) - s.at(i - 1, j)) / (2.0 * s.dx);
}

void set_boundaries(BLState& s, const BLConfig& cfg, double t) {
    for (std::size_t j = 0; j < s.ny; ++j) {
        s.at(0, j) = cfg.u1(static_cast<double>(j) * s.dy, t);
    }
    for (std::size_t i = 0; i < s.nx; ++i) {
        s.at(i, 0) = 0.0;
        s.at(i, s.ny - 1) = cfg.U(static_cast<double>(i) * s.dx, t);
    }
}

} // namespace

void BLConfig::validate() const {
    if (!(nu >= 0.0) || !(L > 0.0) || !(T > 0.0) || !(y_max > 0.0) || !(dt > 0.0)) {
        throw DomainError("boundary-layer config needs nu >= 0 and L, T, y_max, dt > 0");
    }
    if (nx < 3 || ny < 3) {
        throw DomainError("boundary-layer grid needs nx, ny >= 3");
    }
    if (!U || !u0 || !u1 || !v0) {
        throw DomainError("boundary-layer config is missing U, u0, u1 or v0");
    }
}

numerics::Grid1D BLConfig::x_grid() const {
    return numerics::Grid1D::uniform(0.0, L, nx);
}

numerics::Grid1D BLConfig::y_grid() const {
    return numerics::Grid1D::uniform(0.0, y_max, ny);
}

numerics::Vector pressure_gradient(const Field2& U, const numerics::Grid1D& x, double t, double h) {
    const double hx = h * std::max(1.0, x.back() - x.front());
    numerics::Vector px(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double u = U(xi, t);
        const double ut = (U(xi, t + h) - U(xi, t - h)) / (2.0 * h);
        const double ux = (U(xi + hx, t) - U(xi - hx, t)) / (2.0 * hx);
        px[i] = -(ut + u * ux);
    }
    return px;
}

bool DataReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const DataCheck& c) { return c.passed; });
}

const DataCheck& DataReport::check(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::out_of_range("no data check named " + name);
}

DataReport validate_data(const BLConfig& cfg) {
    cfg.validate();
    const numerics::Grid1D x = cfg.x_grid();
    const numerics::Grid1D y = cfg.y_grid();
    std::vector<double> times;
    for (int k = 0; k <= 4; ++k) {
        times.push_back(cfg.T * k / 4.0);
    }

    DataCheck U_pos{"U>0", true, {}};
    DataCheck u0_pos{"u0>0", true, {}};
    DataCheck u1_pos{"u1>0", true, {}};
    DataCheck v0_neg{"v0<=0", true, {}};
    DataCheck u0_mono{"dy_u0>0", true, {}};
    DataCheck u1_mono{"dy_u1>0", true, {}};
    DataCheck px_fav{"px<=0", true, {}};

    for (const double t : times) {
        const numerics::Vector px = pressure_gradient(cfg.U, x, t);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(cfg.U(x[i], t) > 0.0)) {
                record(U_pos, x[i], t);
            }
            if (!(cfg.v0(x[i], t) <= 0.0)) {
                record(v0_neg, x[i], t);
            }
            // Round-off of the difference quotient is not a violation.
            if (px[i] > 1e-8) {
                record(px_fav, x[i], t);
            }
        }
        for (std::size_t j = 1; j < y.size(); ++j) {
            if (!(cfg.u1(y[j], t) > 0.0)) {
                record(u1_pos, y[j], t);
            }
            if (!(cfg.u1(y[j], t) > cfg.u1(y[j - 1], t))) {
                record(u1_mono, y[j], t);
            }
        }
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 1; j < y.size(); ++j) {
            if (!(cfg.u0(x[i], y[j]) > 0.0)) {
                record(u0_pos, x[i], y[j]);
            }
            if (!(cfg.u0(x[i], y[j]) > cfg.u0(x[i], y[j - 1]))) {
                record(u0_mono, x[i], y[j]);
            }
        }
    }

    DataReport rep;
    rep.checks = {U_pos, u0_pos, u1_pos, v0_neg, u0_mono, u1_mono, px_fav};
    return rep;
}

BLState initial_state(const BLConfig& cfg) {
    cfg.validate();
    BLState s;
    s.t = 0.0;
    s.nx = cfg.nx;
    s.ny = cfg.ny;
    s.dx = cfg.L / static_cast<double>(cfg.nx - 1);
    s.dy = cfg.y_max / static_cast<double>(cfg.ny - 1);
    s.u.assign(s.nx * s.ny, 0.0);
    for (std::size_t i = 0; i < s.nx; ++i) {
        for (std::size_t j = 0; j < s.ny; ++j) {
            s.at(i, j) = cfg.u0(static_cast<double>(i) * s.dx, static_cast<double>(j) * s.dy);
        }
    }
    set_boundaries(s, cfg, 0.0);
    s.px = pressure_gradient(cfg.U, cfg.x_grid(), 0.0);
    s.v = reconstruct_v(s, cfg);
    return s;
}

numerics::Vector reconstruct_v(const BLState& state, const BLConfig& cfg) {
    numerics::Vector v(state.nx * state.ny, 0.0);
    for (std::size_t i = 0; i < state.nx; ++i) {
        double acc = cfg.v0(static_cast<double>(i) * state.dx, state.t);
        double prev = ddx(state, i, 0);
        v[i * state.ny] = acc;
        for (std::size_t j = 1; j < state.ny; ++j) {
            const double cur = ddx(state, i, j);
            acc -= 0.5 * (prev + cur) * state.dy;
            v[i * state.ny + j] = acc;
            prev = cur;
        }
    }
    return v;
}

double continuity_residual(const BLState& state) {
    double worst = 0.0;
    for (std::size_t i = 0; i < state.nx; ++i) {
        for (std::size_t j = 1; j < state.ny; ++j) {
            const double dv = (state.v_at(i, j) - state.v_at(i, j - 1)) / state.dy;
            const double ux = 0.5 * (ddx(state, i, j) + ddx(state, i, j - 1));
            worst = std::max(worst, std::abs(dv + ux));
        }
    }
    return worst;
}

BLState transport_substep(const BLState& state, const BLConfig& cfg, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("transport step needs dt > 0");
    }
    double umax = 0.0;
    double vmax = 0.0;
    for (std::size_t k = 0; k < state.u.size(); ++k) {
        umax = std::max(umax, std::abs(state.u[k]));
        vmax = std::max(vmax, std::abs(state.v[k]));
    }
    const double cfl = dt * umax / state.dx + dt * vmax / state.dy;
    if (cfl > 1.0) {
        throw StepTooLarge("transport CFL number " + std::to_string(cfl) + " exceeds 1");
    }

    BLState out = state;
    for (std::size_t i = 1; i < state.nx; ++i) {
        for (std::size_t j = 1; j + 1 < state.ny; ++j) {
            const double u = state.at(i, j);
            if (!(u > 0.0)) {
                throw UpwindBreakdown("u <= 0 at x = " + std::to_string(static_cast<double>(i) * state.dx) +
                                      ", y = " + std::to_string(static_cast<double>(j) * state.dy));
            }
            const double v = state.v_at(i, j);
            const double ux = (u - state.at(i - 1, j)) / state.dx;
            const double uy = v > 0.0 ? (u - state.at(i, j - 1)) / state.dy
                                      : (state.at(i, j + 1) - u) / state.dy;
            out.at(i, j) = u - dt * (u * ux + v * uy + state.px[i]);
        }
    }
    set_boundaries(out, cfg, state.t + dt);
    return out;
}

BLState diffusion_substep(const BLState& state, const BLConfig& cfg, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("diffusion step needs dt > 0");
    }
    BLState out = state;
    if (cfg.nu == 0.0) {
        return out;
    }
    const std::size_t m = state.ny - 2;  // interior unknowns per column
    const double r = cfg.nu * dt / (state.dy * state.dy);
    numerics::TridiagonalSystem sys;
    sys.lower.assign(m - 1, -r);
    sys.upper.assign(m - 1, -r);
    sys.diagonal.assign(m, 1.0 + 2.0 * r);
    sys.rhs.resize(m);
    const double t_new = state.t + dt;
    for (std::size_t i = 1; i < state.nx; ++i) {
        const double top = cfg.U(static_cast<double>(i) * state.dx, t_new);
        for (std::size_t k = 0; k < m; ++k) {
            sys.rhs[k] = state.at(i, k + 1);
        }
        sys.rhs[m - 1] += r * top;
        const numerics::Vector col = numerics::solve_tridiagonal(sys);
        for (std::size_t k = 0; k < m; ++k) {
            out.at(i, k + 1) = col[k];
        }
        out.at(i, 0) = 0.0;
        out.at(i, state.ny - 1) = top;
    }
    return out;
}

BLState advance(const BLState& state, const BLConfig& cfg, double dt) {
    BLState s = diffusion_substep(transport_substep(state, cfg, dt), cfg, dt);
    s.t = state.t + dt;
    s.px = pressure_gradient(cfg.U, cfg.x_grid(), s.t);
    s.v = reconstruct_v(s, cfg);
    return s;
}

double min_shear(const BLState& state) {
    double worst = std::numeric_limits<double>::infinity();
    const std::size_t n = state.ny;
    for (std::size_t i = 0; i < state.nx; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d = 0.0;
            if (j == 0) {
                d = (state.at(i, 1) - state.at(i, 0)) / state.dy;
            } else if (j == n - 1) {
                d = (state.at(i, n - 1) - state.at(i, n - 2)) / state.dy;
            } else {
                d = (state.at(i, j + 1) - state.at(i, j - 1)) / (2.0 * state.dy);
            }
            worst = std::min(worst, d);
        }
    }
    return worst;
}

} // namespace singflow::prandtl

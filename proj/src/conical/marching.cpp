#include "singflow/conical/marching.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace singflow::conical {

namespace {

// Geometry of the layer at one station.
struct Frame {
    double z = 0.0;
    double b = 0.0;   // body radius
    double bp = 0.0;  // body slope
    double S = 0.0;
    double Sp = 0.0;

    double height() const { return S - b; }
};

Frame make_frame(const ConeGeometry& geom, double z, double S, double Sp) {
    Frame f{z, geom.radius(z), geom.slope(z), S, Sp};
    if (!(f.height() > 0.0)) {
        throw GeometryCollapse("shock met the body at z = " + std::to_string(z));
    }
    return f;
}

// Characteristic data of the 2x2 system at one node: eigenvalues lambda of
// M = [[0, -1], [alpha, beta]], right eigenvectors (1, -lambda) and left
// eigenvectors (alpha, lambda).
struct Characteristics {
    double alpha = 0.0;
    double lam_minus = 0.0;
    double lam_plus = 0.0;
    double c2 = 0.0;
    double denom = 0.0;  // W^2 - c^2
};

Characteristics characteristics(double a, double w, const Freestream& fs, const GasModel& gas) {
    const double axial = fs.q0 + w;
    const double c2 = sound_speed_sq_from_speed(a * a + axial * axial, fs, gas);
    const double denom = axial * axial - c2;
    if (!(axial > 0.0) || !(denom > 0.0)) {
        throw HyperbolicityLost("q0 + dz_phi fell below the sound speed");
    }
    const double alpha = (a * a - c2) / denom;
    const double beta = 2.0 * a * axial / denom;
    const double disc = beta * beta - 4.0 * alpha;
    if (!(disc > 0.0)) {
        throw HyperbolicityLost("flow became subsonic");
    }
    const double root = std::sqrt(disc);
    return Characteristics{alpha, 0.5 * (beta - root), 0.5 * (beta + root), c2, denom};
}

struct Fields {
    numerics::Vector a;
    numerics::Vector w;
};

struct Rates {
    Fields d;
    double max_speed = 0.0;  // max |lambda - rdot| over nodes
};

// One-sided differences in xi, second order where three points exist.
double backward_diff(const numerics::Vector& f, std::size_t j, double h) {
    if (j >= 2) {
        return (3.0 * f[j] - 4.0 * f[j - 1] + f[j - 2]) / (2.0 * h);
    }
    return (f[j] - f[j - 1]) / h;
}

double forward_diff(const numerics::Vector& f, std::size_t j, double h) {
    const std::size_t n = f.size();
    if (j + 2 < n) {
        return (-3.0 * f[j] + 4.0 * f[j + 1] - f[j + 2]) / (2.0 * h);
    }
    return (f[j + 1] - f[j]) / h;
}

Rates evaluate(const Fields& u, const Frame& fr, const numerics::Vector& xi,
               const SelfSimilarSolution& bg) {
    const std::size_t n = xi.size();
    const std::size_t last = n - 1;
    const double dxi = 1.0 / static_cast<double>(last);
    const double height = fr.height();

    Rates out;
    out.d.a.assign(n, 0.0);
    out.d.w.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = u.a[j];
        const double w = u.w[j];
        const Characteristics ch = characteristics(a, w, bg.fs, bg.gas);
        const double rdot = fr.bp + xi[j] * (fr.Sp - fr.bp);
        const double r = fr.b + xi[j] * height;

        double rate_a = 0.0;
        double rate_w = ch.c2 * a / (r * ch.denom);
        for (const double lam : {ch.lam_minus, ch.lam_plus}) {
            const double speed = lam - rdot;
            out.max_speed = std::max(out.max_speed, std::abs(speed));
            const bool backward = j == last || (j > 0 && speed > 0.0);
            const double da = backward ? backward_diff(u.a, j, dxi) : forward_diff(u.a, j, dxi);
            const double dw = backward ? backward_diff(u.w, j, dxi) : forward_diff(u.w, j, dxi);
            const double proj = (ch.alpha * da + lam * dw) / (ch.alpha - lam * lam);
            const double m = speed / height;
            rate_a -= m * proj;
            rate_w += m * proj * lam;
        }
        out.d.a[j] = rate_a;
        out.d.w[j] = rate_w;
    }
    return out;
}

// Body node: keep the incoming (minus) characteristic, impose a = b' W.
void project_body(Fields& u, const Frame& fr, const SelfSimilarSolution& bg) {
    const Characteristics ch = characteristics(u.a[0], u.w[0], bg.fs, bg.gas);
    const double target = ch.alpha * u.a[0] + ch.lam_minus * u.w[0];
    const double q0 = bg.fs.q0;
    const double w = (target - ch.alpha * fr.bp * q0) / (ch.alpha * fr.bp + ch.lam_minus);
    u.w[0] = w;
    u.a[0] = fr.bp * (q0 + w);
}

// Shock node: keep the incoming (plus) characteristic and pick S' so that
// the jump state behind a front of that slope carries the same invariant.
double project_shock(Fields& u, double sp_guess, const SelfSimilarSolution& bg) {
    const std::size_t N = u.a.size() - 1;
    const Characteristics ch = characteristics(u.a[N], u.w[N], bg.fs, bg.gas);
    const double target = ch.alpha * u.a[N] + ch.lam_plus * u.w[N];
    const double q0 = bg.fs.q0;
    const double mach_slope = std::tan(std::asin(1.0 / bg.fs.mach(bg.gas)));

    const auto jump = [&](double sp) {
        return post_shock_velocity(rh_downstream(bg.fs, bg.gas, sp), sp);
    };
    const auto mismatch = [&](double sp) {
        const ConicalVelocity v = jump(sp);
        return ch.alpha * v.radial + ch.lam_plus * (v.axial - q0) - target;
    };

    // Secant from the previous slope; the mismatch is monotone in S'.
    double sp = sp_guess;
    bool converged = false;
    try {
        double x0 = sp_guess;
        double x1 = sp_guess * (1.0 + 1e-7);
        double f0 = mismatch(x0);
        double f1 = mismatch(x1);
        for (int it = 0; it < 40; ++it) {
            if (f1 == 0.0) {
                converged = true;
                break;
            }
            const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if (!std::isfinite(x2) || x2 <= mach_slope) {
                break;
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = mismatch(x1);
            if (std::abs(x1 - x0) <= 1e-14 * std::abs(x1)) {
                converged = true;
                break;
            }
        }
        sp = x1;
    } catch (const NumericalError&) {
        converged = false;
    }

    if (!converged) {
        double lo = std::max(mach_slope * (1.0 + 1e-12), 0.5 * sp_guess);
        double hi = 2.0 * sp_guess;
        try {
            sp = numerics::bisect_root(mismatch, lo, hi, 1e-15 * sp_guess);
        } catch (const NoBracket&) {
            throw SolverFailure("no shock slope matches the incoming characteristic");
        }
    }

    const ConicalVelocity v = jump(sp);
    u.a[N] = v.radial;
    u.w[N] = v.axial - q0;
    return sp;
}

numerics::Vector reconstruct_phi(const numerics::Vector& a, double height) {
    const std::size_t n = a.size();
    const double dxi = 1.0 / static_cast<double>(n - 1);
    numerics::Vector phi(n, 0.0);
    for (std::size_t j = n - 1; j-- > 0;) {
        phi[j] = phi[j + 1] - 0.5 * (a[j] + a[j + 1]) * height * dxi;
    }
    return phi;
}

Fields fields_of(const MarchState& st) {
    return Fields{st.dr_phi, st.dz_phi};
}

double similarity_coordinate(const SelfSimilarSolution& bg, double xi) {
    return bg.b0 + xi * (bg.shock_slope - bg.b0);
}

} // namespace

MarchState initial_state(const SelfSimilarSolution& bg, const ConeGeometry& geom, double z,
                         std::size_t intervals) {
    if (intervals < 4) {
        throw DomainError("marching grid needs at least 4 intervals");
    }
    if (!(z > 0.0)) {
        throw DomainError("marching must start at z > 0");
    }
    MarchState st;
    st.z = z;
    st.S = z * bg.shock_slope;
    st.Sp = bg.shock_slope;
    const std::size_t n = intervals + 1;
    st.xi.resize(n);
    st.dr_phi.resize(n);
    st.dz_phi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        st.xi[j] = static_cast<double>(j) / static_cast<double>(intervals);
        const SimilarityPoint p = bg.at(similarity_coordinate(bg, st.xi[j]));
        st.dr_phi[j] = p.dr_phi;
        st.dz_phi[j] = p.dz_phi;
    }
    const double height = st.S - geom.radius(z);
    if (!(height > 0.0)) {
        throw GeometryCollapse("perturbed body starts outside the shock");
    }
    st.phi = reconstruct_phi(st.dr_phi, height);
    return st;
}

double max_stable_dz(const MarchState& st, const SelfSimilarSolution& bg,
                     const ConeGeometry& geom) {
    const Frame fr = make_frame(geom, st.z, st.S, st.Sp);
    const Rates rates = evaluate(fields_of(st), fr, st.xi, bg);
    const double dxi = 1.0 / static_cast<double>(st.nodes() - 1);
    return dxi * fr.height() / rates.max_speed;
}

MarchState march_step(const MarchState& st, const SelfSimilarSolution& bg,
                      const ConeGeometry& geom, double dz, double safety) {
    if (!(dz > 0.0)) {
        throw DomainError("march_step requires dz > 0");
    }
    const std::size_t n = st.nodes();
    const double dxi = 1.0 / static_cast<double>(n - 1);

    const Frame f0 = make_frame(geom, st.z, st.S, st.Sp);
    const Fields u0 = fields_of(st);
    const Rates r0 = evaluate(u0, f0, st.xi, bg);
    const double limit = safety * dxi * f0.height() / r0.max_speed;
    if (dz > limit * (1.0 + 1e-12)) {
        throw StepTooLarge("dz = " + std::to_string(dz) + " exceeds CFL bound " +
                           std::to_string(limit));
    }

    // Predictor.
    const double z1 = st.z + dz;
    Fields u1 = u0;
    for (std::size_t j = 0; j < n; ++j) {
        u1.a[j] += dz * r0.d.a[j];
        u1.w[j] += dz * r0.d.w[j];
    }
    Frame f1 = make_frame(geom, z1, st.S + dz * st.Sp, st.Sp);
    project_body(u1, f1, bg);
    f1.Sp = project_shock(u1, st.Sp, bg);

    // Corrector.
    const Rates r1 = evaluate(u1, f1, st.xi, bg);
    Fields u2 = u0;
    for (std::size_t j = 0; j < n; ++j) {
        u2.a[j] = 0.5 * (u0.a[j] + u1.a[j] + dz * r1.d.a[j]);
        u2.w[j] = 0.5 * (u0.w[j] + u1.w[j] + dz * r1.d.w[j]);
    }
    Frame f2 = make_frame(geom, z1, st.S + 0.5 * dz * (st.Sp + f1.Sp), f1.Sp);
    project_body(u2, f2, bg);
    f2.Sp = project_shock(u2, f1.Sp, bg);

    for (std::size_t j = 0; j < n; ++j) {
        characteristics(u2.a[j], u2.w[j], bg.fs, bg.gas);  // hyperbolicity check
    }

    MarchState out;
    out.z = z1;
    out.S = f2.S;
    out.Sp = f2.Sp;
    out.xi = st.xi;
    out.phi = reconstruct_phi(u2.a, f2.height());
    out.dr_phi = std::move(u2.a);
    out.dz_phi = std::move(u2.w);
    return out;
}

double deviation_norm(const MarchState& st, const SelfSimilarSolution& bg) {
    double worst = 0.0;
    for (std::size_t j = 0; j < st.nodes(); ++j) {
        const SimilarityPoint p = bg.at(similarity_coordinate(bg, st.xi[j]));
        worst = std::max(worst, std::abs(st.dr_phi[j] - p.dr_phi) + std::abs(st.dz_phi[j] - p.dz_phi));
    }
    return worst + std::abs(st.S / st.z - bg.shock_slope);
}

double discretization_error_estimate(const SelfSimilarSolution& bg, const ConeGeometry& geom,
                                     double z, std::size_t intervals) {
    const MarchState st = initial_state(bg, geom, z, intervals);
    const Frame fr = make_frame(geom, z, st.S, st.Sp);
    const Rates rates = evaluate(fields_of(st), fr, st.xi, bg);
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < st.nodes(); ++j) {
        worst = std::max(worst, std::abs(rates.d.a[j]) + std::abs(rates.d.w[j]));
    }
    return z * worst;
}

double shock_flux_residual(const MarchState& st, const SelfSimilarSolution& bg) {
    const std::size_t N = st.nodes() - 1;
    const double a = st.dr_phi[N];
    const double axial = bg.fs.q0 + st.dz_phi[N];
    const double rho = bernoulli_density(a * a + axial * axial, bg.fs, bg.gas);
    return rho * (axial * st.Sp - a) - bg.fs.rho0 * bg.fs.q0 * st.Sp;
}

double body_flux_residual(const MarchState& st, const SelfSimilarSolution& bg,
                          const ConeGeometry& geom) {
    const double a = st.dr_phi[0];
    const double axial = bg.fs.q0 + st.dz_phi[0];
    const double rho = bernoulli_density(a * a + axial * axial, bg.fs, bg.gas);
    return rho * (a - geom.slope(st.z) * axial);
}

DiagnosticSeries run_marching(const Freestream& fs, const GasModel& gas,
                              const ConeGeometry& geom, const RunParams& params) {
    const AdmissibilityReport rep = check_cone_admissibility(geom);
    if (!rep.passed) {
        throw DomainError("cone perturbation violates the smallness bound");
    }
    const SelfSimilarSolution bg =
        solve_self_similar(fs, gas, geom.b0(), params.shooting_tol, params.similarity);
    return run_marching(bg, geom, params);
}

double state_distance(const MarchState& a, const MarchState& b) {
    if (a.nodes() != b.nodes()) {
        throw ShapeError("state_distance needs states on the same grid");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < a.nodes(); ++j) {
        worst = std::max(worst, std::abs(a.dr_phi[j] - b.dr_phi[j]) + std::abs(a.dz_phi[j] - b.dz_phi[j]));
    }
    return worst + std::abs(a.S - b.S) / a.z;
}

DiagnosticSeries run_marching(const SelfSimilarSolution& bg, const ConeGeometry& geom,
                              const RunParams& params) {
    if (!(params.z_end > params.z_start) || params.samples_per_decade == 0) {
        throw DomainError("run_marching needs z_end > z_start and samples_per_decade > 0");
    }
    DiagnosticSeries out;
    const std::size_t intervals = params.march.intervals;
    MarchState st = initial_state(bg, geom, params.z_start, intervals);

    const bool with_reference = params.discrete_reference && !geom.is_exact_cone();
    const ConeGeometry cone = ConeGeometry::exact(geom.b0());
    std::optional<MarchState> ref;
    if (with_reference) {
        ref = initial_state(bg, cone, params.z_start, intervals);
    }

    const auto record = [&]() {
        const double raw = deviation_norm(st, bg);
        const double dev = ref ? state_distance(st, *ref) : raw;
        out.samples.push_back(DeviationSample{st.z, dev, raw, st.S / st.z});
    };
    record();

    const double spd = static_cast<double>(params.samples_per_decade);
    const double decades = std::log10(params.z_end / params.z_start);
    const auto stations = static_cast<std::size_t>(std::ceil(decades * spd - 1e-9));
    try {
        for (std::size_t k = 1; k <= stations; ++k) {
            const double target =
                k == stations ? params.z_end
                              : params.z_start * std::pow(10.0, static_cast<double>(k) / spd);
            while (st.z < target) {
                double dz_cfl = max_stable_dz(st, bg, geom);
                if (ref) {
                    dz_cfl = std::min(dz_cfl, max_stable_dz(*ref, bg, cone));
                }
                double dz = std::min(params.march.cfl * dz_cfl, target - st.z);
                if (target - st.z - dz < 1e-9 * target) {
                    dz = target - st.z;
                }
                st = march_step(st, bg, geom, dz, params.march.safety);
                if (ref) {
                    ref = march_step(*ref, bg, cone, dz, params.march.safety);
                }
                if (std::abs(st.z - target) < 1e-12 * target) {
                    st.z = target;
                    if (ref) {
                        ref->z = target;
                    }
                }
                ++out.steps;
            }
            record();
        }
    } catch (const NumericalError& e) {
        out.failure_z = st.z;
        out.failure = e.what();
    }

    const double fit_hi = params.fit_z_max > 0.0 ? params.fit_z_max : params.z_end;
    std::vector<std::pair<double, double>> fit;
    for (const auto& s : out.samples) {
        if (s.z >= params.fit_z_min * (1.0 - 1e-12) && s.z <= fit_hi * (1.0 + 1e-12) &&
            s.deviation > 0.0) {
            fit.emplace_back(s.z, s.deviation);
        }
    }
    if (fit.size() >= 2) {
        out.slope = numerics::fit_loglog_slope(fit);
    }
    out.final_state = std::move(st);
    return out;
}

} // namespace singflow::conical

#include "singflow/harness/registry.hpp"

#include "singflow/errors.hpp"
#include "singflow/prandtl/blasius.hpp"
#include "singflow/prandtl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

namespace singflow::harness {

namespace {

using namespace singflow::prandtl;

enum class Initial { LocalBlasius, InflowBlasius, ScaledLocalBlasius };

struct Setup {
    BLConfig cfg;
    std::shared_ptr<const BlasiusProfile> blasius;
    double x0 = 1.0;
    double output_every = 0.1;
};

Setup make_setup(const RunContext& ctx, double kappa, Initial init) {
    const Params& p = ctx.params;
    Setup s;
    s.x0 = p.get_double("x0");
    s.output_every = p.get_double("output_every");
    s.blasius = std::make_shared<const BlasiusProfile>(
        blasius_profile(static_cast<std::size_t>(p.get_int("blasius_steps"))));
    BLConfig& c = s.cfg;
    c.nu = p.get_double("nu");
    c.L = p.get_double("L");
    c.T = p.get_double("T");
    const double ymax = p.get_double("y_max");
    // Default far field: ten diffusion lengths over one convective time L / U.
    c.y_max = ymax > 0.0 ? ymax : 10.0 * std::sqrt(c.nu * c.L);
    const auto r = static_cast<std::size_t>(ctx.resolution);
    c.nx = (static_cast<std::size_t>(p.get_int("nx")) - 1) * r + 1;
    c.ny = (static_cast<std::size_t>(p.get_int("ny")) - 1) * r + 1;
    c.dt = p.get_double("dt") / static_cast<double>(ctx.resolution);

    const auto prof = s.blasius;
    const double nu = c.nu;
    const double x0 = s.x0;
    c.U = [kappa](double x, double) { return 1.0 - kappa * x; };
    c.u1 = [prof, nu, x0](double y, double) { return blasius_velocity(*prof, nu, x0, 1.0, y); };
    c.v0 = [](double, double) { return 0.0; };
    switch (init) {
    case Initial::LocalBlasius:
        c.u0 = [prof, nu, x0](double x, double y) { return blasius_velocity(*prof, nu, x + x0, 1.0, y); };
        break;
    case Initial::InflowBlasius:
        c.u0 = [prof, nu, x0](double, double y) { return blasius_velocity(*prof, nu, x0, 1.0, y); };
        break;
    case Initial::ScaledLocalBlasius:
        c.u0 = [prof, nu, x0, kappa](double x, double y) {
            return (1.0 - kappa * x) * blasius_velocity(*prof, nu, x + x0, 1.0, y);
        };
        break;
    }
    return s;
}

struct Outcome {
    std::vector<BLState> history;  // states at output times
    std::optional<double> breakdown_t;
    std::string breakdown;
    double u_min = 0.0;
    double u_max = 0.0;
    std::size_t steps = 0;
};

// Steps with dt = min(cfg.dt, 0.9 of the transport CFL limit), landing on
// every output time. With tolerate_breakdown an UpwindBreakdown freezes the
// run instead of propagating.
Outcome drive(const Setup& s, bool tolerate_breakdown) {
    const BLConfig& c = s.cfg;
    Outcome out;
    BLState st = initial_state(c);
    out.history.push_back(st);
    out.u_min = *std::min_element(st.u.begin(), st.u.end());
    out.u_max = *std::max_element(st.u.begin(), st.u.end());
    const auto outputs = static_cast<std::size_t>(std::llround(c.T / s.output_every));
    try {
        for (std::size_t k = 1; k <= outputs; ++k) {
            const double target = k == outputs ? c.T : s.output_every * static_cast<double>(k);
            while (st.t < target - 1e-12 * c.T) {
                double umax = 0.0;
                double vmax = 0.0;
                for (std::size_t n = 0; n < st.u.size(); ++n) {
                    umax = std::max(umax, std::abs(st.u[n]));
                    vmax = std::max(vmax, std::abs(st.v[n]));
                }
                const double limit = 0.9 / (umax / st.dx + vmax / st.dy);
                double dt = std::min(c.dt, limit);
                if (target - st.t <= dt * (1.0 + 1e-9)) {
                    dt = target - st.t;
                }
                st = advance(st, c, dt);
                ++out.steps;
                out.u_min = std::min(out.u_min, *std::min_element(st.u.begin(), st.u.end()));
                out.u_max = std::max(out.u_max, *std::max_element(st.u.begin(), st.u.end()));
            }
            st.t = target;
            out.history.push_back(st);
        }
    } catch (const UpwindBreakdown& e) {
        if (!tolerate_breakdown) {
            throw;
        }
        out.breakdown_t = st.t;
        out.breakdown = e.what();
        out.history.push_back(st);
    }
    return out;
}

void record_data_checks(RunRecord& rec, const DataReport& rep) {
    for (const auto& c : rep.checks) {
        rec.metric("data_" + c.name, c.passed ? 1.0 : 0.0);
    }
}

// Minimum over output times and trailing stations x >= 0.9 L of the wall
// shear relative to its initial value; also fills the time series.
double shear_series(RunRecord& rec, const Setup& s, const Outcome& o) {
    const auto lip = lipschitz_diagnostics(o.history);
    const numerics::Vector tau0 = wall_shear(o.history.front());
    const auto first_trailing =
        static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(s.cfg.nx - 1) - 1e-9));
    Series& ts = rec.add_series("timeseries", "diagnostics at output times",
                                {"t", "min_shear", "dx_sup", "dy_sup", "dt_sup", "dx_run", "dy_run",
                                 "dt_run", "trailing_shear_ratio"});
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < o.history.size(); ++k) {
        const numerics::Vector tau = wall_shear(o.history[k]);
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = first_trailing; i < s.cfg.nx; ++i) {
            ratio = std::min(ratio, tau[i] / tau0[i]);
        }
        worst = std::min(worst, ratio);
        const auto& l = lip[k];
        ts.rows.push_back({o.history[k].t, min_shear(o.history[k]), l.dx_sup, l.dy_sup, l.dt_sup,
                           l.dx_run, l.dy_run, l.dt_run, ratio});
    }
    Series& ws = rec.add_series("wall_shear", "wall shear per station, initial and final",
                                {"x", "initial", "final"});
    const numerics::Vector tau_end = wall_shear(o.history.back());
    for (std::size_t i = 0; i < s.cfg.nx; ++i) {
        ws.rows.push_back({static_cast<double>(i) * o.history.back().dx, tau0[i], tau_end[i]});
    }
    return worst;
}

void outflow_profile(RunRecord& rec, const Setup& s, const BLState& st) {
    Series& pr = rec.add_series("outflow_profile", "final velocity profile at x = L and the flat-plate profile",
                                {"y", "u", "u_blasius"});
    const std::size_t i = st.nx - 1;
    for (std::size_t j = 0; j < st.ny; ++j) {
        const double y = static_cast<double>(j) * st.dy;
        pr.rows.push_back({y, st.at(i, j), blasius_velocity(*s.blasius, s.cfg.nu, s.cfg.L + s.x0, 1.0, y)});
    }
}

double dstar_error(const Setup& s, const BLState& st, std::size_t i) {
    const double x = static_cast<double>(i) * st.dx;
    const double ref = blasius_displacement_thickness(*s.blasius, s.cfg.nu, x + s.x0, 1.0);
    return std::abs(displacement_thickness(st, i) - ref) / ref;
}

double running_growth(const std::vector<LipschitzSample>& lip, double t_early, double LipschitzSample::*field) {
    double early = 0.0;
    for (const auto& l : lip) {
        if (l.t <= t_early + 1e-12) {
            early = l.*field;
        }
    }
    return lip.back().*field / early;
}

double min_over_outputs(const Outcome& o) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& st : o.history) {
        m = std::min(m, min_shear(st));
    }
    return m;
}

void run_favorable(const RunContext& ctx, RunRecord& rec) {
    const Setup s = make_setup(ctx, 0.0, Initial::LocalBlasius);
    const DataReport data = validate_data(s.cfg);
    record_data_checks(rec, data);
    rec.check("data_valid", data.all_passed() ? 1.0 : 0.0, "==", 1.0);

    const Outcome o = drive(s, false);
    rec.metric("steps", static_cast<double>(o.steps));
    rec.check("min_shear_over_outputs", min_over_outputs(o), ">", 0.0);

    const auto lip = lipschitz_diagnostics(o.history);
    const double t_early = 0.1 * s.cfg.T;
    rec.check("lipschitz_dx_growth", running_growth(lip, t_early, &LipschitzSample::dx_run), "<=", 1.5);
    rec.check("lipschitz_dy_growth", running_growth(lip, t_early, &LipschitzSample::dy_run), "<=", 1.5);
    rec.check("lipschitz_dt_growth", running_growth(lip, t_early, &LipschitzSample::dt_run), "<=", 1.5);

    const double trailing = shear_series(rec, s, o);
    rec.check("trailing_shear_min_ratio", trailing, ">=", 0.9);

    const BLState& last = o.history.back();
    rec.check("displacement_thickness_error_outflow", dstar_error(s, last, last.nx - 1), "<=", 0.02);
    outflow_profile(rec, s, last);

    // U = 1 and px = 0: the discrete solution stays in [0, 1] up to round-off.
    rec.check("u_min", o.u_min, ">=", 0.0);
    rec.check("u_max_minus_bound", o.u_max - 1.0, "<=", 1e-12);
}

void run_adverse(const RunContext& ctx, RunRecord& rec) {
    const double kappa = ctx.params.get_double("kappa");
    const Setup s = make_setup(ctx, kappa, Initial::ScaledLocalBlasius);
    const DataReport data = validate_data(s.cfg);
    record_data_checks(rec, data);
    rec.check("data_reports_adverse_gradient", data.check("px<=0").passed ? 0.0 : 1.0, "==", 1.0);

    const Outcome o = drive(s, true);
    rec.metric("steps", static_cast<double>(o.steps));
    rec.metric("breakdown_t", o.breakdown_t.value_or(std::nan("")));
    rec.metric("final_t", o.history.back().t);
    const double trailing = shear_series(rec, s, o);
    rec.check("trailing_shear_min_ratio", trailing, "<", 0.5);

    double separated_at = std::nan("");
    for (const auto& st : o.history) {
        const numerics::Vector tau = wall_shear(st);
        if (*std::min_element(tau.begin(), tau.end()) <= 0.0) {
            separated_at = st.t;
            break;
        }
    }
    rec.metric("first_reversed_wall_shear_t", separated_at);
}

void run_blasius_steady(const RunContext& ctx, RunRecord& rec) {
    const Setup s = make_setup(ctx, 0.0, Initial::InflowBlasius);
    const DataReport data = validate_data(s.cfg);
    record_data_checks(rec, data);
    rec.check("data_valid", data.all_passed() ? 1.0 : 0.0, "==", 1.0);

    const Outcome o = drive(s, false);
    rec.metric("steps", static_cast<double>(o.steps));
    rec.check("min_shear_over_outputs", min_over_outputs(o), ">", 0.0);
    shear_series(rec, s, o);
    const BLState& last = o.history.back();
    rec.check("displacement_thickness_error_mid", dstar_error(s, last, (last.nx - 1) / 2), "<=", 0.02);
    rec.check("displacement_thickness_error_outflow", dstar_error(s, last, last.nx - 1), "<=", 0.02);
    outflow_profile(rec, s, last);
}

std::vector<std::pair<std::string, std::string>> common(const std::string& T, const std::string& dt) {
    return {{"nu", "0.01"},  {"L", "1"},   {"T", T},
            {"x0", "1"},     {"y_max", "0"}, {"nx", "101"},
            {"ny", "161"},   {"dt", dt},   {"output_every", "0.1"},
            {"blasius_steps", "2000"}};
}

} // namespace

std::vector<PresetInfo> prandtl_presets() {
    auto adverse = common("2", "0.005");
    adverse.emplace_back("kappa", "0.5");
    return {
        PresetInfo{"prandtl-favorable", "U = 1 over a flat-plate layer: monotonicity and regularity persist",
                   common("3", "0.005"), run_favorable},
        PresetInfo{"prandtl-adverse", "decelerating outer flow U = 1 - kappa x: wall shear collapse",
                   adverse, run_adverse},
        PresetInfo{"prandtl-blasius-steady", "x-independent start relaxing to the flat-plate layer",
                   common("8", "0.005"), run_blasius_steady},
    };
}

} // namespace singflow::harness

#include "singflow/harness/oracles.hpp"
#include "singflow/harness/registry.hpp"

#include "singflow/vortex/diagnostics.hpp"
#include "singflow/vortex/rings.hpp"
#include "singflow/vortex/sheet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace singflow::harness {

namespace {

using namespace singflow::vortex;

constexpr double kRadii[] = {0.2, 0.1, 0.05};

void cloud_snapshot(RunRecord& rec, const std::string& name, const BlobCloud2D& c) {
    Series& s = rec.add_series(name, "blob positions and circulations", {"x1", "x2", "gamma"});
    for (std::size_t i = 0; i < c.size(); ++i) {
        s.rows.push_back({c.positions[i].x1, c.positions[i].x2, c.circulations[i]});
    }
}

std::vector<double> concentration_row(const BlobCloud2D& c, double spacing) {
    std::vector<double> m;
    for (const double r : kRadii) {
        m.push_back(concentration_sup(c, r, spacing).sup_mass);
    }
    return m;
}

void run_sheet_one_sign(const RunContext& ctx, RunRecord& rec) {
    const Params& p = ctx.params;
    const auto res = static_cast<std::size_t>(ctx.resolution);
    const auto n = static_cast<std::size_t>(p.get_int("atoms")) * res;
    const auto steps = static_cast<std::size_t>(p.get_int("steps")) * res;
    const double dt = p.get_double("dt") / static_cast<double>(res);
    const auto every = static_cast<std::size_t>(p.get_int("output_every")) * res;
    const double spacing = p.get_double("sweep_spacing");

    // Elliptically loaded flat sheet on x1 in [-1, 1].
    SheetSpec spec;
    spec.curve = [](double s) { return Vec2{2.0 * s - 1.0, 0.0}; };
    spec.strength = [](double s) {
        const double x = 2.0 * s - 1.0;
        return std::sqrt(std::max(0.0, 1.0 - x * x));
    };
    BlobCloud2D cloud = build_sheet(spec, n, p.get_double("delta"));
    cloud_snapshot(rec, "cloud_initial", cloud);

    const InvariantRecord inv0 = invariants2d(cloud);
    double impulse_scale = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        impulse_scale += std::abs(cloud.circulations[i]) *
                         std::hypot(cloud.positions[i].x1, cloud.positions[i].x2);
    }
    Series& ts = rec.add_series("invariants", "conserved quantities",
                                {"t", "circulation", "impulse_x1", "impulse_x2", "angular_impulse",
                                 "hamiltonian"});
    Series& conc = rec.add_series("concentration", "sup of |Gamma| in balls of radius 0.2, 0.1, 0.05",
                                  {"t", "sup_r0.2", "sup_r0.1", "sup_r0.05"});
    const auto log_row = [&](double t, const InvariantRecord& inv) {
        ts.rows.push_back({t, inv.circulation, inv.impulse.x1, inv.impulse.x2, inv.angular_impulse,
                           inv.hamiltonian});
    };
    log_row(0.0, inv0);
    const auto c0 = concentration_row(cloud, spacing);
    conc.rows.push_back({0.0, c0[0], c0[1], c0[2]});

    double circ_drift = 0.0;
    double imp_step = 0.0;
    double ang_step = 0.0;
    double ham_drift = 0.0;
    bool nested = c0[0] >= c0[1] && c0[1] >= c0[2];
    InvariantRecord prev = inv0;
    for (std::size_t k = 1; k <= steps; ++k) {
        cloud = step(cloud, dt);
        const InvariantRecord inv = invariants2d(cloud);
        circ_drift = std::max(circ_drift, std::abs(inv.circulation - inv0.circulation));
        imp_step = std::max(imp_step, std::hypot(inv.impulse.x1 - prev.impulse.x1,
                                                 inv.impulse.x2 - prev.impulse.x2) / impulse_scale);
        ang_step = std::max(ang_step, std::abs(inv.angular_impulse - prev.angular_impulse) /
                                          std::abs(inv0.angular_impulse));
        ham_drift = std::max(ham_drift, std::abs(inv.hamiltonian - inv0.hamiltonian) /
                                            std::abs(inv0.hamiltonian));
        prev = inv;
        if (k % every == 0 || k == steps) {
            const double t = dt * static_cast<double>(k);
            log_row(t, inv);
            const auto c = concentration_row(cloud, spacing);
            conc.rows.push_back({t, c[0], c[1], c[2]});
            nested = nested && c[0] >= c[1] && c[1] >= c[2] && c[0] <= cloud.total_abs_circulation();
        }
    }
    cloud_snapshot(rec, "cloud_final", cloud);
    rec.metric("atoms", static_cast<double>(n));
    rec.metric("impulse_scale", impulse_scale);
    rec.check("circulation_drift", circ_drift, "==", 0.0);
    rec.check("impulse_drift_per_step", imp_step, "<", 1e-10);
    rec.check("angular_impulse_drift_per_step", ang_step, "<", 1e-10);
    rec.check("hamiltonian_drift_total", ham_drift, "<", 1e-6);
    rec.check("concentration_nested", nested ? 1.0 : 0.0, "==", 1.0);
}

void run_sheet_mirror(const RunContext& ctx, RunRecord& rec) {
    const Params& p = ctx.params;
    const auto res = static_cast<std::size_t>(ctx.resolution);
    const auto n = static_cast<std::size_t>(p.get_int("atoms")) * res;
    const auto patch_n = static_cast<std::size_t>(p.get_int("patch_atoms")) * res;
    const double T = p.get_double("T");
    const double dt = p.get_double("dt") / static_cast<double>(res);
    const double spacing = p.get_double("sweep_spacing");
    const double x_sheet = p.get_double("sheet_x1");
    const double half_len = p.get_double("sheet_half_length");

    // Right half: a vertical sheet of unit strength (NMS part) plus a
    // scattered field of weak positive atoms (the integrable perturbation).
    BlobCloud2D half;
    half.delta = p.get_double("delta");
    SheetSpec spec;
    spec.curve = [=](double s) { return Vec2{x_sheet, half_len * (2.0 * s - 1.0)}; };
    spec.strength = [](double) { return 1.0; };
    const BlobCloud2D sheet = build_sheet(spec, n, half.delta);
    half = sheet;
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> ux(0.2, 1.2);
    std::uniform_real_distribution<double> uy(-1.0, 1.0);
    const double patch_gamma = p.get_double("patch_mass") / static_cast<double>(patch_n);
    for (std::size_t k = 0; k < patch_n; ++k) {
        const double a = ux(rng);
        const double b = uy(rng);
        half.positions.push_back({a, b});
        half.circulations.push_back(patch_gamma);
    }
    BlobCloud2D cloud = mirror_symmetrize(half);
    cloud_snapshot(rec, "cloud_initial", cloud);

    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    double sym_err = mirror_symmetry_error(cloud);
    double circ = std::abs(cloud.total_circulation());
    Series& ts = rec.add_series("symmetry", "mirror-symmetry error and circulation per step",
                                {"t", "symmetry_error", "circulation"});
    ts.rows.push_back({0.0, sym_err, cloud.total_circulation()});
    for (std::size_t k = 1; k <= steps; ++k) {
        cloud = step(cloud, dt);
        const double e = mirror_symmetry_error(cloud);
        sym_err = std::max(sym_err, e);
        circ = std::max(circ, std::abs(cloud.total_circulation()));
        ts.rows.push_back({dt * static_cast<double>(k), e, cloud.total_circulation()});
    }
    cloud_snapshot(rec, "cloud_final", cloud);

    const auto c = concentration_row(cloud, spacing);
    Series& conc = rec.add_series("concentration", "sup of |Gamma| in balls at the final time",
                                  {"radius", "sup_mass"});
    for (std::size_t k = 0; k < c.size(); ++k) {
        conc.rows.push_back({kRadii[k], c[k]});
    }
    const double total = cloud.total_abs_circulation();
    rec.metric("total_abs_circulation", total);
    rec.metric("local_energy_R2", local_energy(cloud, 2.0, 160));
    rec.check("mirror_symmetry_error_max", sym_err, "<", 1e-12);
    rec.check("circulation_max_abs", circ, "==", 0.0);
    rec.check("concentration_ratio_r0.1_r0.2", c[1] / c[0], "<", 1.0);
    rec.check("concentration_ratio_r0.05_r0.1", c[2] / c[1], "<", 1.0);
    rec.check("concentration_fraction_r0.05", c[2] / total, "<",
              p.get_double("concentration_threshold"));
}

struct RingRun {
    std::vector<std::pair<double, RingCloudAxi>> history;
    double impulse_drift = 0.0;  // max relative change from t = 0
    std::size_t steps = 0;
};

RingRun march_rings(RingCloudAxi cloud, double dt, std::size_t steps, std::size_t every,
                    Series& traj) {
    RingRun run;
    const double p0 = axisym_invariants(cloud).impulse;
    run.history.emplace_back(0.0, cloud);
    const auto log = [&](double t, const RingCloudAxi& c) {
        std::vector<double> row{t, axisym_invariants(c).impulse};
        for (const RZ& q : c.positions) {
            row.push_back(q.r);
            row.push_back(q.z);
        }
        traj.rows.push_back(row);
    };
    log(0.0, cloud);
    for (std::size_t k = 1; k <= steps; ++k) {
        cloud = step_axisym(cloud, dt);
        run.impulse_drift = std::max(run.impulse_drift,
                                     std::abs(axisym_invariants(cloud).impulse - p0) / std::abs(p0));
        if (k % every == 0 || k == steps) {
            const double t = dt * static_cast<double>(k);
            run.history.emplace_back(t, cloud);
            log(t, cloud);
        }
    }
    run.steps = steps;
    return run;
}

void axis_probe(RunRecord& rec, const RingRun& run, double a) {
    const std::vector<double> radii{0.5 * a, 0.2 * a, 0.1 * a};
    const AxisEnergyTable table = axis_energy_probe(run.history, radii);
    Series& s = rec.add_series("axis_energy", "windowed energy and its share in r < rho",
                               {"t", "total", "r<0.5a", "r<0.2a", "r<0.1a"});
    for (const auto& row : table.rows) {
        s.rows.push_back({row.t, row.total, row.energy[0], row.energy[1], row.energy[2]});
    }
    rec.metric("axis_energy_max_fraction_0.5a", table.max_fraction[0]);
    rec.metric("axis_energy_max_fraction_0.2a", table.max_fraction[1]);
    rec.check("axis_energy_max_fraction_0.1a", table.max_fraction[2], "<", 0.05);
}

void run_ring_single(const RunContext& ctx, RunRecord& rec) {
    const Params& p = ctx.params;
    const auto res = static_cast<std::size_t>(ctx.resolution);
    const double a = p.get_double("radius");
    const double gamma = p.get_double("gamma");
    RingCloudAxi cloud;
    cloud.delta = p.get_double("delta");
    cloud.positions = {{a, 0.0}};
    cloud.circulations = {gamma};

    const auto steps = static_cast<std::size_t>(p.get_int("steps")) * res;
    Series& traj = rec.add_series("trajectory", "ring position and impulse", {"t", "impulse", "r", "z"});
    const RingRun run = march_rings(cloud, p.get_double("dt") / static_cast<double>(res), steps,
                                    static_cast<std::size_t>(p.get_int("output_every")) * res, traj);
    const RingCloudAxi& last = run.history.back().second;
    rec.metric("self_induced_speed", (last.positions[0].z - cloud.positions[0].z) / run.history.back().first);
    rec.check("impulse_drift_per_1000_steps", run.impulse_drift * 1000.0 / static_cast<double>(steps), "<", 1e-8);
    rec.check("radius_drift", std::abs(last.positions[0].r - a) / a, "<", 1e-8);

    // Velocity at the ring centre against Gamma / (2a) for two core widths.
    const double exact = gamma / (2.0 * a);
    const std::string keys[] = {"delta_center_1", "delta_center_2"};
    double errors[2] = {0.0, 0.0};
    for (std::size_t k = 0; k < 2; ++k) {
        const std::string& key = keys[k];
        RingCloudAxi probe = cloud;
        probe.delta = p.get_double(key);
        const double uz = ring_velocity(probe, {0.0, 0.0}).uz;
        const double err = std::abs(uz - exact) / exact;
        const double quad = oracles::ring_line_integral(a, 0.0, gamma, probe.delta, {0.0, 0.0}).uz;
        rec.metric("center_velocity_" + key, uz);
        rec.check("center_velocity_error_" + key, err, "<", 0.01);
        rec.check("center_velocity_vs_line_integral_" + key, std::abs(uz - quad) / quad, "<", 1e-9);
        errors[k] = err;
    }
    rec.check("center_velocity_error_decreases", errors[1] - errors[0], "<", 0.0);
    axis_probe(rec, run, a);
}

void run_ring_leapfrog(const RunContext& ctx, RunRecord& rec) {
    const Params& p = ctx.params;
    const auto res = static_cast<std::size_t>(ctx.resolution);
    RingCloudAxi cloud;
    cloud.delta = p.get_double("delta");
    cloud.positions = {{p.get_double("r1"), 0.0}, {p.get_double("r2"), p.get_double("separation")}};
    cloud.circulations = {p.get_double("gamma"), p.get_double("gamma")};
    const auto steps = static_cast<std::size_t>(p.get_int("steps")) * res;
    Series& traj = rec.add_series("trajectory", "ring positions and impulse",
                                  {"t", "impulse", "r_1", "z_1", "r_2", "z_2"});
    const RingRun run = march_rings(cloud, p.get_double("dt") / static_cast<double>(res), steps,
                                    static_cast<std::size_t>(p.get_int("output_every")) * res, traj);

    std::size_t passes = 0;
    for (std::size_t k = 1; k < traj.rows.size(); ++k) {
        const double before = traj.rows[k - 1][5] - traj.rows[k - 1][3];
        const double after = traj.rows[k][5] - traj.rows[k][3];
        if ((before > 0.0) != (after > 0.0)) {
            ++passes;
        }
    }
    const AxisymInvariants inv = axisym_invariants(run.history.back().second);
    rec.metric("passes", static_cast<double>(passes));
    rec.check("circulation_drift", std::abs(inv.circulation - 2.0 * p.get_double("gamma")), "==", 0.0);
    rec.check("impulse_drift_per_1000_steps", run.impulse_drift * 1000.0 / static_cast<double>(steps), "<", 1e-8);
    rec.check("leapfrog_passes", static_cast<double>(passes), ">=", 2.0);
    axis_probe(rec, run, std::min(p.get_double("r1"), p.get_double("r2")));
}

} // namespace

std::vector<PresetInfo> vortex_presets() {
    return {
        PresetInfo{"sheet-one-sign", "one-sign sheet roll-up: conservation and concentration nesting",
                   {{"atoms", "100"},
                    {"delta", "0.1"},
                    {"dt", "0.01"},
                    {"steps", "10000"},
                    {"output_every", "500"},
                    {"sweep_spacing", "0.0125"}},
                   run_sheet_one_sign},
        PresetInfo{"sheet-mirror", "mirror-symmetric sheet with a weak positive field: no concentration",
                   {{"atoms", "100"},
                    {"patch_atoms", "50"},
                    {"patch_mass", "0.1"},
                    {"sheet_x1", "0.5"},
                    {"sheet_half_length", "0.5"},
                    {"delta", "0.1"},
                    {"dt", "0.01"},
                    {"T", "1"},
                    {"sweep_spacing", "0.0125"},
                    {"concentration_threshold", "0.1"}},
                   run_sheet_mirror},
        PresetInfo{"ring-single", "single smoothed ring: impulse, centre velocity, axis energy",
                   {{"radius", "1"},
                    {"gamma", "1"},
                    {"delta", "0.05"},
                    {"dt", "0.01"},
                    {"steps", "1000"},
                    {"output_every", "100"},
                    {"delta_center_1", "0.05"},
                    {"delta_center_2", "0.02"}},
                   run_ring_single},
        PresetInfo{"ring-leapfrog", "two coaxial rings passing through each other",
                   {{"r1", "1"},
                    {"r2", "1"},
                    {"separation", "0.5"},
                    {"gamma", "1"},
                    {"delta", "0.1"},
                    {"dt", "0.01"},
                    {"steps", "3000"},
                    {"output_every", "25"}},
                   run_ring_leapfrog},
    };
}

} // namespace singflow::harness

#include "singflow/harness/oracles.hpp"
#include "singflow/harness/registry.hpp"

#include "singflow/conical/marching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace singflow::harness {

namespace {

using namespace singflow::conical;

constexpr double kDeg = std::numbers::pi / 180.0;

struct Flow {
    GasModel gas;
    Freestream fs;
    double b0 = 0.0;
};

Flow flow_from(const Params& p) {
    Flow f;
    f.gas.gamma = p.get_double("gamma");
    f.fs = Freestream::unit_sound_speed(p.get_double("mach"), f.gas);
    f.b0 = std::tan(p.get_double("cone_deg") * kDeg);
    return f;
}

std::size_t scaled(const Params& p, const std::string& key, int resolution) {
    return static_cast<std::size_t>(p.get_int(key)) * static_cast<std::size_t>(resolution);
}

// Distance between the xi-profiles of two stations (shock position scaled by z).
double profile_distance(const MarchState& a, const MarchState& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.nodes(); ++j) {
        worst = std::max(worst, std::abs(a.dr_phi[j] - b.dr_phi[j]) + std::abs(a.dz_phi[j] - b.dz_phi[j]));
    }
    return worst + std::abs(a.S / a.z - b.S / b.z);
}

void add_deviation_series(RunRecord& rec, const std::string& name, const DiagnosticSeries& ds) {
    Series& s = rec.add_series(name, "deviation from the background per station",
                               {"z", "deviation", "raw_deviation", "shock_ratio"});
    for (const auto& d : ds.samples) {
        s.rows.push_back({d.z, d.deviation, d.raw_deviation, d.shock_ratio});
    }
}

void run_selfsimilar(const RunContext& ctx, RunRecord& rec) {
    const Params& p = ctx.params;
    const Flow f = flow_from(p);
    SimilarityOptions opts;
    opts.steps = scaled(p, "steps", ctx.resolution);
    const SelfSimilarSolution bg = solve_self_similar(f.fs, f.gas, f.b0, 1e-12, opts);

    const double sigma_deg = bg.sigma / kDeg;
    const double oracle_deg = oracles::taylor_maccoll_shock_angle(
                                  p.get_double("mach"), f.gas.gamma, std::atan(f.b0)) / kDeg;
    const double euler_deg =
        oracles::taylor_maccoll_shock_angle(p.get_double("mach"), f.gas.gamma, std::atan(f.b0),
                                            oracles::ShockModel::Euler) / kDeg;
    rec.metric("shock_angle_deg", sigma_deg);
    rec.metric("oracle_shock_angle_deg", oracle_deg);
    rec.metric("euler_jump_shock_angle_deg", euler_deg);
    rec.metric("mach_angle_deg", std::asin(1.0 / f.fs.mach(f.gas)) / kDeg);
    rec.check("shock_angle_error_deg", std::abs(sigma_deg - oracle_deg), "<=", 0.1);

    Series& res = rec.add_series("residual", "similarity residual against integration steps",
                                 {"steps", "residual"});
    double prev = 0.0;
    double ratio = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t n = (opts.steps / 4) << k;
        const double r = similarity_residual(integrate_from_shock(f.fs, f.gas, f.b0, bg.sigma, n));
        res.rows.push_back({static_cast<double>(n), r});
        if (k > 0) {
            ratio = prev / r;
        }
        prev = r;
    }
    rec.check("residual_refinement_ratio", ratio, ">=", 3.0);

    Series& prof = rec.add_series("background", "self-similar layer between body and shock",
                                  {"s", "g", "dr_phi", "dz_phi", "density"});
    for (std::size_t i = 0; i < bg.s.size(); ++i) {
        prof.rows.push_back({bg.s[i], bg.g[i], bg.dr_phi[i], bg.dz_phi[i], bg.density[i]});
    }

    const ConeGeometry cone = ConeGeometry::exact(f.b0);
    RunParams rp;
    rp.march.intervals = scaled(p, "intervals", ctx.resolution);
    rp.z_end = p.get_double("z_end");
    rp.samples_per_decade = static_cast<std::size_t>(p.get_int("samples_per_decade"));
    const double e0 = discretization_error_estimate(bg, cone, rp.z_start, rp.march.intervals);
    const DiagnosticSeries full = run_marching(bg, cone, rp);
    RunParams half_params = rp;
    half_params.z_end = 0.5 * rp.z_end;
    const DiagnosticSeries half = run_marching(bg, cone, half_params);
    add_deviation_series(rec, "deviation", full);

    double worst = 0.0;
    for (const auto& s : full.samples) {
        worst = std::max(worst, s.deviation);
    }
    rec.metric("initial_discretization_error", e0);
    rec.metric("max_deviation", worst);
    rec.check("march_completed", full.failure_z || half.failure_z ? 0.0 : 1.0, "==", 1.0);
    rec.check("deviation_over_discretization_error", worst / e0, "<=", 10.0);
    rec.check("profile_change_z_to_2z", profile_distance(half.final_state, full.final_state), "<=",
              e0);
}

ConeGeometry perturbed_geometry(const Params& p, double b0) {
    const double eps0 = p.get_double("eps0");
    const int k1 = static_cast<int>(p.get_int("k1"));
    const int k2 = static_cast<int>(p.get_int("k2"));
    const std::string csv = p.get_string("perturbation_csv");
    if (!csv.empty()) {
        return read_perturbation_csv(csv, b0, eps0, k1, k2);
    }
    // eps sin^4(pi (z - 1)) on [1, 2], zero elsewhere on the sampled range.
    const double eps = p.get_double("eps");
    const auto n = static_cast<std::size_t>(p.get_int("samples"));
    numerics::Vector z(n);
    numerics::Vector pert(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = 0.5 + 2.5 * static_cast<double>(i) / static_cast<double>(n - 1);
        const double s = z[i] > 1.0 && z[i] < 2.0 ? std::sin(std::numbers::pi * (z[i] - 1.0)) : 0.0;
        pert[i] = eps * s * s * s * s;
    }
    return ConeGeometry(b0, std::move(z), std::move(pert), eps0, k1, k2);
}

void run_perturbed(const RunContext& ctx, RunRecord& rec) {
    const Params& p = ctx.params;
    const Flow f = flow_from(p);
    const ConeGeometry geom = perturbed_geometry(p, f.b0);
    const AdmissibilityReport adm = check_cone_admissibility(geom);
    for (std::size_t k = 0; k < adm.bound.size(); ++k) {
        rec.metric("admissibility_bound_" + std::to_string(k), adm.bound[k]);
    }
    rec.check("perturbation_admissible", adm.passed ? 1.0 : 0.0, "==", 1.0);

    Series& pert = rec.add_series("perturbation", "body perturbation samples", {"z", "perturbation"});
    for (std::size_t i = 0; i < geom.sample_z().size(); ++i) {
        pert.rows.push_back({geom.sample_z()[i], geom.sample_perturbation()[i]});
    }

    const SelfSimilarSolution bg = solve_self_similar(f.fs, f.gas, f.b0, 1e-12, {});
    RunParams rp;
    rp.z_end = p.get_double("z_end");
    rp.fit_z_min = p.get_double("fit_z_min");
    rp.samples_per_decade = static_cast<std::size_t>(p.get_int("samples_per_decade"));

    std::vector<double> slopes;
    for (const int level : {1, 2}) {
        rp.march.intervals = scaled(p, "intervals", ctx.resolution * level);
        const DiagnosticSeries ds = run_marching(bg, geom, rp);
        const std::string tag = level == 1 ? "coarse" : "fine";
        add_deviation_series(rec, "deviation_" + tag, ds);
        rec.check("march_completed_" + tag, ds.failure_z ? 0.0 : 1.0, "==", 1.0);
        const double slope = ds.slope.value_or(std::nan(""));
        rec.metric("intervals_" + tag, static_cast<double>(rp.march.intervals));
        rec.check("decay_slope_" + tag, slope, "<=", -0.2);
        slopes.push_back(slope);
    }
    rec.check("decay_slope_relative_change", std::abs(slopes[0] - slopes[1]) / std::abs(slopes[1]),
              "<=", 0.2);
}

} // namespace

std::vector<PresetInfo> conical_presets() {
    return {
        PresetInfo{"conical-selfsimilar",
                   "conical background: shock angle, residual order, persistence under marching",
                   {{"mach", "3"},
                    {"gamma", "1.4"},
                    {"cone_deg", "10"},
                    {"steps", "400"},
                    {"intervals", "100"},
                    {"z_end", "100"},
                    {"samples_per_decade", "10"}},
                   run_selfsimilar},
        PresetInfo{"conical-perturbed",
                   "compactly perturbed cone: decay of the deviation from the background",
                   {{"mach", "3"},
                    {"gamma", "1.4"},
                    {"cone_deg", "10"},
                    {"eps", "0.003"},
                    {"eps0", "0.5"},
                    {"k1", "2"},
                    {"k2", "2"},
                    {"samples", "501"},
                    {"perturbation_csv", ""},
                    {"intervals", "100"},
                    {"z_end", "1000"},
                    {"fit_z_min", "10"},
                    {"samples_per_decade", "10"}},
                   run_perturbed},
    };
}

} // namespace singflow::harness

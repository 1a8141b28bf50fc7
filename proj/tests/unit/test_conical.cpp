#include "doctest.h"

#include "singflow/conical/gas.hpp"
#include "singflow/conical/geometry.hpp"
#include "singflow/conical/marching.hpp"
#include "singflow/conical/self_similar.hpp"
#include "singflow/errors.hpp"
#include "singflow/harness/oracles.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace singflow;
using namespace singflow::conical;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Setup {
    GasModel gas;
    Freestream fs;
};

Setup mach3() {
    Setup s;
    s.gas.gamma = 1.4;
    s.fs = Freestream::unit_sound_speed(3.0, s.gas);
    return s;
}

const SelfSimilarSolution& cone10() {
    static const SelfSimilarSolution bg = [] {
        Setup s = mach3();
        return solve_self_similar(s.fs, s.gas, std::tan(10.0 * kDeg), 1e-12);
    }();
    return bg;
}

// Compressive root of rho(u) u = rho0 u0n with rho from the closed-form
// Bernoulli inversion, located by dense sampling and refined by bisection.
double jump_oracle(double gamma, double A, double q0, double rho0, double sigma) {
    const double H = 0.5 * q0 * q0 + A * gamma / (gamma - 1.0) * std::pow(rho0, gamma - 1.0);
    const double ut = q0 * std::cos(sigma);
    const double u0n = q0 * std::sin(sigma);
    const auto F = [&](double u) {
        const double rem = H - 0.5 * (u * u + ut * ut);
        const double rho = std::pow((gamma - 1.0) / (A * gamma) * rem, 1.0 / (gamma - 1.0));
        return rho * u - rho0 * u0n;
    };
    const int n = 200000;
    double prev = 1e-9 * u0n;
    for (int k = 1; k <= n; ++k) {
        const double u = u0n * k / n;
        if (F(prev) * F(u) <= 0.0) {
            double lo = prev;
            double hi = u;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (F(lo) * F(mid) <= 0.0 ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = u;
    }
    return std::nan("");
}

} // namespace

TEST_CASE("gas relations") {
    GasModel g2{2.0, 0.5};
    CHECK(sound_speed(1.0, g2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(enthalpy(1.0, g2) == doctest::Approx(1.0).epsilon(1e-15));
    GasModel air{1.4, 1.0};
    CHECK(sound_speed(1.0, air) == doctest::Approx(1.183216).epsilon(1e-6));
    CHECK(enthalpy(1.0, air) == doctest::Approx(3.5).epsilon(1e-14));
    CHECK_THROWS_AS(sound_speed(0.0, air), NonPhysicalDensity);
    CHECK_THROWS_AS(enthalpy(-1.0, air), NonPhysicalDensity);

    // h' = p'/rho by central differences at rho = 2.
    const double rho = 2.0;
    const double d = 1e-5;
    const double dh = (enthalpy(rho + d, air) - enthalpy(rho - d, air)) / (2.0 * d);
    const double dp = air.A * air.gamma * std::pow(rho, air.gamma - 1.0);
    CHECK(std::abs(dh - dp / rho) < 1e-8);
}

TEST_CASE("bernoulli_density") {
    GasModel air{1.4, 1.0};
    const Freestream fs{3.0, 1.0};
    CHECK(bernoulli_density(9.0, fs, air) == doctest::Approx(1.0).epsilon(1e-14));
    const double stag = std::pow(1.0 + 4.5 * 0.4 / 1.4, 1.0 / 0.4);
    CHECK(bernoulli_density(0.0, fs, air) == doctest::Approx(stag).epsilon(1e-13));
    const double H = fs.total_enthalpy(air);
    CHECK_THROWS_AS(bernoulli_density(2.0 * H + 1.0, fs, air), VacuumReached);
}

TEST_CASE("rh_downstream") {
    Setup s = mach3();
    const double mu = std::asin(1.0 / 3.0);
    const PostShockState weak = rh_downstream(s.fs, s.gas, std::tan(mu));
    CHECK(weak.normal == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(weak.density == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(weak.tangential == doctest::Approx(3.0 * std::cos(mu)).epsilon(1e-14));

    const double sigma = std::asin(2.0 / 3.0);  // normal Mach 2
    const PostShockState st = rh_downstream(s.fs, s.gas, std::tan(sigma));
    const double oracle = jump_oracle(1.4, s.gas.A, 3.0, 1.0, sigma);
    CHECK(st.normal == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(st.density > 1.0);
    CHECK(st.density * st.normal == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(st.tangential == doctest::Approx(3.0 * std::cos(sigma)).epsilon(1e-14));

    CHECK_THROWS_AS(rh_downstream(s.fs, s.gas, std::tan(std::asin(0.5 / 3.0))), NoShockSolution);
}

TEST_CASE("jump density grows with shock angle") {
    Setup s = mach3();
    double prev = 1.0;
    for (double deg = 20.0; deg < 80.0; deg += 5.0) {
        const double rho = rh_downstream(s.fs, s.gas, std::tan(deg * kDeg)).density;
        CHECK(rho > prev);
        prev = rho;
    }
}

TEST_CASE("self-similar shock angle matches the polar-angle oracle") {
    const SelfSimilarSolution& bg = cone10();
    const double oracle = harness::oracles::taylor_maccoll_shock_angle(3.0, 1.4, 10.0 * kDeg);
    CHECK(std::abs(bg.sigma - oracle) / kDeg < 0.1);
    // Frozen reference value of the potential-flow cone shock.
    CHECK(bg.sigma / kDeg == doctest::Approx(21.6563609639).epsilon(1e-9));
    // Body tangency at s = b0.
    CHECK(std::abs(bg.dr_phi.front() - bg.b0 * (3.0 + bg.dz_phi.front())) < 1e-8);
    for (double rho : bg.density) {
        CHECK(rho > 1.0);
    }
}

TEST_CASE("similarity residual converges at second order") {
    Setup s = mach3();
    const double sigma = cone10().sigma;
    const double b0 = std::tan(10.0 * kDeg);
    double prev = 0.0;
    for (std::size_t steps : {100, 200, 400, 800}) {
        const double r = similarity_residual(integrate_from_shock(s.fs, s.gas, b0, sigma, steps));
        if (prev > 0.0) {
            CHECK(prev / r >= 3.0);
        }
        prev = r;
    }
}

TEST_CASE("thin cones approach the Mach angle monotonically") {
    Setup s = mach3();
    const double mu = std::asin(1.0 / 3.0);
    double prev = 1.0;
    for (double deg : {4.0, 2.0, 1.0, 0.5}) {
        const double sigma = solve_self_similar(s.fs, s.gas, std::tan(deg * kDeg), 1e-12).sigma;
        CHECK(sigma > mu);
        CHECK(sigma < prev);
        prev = sigma;
    }
    CHECK((prev - mu) / kDeg < 0.05);
}

TEST_CASE("self-similar errors") {
    GasModel gas{1.4, 1.0};
    Freestream fs = Freestream::unit_sound_speed(1.5, gas);
    CHECK_THROWS_AS(solve_self_similar(fs, gas, std::tan(60.0 * kDeg), 1e-10), DetachedShock);
    Freestream slow = Freestream::unit_sound_speed(0.8, gas);
    CHECK_THROWS_AS(solve_self_similar(slow, gas, 0.1, 1e-10), NotSupersonic);
}

TEST_CASE("cone admissibility") {
    const ConeGeometry exact = ConeGeometry::exact(0.2);
    const AdmissibilityReport r0 = check_cone_admissibility(exact);
    CHECK(r0.passed);
    for (double b : r0.bound) CHECK(b == 0.0);

    const double eps = 1e-3;
    numerics::Vector z;
    numerics::Vector p;
    for (int k = 0; k <= 2000; ++k) {
        z.push_back(0.05 + 0.005 * k);
        p.push_back(eps * z.back() / (1.0 + z.back() * z.back()));
    }
    const ConeGeometry g(0.2, z, p, 0.01, 2, 2);
    const AdmissibilityReport r = check_cone_admissibility(g);
    CHECK(r.passed);
    CHECK(r.bound[0] == doctest::Approx(eps / 2.0).epsilon(1e-6));
    // |z p'| = eps z |1 - z^2| / (1 + z^2)^2 peaks at z = sqrt(3 - 2 sqrt 2).
    const double zs = std::sqrt(3.0 - 2.0 * std::sqrt(2.0));
    const double peak1 = eps * zs * (1.0 - zs * zs) / std::pow(1.0 + zs * zs, 2.0);
    CHECK(r.bound[1] == doctest::Approx(peak1).epsilon(1e-4));

    const ConeGeometry strict(0.2, z, p, 0.0, 2, 2);
    CHECK_FALSE(check_cone_admissibility(strict).passed);

    const ConeGeometry few(0.2, {1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}, 0.1, 2, 2);
    CHECK_THROWS_AS(check_cone_admissibility(few), ResolutionError);
}

TEST_CASE("perturbation csv round trip") {
    const auto path = std::filesystem::temp_directory_path() / "singflow_pert_roundtrip.csv";
    const ConeGeometry g(0.3, {1.0, 1.5, 2.0, 2.5, 3.0}, {0.0, 1e-3, -2e-3, 0.5e-3, 0.0}, 0.1, 2, 2);
    write_perturbation_csv(path, g);
    const ConeGeometry back = read_perturbation_csv(path, 0.3, 0.1, 2, 2);
    CHECK(back.sample_z() == g.sample_z());
    CHECK(back.sample_perturbation() == g.sample_perturbation());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_perturbation_csv(path, 0.3, 0.1, 2, 2), UsageError);
}

TEST_CASE("deviation_norm examples") {
    const SelfSimilarSolution& bg = cone10();
    const ConeGeometry geom = ConeGeometry::exact(bg.b0);
    MarchState st = initial_state(bg, geom, 5.0, 100);
    CHECK(deviation_norm(st, bg) < 1e-14);
    st.S += 0.01;
    CHECK(deviation_norm(st, bg) == doctest::Approx(0.01 / 5.0).epsilon(1e-10));
}

TEST_CASE("exact cone is a discrete near fixed point") {
    const SelfSimilarSolution& bg = cone10();
    const ConeGeometry geom = ConeGeometry::exact(bg.b0);
    const double e0 = discretization_error_estimate(bg, geom, 1.0, 100);
    MarchState st = initial_state(bg, geom, 1.0, 100);
    for (int k = 0; k < 50; ++k) {
        st = march_step(st, bg, geom, 0.4 * max_stable_dz(st, bg, geom));
        CHECK(std::abs(shock_flux_residual(st, bg)) < 1e-10);
        CHECK(std::abs(body_flux_residual(st, bg, geom)) < 1e-10);
    }
    CHECK(deviation_norm(st, bg) < e0);
    // Halving the grid spacing cuts the drift by about four.
    MarchState fine = initial_state(bg, geom, 1.0, 200);
    while (fine.z < st.z) {
        const double dz = std::min(0.4 * max_stable_dz(fine, bg, geom), st.z - fine.z);
        fine = march_step(fine, bg, geom, dz);
    }
    CHECK(deviation_norm(st, bg) / deviation_norm(fine, bg) > 3.0);
}

TEST_CASE("marching is scale invariant on the exact cone") {
    const SelfSimilarSolution& bg = cone10();
    const ConeGeometry geom = ConeGeometry::exact(bg.b0);
    const MarchState a0 = initial_state(bg, geom, 2.0, 80);
    const MarchState b0 = initial_state(bg, geom, 4.0, 80);
    const double dz = 0.3 * max_stable_dz(a0, bg, geom);
    const MarchState a = march_step(a0, bg, geom, dz);
    const MarchState b = march_step(b0, bg, geom, 2.0 * dz);
    for (std::size_t j = 0; j < a.nodes(); ++j) {
        CHECK(std::abs(a.dr_phi[j] - b.dr_phi[j]) < 1e-12);
        CHECK(std::abs(a.dz_phi[j] - b.dz_phi[j]) < 1e-12);
    }
    CHECK(std::abs(a.S / a.z - b.S / b.z) < 1e-13);
}

TEST_CASE("march_step errors") {
    const SelfSimilarSolution& bg = cone10();
    const ConeGeometry geom = ConeGeometry::exact(bg.b0);
    const MarchState st = initial_state(bg, geom, 1.0, 50);
    CHECK_THROWS_AS(march_step(st, bg, geom, 10.0 * max_stable_dz(st, bg, geom)), StepTooLarge);
    CHECK_THROWS_AS(initial_state(bg, geom, 0.0, 50), DomainError);

    // A bulge reaching past the shock.
    const ConeGeometry fat(bg.b0, {0.5, 1.0, 1.5, 2.0}, {0.0, 0.5, 0.5, 0.0}, 1.0, 2, 2);
    CHECK_THROWS_AS(initial_state(bg, fat, 1.0, 50), GeometryCollapse);
}

TEST_CASE("run_marching on the exact cone stays within the discretization error") {
    Setup s = mach3();
    const SelfSimilarSolution& bg = cone10();
    const ConeGeometry geom = ConeGeometry::exact(bg.b0);
    RunParams rp;
    rp.z_end = 100.0;
    const DiagnosticSeries ds = run_marching(bg, geom, rp);
    CHECK(ds.failure.empty());
    CHECK(ds.final_state.z == doctest::Approx(100.0));
    const double e0 = discretization_error_estimate(bg, geom, 1.0, rp.march.intervals);
    for (const auto& smp : ds.samples) {
        CHECK(smp.deviation <= 10.0 * e0);
    }
    CHECK_THROWS_AS(run_marching(s.fs, s.gas,
                                 ConeGeometry(bg.b0, {1.0, 1.5, 2.0, 2.5, 3.0, 3.5}, {0.0, 0.1, 0.1, 0.1, 0.1, 0.0},
                                              1e-3, 2, 2),
                                 rp),
                    DomainError);
}

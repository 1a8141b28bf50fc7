#include "doctest.h"

#include "singflow/errors.hpp"
#include "singflow/harness/oracles.hpp"
#include "singflow/vortex/blobs.hpp"
#include "singflow/vortex/diagnostics.hpp"
#include "singflow/vortex/rings.hpp"
#include "singflow/vortex/sheet.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace singflow;
using namespace singflow::vortex;

namespace {

constexpr double kPi = std::numbers::pi;

BlobCloud2D random_cloud(std::size_t n, std::mt19937_64& rng, double delta) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BlobCloud2D c;
    c.delta = delta;
    for (std::size_t i = 0; i < n; ++i) {
        c.positions.push_back({u(rng), u(rng)});
        c.circulations.push_back(u(rng));
    }
    return c;
}

BlobCloud2D mirrored_patch(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    BlobCloud2D half;
    half.delta = 0.1;
    for (std::size_t i = 0; i < n; ++i) {
        half.positions.push_back({u(rng), u(rng) - 0.5});
        half.circulations.push_back(u(rng));
    }
    return mirror_symmetrize(half);
}

} // namespace

TEST_CASE("kernel examples") {
    const Vec2 k = kernel2d({1.0, 0.0}, 0.0);
    CHECK(k.x1 == 0.0);
    CHECK(k.x2 == doctest::Approx(1.0 / (2.0 * kPi)));
    const Vec2 z = kernel2d({0.0, 0.0}, 0.0);
    CHECK(z.x1 == 0.0);
    CHECK(z.x2 == 0.0);
    const Vec2 reg = kernel2d({0.0, 1.0}, 1.0);
    CHECK(reg.x1 == doctest::Approx(-1.0 / (4.0 * kPi)));
    CHECK(reg.x2 == 0.0);
}

TEST_CASE("co-rotating pair turns at the closed-form rate") {
    const double d = 1.0;
    const double delta = 0.1;
    BlobCloud2D c;
    c.delta = delta;
    c.positions = {{0.5, 0.0}, {-0.5, 0.0}};
    c.circulations = {1.0, 1.0};
    const double omega = 1.0 / (kPi * (d * d + delta * delta));
    const double dt = 0.01;
    const int steps = 500;
    for (int k = 0; k < steps; ++k) c = step(c, dt);
    const double angle = omega * dt * steps;
    CHECK(c.positions[0].x1 == doctest::Approx(0.5 * std::cos(angle)).epsilon(1e-9));
    CHECK(c.positions[0].x2 == doctest::Approx(0.5 * std::sin(angle)).epsilon(1e-9));
    CHECK(c.positions[1].x1 == doctest::Approx(-c.positions[0].x1).epsilon(1e-12));
}

TEST_CASE("counter-rotating pair translates at the closed-form speed") {
    const double d = 0.8;
    const double delta = 0.05;
    BlobCloud2D c;
    c.delta = delta;
    c.positions = {{0.4, 0.0}, {-0.4, 0.0}};
    c.circulations = {1.0, -1.0};
    const double speed = d / (2.0 * kPi * (d * d + delta * delta));
    for (int k = 0; k < 100; ++k) c = step(c, 0.02);
    CHECK(std::abs(c.positions[0].x2) == doctest::Approx(speed * 2.0).epsilon(1e-10));
    CHECK(c.positions[0].x2 == doctest::Approx(c.positions[1].x2).epsilon(1e-14));
    CHECK(c.positions[0].x1 == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("velocity is linear in the circulations") {
    std::mt19937_64 rng(11);
    BlobCloud2D a = random_cloud(20, rng, 0.1);
    BlobCloud2D b = a;
    for (double& g : b.circulations) g = std::sin(3.0 * g);
    BlobCloud2D sum = a;
    for (std::size_t i = 0; i < sum.size(); ++i) sum.circulations[i] = 2.0 * a.circulations[i] - b.circulations[i];
    const std::vector<Vec2> targets{{0.3, 0.2}, {-1.5, 0.7}, {2.0, -2.0}};
    const auto ua = velocity_field(a, targets);
    const auto ub = velocity_field(b, targets);
    const auto us = velocity_field(sum, targets);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        CHECK(us[k].x1 == doctest::Approx(2.0 * ua[k].x1 - ub[k].x1).epsilon(1e-12));
        CHECK(us[k].x2 == doctest::Approx(2.0 * ua[k].x2 - ub[k].x2).epsilon(1e-12));
    }
}

TEST_CASE("reversing circulations retraces the motion") {
    std::mt19937_64 rng(3);
    const BlobCloud2D start = random_cloud(12, rng, 0.2);
    BlobCloud2D c = start;
    for (int k = 0; k < 50; ++k) c = step(c, 0.005);
    for (double& g : c.circulations) g = -g;
    for (int k = 0; k < 50; ++k) c = step(c, 0.005);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(std::abs(c.positions[i].x1 - start.positions[i].x1) < 1e-9);
        CHECK(std::abs(c.positions[i].x2 - start.positions[i].x2) < 1e-9);
    }
}

TEST_CASE("blob cloud validation") {
    BlobCloud2D c;
    c.positions = {{0.0, 0.0}};
    c.circulations = {1.0, 2.0};
    CHECK_THROWS_AS(c.validate(), ShapeError);
    c.circulations = {1.0};
    c.delta = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("build_sheet") {
    SheetSpec line;
    line.curve = [](double s) { return Vec2{2.0 * s - 1.0, 0.0}; };
    line.strength = [](double) { return 1.0; };
    const BlobCloud2D c = build_sheet(line, 40, 0.1);
    CHECK(c.size() == 40);
    CHECK(c.total_circulation() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.positions[0].x1 == doctest::Approx(-1.0 + 1.0 / 40.0));

    SheetSpec nms;
    nms.curve = [](double s) { return Vec2{0.5, s - 0.5}; };
    nms.strength = [](double) { return 1.0; };
    nms.pattern = SignPattern::NMSPair;
    const BlobCloud2D m = build_sheet(nms, 25, 0.1);
    CHECK(m.size() == 50);
    CHECK(m.mirror_paired);
    CHECK(m.total_circulation() == 0.0);
    CHECK(m.total_abs_circulation() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mirror_symmetry_error(m) == 0.0);

    SheetSpec point;
    point.curve = [](double) { return Vec2{1.0, 1.0}; };
    point.strength = [](double) { return 1.0; };
    CHECK_THROWS_AS(build_sheet(point, 10, 0.1), DegenerateSpec);

    SheetSpec crossing = nms;
    crossing.curve = [](double s) { return Vec2{s - 0.5, 0.0}; };
    CHECK_THROWS_AS(build_sheet(crossing, 10, 0.1), NotNMS);
}

TEST_CASE("mirror symmetry check") {
    const BlobCloud2D m = mirrored_patch(30, 5);
    const double tol = 1e-8;
    CHECK(check_mirror_symmetry(m, tol));

    BlobCloud2D off = m;
    off.positions[31].x1 += 2.0 * tol;
    CHECK_FALSE(check_mirror_symmetry(off, tol));

    BlobCloud2D close = m;
    close.positions[31].x2 += 0.5 * tol;
    CHECK(check_mirror_symmetry(close, tol));

    // Unpaired storage order goes through the matching path.
    BlobCloud2D shuffled = m;
    shuffled.mirror_paired = false;
    std::mt19937_64 rng(9);
    std::vector<std::size_t> perm(m.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.positions[i] = m.positions[perm[i]];
        shuffled.circulations[i] = m.circulations[perm[i]];
    }
    CHECK(check_mirror_symmetry(shuffled, tol));
    shuffled.circulations[4] *= 1.001;
    CHECK_FALSE(check_mirror_symmetry(shuffled, tol));
}

TEST_CASE("mirror symmetry survives time stepping bit for bit") {
    BlobCloud2D m = mirrored_patch(20, 17);
    for (int k = 0; k < 100; ++k) m = step(m, 0.01);
    CHECK(mirror_symmetry_error(m) == 0.0);
    CHECK(m.total_circulation() == 0.0);
}

TEST_CASE("concentration_sup brackets the atom-centred brute force") {
    std::mt19937_64 rng(21);
    const BlobCloud2D c = random_cloud(80, rng, 0.1);
    for (double r : {0.1, 0.25, 0.5}) {
        double lower = 0.0;
        double upper = 0.0;
        for (const Vec2& ctr : c.positions) {
            double in_r = 0.0;
            double in_2r = 0.0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                const double d = std::hypot(c.positions[j].x1 - ctr.x1, c.positions[j].x2 - ctr.x2);
                if (d <= r) in_r += std::abs(c.circulations[j]);
                if (d <= 2.0 * r) in_2r += std::abs(c.circulations[j]);
            }
            lower = std::max(lower, in_r);
            upper = std::max(upper, in_2r);
        }
        const ConcentrationReport rep = concentration_sup(c, r, r / 4.0);
        CHECK(rep.sup_mass >= lower - 1e-14);
        CHECK(rep.sup_mass <= upper + 1e-14);
    }
    CHECK_THROWS_AS(concentration_sup(c, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(concentration_sup(c, 0.0, 0.1), DomainError);
}

TEST_CASE("concentration examples") {
    BlobCloud2D c;
    c.positions = {{0.0, 0.0}, {0.09, 0.0}, {5.0, 5.0}};
    c.circulations = {1.0, -2.0, 0.5};
    CHECK(concentration_sup(c, 0.1, 0.05).sup_mass == doctest::Approx(3.0));
    CHECK(concentration_sup(c, 0.01, 0.005).sup_mass == doctest::Approx(2.0));
}

TEST_CASE("local energy converges under refinement") {
    std::mt19937_64 rng(4);
    const BlobCloud2D c = random_cloud(10, rng, 0.2);
    const double e1 = local_energy(c, 1.0, 200);
    const double e2 = local_energy(c, 1.0, 400);
    CHECK(e2 > 0.0);
    CHECK(std::abs(e1 - e2) / e2 < 0.01);
    // Single blob: int_0^R (r / (2 pi (r^2 + d^2)))^2 2 pi r dr.
    BlobCloud2D one;
    one.delta = 0.3;
    one.positions = {{0.0, 0.0}};
    one.circulations = {1.0};
    const double d2 = 0.09;
    const double exact = (std::log((1.0 + d2) / d2) - 1.0 / (1.0 + d2)) / (4.0 * kPi);
    CHECK(local_energy(one, 1.0, 800) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("invariants of a symmetric pair") {
    BlobCloud2D c;
    c.delta = 0.0;
    c.positions = {{1.0, 0.0}, {-1.0, 0.0}};
    c.circulations = {1.0, 1.0};
    const InvariantRecord inv = invariants2d(c);
    CHECK(inv.circulation == 2.0);
    CHECK(inv.impulse.x1 == 0.0);
    CHECK(inv.impulse.x2 == 0.0);
    CHECK(inv.angular_impulse == doctest::Approx(2.0));
    CHECK(inv.hamiltonian == doctest::Approx(-std::log(4.0) / (4.0 * kPi)));
}

TEST_CASE("invariants are conserved by random clouds") {
    std::mt19937_64 rng(8);
    BlobCloud2D c = random_cloud(15, rng, 0.15);
    const InvariantRecord a = invariants2d(c);
    for (int k = 0; k < 200; ++k) c = step(c, 0.002);
    const InvariantRecord b = invariants2d(c);
    CHECK(b.circulation == a.circulation);
    CHECK(std::abs(b.impulse.x1 - a.impulse.x1) < 1e-10);
    CHECK(std::abs(b.impulse.x2 - a.impulse.x2) < 1e-10);
    CHECK(std::abs(b.angular_impulse - a.angular_impulse) < 1e-10);
    CHECK(std::abs(b.hamiltonian - a.hamiltonian) < 1e-7);
}

TEST_CASE("ring velocity") {
    const RingVelocity axis = single_ring_velocity(1.0, 0.0, 1.0, 0.05, {0.0, 0.7});
    CHECK(axis.ur == 0.0);
    // Closed-form axial velocity of a singular ring on its axis.
    const double z = 0.7;
    const double uz_exact = 1.0 / (2.0 * std::pow(1.0 + z * z, 1.5));
    CHECK(single_ring_velocity(1.0, 0.0, 1.0, 1e-9, {0.0, z}).uz == doctest::Approx(uz_exact).epsilon(1e-8));

    for (RZ p : {RZ{0.5, 0.3}, RZ{1.2, -0.4}, RZ{1.0, 0.0}, RZ{0.98, 0.01}, RZ{3.0, 2.0}}) {
        const RingVelocity u = single_ring_velocity(1.0, 0.1, 1.3, 0.05, p);
        const RingVelocity o = harness::oracles::ring_line_integral(1.0, 0.1, 1.3, 0.05, p);
        CHECK(std::abs(u.ur - o.ur) < 1e-9);
        CHECK(std::abs(u.uz - o.uz) < 1e-9);
    }
}

TEST_CASE("ring far field decays like a dipole") {
    const double u1 = single_ring_velocity(1.0, 0.0, 1.0, 0.05, {0.0, 20.0}).uz;
    const double u2 = single_ring_velocity(1.0, 0.0, 1.0, 0.05, {0.0, 40.0}).uz;
    CHECK(u1 / u2 == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("axisymmetric impulse and axis collision") {
    RingCloudAxi c;
    c.delta = 0.05;
    c.positions = {{1.0, 0.0}, {2.0, 0.5}};
    c.circulations = {1.0, 1.0};
    CHECK(axisym_invariants(c).impulse == doctest::Approx(5.0 * kPi));
    CHECK(axisym_invariants(c).circulation == 2.0);

    RingCloudAxi bad = c;
    bad.positions[0].r = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    // An oversized step throws a near-axis ring across r = 0.
    RingCloudAxi pair;
    pair.delta = 0.05;
    pair.positions = {{1.0, 0.0}, {0.1, 0.3}};
    pair.circulations = {10.0, 0.01};
    CHECK_NOTHROW(step_axisym(pair, 0.1));
    CHECK_THROWS_AS(step_axisym(pair, 1.0), AxisCollision);
}

#include "doctest.h"

#include "singflow/errors.hpp"
#include "singflow/numerics.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

using namespace singflow;
using namespace singflow::numerics;

namespace {

// Dense Gaussian elimination with partial pivoting.
Vector dense_solve(std::vector<Vector> a, Vector b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[p][k])) {
                p = i;
            }
        }
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) {
                a[i][j] -= m * a[k][j];
            }
            b[i] -= m * b[k];
        }
    }
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    return x;
}

TridiagonalSystem random_dominant(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TridiagonalSystem sys;
    sys.lower.resize(n - 1);
    sys.upper.resize(n - 1);
    sys.diagonal.resize(n);
    sys.rhs.resize(n);
    for (auto& v : sys.lower) v = u(rng);
    for (auto& v : sys.upper) v = u(rng);
    for (std::size_t i = 0; i < n; ++i) {
        sys.diagonal[i] = (u(rng) < 0 ? -1.0 : 1.0) * (2.5 + std::abs(u(rng)));
        sys.rhs[i] = 10.0 * u(rng);
    }
    return sys;
}

} // namespace

TEST_CASE("rk4_step zero field is the identity") {
    const VectorField zero = [](double, const Vector& y) { return Vector(y.size(), 0.0); };
    const Vector y{1.5, -2.0, 3.25};
    CHECK(rk4_step(zero, y, 0.3, 0.1) == y);
    CHECK(rk4_step(zero, Vector{0.0, 0.0}, 0.0, 1.0) == Vector{0.0, 0.0});
}

TEST_CASE("rk4_step integrates the exponential to 1e-9") {
    const VectorField f = [](double, const Vector& y) { return y; };
    Vector y{1.0};
    for (int i = 0; i < 1000; ++i) {
        y = rk4_step(f, y, 1e-3 * i, 1e-3);
    }
    CHECK(std::abs(y[0] - std::exp(1.0)) < 1e-9);
}

TEST_CASE("rk4_step local error is fifth order") {
    const double lambda = -1.3;
    const VectorField f = [=](double, const Vector& y) { return Vector{lambda * y[0]}; };
    const auto err = [&](double dt) {
        return std::abs(rk4_step(f, Vector{1.0}, 0.0, dt)[0] - std::exp(lambda * dt));
    };
    const double ratio = err(0.1) / err(0.05);
    CHECK(ratio == doctest::Approx(32.0).epsilon(0.2));
}

TEST_CASE("rk4_step errors") {
    const VectorField bad = [](double, const Vector&) { return Vector{std::nan("")}; };
    CHECK_THROWS_AS(rk4_step(bad, Vector{1.0}, 0.0, 0.1), NonFiniteState);
    const VectorField f = [](double, const Vector& y) { return y; };
    CHECK_THROWS_AS(rk4_step(f, Vector{1.0}, 0.0, 0.0), DomainError);
}

TEST_CASE("solve_tridiagonal small systems") {
    TridiagonalSystem id{{0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0}, {4.0, -1.0, 2.5}};
    CHECK(solve_tridiagonal(id) == Vector{4.0, -1.0, 2.5});

    TridiagonalSystem two{{1.0}, {2.0, 2.0}, {1.0}, {3.0, 3.0}};
    const Vector x = solve_tridiagonal(two);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("solve_tridiagonal matches dense elimination and has small residual") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 50;
        const TridiagonalSystem sys = random_dominant(n, rng);
        std::vector<Vector> dense(n, Vector(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            dense[i][i] = sys.diagonal[i];
            if (i + 1 < n) {
                dense[i][i + 1] = sys.upper[i];
                dense[i + 1][i] = sys.lower[i];
            }
        }
        const Vector x = solve_tridiagonal(sys);
        const Vector ref = dense_solve(dense, sys.rhs);
        double err = 0.0;
        double res = 0.0;
        double rhs_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err = std::max(err, std::abs(x[i] - ref[i]));
            double ax = sys.diagonal[i] * x[i];
            if (i > 0) ax += sys.lower[i - 1] * x[i - 1];
            if (i + 1 < n) ax += sys.upper[i] * x[i + 1];
            res = std::max(res, std::abs(ax - sys.rhs[i]));
            rhs_norm = std::max(rhs_norm, std::abs(sys.rhs[i]));
        }
        CHECK(err < 1e-12);
        CHECK(res < 1e-12 * rhs_norm);
    }
}

TEST_CASE("solve_tridiagonal errors") {
    TridiagonalSystem singular{{1.0}, {0.0, 1.0}, {1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(solve_tridiagonal(singular), SingularSystem);
    TridiagonalSystem bad{{1.0, 1.0}, {1.0, 1.0}, {1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(solve_tridiagonal(bad), ShapeError);
}

TEST_CASE("bisect_root") {
    CHECK(bisect_root([](double x) { return x - 0.5; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(0.5).epsilon(1e-12));
    const double r = bisect_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-10);
    CHECK(std::abs(r - std::sqrt(2.0)) <= 1e-10);
    CHECK_THROWS_AS(bisect_root([](double) { return 1.0; }, 0.0, 1.0, 1e-8), NoBracket);
}

TEST_CASE("fit_loglog_slope") {
    std::vector<std::pair<double, double>> pure;
    for (double z : {1.0, 10.0, 100.0}) pure.emplace_back(z, std::pow(z, -0.25));
    CHECK(std::abs(fit_loglog_slope(pure) + 0.25) < 1e-14);

    std::vector<std::pair<double, double>> flat{{1.0, 3.0}, {5.0, 3.0}, {50.0, 3.0}};
    CHECK(std::abs(fit_loglog_slope(flat)) < 1e-14);

    std::vector<std::pair<double, double>> noisy;
    for (int k = 0; k <= 40; ++k) {
        const double z = std::pow(10.0, k / 10.0);
        noisy.emplace_back(z, std::pow(z, -0.3) * (1.0 + 0.01 * std::sin(z)));
    }
    CHECK(std::abs(fit_loglog_slope(noisy) + 0.3) < 0.02);

    std::vector<std::pair<double, double>> bad{{1.0, 1.0}, {2.0, 0.0}};
    CHECK_THROWS_AS(fit_loglog_slope(bad), DomainError);
}

TEST_CASE("fit_loglog_slope is exact for random power laws") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double p = u(rng);
        const double c = std::exp(u(rng));
        std::vector<std::pair<double, double>> s;
        for (int k = 0; k < 12; ++k) {
            const double z = std::exp(0.4 * k + 0.1 * u(rng));
            s.emplace_back(z, c * std::pow(z, p));
        }
        CHECK(fit_loglog_slope(s) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("trapezoid") {
    const Grid1D g = Grid1D::uniform(0.0, 1.0, 11);
    CHECK(trapezoid(g, Vector(11, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(trapezoid(g, g.nodes()) == 0.5);

    const Grid1D fine = Grid1D::uniform(0.0, 1.0, 1000);
    Vector sq(1000);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = fine[i] * fine[i];
    CHECK(std::abs(trapezoid(fine, sq) - 1.0 / 3.0) < 1e-6);

    CHECK_THROWS_AS(trapezoid(g, Vector(5, 1.0)), ShapeError);

    const Vector cum = cumulative_trapezoid(g, g.nodes());
    CHECK(cum.front() == 0.0);
    CHECK(cum.back() == doctest::Approx(0.5));
    CHECK(cum[5] == doctest::Approx(0.125));
}

TEST_CASE("Grid1D validation") {
    CHECK_THROWS_AS(Grid1D(Vector{0.0}), DomainError);
    CHECK_THROWS_AS(Grid1D(Vector{0.0, 1.0, 1.0}), DomainError);
    const Grid1D g = Grid1D::uniform(-1.0, 1.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.spacing(2) == doctest::Approx(0.5));
}

TEST_CASE("CubicSpline reproduces cubics with natural ends and clamps outside") {
    // Natural spline is exact for linear data.
    Vector x{0.0, 0.5, 1.5, 2.0, 3.0};
    Vector y;
    for (double xi : x) y.push_back(2.0 * xi - 1.0);
    const CubicSpline s(x, y);
    for (double q : {0.1, 0.77, 1.9, 2.6}) {
        CHECK(s(q) == doctest::Approx(2.0 * q - 1.0).epsilon(1e-13));
        CHECK(s.derivative(q) == doctest::Approx(2.0).epsilon(1e-13));
    }
    CHECK(s(-1.0) == doctest::Approx(-1.0));
    CHECK(s(5.0) == doctest::Approx(5.0));
    CHECK(s.derivative(5.0) == 0.0);

    // Fourth-order convergence on a smooth interior function.
    const auto err = [](std::size_t n) {
        Vector xs(n);
        Vector ys(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = 3.0 * static_cast<double>(i) / static_cast<double>(n - 1);
            ys[i] = std::sin(xs[i]);
        }
        const CubicSpline sp(xs, ys);
        double e = 0.0;
        for (double q = 1.0; q <= 2.0; q += 0.01) e = std::max(e, std::abs(sp(q) - std::sin(q)));
        return e;
    };
    CHECK(err(41) / err(81) > 10.0);
}

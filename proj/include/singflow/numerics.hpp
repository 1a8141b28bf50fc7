#pragma once

// Shared numerical kernels: fixed-step RK4, Thomas elimination, bisection,
// composite trapezoid quadrature and log-log slope fitting.
//
// Everything here is a pure function of its arguments.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace singflow::numerics {

using Vector = std::vector<double>;

// Right-hand side of an autonomous-or-not ODE system y' = f(t, y).
using VectorField = std::function<Vector(double t, const Vector& y)>;

class Grid1D {
public:
    // Throws DomainError unless nodes are strictly increasing and >= 2.
    explicit Grid1D(Vector nodes);

    static Grid1D uniform(double lo, double hi, std::size_t n_nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    const Vector& nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    double spacing(std::size_t interval) const noexcept {
        return nodes_[interval + 1] - nodes_[interval];
    }
    double front() const noexcept { return nodes_.front(); }
    double back() const noexcept { return nodes_.back(); }

private:
    Vector nodes_;
};

// Bands of an n x n tridiagonal matrix. lower[i] couples row i+1 to
// column i, upper[i] couples row i to column i+1 (both of length n-1).
struct TridiagonalSystem {
    Vector lower;
    Vector diagonal;
    Vector upper;
    Vector rhs;
};

// One classical fourth-order Runge-Kutta step.
// Throws NonFiniteState if any stage derivative is not finite, DomainError if dt <= 0.
Vector rk4_step(const VectorField& deriv, const Vector& state, double t, double dt);

// Thomas elimination without pivoting. Callers are expected to hand in
// diagonally dominant systems; a vanishing pivot throws SingularSystem and
// inconsistent band lengths throw ShapeError.
Vector solve_tridiagonal(const TridiagonalSystem& sys);

// Bisection on [a, b]; requires f(a) * f(b) < 0 (NoBracket otherwise).
// Returns a point within tol of a root.
double bisect_root(const std::function<double(double)>& f, double a, double b, double tol);

// Least-squares slope of log(value) against log(abscissa).
double fit_loglog_slope(std::span<const std::pair<double, double>> samples);

// Composite trapezoid rule of values sampled on grid.
double trapezoid(const Grid1D& grid, std::span<const double> values);

// Cumulative trapezoid integral from the first node; result[0] == 0.
Vector cumulative_trapezoid(const Grid1D& grid, std::span<const double> values);

// Natural cubic spline through (x_i, y_i), built with solve_tridiagonal.
// Outside [x_0, x_n] the end values are held constant (zero slope).
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(Vector x, Vector y);

    bool empty() const noexcept { return x_.empty(); }
    double operator()(double x) const;
    double derivative(double x) const;
    double lo() const noexcept { return x_.front(); }
    double hi() const noexcept { return x_.back(); }

private:
    std::size_t interval(double x) const;

    Vector x_;
    Vector y_;
    Vector m_;  // second derivatives at the knots
};

} // namespace singflow::numerics

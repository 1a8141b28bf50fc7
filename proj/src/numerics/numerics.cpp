#include "singflow/numerics.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace singflow::numerics {

Grid1D::Grid1D(Vector nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) {
        throw DomainError("Grid1D needs at least 2 nodes");
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > nodes_[i - 1])) {
            throw DomainError("Grid1D nodes must be strictly increasing");
        }
    }
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t n_nodes) {
    if (n_nodes < 2) {
        throw DomainError("Grid1D::uniform needs at least 2 nodes");
    }
    Vector nodes(n_nodes);
    const double h = (hi - lo) / static_cast<double>(n_nodes - 1);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes[i] = lo + h * static_cast<double>(i);
    }
    nodes.back() = hi;
    return Grid1D(std::move(nodes));
}

namespace {

void require_finite(const Vector& v, const char* stage) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw NonFiniteState(std::string("non-finite derivative in RK4 stage ") + stage);
        }
    }
}

// out = y + h * k
void axpy(Vector& out, const Vector& y, double h, const Vector& k) {
    out.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] + h * k[i];
    }
}

} // namespace

Vector rk4_step(const VectorField& deriv, const Vector& state, double t, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("rk4_step requires dt > 0");
    }
    const double half = 0.5 * dt;
    Vector tmp;

    const Vector k1 = deriv(t, state);
    require_finite(k1, "1");
    axpy(tmp, state, half, k1);
    const Vector k2 = deriv(t + half, tmp);
    require_finite(k2, "2");
    axpy(tmp, state, half, k2);
    const Vector k3 = deriv(t + half, tmp);
    require_finite(k3, "3");
    axpy(tmp, state, dt, k3);
    const Vector k4 = deriv(t + dt, tmp);
    require_finite(k4, "4");

    Vector out(state.size());
    const double sixth = dt / 6.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        out[i] = state[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

Vector solve_tridiagonal(const TridiagonalSystem& sys) {
    const std::size_t n = sys.diagonal.size();
    if (n == 0 || sys.rhs.size() != n || sys.lower.size() + 1 != n || sys.upper.size() + 1 != n) {
        throw ShapeError("tridiagonal band lengths inconsistent with system size");
    }

    Vector c(n - 1);
    Vector d(n);
    double pivot = sys.diagonal[0];
    if (pivot == 0.0) {
        throw SingularSystem("zero pivot at row 0");
    }
    if (n > 1) {
        c[0] = sys.upper[0] / pivot;
    }
    d[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diagonal[i] - sys.lower[i - 1] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw SingularSystem("zero pivot at row " + std::to_string(i));
        }
        if (i + 1 < n) {
            c[i] = sys.upper[i] / pivot;
        }
        d[i] = (sys.rhs[i] - sys.lower[i - 1] * d[i - 1]) / pivot;
    }

    Vector x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("bisect_root requires tol > 0");
    }
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    if (!(fa * fb < 0.0)) {
        throw NoBracket("f(a) and f(b) have the same sign");
    }
    // Bisection halves the bracket; cap the loop for tolerances below ulp.
    for (int it = 0; it < 400 && std::abs(b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) {
            break;
        }
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double fit_loglog_slope(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 2) {
        throw DomainError("fit_loglog_slope needs at least 2 samples");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [z, d] : samples) {
        if (!(z > 0.0) || !(d > 0.0)) {
            throw DomainError("fit_loglog_slope needs positive samples");
        }
        sx += std::log(z);
        sy += std::log(d);
    }
    const double n = static_cast<double>(samples.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [z, d] : samples) {
        const double dx = std::log(z) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(d) - my);
    }
    if (sxx == 0.0) {
        throw DomainError("fit_loglog_slope needs at least two distinct abscissae");
    }
    return sxy / sxx;
}

double trapezoid(const Grid1D& grid, std::span<const double> values) {
    if (values.size() != grid.size()) {
        throw ShapeError("trapezoid: values do not match grid");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        sum += 0.5 * grid.spacing(i) * (values[i] + values[i + 1]);
    }
    return sum;
}

Vector cumulative_trapezoid(const Grid1D& grid, std::span<const double> values) {
    if (values.size() != grid.size()) {
        throw ShapeError("cumulative_trapezoid: values do not match grid");
    }
    Vector out(grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        out[i + 1] = out[i] + 0.5 * grid.spacing(i) * (values[i] + values[i + 1]);
    }
    return out;
}

CubicSpline::CubicSpline(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size()) {
        throw ShapeError("CubicSpline: x and y lengths differ");
    }
    Grid1D check(x_);  // strictly increasing, >= 2 nodes
    m_.assign(n, 0.0);
    if (n < 3) {
        return;
    }
    // Interior second derivatives, natural end conditions m_0 = m_{n-1} = 0.
    const std::size_t k = n - 2;
    TridiagonalSystem sys;
    sys.diagonal.resize(k);
    sys.rhs.resize(k);
    sys.lower.resize(k - 1);
    sys.upper.resize(k - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        sys.diagonal[i - 1] = (h0 + h1) / 3.0;
        sys.rhs[i - 1] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        if (i + 1 < n - 1) {
            sys.upper[i - 1] = h1 / 6.0;
            sys.lower[i - 1] = h1 / 6.0;
        }
    }
    const Vector inner = solve_tridiagonal(sys);
    std::copy(inner.begin(), inner.end(), m_.begin() + 1);
}

std::size_t CubicSpline::interval(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t idx = static_cast<std::size_t>(it - x_.begin());
    return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, x_.size() - 2);
}

double CubicSpline::operator()(double x) const {
    if (x <= x_.front()) {
        return y_.front();
    }
    if (x >= x_.back()) {
        return y_.back();
    }
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    if (x <= x_.front() || x >= x_.back()) {
        return 0.0;
    }
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

} // namespace singflow::numerics

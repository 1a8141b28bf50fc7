#include "singflow/conical/geometry.hpp"

#include "singflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace singflow::conical {

ConeGeometry::ConeGeometry(double b0, numerics::Vector z, numerics::Vector perturbation,
                           double eps0, int k1, int k2)
    : b0_(b0), eps0_(eps0), k1_(k1), k2_(k2), z_(std::move(z)), p_(std::move(perturbation)) {
    if (!(b0_ > 0.0)) {
        throw DomainError("cone slope b0 must be positive");
    }
    if (k1_ < 0 || k2_ < 0) {
        throw DomainError("derivative orders k1, k2 must be non-negative");
    }
    if (!z_.empty()) {
        spline_ = numerics::CubicSpline(z_, p_);
    }
}

ConeGeometry ConeGeometry::exact(double b0) {
    return ConeGeometry(b0, {}, {}, 0.0, 2, 2);
}

double ConeGeometry::perturbation(double z) const {
    return spline_.empty() ? 0.0 : spline_(z);
}

double ConeGeometry::radius(double z) const {
    return b0_ * z + perturbation(z);
}

double ConeGeometry::slope(double z) const {
    return b0_ + (spline_.empty() ? 0.0 : spline_.derivative(z));
}

namespace {

// Second-order three-point first derivative on a non-uniform grid.
numerics::Vector differentiate(const numerics::Vector& x, const numerics::Vector& f) {
    const std::size_t n = x.size();
    numerics::Vector d(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
        const double h0 = x[c] - x[c - 1];
        const double h1 = x[c + 1] - x[c];
        if (i == 0) {
            d[i] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * f[0] + (h0 + h1) / (h0 * h1) * f[1] -
                   h0 / (h1 * (h0 + h1)) * f[2];
        } else if (i == n - 1) {
            d[i] = h1 / (h0 * (h0 + h1)) * f[n - 3] - (h0 + h1) / (h0 * h1) * f[n - 2] +
                   (2.0 * h1 + h0) / (h1 * (h0 + h1)) * f[n - 1];
        } else {
            d[i] = -h1 / (h0 * (h0 + h1)) * f[c - 1] + (h1 - h0) / (h0 * h1) * f[c] +
                   h0 / (h1 * (h0 + h1)) * f[c + 1];
        }
    }
    return d;
}

constexpr double kTipTolerance = 1e-6;

} // namespace

AdmissibilityReport check_cone_admissibility(const ConeGeometry& geom) {
    AdmissibilityReport rep;
    const int k2 = geom.k2();
    rep.bound.assign(static_cast<std::size_t>(k2) + 1, 0.0);
    rep.order_ok.assign(static_cast<std::size_t>(k2) + 1, true);
    if (geom.is_exact_cone()) {
        rep.passed = geom.eps0() >= 0.0;
        return rep;
    }

    const auto& z = geom.sample_z();
    const std::size_t needed = static_cast<std::size_t>(k2) + 3;
    if (z.size() < std::max<std::size_t>(needed, 3)) {
        throw ResolutionError("need at least k2 + 3 perturbation samples");
    }

    numerics::Vector deriv = geom.sample_perturbation();
    const int k1 = geom.k1();
    rep.tip_checked = z.front() == 0.0;
    for (int k = 0; k <= std::max(k2, rep.tip_checked ? k1 : 0); ++k) {
        if (k > 0) {
            deriv = differentiate(z, deriv);
        }
        if (rep.tip_checked && (k == 0 || (k >= 2 && k <= k1))) {
            if (std::abs(deriv.front()) > (k == 0 ? 1e-12 : kTipTolerance)) {
                rep.tip_ok = false;
            }
        }
        if (k > k2) {
            continue;
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            worst = std::max(worst, std::abs(std::pow(z[i], k) * deriv[i]));
        }
        const auto ku = static_cast<std::size_t>(k);
        rep.bound[ku] = worst;
        rep.order_ok[ku] = worst <= geom.eps0();
        rep.passed = rep.passed && rep.order_ok[ku];
    }
    rep.passed = rep.passed && rep.tip_ok;
    return rep;
}

ConeGeometry read_perturbation_csv(const std::filesystem::path& path, double b0, double eps0,
                                   int k1, int k2) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open perturbation file " + path.string());
    }
    numerics::Vector z;
    numerics::Vector p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double zi = 0.0;
        double pi = 0.0;
        if (!(row >> zi >> pi)) {
            if (z.empty()) {
                continue;  // header
            }
            throw UsageError("malformed perturbation row: " + line);
        }
        z.push_back(zi);
        p.push_back(pi);
    }
    return ConeGeometry(b0, std::move(z), std::move(p), eps0, k1, k2);
}

void write_perturbation_csv(const std::filesystem::path& path, const ConeGeometry& geom) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path.string());
    }
    out.precision(17);
    out << "z,perturbation\n";
    const auto& z = geom.sample_z();
    const auto& p = geom.sample_perturbation();
    for (std::size_t i = 0; i < z.size(); ++i) {
        out << z[i] << ',' << p[i] << '\n';
    }
}

} // namespace singflow::conical

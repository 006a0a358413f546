#include "swsync/triangular_fit.hpp"

#include <cmath>
#include <string>

#include "swsync/cubic.hpp"
#include "swsync/error.hpp"

namespace swsync {

std::array<double, 3> moment_polynomial(double m1, double m2, double m3) {
    return {
        3.0 * m1,
        9.0 * m1 * m1 - 6.0 * m2,
        27.0 * m1 * m1 * m1 - 36.0 * m1 * m2 + 10.0 * m3,
    };
}

TriangularFit fit_triangle(double m1, double m2, double m3) {
    if (!(m1 > 0.0) || !std::isfinite(m2) || !std::isfinite(m3)) {
        throw InvalidArgument("triangular fit needs M1 > 0 and finite moments");
    }
    const auto [pi1, pi2, pi3] = moment_polynomial(m1, m2, m3);
    const auto roots = solve_cubic_real(-pi1, pi2, -pi3);
    if (!roots) {
        throw FitError("moments not realizable by a triangular density (complex abscissae)");
    }
    TriangularFit fit{(*roots)[0], (*roots)[1], (*roots)[2]};
    if (fit.x1 < 0.0) {
        if (fit.x1 < -1e-9 * m1) {
            throw FitError("support extends below zero (x1 = " + std::to_string(fit.x1) + ")");
        }
        fit.x1 = 0.0;
    }
    return fit;
}

std::array<double, 3> triangle_moments(const TriangularFit& fit) {
    const double a = fit.x1;
    const double b = fit.x2;
    const double c = fit.x3;
    return {
        (a + b + c) / 3.0,
        (a * a + b * b + c * c + a * b + a * c + b * c) / 6.0,
        (a * a * a + b * b * b + c * c * c + a * a * b + a * a * c + b * b * a + b * b * c + c * c * a + c * c * b +
         a * b * c) /
            10.0,
    };
}

double triangle_density(const TriangularFit& fit, double lambda) {
    if (fit.x3 <= fit.x1 || lambda < fit.x1 || lambda > fit.x3) {
        return 0.0;
    }
    const double h = fit.height();
    if (lambda < fit.x2) {
        return h * (lambda - fit.x1) / (fit.x2 - fit.x1);
    }
    if (fit.x3 == fit.x2) {
        return h;
    }
    return h * (fit.x3 - lambda) / (fit.x3 - fit.x2);
}

}  // namespace swsync

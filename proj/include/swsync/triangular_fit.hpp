#pragma once

#include <array>

namespace swsync {

/// Hat-shaped density on [x1, x3] with apex at x2 and peak height 2/(x3 - x1).
struct TriangularFit {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    double height() const { return 2.0 / (x3 - x1); }
};

/// Elementary symmetric data of the moment system: the abscissae are the roots of
/// x^3 - pi1 x^2 + pi2 x - pi3.
std::array<double, 3> moment_polynomial(double m1, double m2, double m3);

/// Triangle whose first three moments equal (m1, m2, m3).
///
/// Throws FitError when the moment cubic has complex roots, or when the lowest
/// abscissa lies below -1e-9 * m1. Smaller negative values are clamped to zero.
TriangularFit fit_triangle(double m1, double m2, double m3);

std::array<double, 3> triangle_moments(const TriangularFit& fit);

/// Density value at lambda. A point-mass fit (x1 == x3) evaluates to zero everywhere.
double triangle_density(const TriangularFit& fit, double lambda);

}  // namespace swsync

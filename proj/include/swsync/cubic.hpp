#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

namespace swsync {

// Monic cubic x^3 + a2 x^2 + a1 x + a0, shifted to t^3 + p t + q with x = t - a2/3.
template <typename Scalar>
struct DepressedCubic {
    Scalar shift;
    Scalar p;
    Scalar q;
    Scalar scale;  // characteristic root magnitude, used for relative tolerances

    DepressedCubic(Scalar a2, Scalar a1, Scalar a0)
        : shift(a2 / 3),
          p(a1 - a2 * a2 / 3),
          q(2 * a2 * a2 * a2 / 27 - a2 * a1 / 3 + a0),
          scale(std::max({std::abs(a2), std::sqrt(std::abs(a1)), std::cbrt(std::abs(a0)), Scalar(1)})) {}

    /// 4p^3 + 27q^2; non-positive iff all three roots are real.
    Scalar discriminant_sign_term() const { return 4 * p * p * p + 27 * q * q; }
};

template <typename Scalar>
Scalar cubic_value(Scalar a2, Scalar a1, Scalar a0, Scalar x) {
    return ((x + a2) * x + a1) * x + a0;
}

/// Real roots of x^3 + a2 x^2 + a1 x + a0, sorted ascending, or nullopt when
/// the cubic has a complex-conjugate pair.
///
/// Uses the trigonometric form of the depressed cubic, then two Newton steps per
/// root. A slightly positive discriminant term within relative 1e-12 is treated
/// as a repeated root.
template <typename Scalar>
std::optional<std::array<Scalar, 3>> solve_cubic_real(Scalar a2, Scalar a1, Scalar a0) {
    const DepressedCubic<Scalar> c(a2, a1, a0);
    const Scalar s2 = c.scale * c.scale;
    const Scalar s6 = s2 * s2 * s2;
    const Scalar tol = Scalar(1e-12);

    if (c.discriminant_sign_term() > tol * s6) {
        return std::nullopt;
    }

    std::array<Scalar, 3> roots;
    if (c.p >= -tol * s2) {
        // p ~ 0 forces q ~ 0: triple root
        roots.fill(-c.shift);
    } else {
        const Scalar m = 2 * std::sqrt(-c.p / 3);
        const Scalar arg = std::clamp(3 * c.q / (c.p * m), Scalar(-1), Scalar(1));
        const Scalar phi = std::acos(arg) / 3;
        constexpr Scalar third_turn = 2 * std::numbers::pi_v<Scalar> / 3;
        for (int k = 0; k < 3; ++k) {
            roots[static_cast<std::size_t>(k)] = m * std::cos(phi - third_turn * k) - c.shift;
        }
    }

    for (auto& x : roots) {
        for (int it = 0; it < 2; ++it) {
            const Scalar f = cubic_value(a2, a1, a0, x);
            const Scalar df = (3 * x + 2 * a2) * x + a1;
            if (df == 0) {
                break;
            }
            const Scalar step = f / df;
            // Near a repeated root Newton can overshoot into a neighbour; keep the step local.
            if (std::abs(step) > Scalar(1e-3) * c.scale) {
                break;
            }
            x -= step;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// All three roots of a real monic cubic, real or complex.
template <typename Scalar>
std::array<std::complex<Scalar>, 3> cubic_roots(Scalar a2, Scalar a1, Scalar a0) {
    using Complex = std::complex<Scalar>;
    if (auto real = solve_cubic_real(a2, a1, a0)) {
        return {Complex((*real)[0]), Complex((*real)[1]), Complex((*real)[2])};
    }
    // One real root, Cardano's formula (discriminant term is positive here).
    const DepressedCubic<Scalar> c(a2, a1, a0);
    const Scalar root_disc = std::sqrt(c.q * c.q / 4 + c.p * c.p * c.p / 27);
    const Scalar u = std::cbrt(-c.q / 2 + root_disc);
    const Scalar v = std::cbrt(-c.q / 2 - root_disc);
    Scalar t = u + v;
    for (int it = 0; it < 2; ++it) {
        const Scalar df = 3 * t * t + c.p;
        if (df == 0) {
            break;
        }
        t -= (t * t * t + c.p * t + c.q) / df;
    }
    const Scalar x = t - c.shift;
    // Deflate: x^3 + a2 x^2 + a1 x + a0 = (x - r)(x^2 + b x + e)
    const Scalar b = a2 + x;
    const Scalar e = a1 + b * x;
    const Scalar half = -b / 2;
    const Scalar imag = std::sqrt(std::max(Scalar(0), e - half * half));
    return {Complex(x), Complex(half, imag), Complex(half, -imag)};
}

}  // namespace swsync

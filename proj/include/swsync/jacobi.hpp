#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "swsync/error.hpp"

namespace swsync {

template <typename Scalar>
struct SymmetricEigen {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;                // ascending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns match values; empty unless requested
    int sweeps = 0;
};

struct JacobiOptions {
    double tolerance = 1e-12;  // off-diagonal Frobenius norm, relative to the full Frobenius norm
    int max_sweeps = 100;
    bool compute_vectors = false;
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Each sweep annihilates every off-diagonal pair (p, q) once with a plane
/// rotation. Convergence is quadratic once the off-diagonal mass is small.
/// Throws InvalidArgument on non-square or non-symmetric input and
/// ConvergenceError when max_sweeps is exhausted.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      const JacobiOptions& options = {}) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using std::abs;
    using std::sqrt;

    if (input.rows() != input.cols()) {
        throw InvalidArgument("eigensolver needs a square matrix");
    }
    const Eigen::Index n = input.rows();
    Matrix a = input;
    const Scalar scale = std::max<Scalar>(Scalar(1), a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale) {
        throw InvalidArgument("eigensolver needs a symmetric matrix");
    }

    Matrix v;
    if (options.compute_vectors) {
        v = Matrix::Identity(n, n);
    }

    const Scalar norm = a.norm();
    auto off_norm = [&] {
        Scalar s = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = j + 1; i < n; ++i) {
                s += a(i, j) * a(i, j);
            }
        }
        return sqrt(Scalar(2) * s);
    };

    SymmetricEigen<Scalar> result;
    const Scalar target = Scalar(options.tolerance) * norm;
    int sweep = 0;
    for (; sweep < options.max_sweeps && off_norm() > target; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0)) {
                    continue;
                }
                // Rotation angle from the classic stable tangent formula.
                const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
                const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
                const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
                const Scalar s = t * c;
                const Eigen::JacobiRotation<Scalar> rot(c, s);
                a.applyOnTheRight(p, q, rot);
                a.applyOnTheLeft(p, q, rot.adjoint());
                a(p, q) = a(q, p) = Scalar(0);
                if (options.compute_vectors) {
                    v.applyOnTheRight(p, q, rot);
                }
            }
        }
    }
    if (off_norm() > target) {
        throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
                               " sweeps");
    }
    result.sweeps = sweep;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
    result.values.resize(n);
    if (options.compute_vectors) {
        result.vectors.resize(n, n);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        result.values(k) = a(src, src);
        if (options.compute_vectors) {
            result.vectors.col(k) = v.col(src);
        }
    }
    return result;
}

}  // namespace swsync

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "swsync/graph.hpp"

namespace swsync {

/// First three raw Laplacian moments q_k = (1/N) sum lambda_i^k, and their
/// degree-normalized counterparts q_k / dbar^k.
struct SpectralMoments {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    double mean_degree = 0.0;

    std::array<double, 3> raw() const { return {q1, q2, q3}; }
    /// Throws InvalidArgument when mean_degree is zero.
    std::array<double, 3> normalized() const;
};

/// Which triangle density the closed-form third moment uses.
///  - paper:     T/N = C(2k,2)/3, as printed for the small-world model
///  - corrected: T/N = k(k-1)/2, the exact triangle count of the 2k-neighbour ring
enum class MomentVariant { paper, corrected };

std::string_view to_string(MomentVariant v);
MomentVariant parse_moment_variant(std::string_view name);

/// Moments from the degree sequence and triangle count via the trace identities
///   N q1 = sum d,  N q2 = sum d^2 + sum d,  N q3 = sum d^3 + 3 sum d^2 - 6T.
/// Throws InvalidArgument for an edgeless graph.
SpectralMoments exact_moments(const Graph& g);

/// Large-N expectations for the small-world model with parameters (k, r).
SpectralMoments expected_moments(int half_degree, double shortcut_rate, MomentVariant variant);

/// E[d], E[d^2], E[d^3] for degrees distributed as 2k + Poisson(r).
std::array<double, 3> expected_degree_moments(int half_degree, double shortcut_rate);

/// Sorted eigenvalues, lambda_1 <= ... <= lambda_N.
struct EigenSpectrum {
    Eigen::VectorXd values;

    Eigen::Index size() const { return values.size(); }
    double min() const { return values(0); }
    double max() const { return values(values.size() - 1); }
};

/// Eigenvalues of a dense symmetric matrix (cyclic Jacobi).
EigenSpectrum eigenvalues(const Eigen::MatrixXd& sym);

/// Raw moments (1/N) sum lambda^k, k = 1..3, straight from a spectrum.
std::array<double, 3> spectrum_moments(const EigenSpectrum& spectrum);

struct Histogram {
    Eigen::VectorXd edges;      // bin_count + 1 boundaries
    Eigen::VectorXi counts;     // eigenvalues per bin; the last bin is closed on the right
    Eigen::VectorXd densities;  // counts / (N * width), integrates to one
};

/// Equal-width histogram of the spectrum on [lo, hi]; defaults to [lambda_1, lambda_N].
/// A degenerate support collapses to one unit-width bin centred on the eigenvalue.
Histogram esd_histogram(const EigenSpectrum& spectrum, int bin_count,
                        std::optional<std::pair<double, double>> range = std::nullopt);

}  // namespace swsync

#include "swsync/spectral.hpp"

#include <cmath>
#include <string>

#include "swsync/error.hpp"
#include "swsync/jacobi.hpp"

namespace swsync {

std::array<double, 3> SpectralMoments::normalized() const {
    if (mean_degree == 0.0) {
        throw InvalidArgument("normalized moments undefined for zero mean degree");
    }
    return {q1 / mean_degree, q2 / (mean_degree * mean_degree), q3 / (mean_degree * mean_degree * mean_degree)};
}

std::string_view to_string(MomentVariant v) {
    return v == MomentVariant::paper ? "paper" : "corrected";
}

MomentVariant parse_moment_variant(std::string_view name) {
    if (name == "paper") {
        return MomentVariant::paper;
    }
    if (name == "corrected") {
        return MomentVariant::corrected;
    }
    throw InvalidArgument("unknown moment variant '" + std::string(name) + "' (expected paper or corrected)");
}

SpectralMoments exact_moments(const Graph& g) {
    const int n = g.node_count();
    if (n == 0 || g.edge_count() == 0) {
        throw InvalidArgument("spectral moments need a graph with at least one edge");
    }
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = g.degree(i);
        s1 += d;
        s2 += d * d;
        s3 += d * d * d;
    }
    const double triangles = static_cast<double>(count_triangles(g));
    SpectralMoments m;
    m.q1 = s1 / n;
    m.q2 = (s2 + s1) / n;
    m.q3 = (s3 + 3.0 * s2 - 6.0 * triangles) / n;
    m.mean_degree = m.q1;
    return m;
}

std::array<double, 3> expected_degree_moments(int half_degree, double shortcut_rate) {
    const double k = half_degree;
    const double r = shortcut_rate;
    return {
        r + 2.0 * k,
        r * r + (1.0 + 4.0 * k) * r + 4.0 * k * k,
        r * r * r + (3.0 + 6.0 * k) * r * r + (1.0 + 6.0 * k + 12.0 * k * k) * r + 8.0 * k * k * k,
    };
}

SpectralMoments expected_moments(int half_degree, double shortcut_rate, MomentVariant variant) {
    if (half_degree < 1 || !(shortcut_rate >= 0.0)) {
        throw InvalidArgument("expected moments need k >= 1 and r >= 0");
    }
    const double k = half_degree;
    const auto [d1, d2, d3] = expected_degree_moments(half_degree, shortcut_rate);
    const double triangles_per_node =
        variant == MomentVariant::paper ? k * (2.0 * k - 1.0) / 3.0 : k * (k - 1.0) / 2.0;
    SpectralMoments m;
    m.q1 = d1;
    m.q2 = d2 + d1;
    m.q3 = d3 + 3.0 * d2 - 6.0 * triangles_per_node;
    m.mean_degree = d1;
    return m;
}

EigenSpectrum eigenvalues(const Eigen::MatrixXd& sym) {
    return EigenSpectrum{jacobi_eigen(sym).values};
}

std::array<double, 3> spectrum_moments(const EigenSpectrum& spectrum) {
    const auto n = static_cast<double>(spectrum.size());
    const auto& v = spectrum.values.array();
    return {v.sum() / n, v.square().sum() / n, v.cube().sum() / n};
}

Histogram esd_histogram(const EigenSpectrum& spectrum, int bin_count,
                        std::optional<std::pair<double, double>> range) {
    if (bin_count < 1) {
        throw InvalidArgument("histogram needs at least one bin");
    }
    if (spectrum.size() == 0) {
        throw InvalidArgument("histogram of an empty spectrum");
    }
    auto [lo, hi] = range.value_or(std::pair{spectrum.min(), spectrum.max()});
    if (hi < lo) {
        throw InvalidArgument("histogram range is inverted");
    }
    if (hi == lo) {
        bin_count = 1;
        lo -= 0.5;
        hi += 0.5;
    }
    Histogram h;
    h.edges = Eigen::VectorXd::LinSpaced(bin_count + 1, lo, hi);
    h.counts = Eigen::VectorXi::Zero(bin_count);
    const double width = (hi - lo) / bin_count;
    for (double lambda : spectrum.values) {
        if (lambda < lo || lambda > hi) {
            continue;
        }
        const auto bin = std::min(bin_count - 1, static_cast<int>(std::floor((lambda - lo) / width)));
        ++h.counts(bin);
    }
    h.densities = h.counts.cast<double>() / (static_cast<double>(spectrum.size()) * width);
    return h;
}

}  // namespace swsync

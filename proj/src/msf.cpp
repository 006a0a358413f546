#include "swsync/msf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "swsync/cubic.hpp"
#include "swsync/error.hpp"
#include "swsync/rk4.hpp"

namespace swsync {

Eigen::VectorXcd small_matrix_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("eigenvalues need a square matrix");
    }
    if (m.rows() == 3) {
        const double c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        const auto roots = cubic_roots(-m.trace(), c2, -m.determinant());
        return Eigen::Vector3cd(roots[0], roots[1], roots[2]);
    }
    return Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
}

FloquetResult floquet(const OscillatorModel& model, const LimitCycle& cycle, double sigma,
                      const FloquetOptions& options) {
    const int n = model.state_dim;
    if (cycle.anchor.size() != n || !(cycle.period > 0.0)) {
        throw InvalidArgument("limit cycle does not belong to this model");
    }
    if (options.steps_per_period < 1) {
        throw InvalidArgument("Floquet integration needs at least one step");
    }

    // Packed state: orbit (n), fundamental matrix (n*n, column-major), trace integral (1).
    const Eigen::MatrixXd shift = sigma * model.coupling;
    Eigen::VectorXd state = Eigen::VectorXd::Zero(n + n * n + 1);
    state.head(n) = cycle.anchor;
    Eigen::Map<Eigen::MatrixXd>(state.data() + n, n, n).setIdentity();

    Eigen::VectorXd orbit(n);
    Eigen::VectorXd orbit_rate(n);
    Eigen::MatrixXd jac(n, n);
    auto field = [&](const Eigen::VectorXd& s, Eigen::VectorXd& d) {
        orbit = s.head(n);
        model.field(orbit, orbit_rate);
        model.jacobian(orbit, jac);
        jac -= shift;
        d.head(n) = orbit_rate;
        Eigen::Map<Eigen::MatrixXd>(d.data() + n, n, n).noalias() =
            jac * Eigen::Map<const Eigen::MatrixXd>(s.data() + n, n, n);
        d(n + n * n) = jac.trace();
    };

    Rk4Stepper<Eigen::VectorXd> rk(state);
    const double dt = cycle.period / options.steps_per_period;
    for (int i = 0; i < options.steps_per_period; ++i) {
        rk.step(field, state, dt);
    }
    if (!state.allFinite()) {
        throw BlowUpError(cycle.period, "fundamental matrix overflow at sigma = " + std::to_string(sigma));
    }

    FloquetResult result;
    result.monodromy = Eigen::Map<const Eigen::MatrixXd>(state.data() + n, n, n);
    result.trace_integral = state(n + n * n);

    const Eigen::VectorXcd mu = small_matrix_eigenvalues(result.monodromy);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return std::abs(mu(i)) > std::abs(mu(j)); });
    result.multipliers.resize(n);
    result.exponents.resize(n);
    for (int k = 0; k < n; ++k) {
        result.multipliers(k) = mu(order[static_cast<std::size_t>(k)]);
        result.exponents(k) = std::log(std::abs(result.multipliers(k))) / cycle.period;
    }
    return result;
}

Eigen::VectorXd floquet_exponents(const OscillatorModel& model, const LimitCycle& cycle, double sigma,
                                  const FloquetOptions& options) {
    return floquet(model, cycle, sigma, options).exponents;
}

double msf_value(const OscillatorModel& model, const LimitCycle& cycle, double sigma, const FloquetOptions& options) {
    const FloquetResult fr = floquet(model, cycle, sigma, options);
    if (sigma != 0.0 || fr.multipliers.size() < 2) {
        return fr.exponents(0);
    }
    Eigen::Index trivial = 0;
    (fr.multipliers.array() - 1.0).abs().minCoeff(&trivial);
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < fr.exponents.size(); ++k) {
        if (k != trivial) {
            best = std::max(best, fr.exponents(k));
        }
    }
    return best;
}

LyapunovResult max_lyapunov(const OscillatorModel& model, double sigma, const LyapunovOptions& options) {
    const int n = model.state_dim;
    if (!(options.dt > 0.0) || !(options.horizon > options.transient) || !(options.renormalize_every > 0.0)) {
        throw InvalidArgument("Lyapunov estimate needs dt > 0, horizon > transient and a positive renormalization interval");
    }
    const Eigen::VectorXd start = options.initial_state.size() ? options.initial_state : model.reference_state;
    if (start.size() != n) {
        throw InvalidArgument("initial state has wrong dimension");
    }

    const Eigen::MatrixXd shift = sigma * model.coupling;
    Eigen::VectorXd state(2 * n);
    state.head(n) = start;
    state.tail(n) = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));

    Eigen::VectorXd orbit(n);
    Eigen::VectorXd orbit_rate(n);
    Eigen::MatrixXd jac(n, n);
    auto field = [&](const Eigen::VectorXd& s, Eigen::VectorXd& d) {
        orbit = s.head(n);
        model.field(orbit, orbit_rate);
        model.jacobian(orbit, jac);
        d.head(n) = orbit_rate;
        d.tail(n).noalias() = (jac - shift) * s.tail(n);
    };

    const auto per_block = std::max<long>(1, std::lround(options.renormalize_every / options.dt));
    const double block_time = static_cast<double>(per_block) * options.dt;
    const auto blocks = static_cast<long>(std::floor(options.horizon / block_time));
    const auto skip = static_cast<long>(std::ceil(options.transient / block_time));
    const long checkpoint = skip + (blocks - skip) * 3 / 4;

    Rk4Stepper<Eigen::VectorXd> rk(state);
    double log_growth = 0.0;
    double at_checkpoint = 0.0;
    for (long b = 0; b < blocks; ++b) {
        for (long i = 0; i < per_block; ++i) {
            rk.step(field, state, options.dt);
        }
        if (!state.allFinite()) {
            throw BlowUpError(static_cast<double>(b + 1) * block_time,
                              "non-finite state in Lyapunov integration at sigma = " + std::to_string(sigma));
        }
        const double norm = state.tail(n).norm();
        if (norm == 0.0) {
            throw Error("tangent vector collapsed to zero");
        }
        state.tail(n) /= norm;
        if (b >= skip) {
            log_growth += std::log(norm);
        }
        if (b + 1 == checkpoint) {
            at_checkpoint = log_growth / (static_cast<double>(checkpoint - skip) * block_time);
        }
    }
    LyapunovResult result;
    result.exponent = log_growth / (static_cast<double>(blocks - skip) * block_time);
    result.converged = checkpoint <= skip || std::abs(result.exponent - at_checkpoint) <= options.tolerance;
    return result;
}

MSFCurve msf_sweep(const OscillatorModel& model, const LimitCycle& cycle, double sigma_start, double sigma_end,
                   double step, const FloquetOptions& options) {
    if (!(step > 0.0) || sigma_end < sigma_start) {
        throw InvalidArgument("MSF sweep needs step > 0 and sigma_end >= sigma_start");
    }
    const auto count = static_cast<std::size_t>(std::floor((sigma_end - sigma_start) / step + 1e-9)) + 1;
    MSFCurve curve;
    curve.sigma.reserve(count);
    curve.exponent.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double sigma = sigma_start + step * static_cast<double>(i);
        curve.sigma.push_back(sigma);
        curve.exponent.push_back(msf_value(model, cycle, sigma, options));
    }
    return curve;
}

StabilityInterval stability_interval(const OscillatorModel& model, const LimitCycle& cycle,
                                     const StabilityOptions& options) {
    if (!(options.refine_tolerance > 0.0)) {
        throw InvalidArgument("refinement tolerance must be positive");
    }
    StabilityInterval out;
    out.coarse = msf_sweep(model, cycle, 0.0, options.sigma_end, options.coarse_step, options.floquet);
    const auto& s = out.coarse.sigma;
    const auto& f = out.coarse.exponent;

    std::size_t first = 0;
    while (first < s.size() && s[first] <= 0.0) {
        ++first;
    }
    if (first >= s.size()) {
        throw Error("MSF sweep has no samples with sigma > 0");
    }
    if (f[first] >= 0.0) {
        throw Error("MSF is not negative just above sigma = 0; no stability interval (0, sigma_max)");
    }
    std::vector<std::size_t> changes;
    for (std::size_t i = first + 1; i < s.size(); ++i) {
        if ((f[i - 1] < 0.0) != (f[i] < 0.0)) {
            changes.push_back(i);
        }
    }
    if (changes.empty()) {
        throw Error("no finite sigma_max in [0, " + std::to_string(options.sigma_end) + "]");
    }
    if (changes.size() > 1) {
        throw Error("MSF changes sign " + std::to_string(changes.size()) +
                    " times; the stability region is not a single interval");
    }

    double lo = s[changes[0] - 1];
    double hi = s[changes[0]];
    while (hi - lo > options.refine_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (msf_value(model, cycle, mid, options.floquet) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.bracket_low = lo;
    out.bracket_high = hi;
    out.sigma_max = 0.5 * (lo + hi);
    return out;
}

}  // namespace swsync

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "swsync/oscillator.hpp"

namespace swsync {

// The variational equation along the synchronous orbit is
//   xi' = [Df(phi(t)) - sigma * Gamma] xi,
// with sigma = gamma * lambda for each Laplacian mode.

struct FloquetResult {
    Eigen::MatrixXd monodromy;
    Eigen::VectorXcd multipliers;  // ordered by decreasing modulus
    Eigen::VectorXd exponents;     // ln|mu| / T, descending
    double trace_integral = 0.0;   // integral of tr(Df - sigma Gamma) over one period
};

struct FloquetOptions {
    int steps_per_period = 5000;
};

/// Integrates the fundamental matrix over one period, together with the orbit
/// itself started from the cycle anchor, and reads off the monodromy spectrum.
/// Throws BlowUpError (reporting sigma) if the fundamental matrix overflows.
FloquetResult floquet(const OscillatorModel& model, const LimitCycle& cycle, double sigma,
                      const FloquetOptions& options = {});

/// Floquet exponents, sorted descending.
Eigen::VectorXd floquet_exponents(const OscillatorModel& model, const LimitCycle& cycle, double sigma,
                                  const FloquetOptions& options = {});

/// Largest nontrivial Floquet exponent F(sigma). At sigma == 0 the multiplier
/// nearest 1 (the along-flow direction) is excluded. For sigma > 0 all
/// exponents are retained.
double msf_value(const OscillatorModel& model, const LimitCycle& cycle, double sigma,
                 const FloquetOptions& options = {});

/// Eigenvalues of a small dense real matrix. 3x3 goes through the
/// characteristic cubic, and other sizes use Eigen's general solver.
Eigen::VectorXcd small_matrix_eigenvalues(const Eigen::MatrixXd& m);

struct LyapunovOptions {
    Eigen::VectorXd initial_state;  // defaults to the model's reference state
    double transient = 200.0;
    double horizon = 2000.0;
    double dt = 0.01;
    double renormalize_every = 1.0;
    double tolerance = 0.01;  // allowed drift of the running estimate over the last quarter
};

struct LyapunovResult {
    double exponent = 0.0;
    bool converged = true;
};

/// Largest Lyapunov exponent of the variational equation, by propagating a
/// single tangent vector along the trajectory and renormalizing it at fixed
/// intervals. Growth before `transient` is discarded.
LyapunovResult max_lyapunov(const OscillatorModel& model, double sigma, const LyapunovOptions& options = {});

struct MSFCurve {
    std::vector<double> sigma;
    std::vector<double> exponent;

    std::size_t size() const { return sigma.size(); }
};

/// F(sigma) on start, start + step, ..., up to end (inclusive within 1e-9 * step).
MSFCurve msf_sweep(const OscillatorModel& model, const LimitCycle& cycle, double sigma_start, double sigma_end,
                   double step, const FloquetOptions& options = {});

struct StabilityInterval {
    double sigma_max = 0.0;
    double bracket_low = 0.0;  // F < 0 here
    double bracket_high = 0.0; // F > 0 here
    MSFCurve coarse;
};

struct StabilityOptions {
    double sigma_end = 15.0;
    double coarse_step = 0.2;
    double refine_tolerance = 1e-3;
    FloquetOptions floquet;
};

/// Finds the upper end of the stability interval (0, sigma_max).
///
/// The coarse sweep (excluding sigma = 0) must start negative and change sign
/// exactly once. The crossing is then bisected until the bracket is no wider
/// than refine_tolerance. Throws Error when there is no sign change or more
/// than one.
StabilityInterval stability_interval(const OscillatorModel& model, const LimitCycle& cycle,
                                     const StabilityOptions& options = {});

}  // namespace swsync

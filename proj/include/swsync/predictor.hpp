#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swsync/graph.hpp"
#include "swsync/msf.hpp"
#include "swsync/netsim.hpp"
#include "swsync/spectral.hpp"
#include "swsync/triangular_fit.hpp"

namespace swsync {

/// Closed-form small-world expectations for (k, r).
struct ExpectedMomentSource {
    MomentVariant variant = MomentVariant::paper;
};
/// Exact moments of the realization generate_small_world(params).
struct ExactMomentSource {};
/// Moments given directly.
struct LiteralMomentSource {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
};

using MomentSource = std::variant<ExpectedMomentSource, ExactMomentSource, LiteralMomentSource>;

std::string describe(const MomentSource& source);

/// First three spectral moments for the given parameters from the chosen source.
std::array<double, 3> resolve_moments(const SmallWorldParams& params, const MomentSource& source);

struct Prediction {
    double sigma_max = 0.0;
    TriangularFit support;            // x1, x3 bound the estimated Laplacian spectrum
    double gamma_max = 0.0;           // predicted interval (0, gamma_max) = (0, sigma_max / x3)
    std::array<double, 3> moments{};  // moments fed to the fit
    SmallWorldParams params;
    std::string moment_source;
};

/// Steps 2-4 of the prediction given a known stability bound sigma_max.
/// Throws FitError if the fitted support does not start strictly above zero.
Prediction predict_from_sigma_max(const SmallWorldParams& params, double sigma_max, const MomentSource& source);

/// Full prediction: finds the limit cycle and stability interval of the node
/// model, then maps the fitted spectral support into a coupling interval.
Prediction predict_sync(const SmallWorldParams& params, const OscillatorModel& model, const MomentSource& source,
                        const StabilityOptions& stability = {});

struct ValidationOptions {
    double amplitude = 2.0;
    std::optional<Eigen::VectorXd> anchor;  // default: the model's limit-cycle anchor
    SimOptions sim;
    double tolerance = 1e-3;
    double window = 10.0;
};

struct ValidationRow {
    double gamma = 0.0;
    std::uint64_t seed = 0;
    bool synchronized = false;
    double final_error = 0.0;
    bool diverged = false;  // state blew up; counted as not synchronized
};

struct ValidationReport {
    std::vector<ValidationRow> rows;  // gamma-major, then seed order
    std::optional<double> predicted_gamma_max;
};

/// Simulates the network for every (gamma, seed). The seed picks both the graph
/// realization (params with that seed) and the initial perturbations.
ValidationReport validate_prediction(const SmallWorldParams& params, const OscillatorModel& model,
                                     const std::vector<double>& gammas, const std::vector<std::uint64_t>& seeds,
                                     const ValidationOptions& options = {});

}  // namespace swsync

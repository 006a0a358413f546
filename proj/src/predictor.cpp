#include "swsync/predictor.hpp"

#include <sstream>

#include "swsync/error.hpp"
#include "swsync/netsim.hpp"

namespace swsync {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Initial conditions use a stream distinct from the graph's shortcut stream.
constexpr std::uint64_t kInitialStateStream = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::string describe(const MomentSource& source) {
    return std::visit(overloaded{
                          [](const ExpectedMomentSource& s) { return "expected-" + std::string(to_string(s.variant)); },
                          [](const ExactMomentSource&) { return std::string("exact"); },
                          [](const LiteralMomentSource&) { return std::string("literal"); },
                      },
                      source);
}

std::array<double, 3> resolve_moments(const SmallWorldParams& params, const MomentSource& source) {
    return std::visit(overloaded{
                          [&](const ExpectedMomentSource& s) {
                              return expected_moments(params.half_degree, params.shortcut_rate, s.variant).raw();
                          },
                          [&](const ExactMomentSource&) { return exact_moments(generate_small_world(params)).raw(); },
                          [](const LiteralMomentSource& s) { return std::array<double, 3>{s.m1, s.m2, s.m3}; },
                      },
                      source);
}

Prediction predict_from_sigma_max(const SmallWorldParams& params, double sigma_max, const MomentSource& source) {
    if (!(sigma_max > 0.0)) {
        throw InvalidArgument("sigma_max must be positive");
    }
    Prediction p;
    p.params = params;
    p.sigma_max = sigma_max;
    p.moment_source = describe(source);
    p.moments = resolve_moments(params, source);
    p.support = fit_triangle(p.moments[0], p.moments[1], p.moments[2]);
    if (!(p.support.x1 > 0.0)) {
        std::ostringstream msg;
        msg << "estimated spectral support starts at x1 = " << p.support.x1
            << "; a connected spectrum (lambda_2 > 0) is required for a nonempty prediction";
        throw FitError(msg.str());
    }
    p.gamma_max = sigma_max / p.support.x3;
    return p;
}

Prediction predict_sync(const SmallWorldParams& params, const OscillatorModel& model, const MomentSource& source,
                        const StabilityOptions& stability) {
    const LimitCycle cycle = find_limit_cycle(model, model.reference_state);
    const StabilityInterval interval = stability_interval(model, cycle, stability);
    return predict_from_sigma_max(params, interval.sigma_max, source);
}

ValidationReport validate_prediction(const SmallWorldParams& params, const OscillatorModel& model,
                                     const std::vector<double>& gammas, const std::vector<std::uint64_t>& seeds,
                                     const ValidationOptions& options) {
    const Eigen::VectorXd anchor =
        options.anchor ? *options.anchor : find_limit_cycle(model, model.reference_state).anchor;

    ValidationReport report;
    for (double gamma : gammas) {
        for (std::uint64_t seed : seeds) {
            SmallWorldParams realization = params;
            realization.seed = seed;
            const Graph g = generate_small_world(realization);
            const Eigen::MatrixXd x0 =
                perturbed_initials(anchor, options.amplitude, g.node_count(), seed ^ kInitialStateStream);
            ValidationRow row;
            row.gamma = gamma;
            row.seed = seed;
            try {
                const SimTrace trace = simulate_network(g, model, gamma, x0, options.sim);
                const SyncVerdict v = sync_verdict(trace, options.tolerance, options.window);
                row.synchronized = v.synchronized;
                row.final_error = v.final_error;
            } catch (const BlowUpError&) {
                row.diverged = true;
                row.final_error = std::numeric_limits<double>::infinity();
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace swsync

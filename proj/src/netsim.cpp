#include "swsync/netsim.hpp"

#include <cmath>
#include <random>
#include <string>

#include "swsync/error.hpp"
#include "swsync/rk4.hpp"

namespace swsync {

Eigen::MatrixXd coupling_term(const Graph& g, const Eigen::MatrixXd& states, double gamma,
                              const Eigen::MatrixXd& coupling, std::uint64_t* counter) {
    const Eigen::Index n = states.rows();
    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(n, states.cols());
    std::uint64_t terms = 0;
    for (int i = 0; i < g.node_count(); ++i) {
        for (int j : g.neighbors(i)) {
            diff.col(i) += states.col(j) - states.col(i);
        }
        terms += static_cast<std::uint64_t>(g.degree(i));
    }
    if (counter) {
        *counter += terms;
    }
    return gamma * coupling * diff;
}

namespace {

void record_sample(SimTrace& trace, const Eigen::MatrixXd& x, double t, bool record_nodes, Eigen::Index sample) {
    const Eigen::VectorXd mean = x.rowwise().mean();
    const Eigen::VectorXd dist2 = (x.colwise() - mean).colwise().squaredNorm();
    trace.times.push_back(t);
    trace.err_max.push_back(std::sqrt(dist2.maxCoeff()));
    trace.err_rms.push_back(std::sqrt(dist2.mean()));
    trace.mean.col(sample) = mean;
    if (record_nodes) {
        trace.node_first.row(sample) = x.row(0);
    }
}

}  // namespace

SimTrace simulate_network(const Graph& g, const OscillatorModel& model, double gamma,
                          const Eigen::MatrixXd& initial_states, const SimOptions& options) {
    const int n = model.state_dim;
    const int nodes = g.node_count();
    if (initial_states.rows() != n || initial_states.cols() != nodes) {
        throw InvalidArgument("initial states must be " + std::to_string(n) + " x " + std::to_string(nodes));
    }
    if (!(options.dt > 0.0) || !(options.t_end > 0.0) || options.sample_every < 1) {
        throw InvalidArgument("simulation needs dt > 0, t_end > 0 and sample_every >= 1");
    }

    const auto steps = static_cast<long>(std::llround(options.t_end / options.dt));
    const auto samples = static_cast<Eigen::Index>(steps / options.sample_every + 1);

    SimTrace trace;
    trace.times.reserve(static_cast<std::size_t>(samples));
    trace.mean.resize(n, samples);
    if (options.record_nodes) {
        trace.node_first.resize(samples, nodes);
    }

    Eigen::VectorXd node_state(n);
    Eigen::VectorXd node_rate(n);
    Eigen::MatrixXd diff(n, nodes);
    const Eigen::MatrixXd gamma_coupling = gamma * model.coupling;
    auto field = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& dx) {
        diff.setZero();
        for (int i = 0; i < nodes; ++i) {
            node_state = x.col(i);
            model.field(node_state, node_rate);
            dx.col(i) = node_rate;
            for (int j : g.neighbors(i)) {
                diff.col(i) += x.col(j) - x.col(i);
            }
        }
        trace.coupling_terms += 2 * g.edge_count();
        dx.noalias() += gamma_coupling * diff;
    };

    Eigen::MatrixXd x = initial_states;
    Rk4Stepper<Eigen::MatrixXd> rk(x);
    Eigen::Index sample = 0;
    record_sample(trace, x, 0.0, options.record_nodes, sample++);
    for (long s = 1; s <= steps; ++s) {
        rk.step(field, x, options.dt);
        const double t = options.dt * static_cast<double>(s);
        if (!x.allFinite()) {
            throw BlowUpError(t, "network state diverged");
        }
        if (s % options.sample_every == 0) {
            record_sample(trace, x, t, options.record_nodes, sample++);
        }
    }
    trace.final_state = x;
    return trace;
}

Eigen::MatrixXd perturbed_initials(const Eigen::VectorXd& anchor, double amplitude, int node_count,
                                   std::uint64_t seed) {
    if (!(amplitude >= 0.0) || node_count < 0) {
        throw InvalidArgument("perturbation amplitude must be non-negative");
    }
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd out(anchor.size(), node_count);
    for (int i = 0; i < node_count; ++i) {
        for (Eigen::Index c = 0; c < anchor.size(); ++c) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
            out(c, i) = anchor(c) + amplitude * (2.0 * u - 1.0);
        }
    }
    return out;
}

SyncVerdict sync_verdict(const SimTrace& trace, double tol, double window) {
    if (trace.times.empty()) {
        throw InvalidArgument("empty trace");
    }
    const double t_end = trace.times.back();
    if (t_end - trace.times.front() < window) {
        throw InvalidArgument("trace is shorter than the verdict window");
    }
    const double t_start = t_end - window;
    std::size_t first = 0;
    while (trace.times[first] < t_start - 1e-9) {
        ++first;
    }
    SyncVerdict v;
    v.final_error = trace.err_max.back();
    bool below = true;
    for (std::size_t i = first; i < trace.times.size(); ++i) {
        below = below && trace.err_max[i] < tol;
    }
    const double start_err = trace.err_max[first];
    v.window_ratio = start_err > 0.0 ? v.final_error / start_err : (v.final_error > 0.0 ? INFINITY : 0.0);
    v.synchronized = below && v.window_ratio <= 1.0;
    return v;
}

}  // namespace swsync

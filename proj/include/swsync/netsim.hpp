#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "swsync/graph.hpp"
#include "swsync/oscillator.hpp"

namespace swsync {

// Network state: state_dim x N matrix, one column per node.

struct SimOptions {
    double t_end = 40.0;
    double dt = 0.01;
    int sample_every = 10;
    bool record_nodes = false;  // keep the first coordinate of every node at each sample
};

struct SimTrace {
    std::vector<double> times;
    std::vector<double> err_max;  // max_i |x_i - xbar|
    std::vector<double> err_rms;  // sqrt(mean_i |x_i - xbar|^2)
    Eigen::MatrixXd mean;         // state_dim x samples
    Eigen::MatrixXd node_first;   // samples x N, empty unless record_nodes
    Eigen::MatrixXd final_state;
    std::uint64_t coupling_terms = 0;  // neighbour differences evaluated, for cost accounting
};

/// gamma * Gamma * sum_{j ~ i} (x_j - x_i) for every node, from adjacency lists.
/// Adds the number of neighbour differences evaluated to *counter when given.
Eigen::MatrixXd coupling_term(const Graph& g, const Eigen::MatrixXd& states, double gamma,
                              const Eigen::MatrixXd& coupling, std::uint64_t* counter = nullptr);

/// Fixed-step RK4 integration of x_i' = f(x_i) + gamma * sum_j a_ij Gamma (x_j - x_i).
/// Samples are taken at t = 0 and every sample_every steps after that.
/// Throws BlowUpError with the time of the first non-finite state.
SimTrace simulate_network(const Graph& g, const OscillatorModel& model, double gamma,
                          const Eigen::MatrixXd& initial_states, const SimOptions& options = {});

/// anchor + e_i with e_i uniform on [-amplitude, amplitude]^n, independent per node.
Eigen::MatrixXd perturbed_initials(const Eigen::VectorXd& anchor, double amplitude, int node_count,
                                   std::uint64_t seed);

struct SyncVerdict {
    bool synchronized = false;
    double final_error = 0.0;
    double window_ratio = 0.0;  // err_max at window end / err_max at window start
};

/// Synchronized iff err_max < tol at every sample in the final `window` time
/// units and the error did not grow across the window.
SyncVerdict sync_verdict(const SimTrace& trace, double tol = 1e-3, double window = 10.0);

}  // namespace swsync

#pragma once

#include <functional>
#include <map>
#include <string>

#include <Eigen/Dense>

namespace swsync {

using VectorField = std::function<void(const Eigen::VectorXd& state, Eigen::VectorXd& derivative)>;
using JacobianField = std::function<void(const Eigen::VectorXd& state, Eigen::MatrixXd& jacobian)>;

/// Node dynamics x' = f(x), the Jacobian used for linearization, and the
/// inner coupling matrix Gamma selecting which state components interact.
struct OscillatorModel {
    std::string name;
    int state_dim = 0;
    VectorField field;
    JacobianField jacobian;
    Eigen::MatrixXd coupling;
    Eigen::VectorXd reference_state;  // a point on (or near) the attractor
    std::map<std::string, double> params;

    Eigen::VectorXd eval(const Eigen::VectorXd& state) const;
    Eigen::MatrixXd jacobian_at(const Eigen::VectorXd& state) const;
};

struct RosslerParams {
    double a = 0.2;
    double b = 0.2;
    double c = 2.5;
};

/// Point on the Rossler limit cycle at a = b = 0.2, c = 2.5.
inline const Eigen::Vector3d kRosslerAnchor{3.5119, -3.5332, 0.2006};

/// How the Rossler model linearizes along a trajectory.
///  - analytic:  exact Jacobian [[0,-1,-1],[1,a,0],[z,0,x-c]]
///  - published: [[0,-1,-1],[1,a,0],[z,0,-c]], i.e. the x-dependence of dz'/dz
///               dropped. Its master stability function crosses zero near 4.74.
enum class RosslerLinearization { analytic, published };

std::string to_string(RosslerLinearization lin);
RosslerLinearization parse_rossler_linearization(const std::string& name);

Eigen::Vector3d rossler_field(const Eigen::Vector3d& state, double a, double b, double c);
Eigen::Matrix3d rossler_jacobian(const Eigen::Vector3d& state, double a, double c);

/// Rossler oscillator coupled through x only (Gamma = diag(1, 0, 0)).
OscillatorModel rossler_model(const RosslerParams& params = {},
                              RosslerLinearization linearization = RosslerLinearization::analytic);

/// x' = A x with the given coupling matrix; handy for closed-form checks.
OscillatorModel linear_model(const Eigen::MatrixXd& system, const Eigen::MatrixXd& coupling);

/// Central-difference Jacobian of the model's vector field.
Eigen::MatrixXd finite_difference_jacobian(const OscillatorModel& model, const Eigen::VectorXd& state,
                                           double step = 1e-5);

struct Trajectory {
    Eigen::VectorXd times;   // one entry per sample, starting at 0
    Eigen::MatrixXd states;  // state_dim x samples
};

/// Fixed-step RK4 from t = 0 to t_end, recording every step. The last step is
/// shortened when t_end is not a multiple of dt. Throws BlowUpError on a
/// non-finite state.
Trajectory integrate_fixed_step(const VectorField& field, const Eigen::VectorXd& initial_state, double t_end,
                                double dt);

struct LimitCycle {
    double period = 0.0;
    Eigen::VectorXd anchor;  // phi(0), lies on the Poincare section
    Trajectory samples;      // one period on a uniform grid, phi(0) .. phi(T)
    double closure_error = 0.0;
};

struct CycleOptions {
    double settle_time = 500.0;
    double dt = 1e-3;
    int returns = 10;
    double tolerance = 1e-6;  // closure bound on |phi(T) - phi(0)|
    double max_search_time = 1000.0;
};

/// Settles onto the attractor, then measures the period from successive
/// same-direction crossings of the hyperplane through the settled state normal
/// to the flow. Each crossing is pinned down by re-integrating a shortened RK4
/// step, and the period is the mean of `returns` return times.
///
/// Throws ConvergenceError when the section is never revisited or the return
/// times disagree (a non-periodic attractor; use max_lyapunov instead).
LimitCycle find_limit_cycle(const OscillatorModel& model, const Eigen::VectorXd& initial_guess,
                            const CycleOptions& options = {});

}  // namespace swsync
